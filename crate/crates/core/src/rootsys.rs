//! Based root systems, reflection subgroups and Gram classification.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::coxeter::{genset, genset_members, root_sign, CoxeterSystem, Elem, GenSet, Reflection};
use crate::error::{Error, Result};
use crate::linalg::{self, form, Mat, Vector};
use crate::scalar::CycReal;

/// A set of simple roots in an ambient quadratic space, given by coordinates.
#[derive(Clone, Debug)]
pub struct BasedRootSystem {
    gram: Mat,
    simple: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Some nonzero non-negative combination of the simple roots vanishes.
    NotPositivelyIndependent,
    NotUnit(usize),
    /// `-<a, b>` is not in COS.
    BadPair(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPositivelyIndependent => {
                f.write_str("simple roots are not positively independent")
            }
            Violation::NotUnit(i) => write!(f, "simple root {i} does not have norm 1"),
            Violation::BadPair(i, j) => write!(f, "-<a{i}, a{j}> is not in COS"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chamber {
    /// `w(rho) = point` lies in the closed fundamental chamber, where `w` is
    /// the product of the simple reflections in `word`, last applied first
    /// (so `w = s_{word[k-1]} ... s_{word[0]}`).
    Reached {
        word: Vec<usize>,
        point: Vector,
        stabilizer: Vec<usize>,
    },
    /// Budget exhausted; the point may lie outside the Tits cone.
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GramClass {
    Finite,
    Affine,
    Indefinite,
}

impl fmt::Display for GramClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GramClass::Finite => "finite",
            GramClass::Affine => "affine",
            GramClass::Indefinite => "indefinite",
        })
    }
}

impl BasedRootSystem {
    pub fn new(gram: Mat, simple: Vec<Vector>) -> BasedRootSystem {
        BasedRootSystem { gram, simple }
    }

    pub fn standard(sys: &CoxeterSystem) -> BasedRootSystem {
        BasedRootSystem::new(
            sys.gram().clone(),
            (0..sys.rank()).map(|s| sys.simple_root(s)).collect(),
        )
    }

    pub fn simple(&self) -> &[Vector] {
        &self.simple
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn inner(&self, u: &[CycReal], v: &[CycReal]) -> CycReal {
        form(&self.gram, u, v)
    }

    /// `v - 2<v, alpha> alpha`.
    pub fn reflect(&self, alpha: &[CycReal], v: &[CycReal]) -> Vector {
        let c = &self.inner(v, alpha) * &v[0].field().int(2);
        linalg::sub(v, &linalg::scale(&c, alpha))
    }

    /// Gram matrix of the simple roots themselves.
    pub fn simple_gram(&self) -> Mat {
        Mat::from_rows(
            self.simple
                .iter()
                .map(|a| self.simple.iter().map(|b| self.inner(a, b)).collect())
                .collect(),
        )
    }

    pub fn validate(&self) -> Result<(), Violation> {
        let f = self.gram.get(0, 0).field();
        for (i, a) in self.simple.iter().enumerate() {
            if !self.inner(a, a).is_one() {
                return Err(Violation::NotUnit(i));
            }
        }
        for i in 0..self.simple.len() {
            for j in (i + 1)..self.simple.len() {
                if !f.in_cos(&-&self.inner(&self.simple[i], &self.simple[j])) {
                    return Err(Violation::BadPair(i, j));
                }
            }
        }
        if !positively_independent(&self.simple) {
            return Err(Violation::NotPositivelyIndependent);
        }
        Ok(())
    }

    /// Move `rho` into the closed fundamental chamber by applying, at each
    /// step, the reflection in the least-index simple root pairing negatively.
    pub fn to_chamber(&self, rho: &[CycReal], max_iters: usize) -> Chamber {
        let mut cur = rho.to_vec();
        let mut word = Vec::new();
        loop {
            match (0..self.simple.len()).find(|&i| self.inner(&self.simple[i], &cur).sign() < 0) {
                None => {
                    let stabilizer = (0..self.simple.len())
                        .filter(|&i| self.inner(&self.simple[i], &cur).is_zero())
                        .collect();
                    return Chamber::Reached {
                        word,
                        point: cur,
                        stabilizer,
                    };
                }
                Some(i) => {
                    if word.len() >= max_iters {
                        return Chamber::Inconclusive;
                    }
                    cur = self.reflect(&self.simple[i], &cur);
                    word.push(i);
                }
            }
        }
    }
}

/// Whether no nonzero non-negative combination of `vs` is zero, by exact
/// Fourier-Motzkin elimination.
pub fn positively_independent(vs: &[Vector]) -> bool {
    if vs.is_empty() {
        return true;
    }
    let k = vs.len();
    let n = vs[0].len();
    let f = vs[0][0].field();
    // Equalities sum c_i v_i = 0 and sum c_i = 1, as an augmented matrix.
    let mut rows: Vec<Vector> = (0..n)
        .map(|j| {
            let mut r: Vector = vs.iter().map(|v| v[j].clone()).collect();
            r.push(f.zero());
            r
        })
        .collect();
    let mut ones = vec![f.one(); k];
    ones.push(f.one());
    rows.push(ones);
    let pivots = rref(&mut rows, k);
    if rows
        .iter()
        .any(|r| r[..k].iter().all(CycReal::is_zero) && !r[k].is_zero())
    {
        return true;
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    // Constraints a . x + b >= 0 over the free variables.
    let mut cons: Vec<(Vector, CycReal)> = Vec::new();
    for (fi, _) in free.iter().enumerate() {
        let mut a = vec![f.zero(); free.len()];
        a[fi] = f.one();
        cons.push((a, f.zero()));
    }
    for (r, _) in pivots.iter().enumerate() {
        let a = free.iter().map(|&c| -&rows[r][c]).collect();
        cons.push((a, rows[r][k].clone()));
    }
    for var in 0..free.len() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in cons {
            match c.0[var].sign() {
                1 => pos.push(c),
                -1 => neg.push(c),
                _ => rest.push(c),
            }
        }
        for (pa, pb) in &pos {
            let pinv = pa[var].inv().expect("nonzero");
            for (na, nb) in &neg {
                let ninv = (-&na[var]).inv().expect("nonzero");
                let a: Vector = pa
                    .iter()
                    .zip(na)
                    .map(|(x, y)| &(x * &pinv) + &(y * &ninv))
                    .collect();
                let b = &(pb * &pinv) + &(nb * &ninv);
                rest.push((a, b));
            }
        }
        dedup_constraints(&mut rest);
        cons = rest;
    }
    cons.iter().any(|(_, b)| b.sign() < 0)
}

fn dedup_constraints(cons: &mut Vec<(Vector, CycReal)>) {
    let mut seen = HashSet::new();
    cons.retain(|c| seen.insert(c.clone()));
}

/// Reduced row echelon form on the first `cols` columns; returns pivot columns.
fn rref(rows: &mut [Vector], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let fac = rows[i][c].clone();
                let sub: Vector = rows[r].iter().map(|x| &fac * x).collect();
                rows[i] = linalg::sub(&rows[i], &sub);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Positive roots of the standard system reachable from a simple root by
/// at most `depth` simple reflections (all of them when `depth` is `None`
/// and the group is finite). Sorted by depth, then discovery order.
pub fn positive_roots(sys: &CoxeterSystem, depth: Option<usize>) -> Vec<Vector> {
    let brs = BasedRootSystem::standard(sys);
    let mut seen: HashSet<Vector> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..sys.rank() {
        let a = sys.simple_root(s);
        seen.insert(a.clone());
        out.push(a.clone());
        queue.push_back((a, 0usize));
    }
    while let Some((v, d)) = queue.pop_front() {
        if depth.is_some_and(|max| d >= max) {
            continue;
        }
        for (s, alpha) in brs.simple.iter().enumerate() {
            if v == *alpha {
                continue;
            }
            let w = brs.reflect(alpha, &v);
            debug_assert!(
                root_sign(&w) > 0,
                "simple reflection {s} made a positive root negative"
            );
            if seen.insert(w.clone()) {
                out.push(w.clone());
                queue.push_back((w, d + 1));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ChiResult {
    /// Canonical generators, sorted by `(length, ShortLex)` of the reflection.
    pub delta: Vec<Reflection>,
    /// False when the enumeration of the subgroup stopped at the bound.
    pub complete: bool,
}

/// Canonical Coxeter generators of the reflection subgroup generated by `gens`.
///
/// The subgroup is enumerated by words of length at most `bound` in `gens`.
pub fn chi(sys: &CoxeterSystem, gens: &[Elem], bound: usize) -> Result<ChiResult> {
    let mut seen: HashSet<Elem> = HashSet::new();
    seen.insert(sys.identity());
    let mut frontier = vec![sys.identity()];
    let mut complete = false;
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &frontier {
            for g in gens {
                let wg = sys.mul(w, g);
                if seen.insert(wg.clone()) {
                    next.push(wg);
                }
            }
        }
        if next.is_empty() {
            complete = true;
            break;
        }
        frontier = next;
    }
    if !complete
        && frontier
            .iter()
            .all(|w| gens.iter().all(|g| seen.contains(&sys.mul(w, g))))
    {
        complete = true;
    }
    let mut psi: Vec<Reflection> = seen.iter().filter_map(|w| sys.as_reflection(w)).collect();
    psi.sort_by(|a, b| a.elem.shortlex_key().cmp(&b.elem.shortlex_key()));
    let brs = BasedRootSystem::standard(sys);
    let delta: Vec<Reflection> = psi
        .iter()
        .filter(|g| {
            psi.iter()
                .all(|b| b.elem == g.elem || root_sign(&brs.reflect(&g.root, &b.root)) > 0)
        })
        .cloned()
        .collect();
    let f = sys.field();
    for (i, a) in delta.iter().enumerate() {
        for b in &delta[i + 1..] {
            if !f.in_cos(&-&sys.inner(&a.root, &b.root)) {
                return Err(Error::Consistency(
                    "canonical generators with inner product outside -COS".into(),
                ));
            }
        }
    }
    if complete {
        for g in &delta {
            let hits = sys
                .n_set(&g.elem)
                .into_iter()
                .filter(|t| seen.contains(&t.elem))
                .count();
            if hits != 1 {
                return Err(Error::Consistency(
                    "N(t) meets the subgroup in more than {t}".into(),
                ));
            }
        }
    }
    Ok(ChiResult { delta, complete })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    pub set: GenSet,
    pub connected: bool,
}

/// Support of a positive root, checking that `s_gamma` lies in the
/// corresponding parabolic subgroup.
pub fn support(sys: &CoxeterSystem, gamma: &[CycReal]) -> Result<Support> {
    let set = genset((0..gamma.len()).filter(|&i| !gamma[i].is_zero()));
    let refl = sys.reflection_of_root(gamma);
    if !refl.in_parabolic(set) {
        return Err(Error::Consistency(
            "reflection does not lie in the parabolic subgroup of its support".into(),
        ));
    }
    let idx = genset_members(set);
    let connected = idx.is_empty() || sys.matrix().restrict(&idx).components().len() == 1;
    Ok(Support { set, connected })
}

/// Coefficients `c` of a positive root satisfy `c/2 in COS` and, unless
/// `c in {0, 1}`, `c >= sqrt 2`. Returns the offending index otherwise.
pub fn brink_check(gamma: &[CycReal]) -> Result<(), usize> {
    let f = gamma[0].field();
    let two = f.int(2);
    let half = f.rational(crate::scalar::Q::new(1, 2));
    for (i, c) in gamma.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !f.in_cos(&(c * &half)) {
            return Err(i);
        }
        if !c.is_one() && (&(c * c) - &two).sign() < 0 {
            return Err(i);
        }
    }
    Ok(())
}

pub fn classify_gram(g: &Mat) -> GramClass {
    if linalg::is_positive_definite(g) {
        GramClass::Finite
    } else if linalg::is_positive_semidefinite(g) && linalg::rank(&g.rows()) + 1 == g.dim() {
        GramClass::Affine
    } else {
        GramClass::Indefinite
    }
}

/// Index of every root of `roots` by value, for quick membership tests.
pub fn root_index(roots: &[Vector]) -> HashMap<Vector, usize> {
    roots
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bond::Bond::{self, Finite as F, Inf};
    use crate::coxeter::CoxMatrix;
    use crate::scalar::{field, Q};

    fn sys(labels: &[&str], edges: &[(usize, usize, Bond)]) -> std::sync::Arc<CoxeterSystem> {
        CoxeterSystem::new(CoxMatrix::from_edges(labels, edges).unwrap())
    }

    #[test]
    fn validate_examples() {
        let a2 = sys(&["s", "t"], &[(0, 1, F(3))]);
        assert_eq!(BasedRootSystem::standard(&a2).validate(), Ok(()));
        let a = a2.simple_root(0);
        let bad = BasedRootSystem::new(a2.gram().clone(), vec![a.clone(), linalg::neg(&a)]);
        assert!(bad.validate().is_err());
        let f = field(2);
        let q = f.rational(Q::new(-3, 4));
        let g = Mat::from_rows(vec![vec![f.one(), q.clone()], vec![q, f.one()]]);
        let brs = BasedRootSystem::new(g, vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]]);
        assert_eq!(brs.validate(), Err(Violation::BadPair(0, 1)));
    }

    #[test]
    fn positive_independence() {
        let f = field(2);
        let v = |a: i64, b: i64| vec![f.int(a), f.int(b)];
        assert!(positively_independent(&[v(1, 0), v(0, 1), v(1, 1)]));
        assert!(!positively_independent(&[v(1, 0), v(0, 1), v(-1, -1)]));
        assert!(!positively_independent(&[v(1, 0), v(-1, 0)]));
        assert!(positively_independent(&[v(1, 0), v(1, 0)]));
    }

    #[test]
    fn root_counts() {
        let a2 = sys(&["s", "t"], &[(0, 1, F(3))]);
        assert_eq!(positive_roots(&a2, None).len(), 3);
        let b2 = sys(&["s", "t"], &[(0, 1, F(4))]);
        assert_eq!(positive_roots(&b2, None).len(), 4);
        let a1t = sys(&["s", "t"], &[(0, 1, Inf)]);
        let r = positive_roots(&a1t, Some(3));
        assert_eq!(r.len(), 8);
        // Coordinates are (k+1, k) and (k, k+1).
        for v in &r {
            let (a, b) = (v[0].as_rational().unwrap(), v[1].as_rational().unwrap());
            assert!(a - b == Q::from_integer(1) || b - a == Q::from_integer(1));
        }
    }

    #[test]
    fn chi_examples() {
        let a2 = sys(&["s", "t"], &[(0, 1, F(3))]);
        let refl: Vec<Elem> = vec![a2.gen(0), a2.gen(1), a2.elem(&[0, 1, 0])];
        let r = chi(&a2, &refl, 10).unwrap();
        assert!(r.complete);
        let d: Vec<Elem> = r.delta.into_iter().map(|x| x.elem).collect();
        assert_eq!(d, vec![a2.gen(0), a2.gen(1)]);
        let i24 = sys(&["t", "s"], &[(0, 1, F(4))]);
        let r = chi(&i24, &[i24.gen(0), i24.elem(&[1, 0, 1])], 10).unwrap();
        assert_eq!(r.delta.len(), 2);
        assert!(i24.inner(&r.delta[0].root, &r.delta[1].root).is_zero());
    }

    #[test]
    fn chamber_moves() {
        let a2 = sys(&["s", "t"], &[(0, 1, F(3))]);
        let brs = BasedRootSystem::standard(&a2);
        let f = a2.field();
        // rho = alpha_s + alpha_t pairs positively with both simple roots.
        let rho = vec![f.one(), f.one()];
        match brs.to_chamber(&rho, 10) {
            Chamber::Reached { word, .. } => assert!(word.is_empty()),
            Chamber::Inconclusive => panic!(),
        }
        match brs.to_chamber(&linalg::neg(&rho), 10) {
            Chamber::Reached { word, point, .. } => {
                assert_eq!(word.len(), 3);
                assert_eq!(point, rho);
            }
            Chamber::Inconclusive => panic!(),
        }
        let a1t = sys(&["s", "t"], &[(0, 1, Inf)]);
        let brs = BasedRootSystem::standard(&a1t);
        let g = a1t.field();
        assert_eq!(
            brs.to_chamber(&[g.one(), g.zero()], 50),
            Chamber::Inconclusive
        );
    }

    #[test]
    fn gram_classes() {
        let a2 = sys(&["s", "t"], &[(0, 1, F(3))]);
        assert_eq!(classify_gram(a2.gram()), GramClass::Finite);
        let a1t = sys(&["s", "t"], &[(0, 1, Inf)]);
        assert_eq!(classify_gram(a1t.gram()), GramClass::Affine);
        let f = field(2);
        let g = Mat::from_rows(vec![vec![f.one(), f.int(-2)], vec![f.int(-2), f.one()]]);
        assert_eq!(classify_gram(&g), GramClass::Indefinite);
    }

    #[test]
    fn brink_on_b2() {
        let b2 = sys(&["s", "t"], &[(0, 1, F(4))]);
        for r in positive_roots(&b2, None) {
            assert_eq!(brink_check(&r), Ok(()));
        }
        let f = field(2);
        assert_eq!(brink_check(&[f.rational(Q::new(6, 5))]), Err(0));
    }
}
