//! The decomposition `W = W~ x| W_I` attached to a partition `S = I u J` in
//! which no element of `I` is conjugate to an element of `J`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::bond::Bond;
use crate::coxeter::{
    genset, genset_members, CoxMatrix, CoxeterSystem, Elem, GenSet, Order, Side,
    DEFAULT_ORDER_BOUND,
};
use crate::error::{Error, Result};
use crate::linalg::{self, Vector};

mod report;
mod verify;

pub use report::{cycles, DecompReport};
pub use verify::{GroupData, ParabolicReport, ParafineWitness};

/// Check that no path of odd bonds joins `I` to its complement. On failure
/// returns such a path, as generator indices.
pub fn validate_partition(m: &CoxMatrix, i: GenSet) -> Result<(), Vec<usize>> {
    let n = m.rank();
    let mut prev: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for s in genset_members(i) {
        seen[s] = true;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if v == u || seen[v] || !m.bond(u, v).is_odd() {
                continue;
            }
            seen[v] = true;
            prev[v] = Some(u);
            if i >> v & 1 == 0 {
                let mut path = vec![v];
                let mut cur = v;
                while let Some(p) = prev[cur] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Err(path);
            }
            queue.push_back(v);
        }
    }
    Ok(())
}

/// A canonical generator `x t x^-1` of `W~`.
#[derive(Clone, Debug)]
pub struct TildeGen {
    /// Minimal representative of `x W_{I n t-perp}` in `W_I`.
    pub x: Elem,
    pub t: usize,
    pub elem: Elem,
    /// `x(alpha_t)`.
    pub root: Vector,
}

pub struct Decomposition {
    sys: Arc<CoxeterSystem>,
    i: GenSet,
    j: GenSet,
    wi: Vec<Elem>,
    complete: bool,
    gens: Vec<TildeGen>,
    index: HashMap<Elem, usize>,
    by_xt: HashMap<(usize, Elem), usize>,
    mtilde: CoxMatrix,
    tilde_sys: Arc<CoxeterSystem>,
}

impl std::fmt::Debug for Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Decomposition")
            .field("I", &self.sys.set_string(self.i))
            .field("gens", &self.gens.len())
            .finish()
    }
}

impl Decomposition {
    /// Decompose with respect to `I`; `W_I` must be finite.
    pub fn new(sys: Arc<CoxeterSystem>, i: GenSet) -> Result<Decomposition> {
        Self::build(sys, i, None)
    }

    /// As [`Decomposition::new`], but an infinite `W_I` is replaced by its
    /// ball of the given radius and the result is flagged partial.
    pub fn with_bound(sys: Arc<CoxeterSystem>, i: GenSet, radius: usize) -> Result<Decomposition> {
        Self::build(sys, i, Some(radius))
    }

    fn build(sys: Arc<CoxeterSystem>, i: GenSet, radius: Option<usize>) -> Result<Decomposition> {
        let all = sys.all_gens();
        if i & !all != 0 {
            return Err(Error::InvalidPartition("I is not a subset of S".into()));
        }
        if let Err(path) = validate_partition(sys.matrix(), i) {
            let p: Vec<&str> = path.iter().map(|&s| sys.label(s)).collect();
            return Err(Error::InvalidPartition(format!(
                "odd path {} joins I to J",
                p.join(" - ")
            )));
        }
        let j = all & !i;
        let (wi, complete) = if sys.parabolic_is_finite(i) {
            (sys.parabolic_elements(i)?, true)
        } else if let Some(r) = radius {
            let ball: Vec<Elem> = parabolic_ball(&sys, i, r);
            (ball, false)
        } else {
            return Err(Error::NotFinite(format!(
                "W_I for I = {{{}}} is infinite",
                sys.set_string(i)
            )));
        };
        let mut gens = Vec::new();
        for t in genset_members(j) {
            let perp = perp_in(&sys, i, t);
            for x in &wi {
                if sys.descents(x, Side::Right) & perp != 0 {
                    continue;
                }
                let tg = sys.gen(t);
                let elem = sys.conj(x, &tg);
                let root = sys.apply(x, &sys.simple_root(t));
                gens.push(TildeGen {
                    x: x.clone(),
                    t,
                    elem,
                    root,
                });
            }
        }
        // wi is sorted by (length, ShortLex), so gens are ordered by (nu, ShortLex of x).
        let mut index = HashMap::new();
        let mut by_xt = HashMap::new();
        for (k, g) in gens.iter().enumerate() {
            if index.insert(g.elem.clone(), k).is_some() {
                return Err(Error::Consistency(format!(
                    "two pairs (x, t) give the reflection {}",
                    sys.word_string(&g.elem)
                )));
            }
            by_xt.insert((g.t, g.x.clone()), k);
        }
        let labels: Vec<String> = gens.iter().map(|g| palindrome_label(&sys, g)).collect();
        let mut d = Decomposition {
            sys,
            i,
            j,
            wi,
            complete,
            gens,
            index,
            by_xt,
            mtilde: CoxMatrix::from_edges(&["_"], &[])?,
            tilde_sys: CoxeterSystem::new(CoxMatrix::from_edges(&["_"], &[])?),
        };
        let n = d.gens.len();
        let mut m = vec![vec![Bond::Finite(1); n]; n];
        for a in 0..n {
            for b in (a + 1)..n {
                let v = d.m_tilde(a, b)?;
                m[a][b] = v;
                m[b][a] = v;
            }
        }
        if n > 0 {
            d.mtilde = CoxMatrix::new(labels, m)?;
            d.tilde_sys = CoxeterSystem::new(d.mtilde.clone());
        }
        Ok(d)
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn i(&self) -> GenSet {
        self.i
    }

    pub fn j(&self) -> GenSet {
        self.j
    }

    /// False when `W_I` was truncated to a ball.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn w_i(&self) -> &[Elem] {
        &self.wi
    }

    pub fn gens(&self) -> &[TildeGen] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Coxeter matrix of `(W~, J~)`; meaningless when `J` is empty.
    pub fn tilde_matrix(&self) -> &CoxMatrix {
        &self.mtilde
    }

    /// A fresh geometric representation of `(W~, J~)` built from `M~`.
    pub fn tilde_system(&self) -> &Arc<CoxeterSystem> {
        &self.tilde_sys
    }

    pub fn nu(&self, k: usize) -> usize {
        self.gens[k].t
    }

    pub fn gen_index(&self, e: &Elem) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn label(&self, k: usize) -> String {
        palindrome_label(&self.sys, &self.gens[k])
    }

    /// Image under the letter map `s -> s` on `I`, `s -> 1` on `J`.
    pub fn phi(&self, w: &Elem) -> Elem {
        let letters: Vec<usize> = w.letters().filter(|&s| self.i >> s & 1 == 1).collect();
        self.sys.elem(&letters)
    }

    pub fn in_tilde(&self, w: &Elem) -> bool {
        w.letters().all(|s| self.i >> s & 1 == 0) || self.phi(w).is_identity()
    }

    /// `w = w~ a` with `a = phi(w)`.
    pub fn factorize(&self, w: &Elem) -> (Elem, Elem) {
        let a = self.phi(w);
        let wt = self.sys.mul(w, &self.sys.inverse(&a));
        (wt, a)
    }

    /// Number of `J` letters in a reduced word.
    pub fn ell_j(&self, w: &Elem) -> usize {
        w.letters().filter(|&s| self.j >> s & 1 == 1).count()
    }

    /// Expression of `w~` as a word in `J~` (generator indices), obtained
    /// by rewriting each `J` letter `t` after prefix image `a` as `a t a^-1`.
    pub fn tilde_word(&self, w: &Elem) -> Result<Vec<usize>> {
        let mut a = self.sys.identity();
        let mut out = Vec::new();
        for s in w.letters() {
            if self.i >> s & 1 == 1 {
                a = self.sys.rmul_gen(&a, s);
            } else {
                let c = self.sys.conj(&a, &self.sys.gen(s));
                let k = self.gen_index(&c).ok_or_else(|| {
                    Error::Consistency(format!(
                        "{} is not among the generators",
                        self.sys.word_string(&c)
                    ))
                })?;
                out.push(k);
            }
        }
        if !a.is_identity() {
            return Err(Error::Precondition("element is not in W~".into()));
        }
        Ok(out)
    }

    /// Length in `(W~, J~)`, measured in the representation built from `M~`.
    pub fn tilde_length(&self, w: &Elem) -> Result<usize> {
        let word = self.tilde_word(w)?;
        if word.is_empty() {
            return Ok(0);
        }
        Ok(self.tilde_sys.elem(&word).length())
    }

    /// Element of `(W~, J~)` in its own representation.
    pub fn tilde_elem(&self, w: &Elem) -> Result<Elem> {
        Ok(self.tilde_sys.elem(&self.tilde_word(w)?))
    }

    /// `t_n ... t_1 t t_1 ... t_n` where `t_n ... t_1` is the canonical word of `x`.
    pub fn palindromic_expr(&self, k: usize) -> Result<Vec<usize>> {
        let g = &self.gens[k];
        let word = palindrome(g);
        let e = self.sys.elem(&word);
        if e != g.elem || e.length() != word.len() {
            return Err(Error::Consistency(
                "palindromic expression is not reduced".into(),
            ));
        }
        if word.iter().filter(|&&s| s == g.t).count() != 1 {
            return Err(Error::Consistency(
                "t occurs more than once in the palindrome".into(),
            ));
        }
        Ok(word)
    }

    /// `f(s~, t~)`: minimal element of `W_{I n s-perp} x^-1 y W_{I n t-perp}`.
    pub fn f_elem(&self, a: usize, b: usize) -> Elem {
        let (ga, gb) = (&self.gens[a], &self.gens[b]);
        let w = self.sys.mul(&self.sys.inverse(&ga.x), &gb.x);
        self.sys.min_double_coset_rep(
            &w,
            perp_in(&self.sys, self.i, ga.t),
            perp_in(&self.sys, self.i, gb.t),
        )
    }

    /// Entry of `M~` by the five-case rule on `f`.
    pub fn m_tilde(&self, a: usize, b: usize) -> Result<Bond> {
        let (s, t) = (self.gens[a].t, self.gens[b].t);
        let f = self.f_elem(a, b);
        let m = self.sys.matrix();
        Ok(if s == t {
            match f.length() {
                0 => Bond::Finite(1),
                1 => {
                    let u = f.word()[0] as usize;
                    m.bond(s, u).half().ok_or_else(|| {
                        Error::Consistency(format!(
                            "odd bond between {} and {}",
                            self.sys.label(s),
                            self.sys.label(u)
                        ))
                    })?
                }
                _ => Bond::Inf,
            }
        } else if f.is_identity() {
            m.bond(s, t)
        } else {
            Bond::Inf
        })
    }

    /// `M~` recomputed from inner products of the roots `x(alpha_t)`.
    pub fn tilde_matrix_via_roots(&self) -> Result<Vec<Vec<Bond>>> {
        let n = self.len();
        let f = self.sys.field();
        let mut m = vec![vec![Bond::Finite(1); n]; n];
        for a in 0..n {
            for b in (a + 1)..n {
                let ip = self.sys.inner(&self.gens[a].root, &self.gens[b].root);
                let v = if (&ip + &f.one()).sign() <= 0 {
                    Bond::Inf
                } else {
                    Bond::Finite(f.recognize_cos(&-&ip).ok_or_else(|| {
                        Error::Consistency(format!("-<a{a}, a{b}> = {} is not in COS", -&ip))
                    })?)
                };
                m[a][b] = v;
                m[b][a] = v;
            }
        }
        Ok(m)
    }

    /// Orders of pairwise products by repeated multiplication; `None` when
    /// the bound is reached.
    pub fn tilde_matrix_via_orders(&self, bound: u32) -> Vec<Vec<Option<Bond>>> {
        let n = self.len();
        let mut m = vec![vec![Some(Bond::Finite(1)); n]; n];
        for a in 0..n {
            for b in (a + 1)..n {
                let p = self.sys.mul(&self.gens[a].elem, &self.gens[b].elem);
                let v = self.sys.order_of(&p, bound).bond();
                m[a][b] = v;
                m[b][a] = v;
            }
        }
        m
    }

    /// Entrywise agreement of the three computations of `M~`.
    pub fn check_tilde_matrix(&self) -> Result<()> {
        let roots = self.tilde_matrix_via_roots()?;
        let orders = self.tilde_matrix_via_orders(DEFAULT_ORDER_BOUND);
        for a in 0..self.len() {
            for b in 0..self.len() {
                let formula = self.mtilde.bond(a, b);
                let ok_orders = match orders[a][b] {
                    Some(o) => o == formula,
                    None => formula == Bond::Inf,
                };
                if roots[a][b] != formula || !ok_orders {
                    return Err(Error::Consistency(format!(
                        "M~ entry ({}, {}): formula {formula}, roots {}, orders {:?}",
                        self.label(a),
                        self.label(b),
                        roots[a][b],
                        orders[a][b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The permutation of `J~` induced by conjugation by `s in I`.
    pub fn action_of(&self, s: usize) -> Result<Vec<usize>> {
        if self.i >> s & 1 == 0 {
            return Err(Error::Precondition(format!(
                "{} is not in I",
                self.sys.label(s)
            )));
        }
        let sg = self.sys.gen(s);
        let mut perm = Vec::with_capacity(self.len());
        for g in &self.gens {
            let sx = self.sys.lmul_gen(s, &g.x);
            let x2 = self
                .sys
                .min_coset_rep(&sx, perp_in(&self.sys, self.i, g.t), Side::Right);
            let k = *self.by_xt.get(&(g.t, x2)).ok_or_else(|| {
                if self.complete {
                    Error::Consistency("coset representative outside the generator list".into())
                } else {
                    Error::BoundExceeded(format!(
                        "{} moves a generator outside the truncated W_I",
                        self.sys.label(s)
                    ))
                }
            })?;
            let conj = self.sys.conj(&sg, &g.elem);
            if self.gen_index(&conj) != Some(k) {
                return Err(Error::Consistency(
                    "conjugation disagrees with coset action".into(),
                ));
            }
            perm.push(k);
        }
        Ok(perm)
    }

    /// Connected components of the `M~` diagram, with the consistency checks
    /// that `nu` maps each component onto `J` and, for irreducible `W`, that
    /// `W_I` permutes the components transitively.
    pub fn components(&self) -> Result<Vec<Vec<usize>>> {
        if self.is_empty() {
            return Ok(Vec::new());
        }
        let comps = self.mtilde.components();
        for c in &comps {
            let image = genset(c.iter().map(|&k| self.nu(k)));
            if image != self.j {
                return Err(Error::Consistency(
                    "nu is not onto J on some component".into(),
                ));
            }
        }
        if self.complete && self.sys.matrix().components().len() == 1 && comps.len() > 1 {
            let comp_of: HashMap<usize, usize> = comps
                .iter()
                .enumerate()
                .flat_map(|(ci, c)| c.iter().map(move |&k| (k, ci)))
                .collect();
            let perms: Vec<Vec<usize>> = genset_members(self.i)
                .into_iter()
                .map(|s| self.action_of(s))
                .collect::<Result<_>>()?;
            let mut reached = HashSet::from([0usize]);
            let mut stack = vec![0usize];
            while let Some(ci) = stack.pop() {
                for p in &perms {
                    let cj = comp_of[&p[comps[ci][0]]];
                    if reached.insert(cj) {
                        stack.push(cj);
                    }
                }
            }
            if reached.len() != comps.len() {
                return Err(Error::Consistency(
                    "W_I does not permute the components transitively".into(),
                ));
            }
        }
        Ok(comps)
    }

    /// `K+ = { w t w^-1 : w in W_{I n K}, t in J n K }` as generator indices.
    pub fn k_plus(&self, k: GenSet) -> Result<Vec<usize>> {
        let wik = self.sys.parabolic_elements(self.i & k)?;
        let mut out = HashSet::new();
        for t in genset_members(self.j & k) {
            let tg = self.sys.gen(t);
            for w in &wik {
                let c = self.sys.conj(w, &tg);
                out.insert(
                    self.gen_index(&c)
                        .ok_or_else(|| Error::Consistency("K+ element outside J~".into()))?,
                );
            }
        }
        let mut v: Vec<usize> = out.into_iter().collect();
        v.sort_unstable();
        Ok(v)
    }

    /// `N(t~) n W~ = {t~}`, with membership in `W~` decided by `phi`.
    pub fn verify_canonical(&self, k: usize) -> Result<()> {
        let g = &self.gens[k];
        let hits: Vec<Elem> = self
            .sys
            .n_set(&g.elem)
            .into_iter()
            .map(|r| r.elem)
            .filter(|e| self.in_tilde(e))
            .collect();
        if hits.len() == 1 && hits[0] == g.elem {
            Ok(())
        } else {
            Err(Error::Consistency(format!(
                "N({}) meets W~ in {} reflections",
                self.label(k),
                hits.len()
            )))
        }
    }

    /// Exact rank of the roots of `J~`.
    pub fn root_rank(&self) -> usize {
        linalg::rank(&self.gens.iter().map(|g| g.root.clone()).collect::<Vec<_>>())
    }

    /// Order of `s~ t~` computed directly, for spot checks.
    pub fn order_in_w(&self, a: usize, b: usize, bound: u32) -> Order {
        let p = self.sys.mul(&self.gens[a].elem, &self.gens[b].elem);
        self.sys.order_of(&p, bound)
    }
}

/// `{u in I : m(u, t) = 2}`.
pub fn perp_in(sys: &CoxeterSystem, i: GenSet, t: usize) -> GenSet {
    genset(
        genset_members(i)
            .into_iter()
            .filter(|&u| sys.matrix().bond(u, t) == Bond::Finite(2)),
    )
}

fn palindrome(g: &TildeGen) -> Vec<usize> {
    let x: Vec<usize> = g.x.letters().collect();
    let mut w = x.clone();
    w.push(g.t);
    w.extend(x.iter().rev());
    w
}

fn palindrome_label(sys: &CoxeterSystem, g: &TildeGen) -> String {
    let w: Vec<u8> = palindrome(g).into_iter().map(|s| s as u8).collect();
    sys.letters_string(&w)
}

fn parabolic_ball(sys: &CoxeterSystem, i: GenSet, r: usize) -> Vec<Elem> {
    let mut out: Vec<Elem> = sys
        .ball(r)
        .into_iter()
        .filter(|w| w.in_parabolic(i))
        .collect();
    out.sort_by(|a, b| a.shortlex_key().cmp(&b.shortlex_key()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bond::Bond::{Finite as F, Inf};

    fn b(n: usize) -> Arc<CoxeterSystem> {
        let mut labels = vec!["t".to_string()];
        labels.extend((1..n).map(|i| format!("s{i}")));
        let l: Vec<&str> = labels.iter().map(String::as_str).collect();
        let mut edges = vec![(0, 1, F(4))];
        edges.extend((1..n - 1).map(|i| (i, i + 1, F(3))));
        CoxeterSystem::new(CoxMatrix::from_edges(&l, &edges).unwrap())
    }

    #[test]
    fn partitions() {
        let a3 = CoxeterSystem::new(
            CoxMatrix::from_edges(&["s1", "s2", "s3"], &[(0, 1, F(3)), (1, 2, F(3))]).unwrap(),
        );
        assert_eq!(
            validate_partition(a3.matrix(), genset([0])),
            Err(vec![0, 1])
        );
        assert!(validate_partition(a3.matrix(), 0).is_ok());
        assert!(validate_partition(b(4).matrix(), genset([0])).is_ok());
    }

    #[test]
    fn dihedral_rows() {
        for m in 2..=6u32 {
            let sys = CoxeterSystem::new(
                CoxMatrix::from_edges(&["s", "t"], &[(0, 1, F(2 * m))]).unwrap(),
            );
            let d = Decomposition::new(sys.clone(), genset([0])).unwrap();
            assert_eq!(d.len(), 2);
            assert_eq!(d.gens()[0].elem, sys.gen(1));
            assert_eq!(d.gens()[1].elem, sys.elem(&[0, 1, 0]));
            assert_eq!(d.tilde_matrix().bond(0, 1), F(m));
            d.check_tilde_matrix().unwrap();
            assert_eq!(d.action_of(0).unwrap(), vec![1, 0]);
            let f = d.f_elem(1, 0);
            assert_eq!(f, sys.gen(0));
        }
        let sys = CoxeterSystem::new(CoxMatrix::from_edges(&["s", "t"], &[(0, 1, Inf)]).unwrap());
        let d = Decomposition::new(sys, genset([0])).unwrap();
        assert_eq!(d.tilde_matrix().bond(0, 1), Inf);
        d.check_tilde_matrix().unwrap();
    }

    #[test]
    fn b_n_first_row() {
        let sys = b(4);
        let d = Decomposition::new(sys.clone(), genset([0])).unwrap();
        assert_eq!(d.len(), 4);
        let ts1t = sys.elem(&[0, 1, 0]);
        let k = d.gen_index(&ts1t).unwrap();
        assert_eq!(d.nu(k), 1);
        let s1 = d.gen_index(&sys.gen(1)).unwrap();
        assert_eq!(d.tilde_matrix().bond(k, s1), F(2));
        let s2 = d.gen_index(&sys.gen(2)).unwrap();
        assert!(d.f_elem(k, s2).is_identity());
        d.check_tilde_matrix().unwrap();
        for k in 0..d.len() {
            d.verify_canonical(k).unwrap();
            assert_eq!(
                d.palindromic_expr(k).unwrap().len(),
                2 * d.gens()[k].x.length() + 1
            );
        }
        assert_eq!(d.root_rank(), 4);
    }

    #[test]
    fn factorize_and_lengths() {
        let sys = b(2);
        let d = Decomposition::new(sys.clone(), genset([1])).unwrap();
        // B2 with I = {s1}: s1 t = (s1 t s1) s1.
        let w = sys.elem(&[1, 0]);
        let (wt, a) = d.factorize(&w);
        assert_eq!(a, sys.gen(1));
        assert_eq!(wt, sys.elem(&[1, 0, 1]));
        assert_eq!(d.phi(&sys.elem(&[0, 1, 0])), sys.gen(1));
        let sys3 = b(3);
        let d3 = Decomposition::new(sys3.clone(), genset([0])).unwrap();
        let w = sys3.elem(&[1, 0, 1, 0]);
        assert_eq!(d3.ell_j(&w), 2);
        assert_eq!(d3.tilde_length(&w).unwrap(), 2);
    }
}
