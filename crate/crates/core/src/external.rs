//! External semidirect products `W~ x| W'` and when they are Coxeter groups.
//!
//! [`check_external`] decides the algebraic criterion for data given as two
//! Coxeter matrices and an action by diagram automorphisms;
//! [`construct_from_roots`] is the geometric variant starting from two based
//! root systems in a common space.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::bond::Bond;
use crate::coxeter::{genset, genset_members, CoxMatrix, CoxeterSystem, Elem, FiniteGroup, GenSet};
use crate::decomp::{cycles, Decomposition};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat, Vector};
use crate::par::Execution;
use crate::rootsys::{self, BasedRootSystem, Chamber};

/// Input to [`check_external`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtData {
    /// `(W', I)`.
    pub prime: CoxMatrix,
    /// `(W~, J~)`.
    pub tilde: CoxMatrix,
    /// Per generator of `W'`, the permutation of `J~` it induces.
    pub theta: Vec<Vec<usize>>,
    /// Orbit representatives, as indices into `J~`.
    pub j: Vec<usize>,
}

/// Element `w~ w'` of the semidirect product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemiElem {
    pub tilde: Elem,
    pub prime: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Some `theta(s)` is not an automorphism, or the relations of `W'` fail.
    BadAction(String),
    /// `J` does not meet every orbit exactly once.
    BadRepresentatives(String),
    /// Condition (1) fails for `r = u s u^-1`.
    Condition1 {
        r: String,
        s: String,
        u: String,
    },
    /// Condition (2) fails for the pair `(r, s)`.
    Condition2 {
        r: String,
        s: String,
    },
    /// Root data: one of the two inputs is not a based root system.
    NotBased(String),
    /// Root data: some `alpha in Delta` does not map `Pi~` into itself.
    NotStable(usize),
    NotPositivelyIndependent,
    /// The constructed simple system has a mixed pair outside `-COS'`.
    MixedPair(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadAction(m) => write!(f, "action: {m}"),
            Violation::BadRepresentatives(m) => write!(f, "representatives: {m}"),
            Violation::Condition1 { r, s, u } => {
                write!(f, "condition (1) fails: {r} = u {s} u^-1 with u = {u}")
            }
            Violation::Condition2 { r, s } => write!(f, "condition (2) fails for r = {r}, s = {s}"),
            Violation::NotBased(m) => write!(f, "not a based root system: {m}"),
            Violation::NotStable(a) => write!(f, "reflection in Delta[{a}] does not preserve Pi~"),
            Violation::NotPositivelyIndependent => {
                f.write_str("Delta u Pi~ is not positively independent")
            }
            Violation::MixedPair(a, b) => write!(f, "-<Pi[{a}], Pi[{b}]> is not in COS'"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The Coxeter matrix of `(W, I u J)`, labels of `I` first.
    Coxeter(CoxMatrix),
    Violation(Violation),
}

impl Verdict {
    pub fn matrix(&self) -> Option<&CoxMatrix> {
        match self {
            Verdict::Coxeter(m) => Some(m),
            Verdict::Violation(_) => None,
        }
    }
}

impl ExtData {
    /// The data of an internal decomposition: `W' = W_I`, `W~` with `M~`,
    /// the conjugation action, and `J` itself as representatives.
    pub fn from_decomposition(d: &Decomposition) -> Result<ExtData> {
        let sys = d.system();
        let i = genset_members(d.i());
        Ok(ExtData {
            prime: sys.matrix().restrict(&i),
            tilde: d.tilde_matrix().clone(),
            theta: i.iter().map(|&s| d.action_of(s)).collect::<Result<_>>()?,
            j: (0..d.len())
                .filter(|&k| d.gens()[k].x.is_identity())
                .collect(),
        })
    }

    /// Sections `[W']`, `[W~]` (matrix text), `[theta]` with lines
    /// `label: (a b)(c d)` and `[J]` with a list of labels.
    pub fn parse(text: &str) -> Result<ExtData> {
        let mut sections: HashMap<String, String> = HashMap::new();
        let mut cur: Option<String> = None;
        for line in text.lines() {
            let l = line.split('#').next().unwrap_or("").trim();
            if let Some(name) = l.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                cur = Some(name.trim().to_string());
                sections.entry(name.trim().to_string()).or_default();
            } else if let Some(c) = &cur {
                let s = sections.get_mut(c).expect("section exists");
                s.push_str(l);
                s.push('\n');
            } else if !l.is_empty() {
                return Err(Error::Parse(format!("text outside a section: {l}")));
            }
        }
        let get = |k: &str| {
            sections
                .get(k)
                .ok_or_else(|| Error::Parse(format!("missing section [{k}]")))
        };
        let prime = CoxMatrix::parse(get("W'")?)?;
        let tilde = CoxMatrix::parse(get("W~")?)?;
        let idx = |lab: &str| {
            tilde
                .index_of(lab)
                .ok_or_else(|| Error::Parse(format!("unknown node {lab}")))
        };
        let mut theta = vec![(0..tilde.rank()).collect::<Vec<_>>(); prime.rank()];
        for line in get("theta")?.lines().filter(|l| !l.trim().is_empty()) {
            let (g, cyc) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad action line: {line}")))?;
            let s = prime
                .index_of(g.trim())
                .ok_or_else(|| Error::Parse(format!("unknown generator {}", g.trim())))?;
            let mut perm: Vec<usize> = (0..tilde.rank()).collect();
            for c in cyc
                .split(')')
                .map(|c| c.trim().trim_start_matches('('))
                .filter(|c| !c.is_empty() && *c != "id")
            {
                let pts = c.split_whitespace().map(idx).collect::<Result<Vec<_>>>()?;
                for (a, b) in pts.iter().zip(pts.iter().cycle().skip(1)) {
                    perm[*a] = *b;
                }
            }
            theta[s] = perm;
        }
        let j = get("J")?
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(idx)
            .collect::<Result<Vec<_>>>()?;
        Ok(ExtData {
            prime,
            tilde,
            theta,
            j,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "[W']\n{}[W~]\n{}[theta]\n",
            self.prime.to_text(),
            self.tilde.to_text()
        );
        for (g, p) in self.theta.iter().enumerate() {
            let cs = cycles(p);
            let body: String = if cs.is_empty() {
                "id".into()
            } else {
                cs.iter()
                    .map(|c| {
                        format!(
                            "({})",
                            c.iter()
                                .map(|&k| self.tilde.label(k))
                                .collect::<Vec<_>>()
                                .join(" ")
                        )
                    })
                    .collect()
            };
            s.push_str(&format!("{}: {body}\n", self.prime.label(g)));
        }
        let j: Vec<&str> = self.j.iter().map(|&k| self.tilde.label(k)).collect();
        s.push_str(&format!("[J]\n{}\n", j.join(" ")));
        s
    }
}

/// The semidirect product `W~ x| W'` with `W'` enumerated.
pub struct SemiProduct {
    prime: Arc<CoxeterSystem>,
    tilde: Arc<CoxeterSystem>,
    theta: Vec<Vec<usize>>,
    group: FiniteGroup,
    perms: Vec<Vec<usize>>,
}

impl SemiProduct {
    /// Requires `theta` to be a valid action (see [`check_external`]).
    pub fn new(data: &ExtData) -> Result<SemiProduct> {
        let prime = CoxeterSystem::new(data.prime.clone());
        let tilde = CoxeterSystem::new(data.tilde.clone());
        let group = FiniteGroup::new(prime.clone())?;
        let n = data.tilde.rank();
        let perms = group
            .elems()
            .iter()
            .map(|u| {
                u.letters().fold((0..n).collect::<Vec<_>>(), |p, s| {
                    (0..n).map(|x| p[data.theta[s][x]]).collect()
                })
            })
            .collect();
        Ok(SemiProduct {
            prime,
            tilde,
            theta: data.theta.clone(),
            group,
            perms,
        })
    }

    pub fn prime(&self) -> &Arc<CoxeterSystem> {
        &self.prime
    }

    pub fn tilde(&self) -> &Arc<CoxeterSystem> {
        &self.tilde
    }

    /// `theta(u)` as a permutation of `J~`.
    pub fn perm(&self, u: &Elem) -> &[usize] {
        &self.perms[self.group.index_of(u) as usize]
    }

    /// `theta(u)(w~)`.
    pub fn act(&self, u: &Elem, w: &Elem) -> Elem {
        let p = self.perm(u);
        self.tilde
            .elem(&w.letters().map(|s| p[s]).collect::<Vec<_>>())
    }

    pub fn identity(&self) -> SemiElem {
        SemiElem {
            tilde: self.tilde.identity(),
            prime: self.prime.identity(),
        }
    }

    pub fn from_prime(&self, s: usize) -> SemiElem {
        SemiElem {
            tilde: self.tilde.identity(),
            prime: self.prime.gen(s),
        }
    }

    pub fn from_tilde(&self, r: usize) -> SemiElem {
        SemiElem {
            tilde: self.tilde.gen(r),
            prime: self.prime.identity(),
        }
    }

    /// `(a~, a)(b~, b) = (a~ theta(a)(b~), ab)`.
    pub fn mul(&self, a: &SemiElem, b: &SemiElem) -> SemiElem {
        SemiElem {
            tilde: self.tilde.mul(&a.tilde, &self.act(&a.prime, &b.tilde)),
            prime: self.prime.mul(&a.prime, &b.prime),
        }
    }

    /// Order by repeated multiplication; `None` past `bound`.
    pub fn order(&self, x: &SemiElem, bound: u32) -> Option<u32> {
        let id = self.identity();
        let mut p = x.clone();
        for k in 1..=bound {
            if p == id {
                return Some(k);
            }
            p = self.mul(&p, x);
        }
        None
    }

    /// Elements of `W'` in the standard parabolic `W'_K`.
    fn parabolic(&self, k: GenSet) -> impl Iterator<Item = &Elem> {
        self.group.elems().iter().filter(move |u| u.in_parabolic(k))
    }

    /// `{v in I : theta(v) fixes r}`, the generators of `W'` commuting with `r`.
    fn perp(&self, r: usize) -> GenSet {
        genset((0..self.theta.len()).filter(|&v| self.theta[v][r] == r))
    }
}

fn check_action(d: &ExtData) -> Option<Violation> {
    let n = d.tilde.rank();
    if d.theta.len() != d.prime.rank() {
        return Some(Violation::BadAction(
            "one permutation per generator of W' is required".into(),
        ));
    }
    for (s, p) in d.theta.iter().enumerate() {
        let mut seen = vec![false; n];
        if p.len() != n
            || p.iter()
                .any(|&x| x >= n || std::mem::replace(&mut seen[x], true))
        {
            return Some(Violation::BadAction(format!(
                "theta({}) is not a permutation",
                d.prime.label(s)
            )));
        }
        for a in 0..n {
            for b in 0..n {
                if d.tilde.bond(p[a], p[b]) != d.tilde.bond(a, b) {
                    return Some(Violation::BadAction(format!(
                        "theta({}) does not preserve the bond {} - {}",
                        d.prime.label(s),
                        d.tilde.label(a),
                        d.tilde.label(b)
                    )));
                }
            }
        }
    }
    // Braid relations of W' on the permutations.
    for s in 0..d.prime.rank() {
        for t in s..d.prime.rank() {
            let m = match d.prime.bond(s, t) {
                Bond::Finite(m) => m,
                Bond::Inf => continue,
            };
            let mut x: Vec<usize> = (0..n).collect();
            for _ in 0..m {
                x = x.iter().map(|&k| d.theta[s][d.theta[t][k]]).collect();
            }
            if x.iter().enumerate().any(|(k, &y)| k != y) {
                return Some(Violation::BadAction(format!(
                    "(theta({}) theta({}))^{m} is not the identity",
                    d.prime.label(s),
                    d.prime.label(t)
                )));
            }
        }
    }
    let mut orbit_of = vec![usize::MAX; n];
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        orbit_of[start] = start;
        while let Some(x) = stack.pop() {
            for p in &d.theta {
                if orbit_of[p[x]] == usize::MAX {
                    orbit_of[p[x]] = start;
                    stack.push(p[x]);
                }
            }
        }
    }
    let mut hit = HashSet::new();
    for &r in &d.j {
        if r >= n || !hit.insert(orbit_of[r]) {
            return Some(Violation::BadRepresentatives(format!(
                "two representatives in one orbit (at index {r})"
            )));
        }
    }
    let orbits: HashSet<usize> = orbit_of.iter().copied().collect();
    if hit.len() != orbits.len() {
        return Some(Violation::BadRepresentatives(
            "some orbit has no representative".into(),
        ));
    }
    None
}

/// Decide conditions (1) and (2); on success return the Coxeter matrix of
/// `(W, I u J)`. Orders use repeated multiplication up to `bound`.
pub fn check_external(d: &ExtData, bound: u32, exec: Execution) -> Result<Verdict> {
    if let Some(v) = check_action(d) {
        return Ok(Verdict::Violation(v));
    }
    for &r in &d.j {
        if d.prime.index_of(d.tilde.label(r)).is_some() {
            return Err(Error::Precondition(format!(
                "label {} used in both W' and W~",
                d.tilde.label(r)
            )));
        }
    }
    let sp = SemiProduct::new(d)?;
    let (tl, pl) = (&d.tilde, &d.prime);
    let word = |u: &Elem| {
        let w = sp.prime().word_string(u);
        if w.is_empty() {
            "1".to_string()
        } else {
            w
        }
    };

    // (1)
    for &r in &d.j {
        for &s in &d.j {
            for u in sp.group.elems() {
                if sp.perm(u)[s] != r {
                    continue;
                }
                if r != s || !u.in_parabolic(sp.perp(r)) {
                    return Ok(Verdict::Violation(Violation::Condition1 {
                        r: tl.label(r).into(),
                        s: tl.label(s).into(),
                        u: word(u),
                    }));
                }
            }
        }
    }

    // Order of a product of two elements of W, cross-checked against the
    // value the matrix of W~ (or the doubling rule) predicts.
    let order = |x: &SemiElem, predicted: Bond| -> Result<Bond> {
        match (sp.order(x, bound), predicted) {
            (Some(k), Bond::Finite(m)) if k == m => Ok(Bond::Finite(k)),
            (None, Bond::Inf) => Ok(Bond::Inf),
            (None, Bond::Finite(m)) if m > bound => Err(Error::Inconclusive(format!(
                "order {m} exceeds the bound {bound}"
            ))),
            (got, want) => Err(Error::Consistency(format!(
                "order {got:?} where {want} was expected"
            ))),
        }
    };
    let rv_order = |r: usize, v: usize| -> Result<Bond> {
        let x = sp.mul(&sp.from_tilde(r), &sp.from_prime(v));
        let r2 = d.theta[v][r];
        let half = if r2 == r {
            Bond::Finite(1)
        } else {
            tl.bond(r, r2)
        };
        order(&x, half.double())
    };

    // (2), in parallel over pairs.
    let pairs: Vec<(usize, usize)> =
        d.j.iter()
            .flat_map(|&r| (0..tl.rank()).filter(move |&s| s != r).map(move |s| (r, s)))
            .collect();
    let results: Vec<Result<Option<Violation>>> = exec.map(&pairs, |&(r, s)| {
        let rs = sp.mul(&sp.from_tilde(r), &sp.from_tilde(s));
        if order(&rs, tl.bond(r, s))?.is_inf() {
            return Ok(None);
        }
        let perp = sp.perp(r);
        for u in sp.parabolic(perp) {
            let p = sp.perm(u);
            for &t in &d.j {
                if t != r && p[t] == s && !tl.bond(r, t).is_inf() {
                    return Ok(None);
                }
            }
            for v in 0..pl.rank() {
                if p[d.theta[v][r]] == s {
                    let o = rv_order(r, v)?;
                    if o.finite().is_some_and(|m| m > 2) {
                        return Ok(None);
                    }
                }
            }
        }
        Ok(Some(Violation::Condition2 {
            r: tl.label(r).into(),
            s: tl.label(s).into(),
        }))
    });
    for res in results {
        if let Some(v) = res? {
            return Ok(Verdict::Violation(v));
        }
    }

    let np = pl.rank();
    let n = np + d.j.len();
    let mut labels: Vec<String> = pl.labels().to_vec();
    labels.extend(d.j.iter().map(|&r| tl.label(r).to_string()));
    let mut m = vec![vec![Bond::Finite(1); n]; n];
    for a in 0..np {
        for b in 0..np {
            m[a][b] = pl.bond(a, b);
        }
    }
    for (a, &r) in d.j.iter().enumerate() {
        for (b, &s) in d.j.iter().enumerate() {
            if a != b {
                m[np + a][np + b] =
                    order(&sp.mul(&sp.from_tilde(r), &sp.from_tilde(s)), tl.bond(r, s))?;
            }
        }
        for v in 0..np {
            let o = rv_order(r, v)?;
            m[np + a][v] = o;
            m[v][np + a] = o;
        }
    }
    Ok(Verdict::Coxeter(CoxMatrix::new(labels, m)?))
}

/// Whether two matrices agree after matching nodes by label.
pub fn same_up_to_labels(a: &CoxMatrix, b: &CoxMatrix) -> bool {
    if a.rank() != b.rank() {
        return false;
    }
    let map: Option<Vec<usize>> = (0..a.rank()).map(|i| b.index_of(a.label(i))).collect();
    match map {
        None => false,
        Some(p) => (0..a.rank()).all(|i| (0..a.rank()).all(|j| a.bond(i, j) == b.bond(p[i], p[j]))),
    }
}

/// Result of [`construct_from_roots`].
#[derive(Clone, Debug)]
pub enum RootVerdict {
    /// `Pi = Delta u (Pi~ n -C)`, listed in that order.
    Based(Vec<Vector>),
    Violation(Violation),
}

/// Build the simple system of `W = W~ x| W'` from `Delta` (simple roots of
/// `W'`) and `Pi~` (simple roots of `W~`) in the space with Gram matrix
/// `gram`. `budget` bounds the number of reflections used to move each
/// `-pi~` into the fundamental chamber of `W'`.
pub fn construct_from_roots(
    gram: &Mat,
    delta: &[Vector],
    pi_tilde: &[Vector],
    budget: usize,
) -> Result<RootVerdict> {
    let v = |x| Ok(RootVerdict::Violation(x));
    let psi = BasedRootSystem::new(gram.clone(), delta.to_vec());
    let phi = BasedRootSystem::new(gram.clone(), pi_tilde.to_vec());
    if let Err(e) = psi.validate() {
        return v(Violation::NotBased(format!("Delta: {e}")));
    }
    if let Err(e) = phi.validate() {
        return v(Violation::NotBased(format!("Pi~: {e}")));
    }
    let members: HashSet<&Vector> = pi_tilde.iter().collect();
    for (a, alpha) in delta.iter().enumerate() {
        if pi_tilde
            .iter()
            .any(|p| !members.contains(&psi.reflect(alpha, p)))
        {
            return v(Violation::NotStable(a));
        }
    }
    let mut all = delta.to_vec();
    all.extend(pi_tilde.iter().cloned());
    if !rootsys::positively_independent(&all) {
        return v(Violation::NotPositivelyIndependent);
    }
    for p in pi_tilde {
        if psi.to_chamber(&linalg::neg(p), budget) == Chamber::Inconclusive {
            return Err(Error::Inconclusive(
                "could not place -Pi~ in the Tits cone of W' within budget".into(),
            ));
        }
    }
    let mut pi = delta.to_vec();
    pi.extend(
        pi_tilde
            .iter()
            .filter(|p| delta.iter().all(|a| psi.inner(a, p).sign() <= 0))
            .cloned(),
    );
    if let Err(e) = BasedRootSystem::new(gram.clone(), pi.clone()).validate() {
        return Err(Error::Consistency(format!(
            "constructed Pi is not based: {e}"
        )));
    }
    let f = gram.get(0, 0).field();
    for a in 0..delta.len() {
        for b in delta.len()..pi.len() {
            let c = -&psi.inner(&pi[a], &pi[b]);
            let ok = c.is_zero()
                || (&c - &f.one()).sign() >= 0
                || f.recognize_cos(&c).is_some_and(|m| m % 2 == 0);
            if !ok {
                return v(Violation::MixedPair(a, b));
            }
        }
    }
    // Pi~ = W'(Pi \ Delta).
    let mut orbit: HashSet<Vector> = pi[delta.len()..].iter().cloned().collect();
    let mut stack: Vec<Vector> = orbit.iter().cloned().collect();
    while let Some(x) = stack.pop() {
        for alpha in delta {
            let y = psi.reflect(alpha, &x);
            if !members.contains(&y) {
                return Err(Error::Consistency(
                    "W'-orbit of Pi \\ Delta leaves Pi~".into(),
                ));
            }
            if orbit.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    if orbit.len() != pi_tilde.len() {
        return Err(Error::Consistency(
            "W'(Pi \\ Delta) is smaller than Pi~".into(),
        ));
    }
    Ok(RootVerdict::Based(pi))
}

/// The root data of an internal decomposition, in the ambient geometric
/// representation: `(gram, Delta = {alpha_s : s in I}, Pi~ = roots of J~)`.
pub fn roots_of_decomposition(d: &Decomposition) -> (Mat, Vec<Vector>, Vec<Vector>) {
    let sys = d.system();
    let delta = genset_members(d.i())
        .into_iter()
        .map(|s| sys.simple_root(s))
        .collect();
    let pi = d.gens().iter().map(|g| g.root.clone()).collect();
    (sys.gram().clone(), delta, pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bond::Bond::Finite as F;

    fn d4_triality() -> ExtData {
        ExtData {
            prime: CoxMatrix::from_edges(&["a", "b"], &[(0, 1, F(3))]).unwrap(),
            tilde: CoxMatrix::from_edges(
                &["c", "l1", "l2", "l3"],
                &[(0, 1, F(3)), (0, 2, F(3)), (0, 3, F(3))],
            )
            .unwrap(),
            theta: vec![vec![0, 2, 1, 3], vec![0, 1, 3, 2]],
            j: vec![0, 1],
        }
    }

    #[test]
    fn triality_gives_f4() {
        let v = check_external(&d4_triality(), 200, Execution::Sequential).unwrap();
        let f4 = CoxMatrix::from_edges(
            &["b", "a", "l1", "c"],
            &[(0, 1, F(3)), (1, 2, F(4)), (2, 3, F(3))],
        )
        .unwrap();
        assert!(same_up_to_labels(v.matrix().unwrap(), &f4), "{v:?}");
    }

    #[test]
    fn trivial_action_is_direct_product() {
        let d = ExtData {
            prime: CoxMatrix::from_edges(&["a"], &[]).unwrap(),
            tilde: CoxMatrix::from_edges(&["x", "y"], &[(0, 1, F(5))]).unwrap(),
            theta: vec![vec![0, 1]],
            j: vec![0, 1],
        };
        let m = check_external(&d, 200, Execution::Sequential).unwrap();
        let m = m.matrix().unwrap();
        assert_eq!(m.bond(0, 1), F(2));
        assert_eq!(m.bond(1, 2), F(5));
    }

    #[test]
    fn violations() {
        let mut d = d4_triality();
        d.j = vec![0, 1, 2];
        assert!(matches!(
            check_external(&d, 200, Execution::Sequential).unwrap(),
            Verdict::Violation(Violation::BadRepresentatives(_))
        ));
        let mut d = d4_triality();
        d.theta[0] = vec![1, 0, 2, 3];
        assert!(matches!(
            check_external(&d, 200, Execution::Sequential).unwrap(),
            Verdict::Violation(Violation::BadAction(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let d = d4_triality();
        assert_eq!(ExtData::parse(&d.to_text()).unwrap(), d);
    }

    #[test]
    fn rank_two_violation() {
        // A2 form; Pi~ = {a2, s1(a2)} pairs positively with itself.
        let sys =
            CoxeterSystem::new(CoxMatrix::from_edges(&["s1", "s2"], &[(0, 1, F(3))]).unwrap());
        let a1 = sys.simple_root(0);
        let a2 = sys.simple_root(1);
        let b = linalg::add(&a1, &a2);
        let r = construct_from_roots(sys.gram(), &[a1], &[a2, b], 100).unwrap();
        assert!(matches!(r, RootVerdict::Violation(Violation::NotBased(_))));
    }

    #[test]
    fn empty_delta_keeps_pi() {
        let sys =
            CoxeterSystem::new(CoxMatrix::from_edges(&["s1", "s2"], &[(0, 1, F(5))]).unwrap());
        let pi: Vec<Vector> = (0..2).map(|s| sys.simple_root(s)).collect();
        match construct_from_roots(sys.gram(), &[], &pi, 10).unwrap() {
            RootVerdict::Based(p) => assert_eq!(p, pi),
            v => panic!("{v:?}"),
        }
    }
}
