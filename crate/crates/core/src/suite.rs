//! Exhaustive invariant checks over finite sets of elements and roots.
//!
//! Each check returns the number of cases examined, or a `Consistency`
//! error naming the first counterexample.

use std::collections::HashSet;

use crate::coxeter::{genset_members, root_sign, CoxeterSystem, Elem};
use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::external::{check_external, same_up_to_labels, ExtData, Verdict};
use crate::linalg::Vector;
use crate::par::Execution;
use crate::rootsys::{brink_check, classify_gram, positive_roots, support, GramClass};

/// A named check and its outcome.
#[derive(Debug)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Result<usize>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn line(&self) -> String {
        match &self.outcome {
            Ok(1) => format!("PASS {} (1 case)", self.name),
            Ok(n) => format!("PASS {} ({n} cases)", self.name),
            Err(e) => format!("FAIL {}: {e}", self.name),
        }
    }
}

fn fail<T>(msg: String) -> Result<T> {
    Err(Error::Consistency(msg))
}

fn first_err(v: Vec<Result<usize>>) -> Result<usize> {
    v.into_iter().sum()
}

/// `w = w~ a` with `w~` in `W~`, `a` in `W_I` and `a` the unique element of
/// minimal length in `W~ a` among `elems`; distinct `w` give distinct pairs.
/// When `elems` is a whole finite group the pairs exhaust `W~ x W_I`.
pub fn factorization(d: &Decomposition, elems: &[Elem], whole_group: bool) -> Result<usize> {
    let sys = d.system();
    let mut pairs = HashSet::new();
    let mut min_len: std::collections::HashMap<Elem, (usize, usize)> = Default::default();
    for w in elems {
        let (wt, a) = d.factorize(w);
        let name = sys.word_string(w);
        if sys.mul(&wt, &a) != *w {
            return fail(format!("w~ a != w for w = {name}"));
        }
        if !d.phi(&wt).is_identity() || !d.in_tilde(&wt) {
            return fail(format!("phi(w~) != 1 for w = {name}"));
        }
        if !a.in_parabolic(d.i()) {
            return fail(format!("a is not in W_I for w = {name}"));
        }
        if sys.mul(&a, &wt).length() < a.length() {
            return fail(format!("l(a w~) < l(a) for w = {name}"));
        }
        if !pairs.insert((wt, a.clone())) {
            return fail(format!("factorization of {name} is not unique"));
        }
        let e = min_len.entry(a.clone()).or_insert((usize::MAX, 0));
        if w.length() < e.0 {
            *e = (w.length(), 1);
        } else if w.length() == e.0 {
            e.1 += 1;
        }
    }
    for (a, (l, count)) in &min_len {
        if *l != a.length() || *count != 1 {
            return fail(format!(
                "{} is not the unique minimum of its coset",
                sys.word_string(a)
            ));
        }
    }
    if whole_group {
        let tilde = elems.iter().filter(|w| d.in_tilde(w)).count();
        if tilde * d.w_i().len() != elems.len() {
            return fail(format!(
                "|W~| |W_I| = {} != |W| = {}",
                tilde * d.w_i().len(),
                elems.len()
            ));
        }
    }
    Ok(elems.len())
}

/// `l_J(w~) = l~(w~)` for `w~` in `elems n W~`, together with
/// `l_J(a w) = l_J(w a) = l_J(w)` and `l~(a w a^-1) = l~(w)` for `a` in `W_I`.
pub fn length_identity(d: &Decomposition, elems: &[Elem], exec: Execution) -> Result<usize> {
    let sys = d.system();
    let tilde: Vec<&Elem> = elems.iter().filter(|w| d.in_tilde(w)).collect();
    first_err(exec.map(&tilde, |w| {
        let name = sys.word_string(w);
        let lj = d.ell_j(w);
        let lt = d.tilde_length(w)?;
        if lj != lt {
            return fail(format!("l_J({name}) = {lj} but l~ = {lt}"));
        }
        for a in d.w_i() {
            if d.ell_j(&sys.mul(a, w)) != lj || d.ell_j(&sys.mul(w, a)) != lj {
                return fail(format!("l_J changes under W_I translation of {name}"));
            }
            if d.tilde_length(&sys.conj(a, w))? != lt {
                return fail(format!("l~ changes under W_I conjugation of {name}"));
            }
        }
        Ok(1)
    }))
}

/// `N(t~) n W~ = {t~}` for every generator.
pub fn canonical(d: &Decomposition) -> Result<usize> {
    (0..d.len()).try_for_each(|k| d.verify_canonical(k))?;
    Ok(d.len())
}

/// Every component of `M~` of an affine ambient system is affine.
pub fn affine_components(d: &Decomposition) -> Result<usize> {
    let comps = d.tilde_matrix().components();
    for c in &comps {
        let class = classify_gram(&d.tilde_system().gram().principal(c));
        if class != GramClass::Affine {
            let names: Vec<String> = c.iter().map(|&k| d.label(k)).collect();
            return fail(format!("component {{{}}} is {class}", names.join(",")));
        }
    }
    Ok(comps.len())
}

/// `|J~| = |S|` and the roots of `J~` are linearly independent.
pub fn cardinality(d: &Decomposition) -> Result<usize> {
    let n = d.system().rank();
    if d.len() != n {
        return fail(format!("|J~| = {} but |S| = {n}", d.len()));
    }
    if d.root_rank() != n {
        return fail(format!("roots of J~ have rank {}", d.root_rank()));
    }
    Ok(1)
}

/// Export the decomposition and rebuild the ambient matrix from it.
pub fn external_round_trip(d: &Decomposition, exec: Execution) -> Result<usize> {
    let data = ExtData::from_decomposition(d)?;
    let data = ExtData::parse(&data.to_text())?;
    match check_external(&data, 200, exec)? {
        Verdict::Coxeter(m) if same_up_to_labels(&m, d.system().matrix()) => Ok(1),
        Verdict::Coxeter(m) => fail(format!("rebuilt matrix differs:\n{}", m.to_text())),
        Verdict::Violation(v) => fail(format!("rejected: {v}")),
    }
}

/// `l(ws) > l(w)` exactly when `w(alpha_s) > 0`.
pub fn positive_root_lemma(sys: &CoxeterSystem, elems: &[Elem], exec: Execution) -> Result<usize> {
    first_err(exec.map(elems, |w| {
        for s in 0..sys.rank() {
            let up = sys.rmul_gen(w, s).length() > w.length();
            let pos = root_sign(&sys.apply(w, &sys.simple_root(s))) > 0;
            if up != pos {
                return fail(format!("w = {}, s = {}", sys.word_string(w), sys.label(s)));
            }
        }
        Ok(sys.rank())
    }))
}

/// `|N(w)| = l(w)` and `N(xy) = N(y) + y^-1 N(x) y` (symmetric difference).
pub fn n_cocycle(sys: &CoxeterSystem, elems: &[Elem], exec: Execution) -> Result<usize> {
    let sets: Vec<HashSet<Elem>> = exec.map(elems, |w| {
        sys.n_set(w).into_iter().map(|r| r.elem).collect()
    });
    for (w, n) in elems.iter().zip(&sets) {
        if n.len() != w.length() {
            return fail(format!("|N({})| = {}", sys.word_string(w), n.len()));
        }
    }
    let idx: Vec<usize> = (0..elems.len()).collect();
    first_err(exec.map(&idx, |&i| {
        let (x, nx) = (&elems[i], &sets[i]);
        for (y, ny) in elems.iter().zip(&sets) {
            let yi = sys.inverse(y);
            let conj: HashSet<Elem> = nx.iter().map(|t| sys.mul(&sys.mul(&yi, t), y)).collect();
            let rhs: HashSet<Elem> = ny.symmetric_difference(&conj).cloned().collect();
            let lhs: HashSet<Elem> = sys
                .n_set(&sys.mul(x, y))
                .into_iter()
                .map(|r| r.elem)
                .collect();
            if lhs != rhs {
                return fail(format!(
                    "x = {}, y = {}",
                    sys.word_string(x),
                    sys.word_string(y)
                ));
            }
        }
        Ok(elems.len())
    }))
}

/// For `beta` simple and `gamma != beta` positive, `l(s_b s_g s_b) - l(s_g)`
/// is `2`, `0` or `-2` as `<gamma, beta>` is negative, zero or positive.
pub fn root_product_lengths(
    sys: &CoxeterSystem,
    roots: &[Vector],
    exec: Execution,
) -> Result<usize> {
    first_err(exec.map(roots, |g| {
        let sg = sys.reflection_of_root(g);
        let mut n = 0;
        for b in 0..sys.rank() {
            if *g == sys.simple_root(b) {
                continue;
            }
            let c = sys.conj(&sys.gen(b), &sg);
            let diff = c.length() as i64 - sg.length() as i64;
            let want = -2 * sys.inner(g, &sys.simple_root(b)).sign() as i64;
            if diff != want {
                return fail(format!(
                    "gamma = {}, beta = {}: length change {diff}",
                    sys.word_string(&sg),
                    sys.label(b)
                ));
            }
            n += 1;
        }
        Ok(n)
    }))
}

/// Supports of positive roots are connected and contain the reflection.
pub fn supports(sys: &CoxeterSystem, roots: &[Vector]) -> Result<usize> {
    for g in roots {
        if !support(sys, g)?.connected {
            return fail(format!(
                "support of {} is disconnected",
                sys.word_string(&sys.reflection_of_root(g))
            ));
        }
    }
    Ok(roots.len())
}

/// Coefficient constraints on every positive root.
pub fn brink(sys: &CoxeterSystem, roots: &[Vector]) -> Result<usize> {
    for g in roots {
        if let Err(i) = brink_check(g) {
            return fail(format!(
                "coefficient {i} of {} ({})",
                sys.word_string(&sys.reflection_of_root(g)),
                g[i]
            ));
        }
    }
    Ok(roots.len())
}

/// The root-system checks on the ball of radius `depth`, or on the whole
/// group and all positive roots when `depth` is `None`.
pub fn root_system_suite(
    sys: &CoxeterSystem,
    depth: Option<usize>,
    exec: Execution,
) -> Result<Vec<Check>> {
    let elems = match depth {
        Some(r) => sys.ball(r),
        None => sys.enumerate_group()?,
    };
    let roots = positive_roots(sys, depth);
    Ok(vec![
        Check {
            name: "positive roots and lengths",
            outcome: positive_root_lemma(sys, &elems, exec),
        },
        Check {
            name: "N cocycle",
            outcome: n_cocycle(sys, &elems, exec),
        },
        Check {
            name: "root products and lengths",
            outcome: root_product_lengths(sys, &roots, exec),
        },
        Check {
            name: "connected supports",
            outcome: supports(sys, &roots),
        },
        Check {
            name: "root coefficients",
            outcome: brink(sys, &roots),
        },
    ])
}

/// Checks of a decomposition on `elems` (the whole group when `whole_group`).
pub fn decomposition_suite(
    d: &Decomposition,
    elems: &[Elem],
    whole_group: bool,
    exec: Execution,
) -> Vec<Check> {
    let sys = d.system();
    let mut v = vec![
        Check {
            name: "M~ three ways",
            outcome: d.check_tilde_matrix().map(|_| d.len() * d.len()),
        },
        Check {
            name: "canonical generators",
            outcome: canonical(d),
        },
        Check {
            name: "factorization",
            outcome: factorization(d, elems, whole_group),
        },
        Check {
            name: "length identity",
            outcome: length_identity(d, elems, exec),
        },
    ];
    let irreducible = sys.matrix().components().len() == 1;
    match classify_gram(sys.gram()) {
        GramClass::Finite if irreducible && d.j() != 0 => {
            v.push(Check {
                name: "|J~| = |S|",
                outcome: cardinality(d),
            });
        }
        GramClass::Affine if irreducible => {
            v.push(Check {
                name: "affine components",
                outcome: affine_components(d),
            });
        }
        _ => {}
    }
    if classify_gram(sys.gram()) == GramClass::Finite && !genset_members(d.i()).is_empty() {
        v.push(Check {
            name: "external round trip",
            outcome: external_round_trip(d, exec),
        });
    }
    v
}
