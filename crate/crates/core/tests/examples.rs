use std::collections::HashSet;

use coxdecomp::catalog::builtin_system;
use coxdecomp::coxeter::{genset, CoxeterSystem, Elem};
use coxdecomp::decomp::Decomposition;
use coxdecomp::rootsys::{chi, positive_roots, BasedRootSystem};
use coxdecomp::Bond::{self, Finite as F};

fn decompose(label: &str, i: &[&str]) -> Decomposition {
    let sys = builtin_system(label).unwrap();
    let idx = i.iter().map(|l| sys.matrix().index_of(l).unwrap());
    Decomposition::new(sys.clone(), genset(idx)).unwrap()
}

fn gen(d: &Decomposition, word: &str) -> usize {
    d.gen_index(&d.system().elem_str(word).unwrap())
        .unwrap_or_else(|| panic!("{word} is not in J~"))
}

#[test]
fn f4_generators() {
    let d = decompose("F4", &["s1", "s2"]);
    let sys = d.system();
    let want: HashSet<Elem> = ["t1", "t2", "s1t1s1", "s2s1t1s1s2"]
        .iter()
        .map(|w| sys.elem_str(w).unwrap())
        .collect();
    let got: HashSet<Elem> = d.gens().iter().map(|g| g.elem.clone()).collect();
    assert_eq!(got, want);
    let k = gen(&d, "s2s1t1s1s2");
    assert_eq!(sys.label(d.nu(k)), "t1");
    assert_eq!(d.palindromic_expr(k).unwrap().len(), 5);
    d.verify_canonical(k).unwrap();
    let centre = gen(&d, "t2");
    for leaf in ["t1", "s1t1s1", "s2s1t1s1s2"] {
        assert_eq!(d.tilde_matrix().bond(centre, gen(&d, leaf)), F(3));
    }
}

#[test]
fn bonds_from_double_cosets() {
    // f(sts, t) = s and m~ = m_{s,t} / 2.
    let d = decompose("I2(10)", &["s"]);
    let (sts, t) = (gen(&d, "sts"), gen(&d, "t"));
    assert_eq!(d.f_elem(sts, t), d.system().gen(0));
    assert_eq!(d.m_tilde(sts, t).unwrap(), F(5));
    assert_eq!(d.m_tilde(sts, sts).unwrap(), F(1));

    let d = decompose("B4", &["t"]);
    assert_eq!(d.m_tilde(gen(&d, "ts1t"), gen(&d, "s1")).unwrap(), F(2));
    assert!(d.f_elem(gen(&d, "ts1t"), gen(&d, "s2")).is_identity());

    // Row (c) of ~C3: t_1 --inf-- t'_1.
    let d = decompose("~C3", &["s1", "s2"]);
    assert_eq!(
        d.m_tilde(gen(&d, "t"), gen(&d, "s1s2t's2s1")).unwrap(),
        Bond::Inf
    );
}

#[test]
fn length_in_j_of_a_b3_element() {
    let d = decompose("B3", &["t"]);
    let w = d.system().elem_str("s1ts1t").unwrap();
    assert!(d.in_tilde(&w));
    assert_eq!(d.ell_j(&w), 2);
    assert_eq!(d.tilde_length(&w).unwrap(), 2);
    for k in 0..d.len() {
        let t = &d.gens()[k].elem;
        assert_eq!((d.ell_j(t), d.tilde_length(t).unwrap()), (1, 1));
    }
}

fn closure(sys: &CoxeterSystem, gens: &[Elem]) -> HashSet<Elem> {
    let mut seen = HashSet::from([sys.identity()]);
    let mut stack = vec![sys.identity()];
    while let Some(w) = stack.pop() {
        for g in gens {
            let x = sys.mul(&w, g);
            if seen.insert(x.clone()) {
                stack.push(x);
            }
        }
    }
    seen
}

/// chi against `{t in W' : N(t) n W' = {t}}` for every set of at most three reflections.
#[test]
fn canonical_generators_match_n_sets() {
    for label in ["A3", "B3"] {
        let sys = builtin_system(label).unwrap();
        let refl: Vec<Elem> = positive_roots(&sys, None)
            .iter()
            .map(|r| sys.reflection_of_root(r))
            .collect();
        let n = refl.len();
        let mut subsets = Vec::new();
        for a in 0..n {
            subsets.push(vec![a]);
            for b in a + 1..n {
                subsets.push(vec![a, b]);
                for c in b + 1..n {
                    subsets.push(vec![a, b, c]);
                }
            }
        }
        for s in subsets {
            let gens: Vec<Elem> = s.iter().map(|&k| refl[k].clone()).collect();
            let sub = closure(&sys, &gens);
            let want: HashSet<Elem> = refl
                .iter()
                .filter(|t| sub.contains(*t))
                .filter(|t| {
                    sys.n_set(t)
                        .iter()
                        .filter(|r| sub.contains(&r.elem))
                        .count()
                        == 1
                })
                .cloned()
                .collect();
            let r = chi(&sys, &gens, 64).unwrap();
            assert!(r.complete);
            let got: HashSet<Elem> = r.delta.into_iter().map(|x| x.elem).collect();
            assert_eq!(got, want, "{label} {s:?}");
        }
    }
}

/// Root subsystems of dihedral reflection subgroups of B3 are based.
#[test]
fn dihedral_subsystems_are_based() {
    let sys = builtin_system("B3").unwrap();
    let roots = positive_roots(&sys, None);
    for a in 0..roots.len() {
        for b in a + 1..roots.len() {
            let gens = [
                sys.reflection_of_root(&roots[a]),
                sys.reflection_of_root(&roots[b]),
            ];
            let delta: Vec<_> = chi(&sys, &gens, 64)
                .unwrap()
                .delta
                .into_iter()
                .map(|r| r.root)
                .collect();
            assert_eq!(delta.len(), 2);
            BasedRootSystem::new(sys.gram().clone(), delta)
                .validate()
                .unwrap();
        }
    }
}

/// Generators conjugate in W~ have nu in the same odd class of S.
#[test]
fn conjugate_generators_have_conjugate_nu() {
    for (label, i) in [
        ("B3", vec!["t"]),
        ("~C2", vec!["t", "t'"]),
        ("~G2", vec!["s1", "s2"]),
    ] {
        let d = decompose(label, &i);
        let sys = d.system();
        let class_of = |s: usize| {
            sys.matrix()
                .odd_classes()
                .iter()
                .position(|c| c.contains(&s))
                .unwrap()
        };
        let tilde: Vec<Elem> = sys.ball(6).into_iter().filter(|w| d.in_tilde(w)).collect();
        for a in 0..d.len() {
            for w in &tilde {
                if let Some(b) = d.gen_index(&sys.conj(w, &d.gens()[a].elem)) {
                    assert_eq!(class_of(d.nu(a)), class_of(d.nu(b)), "{label}");
                }
            }
        }
    }
}
