use std::collections::HashSet;
use std::f64::consts::PI;

use proptest::prelude::*;

use coxdecomp::catalog::{builtin, builtin_system, irreducible_names, recognize_irreducible};
use coxdecomp::coxeter::{genset, CoxMatrix, Elem};
use coxdecomp::scalar::field;
use coxdecomp::{Bond, CycReal, Q};

const N: u32 = 12;

/// An element `sum a_k cos(k pi / N)` with its floating-point value.
fn scalar() -> impl Strategy<Value = (CycReal, f64)> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 1..=4).prop_flat_map(|coeffs| {
        prop::collection::vec(0u32..2 * N, coeffs.len()).prop_map(move |ks| {
            let f = field(N);
            let mut x = f.zero();
            let mut v = 0.0;
            for (&(p, q), &k) in coeffs.iter().zip(&ks) {
                x = &x + &f.cos_k(k).scale(Q::new(p, q));
                v += p as f64 / q as f64 * (k as f64 * PI / N as f64).cos();
            }
            (x, v)
        })
    })
}

fn sign_matches(x: &CycReal, v: f64) -> bool {
    match x.sign() {
        0 => v.abs() < 1e-9,
        s if v.abs() < 1e-9 => s != 0,
        s => (s > 0) == (v > 0.0),
    }
}

proptest! {
    #[test]
    fn ring_axioms((a, _) in scalar(), (b, _) in scalar(), (c, _) in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn sign_agrees_with_floats((a, u) in scalar(), (b, v) in scalar()) {
        prop_assert!(sign_matches(&a, u));
        prop_assert!(sign_matches(&(&a * &b), u * v));
        prop_assert!(sign_matches(&(&a - &b), u - v));
    }
}

#[test]
fn recognize_cos_inverts_cos_pi_over() {
    for n in [2, 5, 6, 8, 10, 12, 20, 24] {
        let f = field(n);
        for m in f.representable_orders() {
            let c = f.cos_pi_over(Bond::Finite(m)).unwrap();
            assert_eq!(f.recognize_cos(&c), Some(m), "N = {n}, m = {m}");
            assert!((c.approx() - (PI / m as f64).cos()).abs() < 1e-12);
        }
        assert_eq!(f.recognize_cos(&f.rational(Q::new(3, 4))), None);
    }
}

/// Words in the generators of `label`, with one of the alternating braid
/// relations or an `ss` insertion applied at a chosen position.
fn rewrite(m: &CoxMatrix, word: &[usize], pos: usize, s: usize, t: usize) -> Vec<usize> {
    let mut w = word.to_vec();
    let pos = pos % (w.len() + 1);
    let Bond::Finite(k) = m.bond(s, t) else {
        w.splice(pos..pos, [s, s]);
        return w;
    };
    let alt = |a: usize, b: usize| -> Vec<usize> {
        (0..k).map(|i| if i % 2 == 0 { a } else { b }).collect()
    };
    let (lhs, rhs) = (alt(s, t), alt(t, s));
    if s != t && w.len() >= pos + k as usize && w[pos..pos + k as usize] == lhs[..] {
        w.splice(pos..pos + k as usize, rhs);
    } else {
        w.splice(pos..pos, [s, s]);
    }
    w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_braid_invariant(
        label in prop::sample::select(vec!["B3", "~A2", "H3", "~G2"]),
        word in prop::collection::vec(0usize..3, 0..10),
        moves in prop::collection::vec((0usize..12, 0usize..3, 0usize..3), 1..6),
    ) {
        let sys = builtin_system(label).unwrap();
        let e = sys.elem(&word);
        let mut w = word.clone();
        for &(pos, s, t) in &moves {
            w = rewrite(sys.matrix(), &w, pos, s, t);
            let f = sys.elem(&w);
            prop_assert_eq!(&f, &e);
            prop_assert_eq!(f.word(), e.word());
        }
        let canon: Vec<usize> = e.letters().collect();
        let again = sys.elem(&canon);
        prop_assert_eq!(again.word(), e.word());
        prop_assert_eq!(canon.len(), e.length());
    }

    #[test]
    fn n_cocycle_on_random_pairs(
        label in prop::sample::select(vec!["~A2", "~C2", "B3"]),
        x in prop::collection::vec(0usize..3, 0..8),
        y in prop::collection::vec(0usize..3, 0..8),
    ) {
        let sys = builtin_system(label).unwrap();
        let (x, y) = (sys.elem(&x), sys.elem(&y));
        let n = |w: &Elem| -> HashSet<Elem> { sys.n_set(w).into_iter().map(|r| r.elem).collect() };
        let yi = sys.inverse(&y);
        let conj: HashSet<Elem> = n(&x).iter().map(|t| sys.mul(&sys.mul(&yi, t), &y)).collect();
        let rhs: HashSet<Elem> = n(&y).symmetric_difference(&conj).cloned().collect();
        prop_assert_eq!(n(&sys.mul(&x, &y)), rhs);
        prop_assert_eq!(n(&x).len(), x.length());
    }

    #[test]
    fn recognition_ignores_labels_and_order(
        rank in 1usize..=7,
        pick in any::<prop::sample::Index>(),
        perm in Just((0usize..8).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let names = irreducible_names(rank, 8);
        let name = pick.get(&names);
        let m = builtin(name).unwrap();
        let order: Vec<usize> = perm.into_iter().filter(|&i| i < rank).collect();
        let labels: Vec<String> = (0..rank).map(|i| format!("x{i}")).collect();
        let entries: Vec<Vec<Bond>> =
            order.iter().map(|&i| order.iter().map(|&j| m.bond(i, j)).collect()).collect();
        let shuffled = CoxMatrix::new(labels, entries).unwrap();
        prop_assert_eq!(&recognize_irreducible(&shuffled), name);
    }

    #[test]
    fn factorization_in_affine_c2(word in prop::collection::vec(0usize..3, 0..14)) {
        let sys = builtin_system("~C2").unwrap();
        let d = coxdecomp::decomp::Decomposition::new(sys.clone(), genset([0, 2])).unwrap();
        let w = sys.elem(&word);
        let (wt, a) = d.factorize(&w);
        prop_assert_eq!(sys.mul(&wt, &a), w);
        prop_assert!(d.in_tilde(&wt));
        prop_assert!(a.in_parabolic(d.i()));
        prop_assert_eq!(d.ell_j(&wt), d.tilde_length(&wt).unwrap());
        prop_assert!(sys.mul(&a, &wt).length() >= a.length());
    }
}
