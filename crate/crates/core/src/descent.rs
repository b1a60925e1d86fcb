//! Solomon descent algebras of a finite `W` and of `W~`, and the morphism
//! `restilde: Sigma(W) -> Sigma(W~)`.
//!
//! Both algebras live inside the integral group algebra of `W`, with
//! elements indexed as in [`FiniteGroup`]. Coefficients are exact integers
//! with overflow checks.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coxeter::{genset_members, GenSet, Side};
use crate::decomp::GroupData;
use crate::error::{Error, Result};
use crate::linalg::rank_rational;
use crate::par::Execution;

/// An element of `ZW`, dense over the enumerated group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElem(pub Vec<i64>);

/// Values on the elements of `W`.
pub type ClassFunction = Vec<i64>;

impl AlgElem {
    pub fn zero(n: usize) -> AlgElem {
        AlgElem(vec![0; n])
    }

    pub fn support(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(w, &c)| (w as u32, c))
    }

    pub fn add_scaled(&mut self, c: i64, other: &AlgElem) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = a
                .checked_add(c.checked_mul(*b).expect("coefficient overflow"))
                .expect("coefficient overflow");
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// A Coxeter group inside the enumerated `W`, with its descent sets.
struct Solomon {
    rank: usize,
    members: Vec<u32>,
    /// Right descent set per element of `W` (unused outside `members`).
    desc: Vec<GenSet>,
}

impl Solomon {
    fn x(&self, n: usize, k: GenSet) -> AlgElem {
        let mut a = AlgElem::zero(n);
        for &w in &self.members {
            if self.desc[w as usize] & k == 0 {
                a.0[w as usize] = 1;
            }
        }
        a
    }

    /// Coefficients over the `x_K`, indexed by the bitmask `K`.
    fn expand(&self, a: &AlgElem) -> Result<Vec<i64>> {
        let full: GenSet = (1 << self.rank) - 1;
        let mut by_desc: Vec<Option<i64>> = vec![None; 1 << self.rank];
        let mut inside = vec![false; a.0.len()];
        for &w in &self.members {
            inside[w as usize] = true;
            let c = a.0[w as usize];
            match by_desc[self.desc[w as usize] as usize] {
                None => by_desc[self.desc[w as usize] as usize] = Some(c),
                Some(v) if v == c => {}
                Some(_) => {
                    return Err(Error::Consistency(
                        "element is not constant on descent classes".into(),
                    ))
                }
            }
        }
        if a.support().any(|(w, _)| !inside[w as usize]) {
            return Err(Error::Consistency("element leaves the subgroup".into()));
        }
        // g(T) = sum_{K subset T} c_K is the coefficient on descent set S \ T.
        let g: Vec<i64> = (0..=full)
            .map(|t| {
                by_desc[(full & !t) as usize]
                    .ok_or_else(|| Error::Consistency("missing descent class".into()))
            })
            .collect::<Result<_>>()?;
        let mut c = g;
        for bit in 0..self.rank {
            for k in 0..=full {
                if k >> bit & 1 == 1 {
                    c[k as usize] = c[k as usize]
                        .checked_sub(c[(k & !(1 << bit)) as usize])
                        .expect("coefficient overflow");
                }
            }
        }
        Ok(c)
    }
}

/// The descent algebras of `W` and `W~` for one decomposition.
pub struct DescentAlgebras<'a> {
    data: &'a GroupData<'a>,
    w: Solomon,
    wt: Solomon,
    /// `X^I_{I n K}` and `L_d` per `K`.
    res: Vec<Vec<(u32, GenSet)>>,
}

impl<'a> DescentAlgebras<'a> {
    pub fn new(data: &'a GroupData<'a>) -> Result<DescentAlgebras<'a>> {
        let g = data.group();
        let d = data.decomposition();
        let sys = d.system();
        let n = g.len();
        let w = Solomon {
            rank: sys.rank(),
            members: (0..n as u32).collect(),
            desc: (0..n as u32).map(|x| g.right_descents(x)).collect(),
        };
        let m = d.len();
        let mut desc = vec![0; n];
        for &x in data.tilde() {
            desc[x as usize] = (0..m)
                .filter(|&k| {
                    data.tilde_length(data.mul(x, data.gen_elem(k))) < data.tilde_length(x)
                })
                .fold(0, |acc, k| acc | 1 << k);
        }
        let wt = Solomon {
            rank: m,
            members: data.tilde().to_vec(),
            desc,
        };
        let res = (0..1u64 << sys.rank())
            .map(|k| {
                let ik = d.i() & k;
                d.w_i()
                    .iter()
                    .filter(|x| sys.descents(x, Side::Right) & ik == 0)
                    .map(|x| {
                        let di = g.index_of(x);
                        let dinv = g.inv(di);
                        let l = (0..m)
                            .filter(|&t| {
                                g.elem(data.mul(data.mul(dinv, data.gen_elem(t)), di))
                                    .in_parabolic(k)
                            })
                            .fold(0, |acc, t| acc | 1 << t);
                        (di, l)
                    })
                    .collect()
            })
            .collect();
        Ok(DescentAlgebras { data, w, wt, res })
    }

    fn n(&self) -> usize {
        self.data.group().len()
    }

    pub fn rank(&self) -> usize {
        self.w.rank
    }

    pub fn tilde_rank(&self) -> usize {
        self.wt.rank
    }

    /// `x_K`, the sum of the minimal representatives of `W / W_K`.
    pub fn x(&self, k: GenSet) -> AlgElem {
        self.w.x(self.n(), k)
    }

    /// `x~_L` in `Sigma(W~)`, with `L` a bitmask over `J~`.
    pub fn x_tilde(&self, l: GenSet) -> AlgElem {
        self.wt.x(self.n(), l)
    }

    /// `z = sum of W_I`.
    pub fn z(&self) -> AlgElem {
        let g = self.data.group();
        let mut a = AlgElem::zero(self.n());
        for x in self.data.decomposition().w_i() {
            a.0[g.index_of(x) as usize] = 1;
        }
        a
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let mut c = AlgElem::zero(self.n());
        let bs: Vec<(u32, i64)> = b.support().collect();
        for (x, ca) in a.support() {
            for &(y, cb) in &bs {
                let p = &mut c.0[self.data.mul(x, y) as usize];
                *p = p
                    .checked_add(ca.checked_mul(cb).expect("coefficient overflow"))
                    .expect("coefficient overflow");
            }
        }
        c
    }

    /// Coefficients of `a` over the `x_K`.
    pub fn expand(&self, a: &AlgElem) -> Result<Vec<i64>> {
        self.w.expand(a)
    }

    /// Coefficients of `a` over the `x~_L`.
    pub fn expand_tilde(&self, a: &AlgElem) -> Result<Vec<i64>> {
        self.wt.expand(a)
    }

    /// `x_K x_K'` over the `x_K`.
    pub fn sigma_product(&self, k: GenSet, k2: GenSet) -> Result<Vec<i64>> {
        self.expand(&self.mul(&self.x(k), &self.x(k2)))
    }

    /// The pairs `(d, L_d)` with `d in X^I_{I n K}` and `L_d = J~ n dW_K`.
    pub fn restilde_terms(&self, k: GenSet) -> &[(u32, GenSet)] {
        &self.res[k as usize]
    }

    /// `restilde(x_K)` as coefficients over the `x~_L`.
    pub fn restilde_coeffs(&self, k: GenSet) -> Vec<i64> {
        let mut c = vec![0; 1 << self.wt.rank];
        for &(_, l) in self.restilde_terms(k) {
            c[l as usize] += 1;
        }
        c
    }

    pub fn restilde(&self, k: GenSet) -> AlgElem {
        let mut a = AlgElem::zero(self.n());
        for &(_, l) in self.restilde_terms(k) {
            a.add_scaled(1, &self.x_tilde(l));
        }
        a
    }

    /// `restilde` extended linearly to coefficients over the `x_K`.
    pub fn restilde_linear(&self, coeffs: &[i64]) -> AlgElem {
        let mut a = AlgElem::zero(self.n());
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                a.add_scaled(c, &self.restilde(k as GenSet));
            }
        }
        a
    }

    /// `restilde(x_K x_K') = restilde(x_K) restilde(x_K')` for all pairs,
    /// compared over the `x~_L`.
    pub fn verify_morphism(&self, exec: Execution) -> Result<usize> {
        let n = 1u64 << self.w.rank;
        let pairs: Vec<(GenSet, GenSet)> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        exec.try_for_each(&pairs, |&(k, k2)| {
            let lhs = self.expand_tilde(&self.restilde_linear(&self.sigma_product(k, k2)?))?;
            let rhs = self.expand_tilde(&self.mul(&self.restilde(k), &self.restilde(k2)))?;
            if lhs == rhs {
                Ok(())
            } else {
                Err(Error::Consistency(format!(
                    "restilde is not multiplicative on ({k:#b}, {k2:#b})"
                )))
            }
        })?;
        Ok(pairs.len())
    }

    /// `z restilde(x_K) = x_K z` for every `K`.
    pub fn verify_conjugation(&self) -> Result<()> {
        let z = self.z();
        for k in 0..1u64 << self.w.rank {
            if self.mul(&z, &self.restilde(k)) != self.mul(&self.x(k), &z) {
                return Err(Error::Consistency(format!(
                    "z restilde(x_K) != x_K z for K = {k:#b}"
                )));
            }
        }
        Ok(())
    }

    /// `L -> w L w^-1` on subsets of `J~`, for `s in I`, checked against
    /// conjugation of `x~_L` in the group algebra.
    fn subset_action(&self) -> Result<Vec<Vec<GenSet>>> {
        let d = self.data.decomposition();
        let g = self.data.group();
        let m = self.wt.rank;
        let mut out = Vec::new();
        for s in genset_members(d.i()) {
            let p = d.action_of(s)?;
            let act: Vec<GenSet> = (0..1u64 << m)
                .map(|l| {
                    genset_members(l)
                        .into_iter()
                        .fold(0, |acc, k| acc | 1 << p[k])
                })
                .collect();
            let si = g.index_of(&d.system().gen(s));
            for l in 0..1u64 << m {
                let x = self.x_tilde(l);
                let mut c = AlgElem::zero(self.n());
                for (w, a) in x.support() {
                    c.0[self.data.mul(self.data.mul(si, w), si) as usize] = a;
                }
                if c != self.x_tilde(act[l as usize]) {
                    return Err(Error::Consistency(
                        "s x~_L s is not x~ of the conjugate subset".into(),
                    ));
                }
            }
            out.push(act);
        }
        Ok(out)
    }

    /// The image of `restilde` is the `W_I`-fixed part of `Sigma(W~)`,
    /// by exact ranks. Returns the common dimension.
    pub fn verify_image_fixed(&self) -> Result<usize> {
        let m = self.wt.rank;
        let acts = self.subset_action()?;
        let mut orbit = vec![usize::MAX; 1 << m];
        let mut orbits = 0;
        for start in 0..1usize << m {
            if orbit[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            orbit[start] = orbits;
            while let Some(l) = stack.pop() {
                for a in &acts {
                    let l2 = a[l] as usize;
                    if orbit[l2] == usize::MAX {
                        orbit[l2] = orbits;
                        stack.push(l2);
                    }
                }
            }
            orbits += 1;
        }
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        let fixed: Vec<Vec<BigRational>> = (0..orbits)
            .map(|o| orbit.iter().map(|&x| q((x == o) as i64)).collect())
            .collect();
        let image: Vec<Vec<BigRational>> = (0..1u64 << self.w.rank)
            .map(|k| {
                let c = self.restilde_coeffs(k);
                if (0..1usize << m)
                    .any(|l| (0..1usize << m).any(|l2| orbit[l] == orbit[l2] && c[l] != c[l2]))
                {
                    return Err(Error::Consistency(format!(
                        "restilde(x_K) is not W_I-fixed for K = {k:#b}"
                    )));
                }
                Ok(c.into_iter().map(q).collect())
            })
            .collect::<Result<_>>()?;
        let r_image = rank_rational(&image);
        let mut both = fixed.clone();
        both.extend(image);
        if r_image != orbits || rank_rational(&both) != orbits {
            return Err(Error::Consistency(format!(
                "image has rank {r_image}, fixed subspace has dimension {orbits}"
            )));
        }
        Ok(orbits)
    }

    /// `theta(x_K)(w) = #{a in X_K : a^-1 w a in W_K}`.
    pub fn theta(&self, k: GenSet) -> ClassFunction {
        let g = self.data.group();
        let reps: Vec<u32> = (0..self.n() as u32)
            .filter(|&a| g.right_descents(a) & k == 0)
            .collect();
        (0..self.n() as u32)
            .map(|w| {
                reps.iter()
                    .filter(|&&a| {
                        g.elem(self.data.mul(self.data.mul(g.inv(a), w), a))
                            .in_parabolic(k)
                    })
                    .count() as i64
            })
            .collect()
    }

    /// `theta~(x~_L)` on `W~` (zero elsewhere).
    pub fn theta_tilde(&self, l: GenSet) -> ClassFunction {
        let g = self.data.group();
        let gens: Vec<u32> = genset_members(l)
            .into_iter()
            .map(|t| self.data.gen_elem(t))
            .collect();
        let sub: HashSet<u32> = self.data.closure(&gens);
        let reps: Vec<u32> = self
            .wt
            .members
            .iter()
            .copied()
            .filter(|&a| self.wt.desc[a as usize] & l == 0)
            .collect();
        let mut out = vec![0; self.n()];
        for &w in &self.wt.members {
            out[w as usize] = reps
                .iter()
                .filter(|&&a| sub.contains(&self.data.mul(self.data.mul(g.inv(a), w), a)))
                .count() as i64;
        }
        out
    }

    /// `Res theta(x_K) = theta~(restilde(x_K))` on `W~`, for every `K`.
    pub fn verify_diagram(&self, exec: Execution) -> Result<()> {
        let m = self.wt.rank;
        let thetas: Vec<ClassFunction> = exec.map(&(0..1u64 << m).collect::<Vec<_>>(), |&l| {
            self.theta_tilde(l)
        });
        let ks: Vec<GenSet> = (0..1u64 << self.w.rank).collect();
        exec.try_for_each(&ks, |&k| {
            let lhs = self.theta(k);
            let mut rhs = vec![0i64; self.n()];
            for &(_, l) in self.restilde_terms(k) {
                for (r, v) in rhs.iter_mut().zip(&thetas[l as usize]) {
                    *r += v;
                }
            }
            if self
                .wt
                .members
                .iter()
                .all(|&w| lhs[w as usize] == rhs[w as usize])
            {
                Ok(())
            } else {
                Err(Error::Consistency(format!(
                    "character diagram fails for K = {k:#b}"
                )))
            }
        })
    }
}
