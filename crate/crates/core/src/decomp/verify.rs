//! Brute-force verification of the parabolic statements on enumerated groups.

use std::collections::HashSet;

use super::Decomposition;
use crate::coxeter::{genset_members, Elem, FiniteGroup, GenSet, Side};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::par::Execution;
use crate::rootsys::{classify_gram, GramClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicReport {
    pub k: GenSet,
    pub k_plus: Vec<usize>,
    pub double_cosets: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParafineWitness {
    pub k: GenSet,
    pub d: Elem,
}

/// Tables over a finite `W` shared by the checks.
pub struct GroupData<'a> {
    d: &'a Decomposition,
    g: &'a FiniteGroup,
    table: Vec<u32>,
    phi: Vec<u32>,
    tilde: Vec<u32>,
    gen_idx: Vec<u32>,
    tilde_len: Vec<usize>,
}

impl<'a> GroupData<'a> {
    pub fn new(d: &'a Decomposition, g: &'a FiniteGroup) -> Result<GroupData<'a>> {
        if !std::ptr::eq(d.system().as_ref(), g.system().as_ref()) {
            return Err(Error::Precondition(
                "group and decomposition use different systems".into(),
            ));
        }
        let table = g.mult_table();
        let phi: Vec<u32> = (0..g.len() as u32)
            .map(|w| {
                g.elem(w)
                    .letters()
                    .filter(|&s| d.i() >> s & 1 == 1)
                    .fold(0, |acc, s| g.rmul_gen(acc, s))
            })
            .collect();
        let tilde: Vec<u32> = (0..g.len() as u32)
            .filter(|&w| phi[w as usize] == 0)
            .collect();
        let gen_idx = d.gens().iter().map(|t| g.index_of(&t.elem)).collect();
        let mut tilde_len = vec![usize::MAX; g.len()];
        for &w in &tilde {
            tilde_len[w as usize] = d.tilde_length(g.elem(w))?;
        }
        Ok(GroupData {
            d,
            g,
            table,
            phi,
            tilde,
            gen_idx,
            tilde_len,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.g
    }

    pub fn decomposition(&self) -> &Decomposition {
        self.d
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.g.len() + b as usize]
    }

    pub fn phi(&self, w: u32) -> u32 {
        self.phi[w as usize]
    }

    /// Elements of `W~`, ascending.
    pub fn tilde(&self) -> &[u32] {
        &self.tilde
    }

    pub fn gen_elem(&self, k: usize) -> u32 {
        self.gen_idx[k]
    }

    pub fn tilde_length(&self, w: u32) -> usize {
        self.tilde_len[w as usize]
    }

    /// Subgroup generated by the given elements.
    pub fn closure(&self, gens: &[u32]) -> HashSet<u32> {
        let mut seen = HashSet::from([0u32]);
        let mut stack = vec![0u32];
        while let Some(w) = stack.pop() {
            for &g in gens {
                let x = self.mul(w, g);
                if seen.insert(x) {
                    stack.push(x);
                }
            }
        }
        seen
    }

    fn in_parabolic(&self, w: u32, k: GenSet) -> bool {
        self.g.elem(w).in_parabolic(k)
    }

    /// Props on `W_K n W~`, the double cosets `W~ d W_K` and their
    /// intersections, for one `K`.
    pub fn verify_parabolic(&self, k: GenSet) -> Result<ParabolicReport> {
        let (d, g) = (self.d, self.g);
        let sys = d.system();
        let fail = |what: &str| {
            Err(Error::Consistency(format!(
                "K = {{{}}}: {what}",
                sys.set_string(k)
            )))
        };
        let kp = d.k_plus(k)?;
        let kp_elems: Vec<u32> = kp.iter().map(|&i| self.gen_idx[i]).collect();

        let lhs: HashSet<u32> = self
            .tilde
            .iter()
            .copied()
            .filter(|&w| self.in_parabolic(w, k))
            .collect();
        if lhs != self.closure(&kp_elems) {
            return fail("W_K n W~ differs from the subgroup generated by K+");
        }
        let in_wk: Vec<usize> = (0..d.len())
            .filter(|&i| self.in_parabolic(self.gen_idx[i], k))
            .collect();
        if in_wk != kp {
            return fail("W_K n J~ differs from K+");
        }

        let wk: Vec<u32> = (0..g.len() as u32)
            .filter(|&w| self.in_parabolic(w, k))
            .collect();
        let ik = d.i() & k;
        let reps: Vec<&Elem> = d
            .w_i()
            .iter()
            .filter(|x| sys.descents(x, Side::Right) & ik == 0)
            .collect();
        let mut covered = vec![false; g.len()];
        for rep in &reps {
            let di = g.index_of(rep);
            // W~ d W_K by brute force.
            let mut dc = HashSet::new();
            for &w in &self.tilde {
                let wd = self.mul(w, di);
                for &x in &wk {
                    dc.insert(self.mul(wd, x));
                }
            }
            // ... and by its image under phi.
            let by_phi: HashSet<u32> = (0..g.len() as u32)
                .filter(|&v| {
                    let a = g.elem(self.phi[v as usize]);
                    sys.min_coset_rep(a, ik, Side::Right) == **rep
                })
                .collect();
            if dc != by_phi {
                return fail("double coset differs from its phi-description");
            }
            if dc.iter().any(|&v| v != di && g.length(v) <= rep.length()) {
                return fail("d is not the unique minimum of its double coset");
            }
            for &v in &dc {
                if std::mem::replace(&mut covered[v as usize], true) {
                    return fail("double cosets of distinct d overlap");
                }
            }
            // W~ n dW_K = W~_{J~ n dW_K}.
            let dinv = g.inv(di);
            let conj_in_k = |w: u32| self.in_parabolic(self.mul(self.mul(dinv, w), di), k);
            let lhs: HashSet<u32> = self
                .tilde
                .iter()
                .copied()
                .filter(|&w| conj_in_k(w))
                .collect();
            let ld: Vec<u32> = self
                .gen_idx
                .iter()
                .copied()
                .filter(|&t| conj_in_k(t))
                .collect();
            if lhs != self.closure(&ld) {
                return fail("W~ n dW_K is not generated by J~ n dW_K");
            }
        }
        if covered.iter().any(|c| !c) {
            return fail("double cosets do not cover W");
        }
        Ok(ParabolicReport {
            k,
            k_plus: kp,
            double_cosets: reps.len(),
        })
    }

    /// `W_I x X~_L -> X_L, (w, x) -> wx` is a bijection.
    pub fn verify_produit_x(&self, l: &[usize]) -> Result<()> {
        let g = self.g;
        let sub: Vec<u32> = self
            .closure(&l.iter().map(|&k| self.gen_idx[k]).collect::<Vec<_>>())
            .into_iter()
            .collect();
        let x_l: HashSet<u32> = (0..g.len() as u32)
            .filter(|&w| {
                sub.iter()
                    .all(|&u| u == 0 || g.length(self.mul(w, u)) > g.length(w))
            })
            .collect();
        let x_tilde: Vec<u32> = self
            .tilde
            .iter()
            .copied()
            .filter(|&w| {
                sub.iter()
                    .all(|&u| u == 0 || self.tilde_length(self.mul(w, u)) > self.tilde_length(w))
            })
            .collect();
        let wi: Vec<u32> = self.d.w_i().iter().map(|w| g.index_of(w)).collect();
        let mut image = HashSet::new();
        for &a in &wi {
            for &x in &x_tilde {
                if !image.insert(self.mul(a, x)) {
                    return Err(Error::Consistency(
                        "W_I x X~_L -> X_L is not injective".into(),
                    ));
                }
            }
        }
        if image != x_l {
            return Err(Error::Consistency(
                "W_I x X~_L -> X_L is not onto X_L".into(),
            ));
        }
        Ok(())
    }

    /// All of the above for every `K` subset of `S` and every `L` subset of `J~`.
    pub fn verify_all(&self, exec: Execution) -> Result<Vec<ParabolicReport>> {
        let n = self.d.system().rank();
        let ks: Vec<GenSet> = (0..1u64 << n).collect();
        let reports: Vec<Result<ParabolicReport>> = exec.map(&ks, |&k| self.verify_parabolic(k));
        let m = self.d.len();
        let ls: Vec<u64> = (0..1u64 << m).collect();
        exec.try_for_each(&ls, |&mask| self.verify_produit_x(&genset_members(mask)))?;
        reports.into_iter().collect()
    }
}

impl Decomposition {
    /// Search for `K` with `W_K` finite and `d in X^I_{I n K}` with
    /// `W~_L = W~ n dW_K`; `K` by size then bitmask, `d` by `(length, ShortLex)`.
    pub fn verify_parafine(&self, l: &[usize]) -> Result<ParafineWitness> {
        let sys = self.system();
        if !l.is_empty() {
            let roots: Vec<_> = l.iter().map(|&k| self.gens()[k].root.clone()).collect();
            let g = Mat::from_rows(
                roots
                    .iter()
                    .map(|a| roots.iter().map(|b| sys.inner(a, b)).collect())
                    .collect(),
            );
            if classify_gram(&g) != GramClass::Finite {
                return Err(Error::Precondition("W~_L is not certified finite".into()));
            }
        }
        let mut sub: HashSet<Elem> = HashSet::from([sys.identity()]);
        let mut stack = vec![sys.identity()];
        while let Some(w) = stack.pop() {
            for &k in l {
                let x = sys.mul(&w, &self.gens()[k].elem);
                if sub.insert(x.clone()) {
                    stack.push(x);
                }
            }
        }
        let n = sys.rank();
        let mut ks: Vec<GenSet> = (0..1u64 << n)
            .filter(|&k| sys.parabolic_is_finite(k))
            .collect();
        ks.sort_by_key(|&k| (k.count_ones(), k));
        for k in ks {
            let wk = sys.parabolic_elements(k)?;
            let ik = self.i() & k;
            for d in self
                .w_i()
                .iter()
                .filter(|x| sys.descents(x, Side::Right) & ik == 0)
            {
                let conj: HashSet<Elem> = wk
                    .iter()
                    .map(|x| sys.conj(d, x))
                    .filter(|e| self.in_tilde(e))
                    .collect();
                if conj == sub {
                    return Ok(ParafineWitness { k, d: d.clone() });
                }
            }
        }
        Err(Error::Consistency(
            "no parabolic witness found for W~_L".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bond::Bond::Finite as F;
    use crate::coxeter::{genset, CoxMatrix, CoxeterSystem};

    #[test]
    fn b3_parabolics() {
        let sys = CoxeterSystem::new(
            CoxMatrix::from_edges(&["t", "s1", "s2"], &[(0, 1, F(4)), (1, 2, F(3))]).unwrap(),
        );
        let d = Decomposition::new(sys.clone(), genset([0])).unwrap();
        let g = FiniteGroup::new(sys.clone()).unwrap();
        let data = GroupData::new(&d, &g).unwrap();
        let r = data.verify_parabolic(genset([0, 1])).unwrap();
        let kp: HashSet<Elem> = r.k_plus.iter().map(|&k| d.gens()[k].elem.clone()).collect();
        assert_eq!(kp, HashSet::from([sys.gen(1), sys.elem(&[0, 1, 0])]));
        assert_eq!(d.k_plus(sys.all_gens()).unwrap().len(), d.len());
        assert!(d.k_plus(genset([0])).unwrap().is_empty());
        let all = data.verify_all(Execution::Sequential).unwrap();
        assert_eq!(all.len(), 8);
    }

    #[test]
    fn parafine_in_c2_affine() {
        let sys = CoxeterSystem::new(
            CoxMatrix::from_edges(&["t", "s1", "t'"], &[(0, 1, F(4)), (1, 2, F(4))]).unwrap(),
        );
        let d = Decomposition::new(sys.clone(), genset([0, 2])).unwrap();
        let w = d.verify_parafine(&[]).unwrap();
        assert_eq!(w.k, 0);
        for k in 0..d.len() {
            d.verify_parafine(&[k]).unwrap();
        }
    }
}
