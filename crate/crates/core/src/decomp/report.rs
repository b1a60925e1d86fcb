//! Structured-text and DOT output for decompositions.

use std::fmt::Write as _;

use super::Decomposition;
use crate::bond::Bond;
use crate::coxeter::genset_members;
use crate::error::Result;

/// Disjoint cycles of length at least two, each starting at its least point,
/// ordered by that point.
pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut c = vec![start];
        seen[start] = true;
        let mut k = perm[start];
        while k != start {
            seen[k] = true;
            c.push(k);
            k = perm[k];
        }
        if c.len() > 1 {
            out.push(c);
        }
    }
    out
}

/// Everything the front end prints about a decomposition.
#[derive(Clone, Debug)]
pub struct DecompReport {
    pub ambient: String,
    pub i: Vec<String>,
    pub j: Vec<String>,
    /// Per generator: label (palindromic word), nu, root as text.
    pub gens: Vec<(String, String, Vec<String>)>,
    pub mtilde: Vec<Vec<Bond>>,
    /// Per `s in I`: its label and the permutation of `J~`.
    pub actions: Vec<(String, Vec<usize>)>,
    pub components: Vec<Vec<usize>>,
    /// Per component: recognized type (or "unrecognized (<gram class>)").
    pub component_types: Vec<String>,
    pub complete: bool,
}

impl DecompReport {
    pub fn new(
        d: &Decomposition,
        ambient: &str,
        component_types: Vec<String>,
    ) -> Result<DecompReport> {
        let sys = d.system();
        let actions = genset_members(d.i())
            .into_iter()
            .map(|s| Ok((sys.label(s).to_string(), d.action_of(s)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DecompReport {
            ambient: ambient.to_string(),
            i: genset_members(d.i())
                .iter()
                .map(|&s| sys.label(s).to_string())
                .collect(),
            j: genset_members(d.j())
                .iter()
                .map(|&s| sys.label(s).to_string())
                .collect(),
            gens: (0..d.len())
                .map(|k| {
                    let g = &d.gens()[k];
                    (
                        d.label(k),
                        sys.label(g.t).to_string(),
                        g.root.iter().map(|c| c.to_string()).collect(),
                    )
                })
                .collect(),
            mtilde: (0..d.len())
                .map(|a| (0..d.len()).map(|b| d.tilde_matrix().bond(a, b)).collect())
                .collect(),
            actions,
            components: d.components()?,
            component_types,
            complete: d.is_complete(),
        })
    }

    pub fn label(&self, k: usize) -> &str {
        &self.gens[k].0
    }

    fn cycle_text(&self, perm: &[usize]) -> String {
        let cs = cycles(perm);
        if cs.is_empty() {
            return "id".into();
        }
        cs.iter()
            .map(|c| {
                format!(
                    "({})",
                    c.iter()
                        .map(|&k| self.label(k))
                        .collect::<Vec<_>>()
                        .join(" ")
                )
            })
            .collect::<Vec<_>>()
            .join("")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ambient: {}", self.ambient);
        let _ = writeln!(s, "I: {}", self.i.join(","));
        let _ = writeln!(s, "J: {}", self.j.join(","));
        if !self.complete {
            let _ = writeln!(s, "partial: W_I truncated to a ball");
        }
        let _ = writeln!(s, "generators: {}", self.gens.len());
        for (k, (label, nu, root)) in self.gens.iter().enumerate() {
            let _ = writeln!(s, "  [{k}] word={label} nu={nu} root=({})", root.join(", "));
        }
        let _ = writeln!(s, "M~:");
        for row in &self.mtilde {
            let r: Vec<String> = row.iter().map(|b| b.to_string()).collect();
            let _ = writeln!(s, "  {}", r.join(" "));
        }
        let _ = writeln!(s, "actions:");
        for (lab, perm) in &self.actions {
            let _ = writeln!(s, "  {lab} -> {}", self.cycle_text(perm));
        }
        let _ = writeln!(s, "components: {}", self.components.len());
        for (c, ty) in self.components.iter().zip(&self.component_types) {
            let names: Vec<&str> = c.iter().map(|&k| self.label(k)).collect();
            let _ = writeln!(s, "  {ty}: {}", names.join(","));
        }
        s
    }

    /// DOT graph of the `M~` diagram, nodes coloured by `W_I`-orbit.
    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 8] = [
            "lightblue",
            "lightpink",
            "palegreen",
            "khaki",
            "plum",
            "lightsalmon",
            "lightcyan",
            "wheat",
        ];
        let n = self.gens.len();
        let mut orbit: Vec<usize> = (0..n).collect();
        fn find(o: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while o[r] != r {
                r = o[r];
            }
            o[x] = r;
            r
        }
        for (_, perm) in &self.actions {
            for (a, &b) in perm.iter().enumerate() {
                let (ra, rb) = (find(&mut orbit, a), find(&mut orbit, b));
                orbit[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut roots: Vec<usize> = (0..n).map(|k| find(&mut orbit, k)).collect();
        let mut distinct = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        for r in roots.iter_mut() {
            *r = distinct.iter().position(|x| x == r).unwrap_or(0);
        }
        let mut s = String::from("graph mtilde {\n  node [style=filled];\n");
        for k in 0..n {
            let _ = writeln!(
                s,
                "  n{k} [label=\"{}\", fillcolor={}];",
                self.label(k),
                PALETTE[roots[k] % PALETTE.len()]
            );
        }
        for a in 0..n {
            for b in (a + 1)..n {
                match self.mtilde[a][b] {
                    Bond::Finite(2) => {}
                    Bond::Finite(3) => {
                        let _ = writeln!(s, "  n{a} -- n{b};");
                    }
                    Bond::Finite(m) => {
                        let _ = writeln!(s, "  n{a} -- n{b} [label=\"{m}\"];");
                    }
                    Bond::Inf => {
                        let _ = writeln!(s, "  n{a} -- n{b} [label=\"inf\"];");
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_decomposition() {
        assert_eq!(cycles(&[1, 0, 2, 4, 3]), vec![vec![0, 1], vec![3, 4]]);
        assert!(cycles(&[0, 1]).is_empty());
    }
}
