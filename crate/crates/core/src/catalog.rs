//! Standard Coxeter types, the table of decompositions of irreducible finite
//! and affine types as golden data, and recognition of Coxeter diagrams.
//!
//! Type names are ASCII: `A3`, `I2(5)`, `I2(inf)`, and `~` for affine types
//! (`~G2`, `~C3`). `~B2` is not a separate name; it is `~C2`.

use std::fmt;
use std::sync::Arc;

use crate::bond::Bond::{self, Finite as F, Inf};
use crate::coxeter::{genset, CoxMatrix, CoxeterSystem};
use crate::decomp::{cycles, Decomposition};
use crate::error::{Error, Result};
use crate::rootsys::{classify_gram, GramClass};

fn path(labels: &[String], bonds: &[Bond]) -> Vec<(usize, usize, Bond)> {
    debug_assert_eq!(bonds.len() + 1, labels.len());
    bonds
        .iter()
        .enumerate()
        .map(|(i, &b)| (i, i + 1, b))
        .collect()
}

fn names(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn matrix(labels: Vec<String>, edges: &[(usize, usize, Bond)]) -> Result<CoxMatrix> {
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    CoxMatrix::from_edges(&refs, edges)
}

/// Normalize `Ã3`, `B̃3` and friends to `~A3`, `~B3`.
fn normalize(label: &str) -> String {
    let mut s = label.trim().replace('Ã', "~A");
    if let Some(p) = s.find('\u{303}') {
        s.remove(p);
        s.insert(0, '~');
    }
    s.replace(' ', "")
}

/// The standard Coxeter matrix of a type, with the generator names used in
/// the table (`t`, `s_i`, `t'`, ...).
pub fn builtin(label: &str) -> Result<CoxMatrix> {
    let s = normalize(label);
    let bad = || Error::UnknownType(label.to_string());
    let (affine, body) = match s.strip_prefix('~') {
        Some(b) => (true, b),
        None => (false, s.as_str()),
    };
    if let Some(m) = body.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m: Bond = m.parse().map_err(|_| bad())?;
        if affine || m == F(1) {
            return Err(bad());
        }
        return CoxMatrix::from_edges(&["s", "t"], &[(0, 1, m)]);
    }
    let letter = body.chars().next().ok_or_else(bad)?;
    let n: usize = body[1..].parse().map_err(|_| bad())?;
    let three = |k: usize| vec![F(3); k];
    match (affine, letter, n) {
        (false, 'A', n) if n >= 1 => {
            let l = names("s", 1..=n);
            let e = path(&l, &three(n - 1));
            matrix(l, &e)
        }
        (false, 'B', n) if n >= 2 => {
            let mut l = vec!["t".to_string()];
            l.extend(names("s", 1..=n - 1));
            let mut b = vec![F(4)];
            b.extend(three(n - 2));
            let e = path(&l, &b);
            matrix(l, &e)
        }
        (false, 'D', n) if n >= 4 => {
            let l = names("s", 1..=n);
            let mut e = path(&l[..n - 1], &three(n - 2));
            e.push((n - 3, n - 1, F(3)));
            matrix(l, &e)
        }
        (false, 'E', n @ 6..=8) => {
            let l = names("s", 1..=n);
            let mut e = vec![(0, 2, F(3)), (1, 3, F(3))];
            e.extend((2..n - 1).map(|i| (i, i + 1, F(3))));
            matrix(l, &e)
        }
        (false, 'F', 4) => {
            let l: Vec<String> = ["s2", "s1", "t1", "t2"].map(String::from).to_vec();
            let e = path(&l, &[F(3), F(4), F(3)]);
            matrix(l, &e)
        }
        (false, 'G', 2) => CoxMatrix::from_edges(&["s1", "s2"], &[(0, 1, F(6))]),
        (false, 'H', n @ 3..=4) => {
            let l = names("s", 1..=n);
            let mut b = vec![F(5)];
            b.extend(three(n - 2));
            let e = path(&l, &b);
            matrix(l, &e)
        }
        (true, 'A', 1) => CoxMatrix::from_edges(&["s0", "s1"], &[(0, 1, Inf)]),
        (true, 'A', n) if n >= 2 => {
            let l = names("s", 0..=n);
            let mut e = path(&l, &three(n));
            e.push((n, 0, F(3)));
            matrix(l, &e)
        }
        (true, 'B', n) if n >= 3 => {
            let mut l = vec!["t".to_string()];
            l.extend(names("s", 1..=n));
            let mut b = vec![F(4)];
            b.extend(three(n - 2));
            let mut e = path(&l[..n], &b);
            e.push((n - 2, n, F(3)));
            matrix(l, &e)
        }
        (true, 'C', n) if n >= 2 => {
            let mut l = vec!["t".to_string()];
            l.extend(names("s", 1..=n - 1));
            l.push("t'".into());
            let mut b = vec![F(4)];
            b.extend(three(n - 2));
            b.push(F(4));
            let e = path(&l, &b);
            matrix(l, &e)
        }
        (true, 'D', n) if n >= 4 => {
            let l = names("s", 0..=n);
            let mut e = vec![(0, 2, F(3))];
            e.extend((1..n - 2).map(|i| (i, i + 1, F(3))));
            e.push((n - 2, n - 1, F(3)));
            e.push((n - 2, n, F(3)));
            matrix(l, &e)
        }
        (true, 'G', 2) => CoxMatrix::from_edges(&["t", "s1", "s2"], &[(0, 1, F(6)), (1, 2, F(3))]),
        (true, 'F', 4) => {
            let l: Vec<String> = ["s2", "s1", "t1", "t2", "t3"].map(String::from).to_vec();
            let e = path(&l, &[F(3), F(4), F(3), F(3)]);
            matrix(l, &e)
        }
        _ => Err(bad()),
    }
}

pub fn builtin_system(label: &str) -> Result<Arc<CoxeterSystem>> {
    Ok(CoxeterSystem::new(builtin(label)?))
}

/// Canonical names of the irreducible types of the given rank, in the order
/// recognition tries them. `I2(m)` is listed for `m` up to `max_m`.
pub fn irreducible_names(rank: usize, max_m: u32) -> Vec<String> {
    let mut v = Vec::new();
    match rank {
        0 => {}
        1 => v.push("A1".into()),
        2 => {
            v.extend(["A2", "B2", "G2", "~A1"].map(String::from));
            v.extend((5..=max_m).filter(|&m| m != 6).map(|m| format!("I2({m})")));
        }
        _ => {
            v.push(format!("A{rank}"));
            v.push(format!("B{rank}"));
            if rank >= 4 {
                v.push(format!("D{rank}"));
            }
            if (6..=8).contains(&rank) {
                v.push(format!("E{rank}"));
            }
            if rank == 4 {
                v.push("F4".into());
            }
            if rank == 3 || rank == 4 {
                v.push(format!("H{rank}"));
            }
            let n = rank - 1;
            v.push(format!("~A{n}"));
            if n >= 3 {
                v.push(format!("~B{n}"));
            }
            v.push(format!("~C{n}"));
            if n >= 4 {
                v.push(format!("~D{n}"));
            }
            if n == 2 {
                v.push("~G2".into());
            }
            if n == 4 {
                v.push("~F4".into());
            }
        }
    }
    v
}

/// Bond-preserving bijection `a -> b` by backtracking, if one exists.
pub fn isomorphism(a: &CoxMatrix, b: &CoxMatrix) -> Option<Vec<usize>> {
    let n = a.rank();
    if n != b.rank() {
        return None;
    }
    let profile = |m: &CoxMatrix, i: usize| {
        let mut p: Vec<String> = (0..n)
            .filter(|&j| j != i)
            .map(|j| m.bond(i, j).to_string())
            .collect();
        p.sort();
        p
    };
    let pa: Vec<_> = (0..n).map(|i| profile(a, i)).collect();
    let pb: Vec<_> = (0..n).map(|i| profile(b, i)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        a: &CoxMatrix,
        b: &CoxMatrix,
        pa: &[Vec<String>],
        pb: &[Vec<String>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == a.rank() {
            return true;
        }
        for j in 0..b.rank() {
            if used[j] || pa[i] != pb[j] || (0..i).any(|k| a.bond(i, k) != b.bond(j, map[k])) {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if go(i + 1, a, b, pa, pb, map, used) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    go(0, a, b, &pa, &pb, &mut map, &mut used).then_some(map)
}

/// Name of a connected diagram, or `unrecognized (<gram class>)`.
pub fn recognize_irreducible(m: &CoxMatrix) -> String {
    let max_m = m
        .entries()
        .iter()
        .flatten()
        .filter_map(|b| b.finite())
        .max()
        .unwrap_or(2)
        .max(6);
    for name in irreducible_names(m.rank(), max_m) {
        if let Ok(candidate) = builtin(&name) {
            if isomorphism(m, &candidate).is_some() {
                return name;
            }
        }
    }
    let class = classify_gram(CoxeterSystem::new(m.clone()).gram());
    format!("unrecognized ({class})")
}

/// Components of the diagram with their names.
pub fn recognize(m: &CoxMatrix) -> Vec<(Vec<usize>, String)> {
    m.components()
        .into_iter()
        .map(|c| {
            let name = recognize_irreducible(&m.restrict(&c));
            (c, name)
        })
        .collect()
}

/// Degenerate cases of the table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Note {
    /// `~D3 = ~A3` for `~B3`.
    One,
    /// `~B2 = ~C2`.
    Two,
    /// `~D2 = ~A1 x ~A1` and `~D3 = ~A3` for `~C2`, `~C3`.
    Three,
}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Note::One => "(1)",
            Note::Two => "(2)",
            Note::Three => "(3)",
        })
    }
}

/// One row of the table at a fixed rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub ambient: String,
    pub i: Vec<String>,
    pub decomposition: String,
    /// Expected `M~`, nodes labelled by words for the generators.
    pub tilde: CoxMatrix,
    /// Expected component types, in any order.
    pub types: Vec<String>,
    /// Per `s in I`, its action as disjoint cycles of node labels.
    pub actions: Vec<(String, Vec<Vec<String>>)>,
    pub note: Option<Note>,
    /// The recursion `(a)`..`(d)` defining node names, if any.
    pub tag: Option<char>,
}

impl TableRow {
    pub fn name(&self) -> String {
        format!("{} I={{{}}}", self.ambient, self.i.join(","))
    }

    /// The decomposition of the ambient builtin system for this row's `I`.
    pub fn decompose(&self) -> Result<Decomposition> {
        let sys = builtin_system(&self.ambient)?;
        let i = self
            .i
            .iter()
            .map(|l| {
                sys.matrix()
                    .index_of(l)
                    .ok_or_else(|| Error::Parse(format!("unknown generator {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Decomposition::new(sys, genset(i))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "row {}\nI: {}\ndecomposition: {}\n",
            self.ambient,
            self.i.join(","),
            self.decomposition
        );
        if let Some(n) = self.note {
            s.push_str(&format!("note: {n}\n"));
        }
        if let Some(t) = self.tag {
            s.push_str(&format!("tag: ({t})\n"));
        }
        s.push_str(&format!("types: {}\n", self.types.join(" ")));
        for (g, cs) in &self.actions {
            let body: String = if cs.is_empty() {
                "id".into()
            } else {
                cs.iter().map(|c| format!("({})", c.join(" "))).collect()
            };
            s.push_str(&format!("action {g}: {body}\n"));
        }
        s.push_str("M~:\n");
        s.push_str(&self.tilde.to_text());
        s
    }

    /// Parse rows written by [`TableRow::to_text`], separated by blank lines.
    pub fn parse_all(text: &str) -> Result<Vec<TableRow>> {
        let mut rows = Vec::new();
        for block in text.split("\n\n").map(str::trim).filter(|b| !b.is_empty()) {
            rows.push(TableRow::parse(block)?);
        }
        Ok(rows)
    }

    pub fn parse(block: &str) -> Result<TableRow> {
        let perr = |m: &str| Error::Parse(format!("table row: {m}"));
        let mut lines = block.lines().map(str::trim);
        let ambient = lines
            .next()
            .and_then(|l| l.strip_prefix("row "))
            .ok_or_else(|| perr("expected `row <type>`"))?
            .trim()
            .to_string();
        let (mut i, mut decomposition, mut note, mut tag, mut types, mut actions) = (
            Vec::new(),
            String::new(),
            None,
            None,
            Vec::new(),
            Vec::new(),
        );
        let mut matrix_text = String::new();
        let mut in_matrix = false;
        for l in lines {
            if in_matrix {
                matrix_text.push_str(l);
                matrix_text.push('\n');
            } else if l == "M~:" {
                in_matrix = true;
            } else if let Some(v) = l.strip_prefix("I:") {
                i = v
                    .split(',')
                    .map(|x| x.trim().to_string())
                    .filter(|x| !x.is_empty())
                    .collect();
            } else if let Some(v) = l.strip_prefix("decomposition:") {
                decomposition = v.trim().to_string();
            } else if let Some(v) = l.strip_prefix("note:") {
                note = Some(match v.trim() {
                    "(1)" => Note::One,
                    "(2)" => Note::Two,
                    "(3)" => Note::Three,
                    _ => return Err(perr("bad note")),
                });
            } else if let Some(v) = l.strip_prefix("tag:") {
                tag = v
                    .trim()
                    .trim_matches(|c| c == '(' || c == ')')
                    .chars()
                    .next();
            } else if let Some(v) = l.strip_prefix("types:") {
                types = v.split_whitespace().map(String::from).collect();
            } else if let Some(v) = l.strip_prefix("action ") {
                let (g, body) = v.split_once(':').ok_or_else(|| perr("bad action line"))?;
                let cs: Vec<Vec<String>> = body
                    .split(')')
                    .map(|c| c.trim().trim_start_matches('('))
                    .filter(|c| !c.is_empty() && *c != "id")
                    .map(|c| c.split_whitespace().map(String::from).collect())
                    .collect();
                actions.push((g.trim().to_string(), cs));
            } else if !l.is_empty() {
                return Err(perr(&format!("unexpected line `{l}`")));
            }
        }
        Ok(TableRow {
            ambient,
            i,
            decomposition,
            tilde: CoxMatrix::parse(&matrix_text)?,
            types,
            actions,
            note,
            tag,
        })
    }
}

struct Row {
    ambient: String,
    i: Vec<String>,
    decomposition: String,
    nodes: Vec<String>,
    edges: Vec<(String, String, Bond)>,
    types: Vec<String>,
    actions: Vec<(String, Vec<Vec<String>>)>,
    note: Option<Note>,
    tag: Option<char>,
}

impl Row {
    fn new(ambient: &str, i: &[&str], decomposition: &str) -> Row {
        Row {
            ambient: ambient.into(),
            i: i.iter().map(|s| s.to_string()).collect(),
            decomposition: decomposition.into(),
            nodes: Vec::new(),
            edges: Vec::new(),
            types: Vec::new(),
            actions: Vec::new(),
            note: None,
            tag: None,
        }
    }

    fn nodes<S: AsRef<str>>(mut self, ns: &[S]) -> Row {
        self.nodes = ns.iter().map(|s| s.as_ref().to_string()).collect();
        self
    }

    fn edge(mut self, a: &str, b: &str, m: Bond) -> Row {
        self.edges.push((a.into(), b.into(), m));
        self
    }

    fn chain<S: AsRef<str>>(mut self, ns: &[S]) -> Row {
        for w in ns.windows(2) {
            self.edges
                .push((w[0].as_ref().into(), w[1].as_ref().into(), F(3)));
        }
        self
    }

    fn types(mut self, ts: &[String]) -> Row {
        self.types = ts.to_vec();
        self
    }

    fn act(mut self, s: &str, cs: &[&[&str]]) -> Row {
        self.actions.push((
            s.into(),
            cs.iter()
                .map(|c| c.iter().map(|x| x.to_string()).collect())
                .collect(),
        ));
        self
    }

    fn act_owned(mut self, s: String, cs: Vec<Vec<String>>) -> Row {
        self.actions.push((s, cs));
        self
    }

    fn note(mut self, n: Note) -> Row {
        self.note = Some(n);
        self
    }

    fn tag(mut self, t: char) -> Row {
        self.tag = Some(t);
        self
    }

    fn build(self) -> TableRow {
        let idx = |x: &str| {
            self.nodes
                .iter()
                .position(|n| n == x)
                .unwrap_or_else(|| panic!("node {x}"))
        };
        let edges: Vec<(usize, usize, Bond)> = self
            .edges
            .iter()
            .map(|(a, b, m)| (idx(a), idx(b), *m))
            .collect();
        let refs: Vec<&str> = self.nodes.iter().map(String::as_str).collect();
        TableRow {
            ambient: self.ambient,
            i: self.i,
            decomposition: self.decomposition,
            tilde: CoxMatrix::from_edges(&refs, &edges).expect("golden matrix"),
            types: self.types,
            actions: self.actions,
            note: self.note,
            tag: self.tag,
        }
    }
}

fn rep(t: &str, k: usize) -> Vec<String> {
    vec![t.to_string(); k]
}

fn s(i: usize) -> String {
    format!("s{i}")
}

fn conj(g: &str, w: &str) -> String {
    format!("{g}{w}{g}")
}

/// `t_1 = t`, `t_{i+1} = s_i t_i s_i`.
fn t_chain(n: usize) -> Vec<String> {
    let mut t = vec!["t".to_string()];
    for i in 1..n {
        let next = conj(&s(i), &t[i - 1]);
        t.push(next);
    }
    t
}

/// `t'_i = s_i t'_{i+1} s_i` from a given `t'_n`.
fn t_prime_chain(n: usize, last: String) -> Vec<String> {
    let mut tp = vec![String::new(); n];
    tp[n - 1] = last;
    for i in (1..n).rev() {
        tp[i - 1] = conj(&s(i), &tp[i]);
    }
    tp
}

fn swap2(a: &str, b: &str, c: &str, d: &str) -> Vec<Vec<String>> {
    vec![vec![a.into(), b.into()], vec![c.into(), d.into()]]
}

/// The components `t_i --inf-- t'_i` of rows (b), (c), (d).
fn ladder(row: Row, t: &[String], tp: &[String]) -> Row {
    let mut nodes = t.to_vec();
    nodes.extend(tp.iter().cloned());
    let mut r = row.nodes(&nodes).types(&rep("~A1", t.len()));
    for (a, b) in t.iter().zip(tp) {
        r = r.edge(a, b, Inf);
    }
    r
}

fn dihedral_name(m: u32) -> Vec<String> {
    match m {
        2 => rep("A1", 2),
        3 => vec!["A2".into()],
        4 => vec!["B2".into()],
        6 => vec!["G2".into()],
        m => vec![format!("I2({m})")],
    }
}

/// Parameter ranges of the generated rows: `I2(2m)` for `m <= max_m`,
/// and families whose rank is at most `max_rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scale {
    pub max_m: u32,
    pub max_rank: usize,
}

impl Default for Scale {
    fn default() -> Scale {
        Scale {
            max_m: 6,
            max_rank: 5,
        }
    }
}

/// Rows at the default scale: `I2(2m)` for `m = 2..=6`, `B_n` for
/// `n = 2..=5`, `F4`, `~G2`, `~F4`, `~B_n` for `n = 3, 4` and `~C_n` for
/// `n = 2..=4`.
pub fn table_rows() -> Vec<TableRow> {
    table_rows_at(Scale::default())
}

pub fn table_rows_at(scale: Scale) -> Vec<TableRow> {
    let mut rows = Vec::new();
    let top = scale.max_rank;
    for m in 2..=scale.max_m {
        let amb = format!("I2({})", 2 * m);
        let dec = format!("(Z/2Z) x| W(I2({m}))");
        rows.push(
            Row::new(&amb, &["s"], &dec)
                .nodes(&["sts", "t"])
                .edge("sts", "t", F(m))
                .types(&dihedral_name(m))
                .act("s", &[&["sts", "t"]])
                .build(),
        );
        rows.push(
            Row::new(&amb, &["t"], &dec)
                .nodes(&["s", "tst"])
                .edge("s", "tst", F(m))
                .types(&dihedral_name(m))
                .act("t", &[&["s", "tst"]])
                .build(),
        );
    }
    for n in 2..=top {
        let amb = format!("B{n}");
        let mut nodes = vec!["ts1t".to_string()];
        nodes.extend((1..n).map(s));
        let types = match n {
            2 => rep("A1", 2),
            3 => vec!["A3".into()],
            n => vec![format!("D{n}")],
        };
        let mut r = Row::new(&amb, &["t"], &format!("(Z/2Z) x| W(D{n})"))
            .nodes(&nodes)
            .chain(&(2..n).map(s).collect::<Vec<_>>())
            .types(&types)
            .act("t", &[&["ts1t", "s1"]]);
        if n >= 3 {
            r = r.edge("ts1t", "s2", F(3)).edge("s1", "s2", F(3));
        }
        rows.push(r.build());

        let i: Vec<String> = (1..n).map(s).collect();
        let iref: Vec<&str> = i.iter().map(String::as_str).collect();
        let t = t_chain(n);
        let mut r = Row::new(&amb, &iref, &format!("S{n} x| (Z/2Z)^{n}"))
            .nodes(&t)
            .types(&rep("A1", n))
            .tag('a');
        for k in 1..n {
            r = r.act(&s(k), &[&[&t[k - 1], &t[k]]]);
        }
        rows.push(r.build());
    }
    if top >= 4 {
        rows.push(
            Row::new("F4", &["s2", "s1"], "S3 x| W(D4)")
                .nodes(&["t2", "t1", "s1t1s1", "s2s1t1s1s2"])
                .edge("t2", "t1", F(3))
                .edge("t2", "s1t1s1", F(3))
                .edge("t2", "s2s1t1s1s2", F(3))
                .types(&["D4".into()])
                .act("s2", &[&["s1t1s1", "s2s1t1s1s2"]])
                .act("s1", &[&["t1", "s1t1s1"]])
                .build(),
        );
    }
    if top >= 3 {
        rows.push(
            Row::new("~G2", &["t"], "(Z/2Z) x| W(~A2)")
                .nodes(&["s1", "s2", "ts1t"])
                .chain(&["s1", "s2", "ts1t", "s1"])
                .types(&["~A2".into()])
                .act("t", &[&["s1", "ts1t"]])
                .build(),
        );
        rows.push(
            Row::new("~G2", &["s1", "s2"], "S3 x| W(~A2)")
                .nodes(&["t", "s1ts1", "s2s1ts1s2"])
                .chain(&["t", "s1ts1", "s2s1ts1s2", "t"])
                .types(&["~A2".into()])
                .act("s1", &[&["t", "s1ts1"]])
                .act("s2", &[&["s1ts1", "s2s1ts1s2"]])
                .build(),
        );
    }
    if top >= 5 {
        rows.push(
            Row::new("~F4", &["s2", "s1"], "S3 x| W(~D4)")
                .nodes(&["t2", "t1", "t3", "s1t1s1", "s2s1t1s1s2"])
                .edge("t2", "t1", F(3))
                .edge("t2", "t3", F(3))
                .edge("t2", "s1t1s1", F(3))
                .edge("t2", "s2s1t1s1s2", F(3))
                .types(&["~D4".into()])
                .act("s2", &[&["s1t1s1", "s2s1t1s1s2"]])
                .act("s1", &[&["t1", "s1t1s1"]])
                .build(),
        );
        rows.push(
            Row::new("~F4", &["t1", "t2", "t3"], "S4 x| W(~D4)")
                .nodes(&["s2", "s1", "t1s1t1", "t2t1s1t1t2", "t3t2t1s1t1t2t3"])
                .edge("s2", "s1", F(3))
                .edge("s2", "t1s1t1", F(3))
                .edge("s2", "t2t1s1t1t2", F(3))
                .edge("s2", "t3t2t1s1t1t2t3", F(3))
                .types(&["~D4".into()])
                .act("t1", &[&["s1", "t1s1t1"]])
                .act("t2", &[&["t1s1t1", "t2t1s1t1t2"]])
                .act("t3", &[&["t2t1s1t1t2", "t3t2t1s1t1t2t3"]])
                .build(),
        );
    }
    for n in 3..top {
        let amb = format!("~B{n}");
        let mut nodes = vec!["ts1t".to_string()];
        nodes.extend((1..=n).map(s));
        let mut r = Row::new(&amb, &["t"], &format!("(Z/2Z) x| W(~D{n})"))
            .nodes(&nodes)
            .act("t", &[&["ts1t", "s1"]]);
        if n == 3 {
            r = r
                .chain(&["ts1t", "s2", "s1", "s3", "ts1t"])
                .types(&["~A3".into()])
                .note(Note::One);
        } else {
            r = r
                .edge("ts1t", "s2", F(3))
                .edge("s1", "s2", F(3))
                .chain(&(2..=n - 2).map(s).collect::<Vec<_>>())
                .edge(&s(n - 2), &s(n - 1), F(3))
                .edge(&s(n - 2), &s(n), F(3))
                .types(&[format!("~D{n}")]);
        }
        rows.push(r.build());

        let i: Vec<String> = (1..=n).map(s).collect();
        let iref: Vec<&str> = i.iter().map(String::as_str).collect();
        let t = t_chain(n);
        let tp = t_prime_chain(n, conj(&s(n), &t[n - 2]));
        let mut r = ladder(
            Row::new(&amb, &iref, &format!("W(D{n}) x| W(~A1)^{n}")),
            &t,
            &tp,
        )
        .tag('b');
        for k in 1..n {
            r = r.act_owned(s(k), swap2(&t[k - 1], &t[k], &tp[k - 1], &tp[k]));
        }
        r = r.act_owned(s(n), swap2(&t[n - 2], &tp[n - 1], &tp[n - 2], &t[n - 1]));
        rows.push(r.build());
    }
    for n in 2..top {
        let amb = format!("~C{n}");
        let last = s(n - 1);
        // I = {t}
        let mut nodes = vec!["ts1t".to_string()];
        nodes.extend((1..n).map(s));
        nodes.push("t'".into());
        let mut r = Row::new(&amb, &["t"], &format!("(Z/2Z) x| W(~B{n})"))
            .nodes(&nodes)
            .act("t", &[&["ts1t", "s1"]]);
        if n == 2 {
            r = r
                .edge("s1", "t'", F(4))
                .edge("t'", "ts1t", F(4))
                .types(&["~C2".into()])
                .note(Note::Two);
        } else {
            r = r
                .edge("ts1t", "s2", F(3))
                .edge("s1", "s2", F(3))
                .chain(&(2..n).map(s).collect::<Vec<_>>())
                .edge(&last, "t'", F(4))
                .types(&[format!("~B{n}")]);
        }
        rows.push(r.build());

        // I = {s_1, ..., s_{n-1}}
        let i: Vec<String> = (1..n).map(s).collect();
        let iref: Vec<&str> = i.iter().map(String::as_str).collect();
        let t = t_chain(n);
        let tp = t_prime_chain(n, "t'".into());
        let mut r = ladder(
            Row::new(&amb, &iref, &format!("S{n} x| W(~A1)^{n}")),
            &t,
            &tp,
        )
        .tag('c');
        for k in 1..n {
            r = r.act_owned(s(k), swap2(&t[k - 1], &t[k], &tp[k - 1], &tp[k]));
        }
        rows.push(r.build());

        // I = {s_1, ..., s_{n-1}, t'}
        let mut i2 = iref.clone();
        i2.push("t'");
        let tp = t_prime_chain(n, format!("t'{}t'", t[n - 1]));
        let mut r = ladder(
            Row::new(&amb, &i2, &format!("W(B{n}) x| W(~A1)^{n}")),
            &t,
            &tp,
        )
        .tag('d');
        for k in 1..n {
            r = r.act_owned(s(k), swap2(&t[k - 1], &t[k], &tp[k - 1], &tp[k]));
        }
        r = r.act_owned("t'".into(), vec![vec![t[n - 1].clone(), tp[n - 1].clone()]]);
        rows.push(r.build());

        // I = {t, t'}
        let dec = format!("(S2 x S2) x| W(~D{n})");
        let r = match n {
            2 => Row::new(&amb, &["t", "t'"], &dec)
                .nodes(&["ts1t", "s1", "t's1t'", "tt's1t't"])
                .edge("ts1t", "t's1t'", Inf)
                .edge("s1", "tt's1t't", Inf)
                .types(&rep("~A1", 2))
                .act("t", &[&["ts1t", "s1"], &["t's1t'", "tt's1t't"]])
                .act("t'", &[&["s1", "t's1t'"], &["ts1t", "tt's1t't"]])
                .note(Note::Three),
            3 => Row::new(&amb, &["t", "t'"], &dec)
                .nodes(&["ts1t", "s1", "s2", "t's2t'"])
                .chain(&["ts1t", "t's2t'", "s1", "s2", "ts1t"])
                .types(&["~A3".into()])
                .act("t", &[&["ts1t", "s1"]])
                .act("t'", &[&["s2", "t's2t'"]])
                .note(Note::Three),
            _ => {
                let tl = format!("t'{last}t'");
                let mut nodes = vec!["ts1t".to_string()];
                nodes.extend((1..n).map(s));
                nodes.push(tl.clone());
                Row::new(&amb, &["t", "t'"], &dec)
                    .nodes(&nodes)
                    .edge("ts1t", "s2", F(3))
                    .edge("s1", "s2", F(3))
                    .chain(&(2..n - 1).map(s).collect::<Vec<_>>())
                    .edge(&s(n - 2), &last, F(3))
                    .edge(&s(n - 2), &tl, F(3))
                    .types(&[format!("~D{n}")])
                    .act("t", &[&["ts1t", "s1"]])
                    .act("t'", &[&[&last, &tl]])
            }
        };
        rows.push(r.build());
    }
    rows
}

/// What [`verify_row`] established for a matching row.
#[derive(Clone, Debug)]
pub struct RowReport {
    pub name: String,
    pub generators: usize,
    pub components: Vec<String>,
    pub affine_components: bool,
}

fn mismatch(row: &TableRow, what: String) -> Error {
    Error::Consistency(format!("{}: {what}", row.name()))
}

/// [`verify_row`] on every row, in row order.
pub fn verify_rows(rows: &[TableRow], exec: crate::par::Execution) -> Vec<Result<RowReport>> {
    exec.map(rows, verify_row)
}

/// Run the decomposition for a row and compare everything it records.
pub fn verify_row(row: &TableRow) -> Result<RowReport> {
    let d = row.decompose()?;
    let sys = d.system().clone();
    let i = d.i();
    let n = row.tilde.rank();
    if d.len() != n {
        return Err(mismatch(
            row,
            format!("expected {n} generators, found {}", d.len()),
        ));
    }
    let mut map = Vec::with_capacity(n);
    for a in 0..n {
        let w = sys.elem_str(row.tilde.label(a))?;
        let k = d.gen_index(&w).ok_or_else(|| {
            mismatch(
                row,
                format!("node {} is not a canonical generator", row.tilde.label(a)),
            )
        })?;
        if map.contains(&k) {
            return Err(mismatch(
                row,
                format!("node {} repeats a generator", row.tilde.label(a)),
            ));
        }
        map.push(k);
    }
    let mt = d.tilde_matrix();
    for a in 0..n {
        for b in (a + 1)..n {
            let (want, got) = (row.tilde.bond(a, b), mt.bond(map[a], map[b]));
            if want != got {
                return Err(mismatch(
                    row,
                    format!(
                        "M~[{}][{}] expected {want}, found {got}",
                        row.tilde.label(a),
                        row.tilde.label(b)
                    ),
                ));
            }
        }
    }
    let back: Vec<usize> = {
        let mut v = vec![0; n];
        for (a, &k) in map.iter().enumerate() {
            v[k] = a;
        }
        v
    };
    for s in crate::coxeter::genset_members(i) {
        let label = sys.label(s);
        let expected = row
            .actions
            .iter()
            .find(|(g, _)| g == label)
            .ok_or_else(|| mismatch(row, format!("no action recorded for {label}")))?;
        let mut want: Vec<usize> = (0..n).collect();
        for c in &expected.1 {
            let pts = c
                .iter()
                .map(|x| {
                    row.tilde
                        .index_of(x)
                        .ok_or_else(|| mismatch(row, format!("action names unknown node {x}")))
                })
                .collect::<Result<Vec<_>>>()?;
            for (a, b) in pts.iter().zip(pts.iter().cycle().skip(1)) {
                want[*a] = *b;
            }
        }
        let got = d.action_of(s)?;
        let got: Vec<usize> = (0..n).map(|a| back[got[map[a]]]).collect();
        if got != want {
            let show = |p: &[usize]| {
                cycles(p)
                    .iter()
                    .map(|c| {
                        format!(
                            "({})",
                            c.iter()
                                .map(|&k| row.tilde.label(k))
                                .collect::<Vec<_>>()
                                .join(" ")
                        )
                    })
                    .collect::<String>()
            };
            return Err(mismatch(
                row,
                format!(
                    "action of {label}: expected {}, found {}",
                    show(&want),
                    show(&got)
                ),
            ));
        }
    }
    let mut got_comps: Vec<Vec<usize>> = d
        .components()?
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.iter().map(|&k| back[k]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    got_comps.sort();
    let mut want_comps = row.tilde.components();
    want_comps.sort();
    if got_comps != want_comps {
        return Err(mismatch(row, "component structure differs".into()));
    }
    let mut names: Vec<String> = recognize(mt).into_iter().map(|(_, t)| t).collect();
    names.sort();
    let mut want_types = row.types.clone();
    want_types.sort();
    if names != want_types {
        return Err(mismatch(
            row,
            format!("component types {names:?}, expected {want_types:?}"),
        ));
    }
    let ambient_class = classify_gram(sys.gram());
    let mut affine_components = false;
    if ambient_class == GramClass::Affine {
        for c in mt.components() {
            if classify_gram(&d.tilde_system().gram().principal(&c)) != GramClass::Affine {
                return Err(mismatch(row, "a component of M~ is not affine".into()));
            }
        }
        affine_components = true;
    }
    if ambient_class == GramClass::Finite
        && sys.matrix().components().len() == 1
        && d.len() != sys.rank()
    {
        return Err(mismatch(
            row,
            format!("|J~| = {} but |S| = {}", d.len(), sys.rank()),
        ));
    }
    Ok(RowReport {
        name: row.name(),
        generators: n,
        components: names,
        affine_components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_examples() {
        let m = builtin("I2(6)").unwrap();
        assert_eq!(m.bond(0, 1), F(6));
        let m = builtin("B3").unwrap();
        assert_eq!((m.bond(0, 1), m.bond(1, 2)), (F(4), F(3)));
        let m = builtin("~C2").unwrap();
        assert_eq!(
            (m.bond(0, 1), m.bond(1, 2), m.bond(0, 2)),
            (F(4), F(4), F(2))
        );
        assert_eq!(builtin("C̃2").unwrap(), m);
        assert!(builtin("D3").is_err());
        assert!(builtin("Q7").is_err());
    }

    #[test]
    fn recognize_round_trip() {
        for r in 1..=9 {
            for name in irreducible_names(r, 8) {
                let m = builtin(&name).unwrap();
                assert_eq!(recognize_irreducible(&m), name);
            }
        }
    }

    #[test]
    fn recognize_examples() {
        let sq = CoxMatrix::from_edges(
            &["a", "b", "c", "d"],
            &[(0, 1, F(3)), (1, 2, F(3)), (2, 3, F(3)), (3, 0, F(3))],
        )
        .unwrap();
        assert_eq!(recognize_irreducible(&sq), "~A3");
        let p = CoxMatrix::from_edges(&["a", "b", "c"], &[(0, 1, F(4)), (1, 2, F(4))]).unwrap();
        assert_eq!(recognize_irreducible(&p), "~C2");
        assert_eq!(
            recognize_irreducible(&CoxMatrix::from_edges(&["a"], &[]).unwrap()),
            "A1"
        );
        let h = CoxMatrix::from_edges(&["a", "b", "c"], &[(0, 1, F(7)), (1, 2, F(3))]).unwrap();
        assert_eq!(recognize_irreducible(&h), "unrecognized (indefinite)");
    }

    #[test]
    fn row_text_round_trip() {
        let rows = table_rows();
        let text: Vec<String> = rows.iter().map(TableRow::to_text).collect();
        assert_eq!(TableRow::parse_all(&text.join("\n")).unwrap(), rows);
    }

    #[test]
    fn scales() {
        assert_eq!(table_rows().len(), 39);
        let small = table_rows_at(Scale {
            max_m: 3,
            max_rank: 3,
        });
        assert!(small
            .iter()
            .all(|r| builtin(&r.ambient).unwrap().rank() <= 3));
        let big = table_rows_at(Scale {
            max_m: 7,
            max_rank: 7,
        });
        assert_eq!(big.len(), 39 + 2 + 2 * 2 + 2 * 2 + 4 * 2);
        assert!(big.iter().any(|r| r.ambient == "~B6" && r.types == ["~D6"]));
    }

    #[test]
    fn small_rows_verify() {
        for row in table_rows()
            .iter()
            .filter(|r| r.ambient.starts_with("I2") || r.ambient == "B3")
        {
            verify_row(row).unwrap_or_else(|e| panic!("{e}"));
        }
    }
}
