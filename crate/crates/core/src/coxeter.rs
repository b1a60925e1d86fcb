//! Coxeter matrices, the standard geometric representation and group elements.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::bond::Bond;
use crate::error::{Error, Result};
use crate::linalg::{self, form, Mat, Vector};
use crate::scalar::{conductor_for, field, CycField, CycReal};

/// Upper bound on enumerations performed without an explicit bound.
pub const DEFAULT_ENUM_LIMIT: usize = 2_000_000;

/// Default iteration bound for order computations by powering.
pub const DEFAULT_ORDER_BOUND: u32 = 200;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxMatrix {
    labels: Vec<String>,
    m: Vec<Vec<Bond>>,
}

impl CoxMatrix {
    pub fn new(labels: Vec<String>, m: Vec<Vec<Bond>>) -> Result<CoxMatrix> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Parse("empty Coxeter matrix".into()));
        }
        if n > 64 {
            return Err(Error::Parse("rank above 64 is not supported".into()));
        }
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("Coxeter matrix must be {n}x{n}")));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() || l.chars().any(|c| c.is_whitespace() || c == ',') || !seen.insert(l) {
                return Err(Error::Parse(format!(
                    "bad or duplicate generator label `{l}`"
                )));
            }
        }
        for i in 0..n {
            if m[i][i] != Bond::Finite(1) {
                return Err(Error::Parse(format!(
                    "diagonal entry at `{}` must be 1",
                    labels[i]
                )));
            }
            for j in 0..n {
                if m[i][j] != m[j][i] {
                    return Err(Error::Parse(format!(
                        "matrix not symmetric at ({}, {})",
                        labels[i], labels[j]
                    )));
                }
                if i != j && m[i][j] == Bond::Finite(1) {
                    return Err(Error::Parse(format!(
                        "off-diagonal entry 1 at ({}, {})",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(CoxMatrix { labels, m })
    }

    /// Build from a list of bonds; unspecified pairs commute.
    pub fn from_edges(labels: &[&str], edges: &[(usize, usize, Bond)]) -> Result<CoxMatrix> {
        let n = labels.len();
        let mut m = vec![vec![Bond::Finite(2); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Bond::Finite(1);
        }
        for &(i, j, b) in edges {
            m[i][j] = b;
            m[j][i] = b;
        }
        CoxMatrix::new(labels.iter().map(|s| s.to_string()).collect(), m)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.m[i][j]
    }

    pub fn entries(&self) -> &[Vec<Bond>] {
        &self.m
    }

    pub fn relabel(&self, labels: Vec<String>) -> Result<CoxMatrix> {
        CoxMatrix::new(labels, self.m.clone())
    }

    /// Restriction to a subset of generators, in the given order.
    pub fn restrict(&self, idx: &[usize]) -> CoxMatrix {
        CoxMatrix {
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            m: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.m[i][j]).collect())
                .collect(),
        }
    }

    /// Connected components of the Coxeter graph (edges where `m >= 3`).
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.classes_by(|b| b != Bond::Finite(2))
    }

    /// Classes of generators joined by paths of odd bonds; these are the
    /// conjugacy classes of simple reflections.
    pub fn odd_classes(&self) -> Vec<Vec<usize>> {
        self.classes_by(Bond::is_odd)
    }

    fn classes_by(&self, edge: impl Fn(Bond) -> bool) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..n {
                    if !seen[j] && i != j && edge(self.m[i][j]) {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Parse the plain-text format: optional `#` comments, a line of labels,
    /// then `n` rows of integers or `inf`.
    pub fn parse(text: &str) -> Result<CoxMatrix> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let labels: Vec<String> = lines
            .next()
            .ok_or_else(|| Error::Parse("missing label line".into()))?
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect();
        let mut rows = Vec::new();
        for line in lines {
            let row = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(str::parse::<Bond>)
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        CoxMatrix::new(labels, rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = self.labels.join(" ");
        s.push('\n');
        for row in &self.m {
            let r: Vec<String> = row.iter().map(|b| b.to_string()).collect();
            s.push_str(&r.join(" "));
            s.push('\n');
        }
        s
    }
}

/// A set of generators as a bitmask.
pub type GenSet = u64;

pub fn genset(idx: impl IntoIterator<Item = usize>) -> GenSet {
    idx.into_iter().fold(0, |m, i| m | 1 << i)
}

pub fn genset_members(set: GenSet) -> Vec<usize> {
    (0..64).filter(|i| set >> i & 1 == 1).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Order of an element, possibly undecided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u32),
    Inf,
    Unknown,
}

impl Order {
    pub fn bond(self) -> Option<Bond> {
        match self {
            Order::Finite(m) => Some(Bond::Finite(m)),
            Order::Inf => Some(Bond::Inf),
            Order::Unknown => None,
        }
    }
}

/// A group element: canonical (ShortLex least reduced) word plus matrices.
#[derive(Clone)]
pub struct Elem {
    word: Vec<u8>,
    mat: Mat,
    inv: Mat,
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for Elem {}

impl std::hash::Hash for Elem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mat.hash(state)
    }
}

impl Elem {
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.word.iter().map(|&s| s as usize)
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Matrix in the basis of simple roots; column `s` is `w(alpha_s)`.
    pub fn matrix(&self) -> &Mat {
        &self.mat
    }

    pub fn inverse_matrix(&self) -> &Mat {
        &self.inv
    }

    /// Set of letters of the canonical word; `w` lies in `W_K` iff this is inside `K`.
    pub fn support(&self) -> GenSet {
        genset(self.letters())
    }

    pub fn in_parabolic(&self, k: GenSet) -> bool {
        self.support() & !k == 0
    }

    /// `(length, ShortLex)` sort key.
    pub fn shortlex_key(&self) -> (usize, &[u8]) {
        (self.word.len(), &self.word)
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elem{:?}", self.word)
    }
}

/// Sign of a root vector: that of its first nonzero coordinate.
pub fn root_sign(v: &[CycReal]) -> i8 {
    v.iter().map(CycReal::sign).find(|&s| s != 0).unwrap_or(0)
}

/// A reflection with its positive root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Reflection {
    pub elem: Elem,
    pub root: Vector,
}

/// The ambient context: Coxeter matrix, Gram form and generator matrices.
pub struct CoxeterSystem {
    matrix: CoxMatrix,
    field: &'static CycField,
    gram: Mat,
    /// `2 B[k][s]`, used by the generator row operation.
    twice_gram: Mat,
    gens: Vec<Mat>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("labels", &self.matrix.labels)
            .finish()
    }
}

impl CoxeterSystem {
    pub fn new(matrix: CoxMatrix) -> Arc<CoxeterSystem> {
        let conductor = conductor_for(matrix.m.iter().flatten().copied());
        Self::with_field(matrix, field(conductor)).expect("conductor covers every bond")
    }

    /// Build in a given (large enough) field.
    pub fn with_field(matrix: CoxMatrix, f: &'static CycField) -> Result<Arc<CoxeterSystem>> {
        let n = matrix.rank();
        let mut rows = vec![vec![f.zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                rows[i][j] = if i == j {
                    f.one()
                } else {
                    -f.cos_pi_over(matrix.m[i][j])?
                };
            }
        }
        let gram = Mat::from_rows(rows);
        Ok(Self::from_gram(matrix, gram))
    }

    /// A system whose representation uses a supplied Gram matrix (e.g. a
    /// non-standard one with entries below `-1` for infinite bonds).
    pub fn from_gram(matrix: CoxMatrix, gram: Mat) -> Arc<CoxeterSystem> {
        let n = matrix.rank();
        let f = gram.get(0, 0).field();
        let two = f.int(2);
        let twice_gram = Mat::from_rows(
            (0..n)
                .map(|i| (0..n).map(|j| &two * gram.get(i, j)).collect())
                .collect(),
        );
        let gens = (0..n)
            .map(|s| {
                let mut g = Mat::identity(f, n);
                for k in 0..n {
                    let v = if k == s {
                        f.int(-1)
                    } else {
                        -twice_gram.get(k, s)
                    };
                    g.set(s, k, v);
                }
                g
            })
            .collect();
        Arc::new(CoxeterSystem {
            matrix,
            field: f,
            gram,
            twice_gram,
            gens,
        })
    }

    pub fn matrix(&self) -> &CoxMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn field(&self) -> &'static CycField {
        self.field
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn gen_matrix(&self, s: usize) -> &Mat {
        &self.gens[s]
    }

    pub fn all_gens(&self) -> GenSet {
        match self.rank() {
            64 => u64::MAX,
            n => (1u64 << n) - 1,
        }
    }

    pub fn label(&self, s: usize) -> &str {
        self.matrix.label(s)
    }

    pub fn simple_root(&self, s: usize) -> Vector {
        (0..self.rank())
            .map(|k| {
                if k == s {
                    self.field.one()
                } else {
                    self.field.zero()
                }
            })
            .collect()
    }

    pub fn inner(&self, u: &[CycReal], v: &[CycReal]) -> CycReal {
        form(&self.gram, u, v)
    }

    // Row operation: m <- S_s m.
    fn left_gen(&self, s: usize, m: &mut Mat) {
        let n = self.rank();
        for j in 0..n {
            let mut acc = -m.get(s, j);
            for k in 0..n {
                if k != s {
                    let c = self.twice_gram.get(k, s);
                    let x = m.get(k, j);
                    if !c.is_zero() && !x.is_zero() {
                        acc = &acc - &(c * x);
                    }
                }
            }
            m.set(s, j, acc);
        }
    }

    // Column operation: m <- m S_s.
    fn right_gen(&self, s: usize, m: &mut Mat) {
        let n = self.rank();
        let g = &self.gens[s];
        for i in 0..n {
            let ms = m.get(i, s).clone();
            if ms.is_zero() {
                continue;
            }
            for j in 0..n {
                if j == s {
                    m.set(i, s, -&ms);
                } else {
                    let c = g.get(s, j);
                    if !c.is_zero() {
                        let v = m.get(i, j) + &(&ms * c);
                        m.set(i, j, v);
                    }
                }
            }
        }
    }

    fn normalize(&self, mat: Mat, inv: Mat) -> Elem {
        let mut word = Vec::new();
        let mut cur_inv = inv.clone();
        let n = self.rank();
        // Least s with w^-1(alpha_s) < 0, i.e. least left descent.
        while let Some(s) = (0..n).find(|&s| root_sign(&cur_inv.col(s)) < 0) {
            word.push(s as u8);
            self.right_gen(s, &mut cur_inv);
            assert!(
                word.len() <= DEFAULT_ENUM_LIMIT,
                "normal form does not terminate"
            );
        }
        Elem { word, mat, inv }
    }

    pub fn identity(&self) -> Elem {
        let id = Mat::identity(self.field, self.rank());
        Elem {
            word: Vec::new(),
            mat: id.clone(),
            inv: id,
        }
    }

    pub fn gen(&self, s: usize) -> Elem {
        Elem {
            word: vec![s as u8],
            mat: self.gens[s].clone(),
            inv: self.gens[s].clone(),
        }
    }

    /// Normal form of an arbitrary word.
    pub fn elem(&self, word: &[usize]) -> Elem {
        let mut mat = Mat::identity(self.field, self.rank());
        let mut inv = mat.clone();
        for &s in word {
            assert!(s < self.rank(), "letter out of range");
            self.right_gen(s, &mut mat);
            self.left_gen(s, &mut inv);
        }
        self.normalize(mat, inv)
    }

    /// Parse a word written with generator labels, either separated by
    /// spaces/dots or concatenated (longest label match first). `1` or an
    /// empty string denote the identity.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() || text == "1" || text == "e" {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for chunk in text.split(|c: char| c.is_whitespace() || c == '.' || c == '*') {
            let mut rest = chunk;
            while !rest.is_empty() {
                let best = (0..self.rank())
                    .filter(|&i| rest.starts_with(self.label(i)))
                    .max_by_key(|&i| self.label(i).len())
                    .ok_or_else(|| {
                        Error::Parse(format!("cannot parse word `{text}` at `{rest}`"))
                    })?;
                out.push(best);
                rest = &rest[self.label(best).len()..];
            }
        }
        Ok(out)
    }

    pub fn elem_str(&self, text: &str) -> Result<Elem> {
        Ok(self.elem(&self.parse_word(text)?))
    }

    pub fn word_string(&self, w: &Elem) -> String {
        self.letters_string(w.word())
    }

    pub fn letters_string(&self, word: &[u8]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter()
            .map(|&s| self.label(s as usize))
            .collect::<Vec<_>>()
            .join("")
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.normalize(a.mat.mul(&b.mat), b.inv.mul(&a.inv))
    }

    pub fn inverse(&self, w: &Elem) -> Elem {
        self.normalize(w.inv.clone(), w.mat.clone())
    }

    /// `a b a^-1`.
    pub fn conj(&self, a: &Elem, b: &Elem) -> Elem {
        self.normalize(a.mat.mul(&b.mat).mul(&a.inv), a.mat.mul(&b.inv).mul(&a.inv))
    }

    pub fn rmul_gen(&self, w: &Elem, s: usize) -> Elem {
        let mut mat = w.mat.clone();
        let mut inv = w.inv.clone();
        self.right_gen(s, &mut mat);
        self.left_gen(s, &mut inv);
        self.normalize(mat, inv)
    }

    pub fn lmul_gen(&self, s: usize, w: &Elem) -> Elem {
        let mut mat = w.mat.clone();
        let mut inv = w.inv.clone();
        self.left_gen(s, &mut mat);
        self.right_gen(s, &mut inv);
        self.normalize(mat, inv)
    }

    pub fn apply(&self, w: &Elem, v: &[CycReal]) -> Vector {
        w.mat.apply(v)
    }

    pub fn is_right_descent(&self, w: &Elem, s: usize) -> bool {
        root_sign(&w.mat.col(s)) < 0
    }

    pub fn is_left_descent(&self, w: &Elem, s: usize) -> bool {
        root_sign(&w.inv.col(s)) < 0
    }

    pub fn descents(&self, w: &Elem, side: Side) -> GenSet {
        genset((0..self.rank()).filter(|&s| match side {
            Side::Right => self.is_right_descent(w, s),
            Side::Left => self.is_left_descent(w, s),
        }))
    }

    /// The reflection `s_gamma` of a root `gamma` of norm one.
    pub fn reflection_of_root(&self, gamma: &[CycReal]) -> Elem {
        let n = self.rank();
        let two = self.field.int(2);
        let bg = self.gram.apply(gamma);
        let mut m = Mat::identity(self.field, n);
        for i in 0..n {
            for j in 0..n {
                let v = m.get(i, j) - &(&two * &(&gamma[i] * &bg[j]));
                m.set(i, j, v);
            }
        }
        self.normalize(m.clone(), m)
    }

    /// If `w` is a reflection, its positive root.
    pub fn reflection_root(&self, w: &Elem) -> Option<Vector> {
        let l = w.length();
        if l % 2 == 0 {
            return None;
        }
        let h = l / 2;
        let prefix = self.elem(&w.word[..h].iter().map(|&s| s as usize).collect::<Vec<_>>());
        let gamma = self.apply(&prefix, &self.simple_root(w.word[h] as usize));
        (self.reflection_of_root(&gamma) == *w).then_some(gamma)
    }

    pub fn as_reflection(&self, w: &Elem) -> Option<Reflection> {
        self.reflection_root(w).map(|root| Reflection {
            elem: w.clone(),
            root,
        })
    }

    /// `N(w) = {t in T : l(wt) < l(w)}`, in the order `s_k`, `s_k s_{k-1} s_k`, ...
    /// for the canonical word `s_1 ... s_k`.
    pub fn n_set(&self, w: &Elem) -> Vec<Reflection> {
        let k = w.length();
        let mut out = Vec::with_capacity(k);
        let mut suffix_inv = self.identity(); // s_k ... s_{i+1}
        for i in (0..k).rev() {
            let s = w.word[i] as usize;
            let root = self.apply(&suffix_inv, &self.simple_root(s));
            let elem = self.conj(&suffix_inv, &self.gen(s));
            out.push(Reflection { elem, root });
            suffix_inv = self.rmul_gen(&suffix_inv, s);
        }
        out
    }

    /// Order of `ab`.
    pub fn order_of_product(&self, a: &Elem, b: &Elem, bound: u32) -> Order {
        if a == b {
            return Order::Finite(1);
        }
        if let (Some(alpha), Some(beta)) = (self.reflection_root(a), self.reflection_root(b)) {
            let ip = self.inner(&alpha, &beta);
            let one = self.field.one();
            if (&ip + &one).sign() <= 0 || (&ip - &one).sign() >= 0 {
                return Order::Inf;
            }
            if let Some(m) = self.field.recognize_cos(&-&ip) {
                return Order::Finite(m);
            }
        }
        self.order_by_powers(&a.mat.mul(&b.mat), bound)
    }

    pub fn order_of(&self, w: &Elem, bound: u32) -> Order {
        self.order_by_powers(&w.mat, bound)
    }

    fn order_by_powers(&self, m: &Mat, bound: u32) -> Order {
        let id = Mat::identity(self.field, self.rank());
        let mut p = m.clone();
        for k in 1..=bound {
            if p == id {
                return Order::Finite(k);
            }
            p = p.mul(m);
        }
        Order::Unknown
    }

    /// All elements of length at most `r`, sorted by `(length, ShortLex)`.
    pub fn ball(&self, r: usize) -> Vec<Elem> {
        self.bfs(self.all_gens(), Some(r), DEFAULT_ENUM_LIMIT)
            .expect("ball size within limit")
    }

    /// Breadth-first enumeration of the parabolic subgroup `W_K`.
    fn bfs(&self, k: GenSet, radius: Option<usize>, limit: usize) -> Result<Vec<Elem>> {
        let gens = genset_members(k);
        let mut seen: HashSet<Elem> = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(self.identity());
        let mut frontier = VecDeque::from([self.identity()]);
        while let Some(w) = frontier.pop_front() {
            if radius.is_some_and(|r| w.length() >= r) {
                continue;
            }
            for &s in &gens {
                if self.is_right_descent(&w, s) {
                    continue;
                }
                let ws = self.rmul_gen(&w, s);
                if seen.insert(ws.clone()) {
                    if out.len() >= limit {
                        return Err(Error::BoundExceeded(format!("more than {limit} elements")));
                    }
                    out.push(ws.clone());
                    frontier.push_back(ws);
                }
            }
        }
        out.sort_by(|a, b| a.shortlex_key().cmp(&b.shortlex_key()));
        Ok(out)
    }

    /// Finiteness of `W_K`, certified by positive definiteness of the Gram matrix.
    pub fn parabolic_is_finite(&self, k: GenSet) -> bool {
        let idx = genset_members(k);
        idx.is_empty() || linalg::is_positive_definite(&self.gram.principal(&idx))
    }

    pub fn is_finite(&self) -> bool {
        self.parabolic_is_finite(self.all_gens())
    }

    /// All elements of the finite parabolic subgroup `W_K`.
    pub fn parabolic_elements(&self, k: GenSet) -> Result<Vec<Elem>> {
        if !self.parabolic_is_finite(k) {
            return Err(Error::NotFinite(format!(
                "parabolic subgroup on {{{}}} has an indefinite or degenerate Gram form",
                self.set_string(k)
            )));
        }
        self.bfs(k, None, DEFAULT_ENUM_LIMIT)
    }

    pub fn enumerate_group(&self) -> Result<Vec<Elem>> {
        self.parabolic_elements(self.all_gens())
    }

    pub fn set_string(&self, k: GenSet) -> String {
        genset_members(k)
            .iter()
            .map(|&i| self.label(i))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Minimal element of `w W_K` (right) or `W_K w` (left).
    pub fn min_coset_rep(&self, w: &Elem, k: GenSet, side: Side) -> Elem {
        let mut cur = w.clone();
        loop {
            let d = self.descents(&cur, side) & k;
            if d == 0 {
                return cur;
            }
            let s = d.trailing_zeros() as usize;
            cur = match side {
                Side::Right => self.rmul_gen(&cur, s),
                Side::Left => self.lmul_gen(s, &cur),
            };
        }
    }

    /// Minimal element of the double coset `W_B w W_C`.
    pub fn min_double_coset_rep(&self, w: &Elem, b: GenSet, c: GenSet) -> Elem {
        let mut cur = w.clone();
        loop {
            let l = self.descents(&cur, Side::Left) & b;
            if l != 0 {
                cur = self.lmul_gen(l.trailing_zeros() as usize, &cur);
                continue;
            }
            let r = self.descents(&cur, Side::Right) & c;
            if r != 0 {
                cur = self.rmul_gen(&cur, r.trailing_zeros() as usize);
                continue;
            }
            return cur;
        }
    }

    /// For `w` minimal in `w W_C` and `s` with `sw` not minimal in `sw W_C`,
    /// the generator `r in C` with `sw = wr`.
    pub fn deodhar(&self, w: &Elem, s: usize, c: GenSet) -> Result<usize> {
        if self.descents(w, Side::Right) & c != 0 {
            return Err(Error::Precondition(
                "w is not a minimal coset representative".into(),
            ));
        }
        let sw = self.lmul_gen(s, w);
        if self.descents(&sw, Side::Right) & c == 0 {
            return Err(Error::Precondition(
                "sw is a minimal coset representative".into(),
            ));
        }
        if sw.length() <= w.length() {
            return Err(Error::Consistency(
                "l(sw) < l(w) with both in the same coset".into(),
            ));
        }
        let winv = self.inverse(w);
        let r = self.mul(&winv, &sw);
        match r.word() {
            [x] if c >> *x & 1 == 1 => Ok(*x as usize),
            _ => Err(Error::Consistency(
                "w^-1 s w is not a generator in C".into(),
            )),
        }
    }
}

/// A finite Coxeter group with multiplication tables.
pub struct FiniteGroup {
    sys: Arc<CoxeterSystem>,
    elems: Vec<Elem>,
    index: HashMap<Mat, u32>,
    rmul: Vec<Vec<u32>>,
    lmul: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    rdesc: Vec<GenSet>,
}

impl FiniteGroup {
    pub fn new(sys: Arc<CoxeterSystem>) -> Result<FiniteGroup> {
        let elems = sys.enumerate_group()?;
        let index: HashMap<Mat, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.mat.clone(), i as u32))
            .collect();
        let n = sys.rank();
        let find = |m: &Mat| index[m];
        let mut rmul = Vec::with_capacity(elems.len());
        let mut lmul = Vec::with_capacity(elems.len());
        for e in &elems {
            rmul.push(
                (0..n)
                    .map(|s| find(&e.mat.mul(sys.gen_matrix(s))))
                    .collect(),
            );
            lmul.push(
                (0..n)
                    .map(|s| find(&sys.gen_matrix(s).mul(&e.mat)))
                    .collect(),
            );
        }
        let inverse = elems.iter().map(|e| find(&e.inv)).collect();
        let rdesc = elems.iter().map(|e| sys.descents(e, Side::Right)).collect();
        Ok(FiniteGroup {
            sys,
            elems,
            index,
            rmul,
            lmul,
            inverse,
            rdesc,
        })
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn elem(&self, i: u32) -> &Elem {
        &self.elems[i as usize]
    }

    pub fn index_of(&self, w: &Elem) -> u32 {
        self.index[&w.mat]
    }

    pub fn rmul_gen(&self, i: u32, s: usize) -> u32 {
        self.rmul[i as usize][s]
    }

    pub fn lmul_gen(&self, s: usize, i: u32) -> u32 {
        self.lmul[i as usize][s]
    }

    pub fn inv(&self, i: u32) -> u32 {
        self.inverse[i as usize]
    }

    pub fn right_descents(&self, i: u32) -> GenSet {
        self.rdesc[i as usize]
    }

    pub fn length(&self, i: u32) -> usize {
        self.elems[i as usize].length()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.elems[b as usize]
            .letters()
            .fold(a, |acc, s| self.rmul[acc as usize][s])
    }

    /// Full multiplication table, row-major.
    pub fn mult_table(&self) -> Vec<u32> {
        let n = self.len();
        let mut t = vec![0u32; n * n];
        for b in 0..n {
            // Right multiplication by b, built along b's word from a shorter prefix.
            let e = &self.elems[b];
            if e.is_identity() {
                for a in 0..n {
                    t[a * n] = a as u32;
                }
                continue;
            }
            let last = *e.word.last().unwrap() as usize;
            let prefix = self.rmul[b][last] as usize;
            debug_assert!(prefix < b);
            for a in 0..n {
                t[a * n + b] = self.rmul[t[a * n + prefix] as usize][last];
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bond::Bond::{Finite as F, Inf};

    fn dihedral(m: Bond) -> Arc<CoxeterSystem> {
        CoxeterSystem::new(CoxMatrix::from_edges(&["s", "t"], &[(0, 1, m)]).unwrap())
    }

    fn linear(labels: &[&str], bonds: &[u32]) -> Arc<CoxeterSystem> {
        let edges: Vec<_> = bonds
            .iter()
            .enumerate()
            .map(|(i, &m)| (i, i + 1, F(m)))
            .collect();
        CoxeterSystem::new(CoxMatrix::from_edges(labels, &edges).unwrap())
    }

    #[test]
    fn gram_entries() {
        let a2 = dihedral(F(3));
        assert_eq!(a2.gram().get(0, 1).to_string(), "-1/2");
        let a1t = dihedral(Inf);
        assert_eq!(a1t.gram().get(0, 1).to_string(), "-1");
        let b2 = dihedral(F(4));
        assert_eq!(b2.gram().get(0, 1).to_string(), "-cos(pi/4)");
    }

    #[test]
    fn normal_forms() {
        let a2 = dihedral(F(3));
        assert!(a2.elem(&[0, 0]).is_identity());
        assert_eq!(a2.elem(&[0, 1, 0]), a2.elem(&[1, 0, 1]));
        assert_eq!(a2.elem(&[1, 0, 1]).word(), &[0, 1, 0]);
        let b2 = dihedral(F(4));
        assert!(b2.elem(&[1, 0, 1, 0, 1, 0, 1, 0]).is_identity());
        let w = a2.elem(&[0, 1, 0]);
        assert_eq!(a2.descents(&w, Side::Right), 0b11);
    }

    #[test]
    fn group_orders() {
        assert_eq!(
            linear(&["a", "b", "c"], &[3, 3])
                .enumerate_group()
                .unwrap()
                .len(),
            24
        );
        assert_eq!(
            linear(&["a", "b", "c"], &[4, 3])
                .enumerate_group()
                .unwrap()
                .len(),
            48
        );
        assert_eq!(
            linear(&["a", "b", "c"], &[5, 3])
                .enumerate_group()
                .unwrap()
                .len(),
            120
        );
        assert_eq!(dihedral(Inf).ball(3).len(), 7);
        assert!(matches!(
            dihedral(Inf).enumerate_group(),
            Err(Error::NotFinite(_))
        ));
    }

    #[test]
    fn n_sets() {
        let a2 = dihedral(F(3));
        let s = a2.gen(0);
        let ns = a2.n_set(&s);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0].elem, s);
        let w0 = a2.elem(&[0, 1, 0]);
        let all: HashSet<Elem> = a2.n_set(&w0).into_iter().map(|r| r.elem).collect();
        assert_eq!(all.len(), 3);
        assert!(a2.n_set(&a2.identity()).is_empty());
    }

    #[test]
    fn orders_of_products() {
        let a2 = dihedral(F(3));
        let (s, t) = (a2.gen(0), a2.gen(1));
        assert_eq!(a2.order_of_product(&s, &s, 10), Order::Finite(1));
        assert_eq!(a2.order_of_product(&s, &t, 10), Order::Finite(3));
        let a1t = dihedral(Inf);
        assert_eq!(
            a1t.order_of_product(&a1t.gen(0), &a1t.gen(1), 10),
            Order::Inf
        );
        let b3 = linear(&["a", "b", "c"], &[4, 3]);
        let w = b3.elem(&[0, 1]);
        assert_eq!(b3.order_of(&w, 200), Order::Finite(4));
    }

    #[test]
    fn odd_classes_examples() {
        assert_eq!(
            linear(&["a", "b", "c"], &[3, 3])
                .matrix()
                .odd_classes()
                .len(),
            1
        );
        assert_eq!(dihedral(F(4)).matrix().odd_classes().len(), 2);
        assert_eq!(dihedral(F(7)).matrix().odd_classes().len(), 1);
    }

    #[test]
    fn cosets_and_deodhar() {
        // B2 with S = {t, s1}.
        let b2 = CoxeterSystem::new(CoxMatrix::from_edges(&["t", "s1"], &[(0, 1, F(4))]).unwrap());
        let w = b2.elem(&[0, 1, 0]);
        assert_eq!(b2.min_coset_rep(&w, genset([1]), Side::Right), w);
        assert!(b2
            .min_coset_rep(&b2.gen(1), genset([1]), Side::Right)
            .is_identity());
        assert_eq!(b2.min_coset_rep(&w, 0, Side::Right), w);
        let a2 = CoxeterSystem::new(CoxMatrix::from_edges(&["a", "b"], &[(0, 1, F(3))]).unwrap());
        let aba = a2.elem(&[0, 1, 0]);
        // W_a (aba) W_b = {ba, aba}, checked against the brute-force minimum.
        let all = a2.enumerate_group().unwrap();
        let brute = all
            .iter()
            .flat_map(|x| all.iter().map(move |y| (x, y)))
            .filter(|(x, y)| x.in_parabolic(genset([0])) && y.in_parabolic(genset([1])))
            .map(|(x, y)| a2.mul(&a2.mul(x, &aba), y))
            .min_by(|p, q| p.shortlex_key().cmp(&q.shortlex_key()))
            .unwrap();
        assert_eq!(brute, a2.elem(&[1, 0]));
        assert_eq!(
            a2.min_double_coset_rep(&aba, genset([0]), genset([1])),
            brute
        );
        assert!(a2.min_double_coset_rep(&aba, 0b11, 0b11).is_identity());
        // w = 1, s in C gives r = s.
        assert_eq!(a2.deodhar(&a2.identity(), 1, genset([1])).unwrap(), 1);
        assert!(a2.deodhar(&a2.identity(), 0, genset([1])).is_err());
    }

    #[test]
    fn finite_group_tables() {
        let b3 = linear(&["a", "b", "c"], &[4, 3]);
        let g = FiniteGroup::new(b3.clone()).unwrap();
        let t = g.mult_table();
        let n = g.len();
        for a in (0..n).step_by(7) {
            for b in (0..n).step_by(5) {
                let p = b3.mul(g.elem(a as u32), g.elem(b as u32));
                assert_eq!(t[a * n + b], g.index_of(&p));
            }
            assert_eq!(t[a * n + g.inv(a as u32) as usize], 0);
        }
    }

    #[test]
    fn parse_matrix_text() {
        let m = CoxMatrix::parse("# B2\nt s\n1 4\n4 1\n").unwrap();
        assert_eq!(m.bond(0, 1), F(4));
        assert_eq!(CoxMatrix::parse(&m.to_text()).unwrap(), m);
        assert!(CoxMatrix::parse("a b\n1 3\n2 1\n").is_err());
        let sys = CoxeterSystem::new(
            CoxMatrix::from_edges(&["t", "t'", "s1"], &[(0, 2, F(4)), (1, 2, F(4))]).unwrap(),
        );
        assert_eq!(sys.parse_word("t's1t").unwrap(), vec![1, 2, 0]);
        assert_eq!(sys.parse_word("t' s1 t").unwrap(), vec![1, 2, 0]);
    }
}
