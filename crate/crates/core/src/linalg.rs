//! Small dense matrices over [`CycReal`] and exact rank computations.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::scalar::{CycField, CycReal};

pub type Vector = Vec<CycReal>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    n: usize,
    data: Vec<CycReal>,
}

impl Mat {
    pub fn zeros(field: &'static CycField, n: usize) -> Mat {
        Mat {
            n,
            data: vec![field.zero(); n * n],
        }
    }

    pub fn identity(field: &'static CycField, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycReal>>) -> Mat {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Mat {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycReal {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycReal) {
        self.data[i * self.n + j] = x;
    }

    pub fn row(&self, i: usize) -> &[CycReal] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vector> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        let f = self.data[0].field();
        let mut out = Mat::zeros(f, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * n + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[CycReal]) -> Vector {
        (0..self.n).map(|i| dot(self.row(i), v)).collect()
    }

    /// Principal submatrix on the given index set.
    pub fn principal(&self, idx: &[usize]) -> Mat {
        Mat::from_rows(
            idx.iter()
                .map(|&i| idx.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        )
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot(u: &[CycReal], v: &[CycReal]) -> CycReal {
    let mut acc = u[0].field().zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc = &acc + &(a * b);
        }
    }
    acc
}

/// `u^T G v`.
pub fn form(gram: &Mat, u: &[CycReal], v: &[CycReal]) -> CycReal {
    dot(u, &gram.apply(v))
}

pub fn add(u: &[CycReal], v: &[CycReal]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn sub(u: &[CycReal], v: &[CycReal]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn scale(c: &CycReal, v: &[CycReal]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn neg(v: &[CycReal]) -> Vector {
    v.iter().map(|x| -x).collect()
}

/// Row echelon form in place; returns pivot columns.
fn echelon(rows: &mut [Vector]) -> Vec<usize> {
    let mut pivots = Vec::new();
    if rows.is_empty() {
        return pivots;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        let pivot_row: Vector = rows[r].iter().map(|x| x * &inv).collect();
        for i in (r + 1)..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for k in c..cols {
                if !pivot_row[k].is_zero() {
                    rows[i][k] = &rows[i][k] - &(&f * &pivot_row[k]);
                }
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vector]) -> usize {
    let mut m = rows.to_vec();
    echelon(&mut m).len()
}

pub fn det(m: &Mat) -> CycReal {
    let n = m.dim();
    let f = m.get(0, 0).field();
    let mut a = m.rows();
    let mut d = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return f.zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d = &d * &a[c][c];
        let inv = a[c][c].inv().expect("nonzero pivot");
        for i in (c + 1)..n {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = &a[i][c] * &inv;
            for k in c..n {
                let t = &factor * &a[c][k];
                a[i][k] = &a[i][k] - &t;
            }
        }
    }
    d
}

/// Positive definiteness of a symmetric matrix, via leading principal minors.
pub fn is_positive_definite(m: &Mat) -> bool {
    (1..=m.dim()).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        det(&m.principal(&idx)).sign() > 0
    })
}

/// Positive semidefiniteness of a symmetric matrix: every principal minor is non-negative.
pub fn is_positive_semidefinite(m: &Mat) -> bool {
    let n = m.dim();
    assert!(n < 24, "too many principal minors");
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        det(&m.principal(&idx)).sign() >= 0
    })
}

/// Exact rank of a rational matrix.
pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    let mut a = rows.to_vec();
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in (r + 1)..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &piv;
            for k in c..cols {
                let t = &f * &a[r][k];
                a[i][k] -= t;
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

pub fn rational_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bond::Bond;
    use crate::scalar::{field, Q};

    #[test]
    fn determinants_and_definiteness() {
        let f = field(2);
        let h = f.rational(Q::new(-1, 2));
        let a2 = Mat::from_rows(vec![vec![f.one(), h.clone()], vec![h, f.one()]]);
        assert_eq!(det(&a2), f.rational(Q::new(3, 4)));
        assert!(is_positive_definite(&a2));
        let m1 = f.int(-1);
        let a1t = Mat::from_rows(vec![vec![f.one(), m1.clone()], vec![m1, f.one()]]);
        assert!(det(&a1t).is_zero());
        assert!(!is_positive_definite(&a1t));
        assert!(is_positive_semidefinite(&a1t));
        assert_eq!(rank(&a1t.rows()), 1);
    }

    #[test]
    fn b2_gram() {
        let f = field(4);
        let c = -f.cos_pi_over(Bond::Finite(4)).unwrap();
        let b2 = Mat::from_rows(vec![vec![f.one(), c.clone()], vec![c, f.one()]]);
        assert_eq!(det(&b2), f.rational(Q::new(1, 2)));
        let id = Mat::identity(f, 2);
        assert_eq!(b2.mul(&id), b2);
    }

    #[test]
    fn rational_rank() {
        let rows = rational_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank_rational(&rows), 2);
    }
}
