//! Exact arithmetic in the real cyclotomic fields `Q(cos(pi/N))`.
//!
//! Elements are stored as polynomials in `zeta = exp(i pi / N)` reduced
//! modulo the cyclotomic polynomial `Phi_{2N}`, which is a canonical form:
//! two elements are equal iff their coordinate vectors are equal. Every
//! element the library builds is real, so its value is `sum c_k cos(k pi/N)`
//! over the same coordinates. Printing goes through the cosine basis of the
//! real subfield instead (see [`CycReal::cos_coords`]).

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use smallvec::SmallVec;
use std::sync::Mutex;

use crate::bond::Bond;
use crate::error::{Error, Result};

pub type Q = Ratio<i64>;

pub(crate) fn qadd(a: Q, b: Q) -> Q {
    a.checked_add(&b).expect("rational overflow")
}

pub(crate) fn qsub(a: Q, b: Q) -> Q {
    a.checked_sub(&b).expect("rational overflow")
}

pub(crate) fn qmul(a: Q, b: Q) -> Q {
    a.checked_mul(&b).expect("rational overflow")
}

pub(crate) fn qdiv(a: Q, b: Q) -> Q {
    a.checked_div(&b)
        .expect("rational overflow or division by zero")
}

type Coords = SmallVec<[Q; 8]>;

/// The field `Q(zeta + zeta^-1)` with `zeta` a primitive `2N`-th root of unity.
pub struct CycField {
    conductor: u32,
    dim: usize,
    /// Reduced coordinates of `zeta^k` for `0 <= k < 2N`.
    powers: Vec<Coords>,
    cos: Vec<f64>,
}

static FIELDS: Lazy<Mutex<HashMap<u32, &'static CycField>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Returns the (shared) field of the given conductor `N >= 1`.
pub fn field(conductor: u32) -> &'static CycField {
    assert!(conductor >= 1, "conductor must be positive");
    let mut map = FIELDS.lock().unwrap_or_else(|e| e.into_inner());
    map.entry(conductor)
        .or_insert_with(|| Box::leak(Box::new(CycField::build(conductor))))
}

/// Smallest conductor in which `cos(pi/m)` lives for every finite `m` given.
pub fn conductor_for<I: IntoIterator<Item = Bond>>(bonds: I) -> u32 {
    let mut n: u32 = 2;
    for b in bonds {
        if let Bond::Finite(m) = b {
            if m >= 4 {
                n = n.lcm(&m);
            }
        }
    }
    n
}

fn poly_divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // Both monic with integer coefficients, lowest degree first.
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quo = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quo[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quo
}

fn cyclotomic(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d of n.
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_divide_exact(&p, &cyclotomic(d));
        }
    }
    p
}

impl CycField {
    fn build(conductor: u32) -> CycField {
        let order = 2 * conductor;
        let phi = cyclotomic(order);
        let dim = phi.len() - 1;
        let mut powers: Vec<Coords> = Vec::with_capacity(order as usize);
        let mut cur: Coords = SmallVec::from_elem(Q::zero(), dim);
        cur[0] = Q::one();
        for _ in 0..order {
            powers.push(cur.clone());
            let top = cur[dim - 1];
            let mut next: Coords = SmallVec::from_elem(Q::zero(), dim);
            for i in (1..dim).rev() {
                next[i] = cur[i - 1];
            }
            if !top.is_zero() {
                for i in 0..dim {
                    next[i] = qsub(next[i], qmul(top, Q::from_integer(phi[i])));
                }
            }
            cur = next;
        }
        let cos = (0..dim)
            .map(|k| (std::f64::consts::PI * k as f64 / conductor as f64).cos())
            .collect();
        CycField {
            conductor,
            dim,
            powers,
            cos,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn zero(&'static self) -> CycReal {
        CycReal {
            field: self,
            c: SmallVec::from_elem(Q::zero(), self.dim),
        }
    }

    pub fn rational(&'static self, q: Q) -> CycReal {
        let mut z = self.zero();
        z.c[0] = q;
        z
    }

    pub fn int(&'static self, n: i64) -> CycReal {
        self.rational(Q::from_integer(n))
    }

    pub fn one(&'static self) -> CycReal {
        self.int(1)
    }

    /// `cos(k pi / N)`.
    pub fn cos_k(&'static self, k: u32) -> CycReal {
        let order = 2 * self.conductor as usize;
        let k = k as usize % order;
        let a = &self.powers[k];
        let b = &self.powers[(order - k) % order];
        let half = Q::new(1, 2);
        CycReal {
            field: self,
            c: a.iter()
                .zip(b.iter())
                .map(|(&x, &y)| qmul(qadd(x, y), half))
                .collect(),
        }
    }

    /// `cos(pi/m)`; `m = inf` gives `1` and `m = 1` gives `-1`.
    pub fn cos_pi_over(&'static self, m: Bond) -> Result<CycReal> {
        match m {
            Bond::Inf => Ok(self.one()),
            Bond::Finite(0) => Err(Error::Precondition("cos(pi/0)".into())),
            Bond::Finite(1) => Ok(self.int(-1)),
            Bond::Finite(2) => Ok(self.zero()),
            Bond::Finite(3) => Ok(self.rational(Q::new(1, 2))),
            Bond::Finite(m) if self.conductor % m == 0 => Ok(self.cos_k(self.conductor / m)),
            Bond::Finite(m) => Err(Error::Conductor {
                m,
                conductor: self.conductor,
            }),
        }
    }

    /// Orders `m` whose `cos(pi/m)` lies in this field, ascending.
    pub fn representable_orders(&self) -> Vec<u32> {
        let mut v: Vec<u32> = (2..=self.conductor)
            .filter(|m| self.conductor % m == 0)
            .collect();
        v.extend([2, 3]);
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Finite `m >= 2` with `x = cos(pi/m)`, if any.
    pub fn recognize_cos(&'static self, x: &CycReal) -> Option<u32> {
        self.check(x);
        let approx = x.approx();
        self.representable_orders().into_iter().find(|&m| {
            let c = (std::f64::consts::PI / m as f64).cos();
            (c - approx).abs() < 1e-6
                && self
                    .cos_pi_over(Bond::Finite(m))
                    .map(|y| &y == x)
                    .unwrap_or(false)
        })
    }

    /// Membership in `{cos(pi/m) : m >= 2} u [1, inf)`.
    pub fn in_cos(&'static self, x: &CycReal) -> bool {
        self.recognize_cos(x).is_some() || (x - &self.one()).sign() >= 0
    }

    fn check(&self, x: &CycReal) {
        assert!(
            std::ptr::eq(self, x.field),
            "mixing scalars from different fields"
        );
    }
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycField(N={})", self.conductor)
    }
}

/// A real element of a cyclotomic field.
#[derive(Clone)]
pub struct CycReal {
    field: &'static CycField,
    c: Coords,
}

impl PartialEq for CycReal {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.c == other.c
    }
}

impl Eq for CycReal {}

impl Hash for CycReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        for q in &self.c {
            q.numer().hash(state);
            q.denom().hash(state);
        }
    }
}

impl CycReal {
    pub fn field(&self) -> &'static CycField {
        self.field
    }

    /// Coordinates in the power basis `1, zeta, ..., zeta^(d-1)`.
    pub fn coords(&self) -> &[Q] {
        &self.c
    }

    /// Coordinates on `1, cos(pi/N), ..., cos((h-1)pi/N)` with `h = [Q(cos(pi/N)):Q]`.
    pub fn cos_coords(&self) -> Vec<Q> {
        let f = self.field;
        let h = (f.dim / 2).max(1);
        let d = f.dim;
        // Columns: cos(k pi/N) for k < h, then self.
        let mut m: Vec<Vec<Q>> = (0..d)
            .map(|i| {
                let mut row: Vec<Q> = (0..h).map(|k| f.cos_k(k as u32).c[i]).collect();
                row.push(self.c[i]);
                row
            })
            .collect();
        let mut r = 0;
        let mut pivots = Vec::new();
        for col in 0..h {
            let Some(p) = (r..d).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let pv = m[r][col];
            for x in m[r].iter_mut() {
                *x = qdiv(*x, pv);
            }
            for i in 0..d {
                if i != r && !m[i][col].is_zero() {
                    let fac = m[i][col];
                    for k in 0..=h {
                        let t = qmul(fac, m[r][k]);
                        m[i][k] = qsub(m[i][k], t);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        assert!(
            m[r..].iter().all(|row| row[h].is_zero()),
            "element is not real"
        );
        let mut out = vec![Q::zero(); h];
        for (i, &col) in pivots.iter().enumerate() {
            out[col] = m[i][h];
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.c[1..].iter().all(Zero::is_zero).then(|| self.c[0])
    }

    pub fn approx(&self) -> f64 {
        self.c
            .iter()
            .zip(&self.field.cos)
            .map(|(q, c)| q.to_f64().unwrap_or(f64::NAN) * c)
            .sum()
    }

    pub fn scale(&self, q: Q) -> CycReal {
        CycReal {
            field: self.field,
            c: self.c.iter().map(|&x| qmul(x, q)).collect(),
        }
    }

    /// Exact sign: `-1`, `0` or `1`.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if let Some(q) = self.as_rational() {
            return if q.is_positive() { 1 } else { -1 };
        }
        let v = self.approx();
        let mag: f64 = self
            .c
            .iter()
            .map(|q| q.to_f64().unwrap_or(f64::INFINITY).abs())
            .sum();
        let err = 1e-12 * (mag + 1.0);
        if v.is_finite() && v.abs() > err {
            return if v > 0.0 { 1 } else { -1 };
        }
        interval::sign(self.field.conductor, &self.c)
    }

    pub fn cmp_to(&self, other: &CycReal) -> std::cmp::Ordering {
        (self - other).sign().cmp(&0)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<CycReal> {
        if self.is_zero() {
            return None;
        }
        let d = self.field.dim;
        // Column j of the multiplication-by-self map is self * zeta^j.
        let mut m: Vec<Vec<Q>> = vec![vec![Q::zero(); d + 1]; d];
        for j in 0..d {
            let mut basis = self.field.zero();
            basis.c = self.field.powers[j].clone();
            let col = self * &basis;
            for i in 0..d {
                m[i][j] = col.c[i];
            }
        }
        m[0][d] = Q::one();
        let sol = solve_augmented(m)?;
        Some(CycReal {
            field: self.field,
            c: sol.into_iter().collect(),
        })
    }
}

/// Gauss-Jordan over big rationals; intermediate entries outgrow `i64`
/// long before the solution does.
fn solve_augmented(m: Vec<Vec<Q>>) -> Option<Vec<Q>> {
    use num_rational::BigRational;
    let big = |q: &Q| BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()));
    let mut m: Vec<Vec<BigRational>> = m.iter().map(|row| row.iter().map(big).collect()).collect();
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in col..=n {
                    let t = &f * &m[col][k];
                    m[r][k] -= t;
                }
            }
        }
    }
    let small = |q: &BigRational| Some(Q::new(q.numer().to_i64()?, q.denom().to_i64()?));
    Some(
        m.iter()
            .map(|row| small(&row[n]).expect("rational overflow"))
            .collect(),
    )
}

impl<'a> Add<&'a CycReal> for &'a CycReal {
    type Output = CycReal;
    fn add(self, rhs: &CycReal) -> CycReal {
        self.field.check(rhs);
        CycReal {
            field: self.field,
            c: self
                .c
                .iter()
                .zip(&rhs.c)
                .map(|(&a, &b)| qadd(a, b))
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CycReal> for &'a CycReal {
    type Output = CycReal;
    fn sub(self, rhs: &CycReal) -> CycReal {
        self.field.check(rhs);
        CycReal {
            field: self.field,
            c: self
                .c
                .iter()
                .zip(&rhs.c)
                .map(|(&a, &b)| qsub(a, b))
                .collect(),
        }
    }
}

impl<'a> Mul<&'a CycReal> for &'a CycReal {
    type Output = CycReal;
    fn mul(self, rhs: &CycReal) -> CycReal {
        self.field.check(rhs);
        let f = self.field;
        let mut out: Coords = SmallVec::from_elem(Q::zero(), f.dim);
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = qmul(a, b);
                for (o, &p) in out.iter_mut().zip(&f.powers[i + j]) {
                    if !p.is_zero() {
                        *o = qadd(*o, qmul(ab, p));
                    }
                }
            }
        }
        CycReal { field: f, c: out }
    }
}

impl Neg for &CycReal {
    type Output = CycReal;
    fn neg(self) -> CycReal {
        CycReal {
            field: self.field,
            c: self.c.iter().map(|&a| -a).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycReal> for CycReal {
            type Output = CycReal;
            fn $m(self, rhs: CycReal) -> CycReal {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycReal> for CycReal {
            type Output = CycReal;
            fn $m(self, rhs: &CycReal) -> CycReal {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycReal {
    type Output = CycReal;
    fn neg(self) -> CycReal {
        -&self
    }
}

fn fmt_q(q: Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CycReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.field.conductor;
        let mut first = true;
        for (k, q) in self.cos_coords().into_iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let a = q.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 {
                f.write_str(&fmt_q(a))?;
                continue;
            }
            if !a.is_one() {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "({})", fmt_q(a))?;
                }
            }
            let g = (k as u32).gcd(&n);
            let (num, den) = (k as u32 / g, n / g);
            match (num, den) {
                (1, 1) => f.write_str("cos(pi)")?,
                (1, d) => write!(f, "cos(pi/{d})")?,
                (p, 1) => write!(f, "cos({p}pi)")?,
                (p, d) => write!(f, "cos({p}pi/{d})")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [N={}]", self.field.conductor)
    }
}

/// Certified sign by fixed-point interval evaluation with growing precision.
mod interval {
    use super::*;

    fn atan_inv(x: u32, prec: u32) -> (BigInt, u64) {
        // atan(1/x) * 2^prec, truncated, with an error bound in ulps.
        let one = BigInt::one() << prec;
        let x2 = BigInt::from(x) * BigInt::from(x);
        let mut term = &one / BigInt::from(x);
        let mut sum = BigInt::zero();
        let mut k: u64 = 0;
        while !term.is_zero() {
            let t = &term / BigInt::from(2 * k + 1);
            if k % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
            term /= &x2;
            k += 1;
        }
        (sum, 2 * k + 2)
    }

    fn pi(prec: u32) -> (BigInt, u64) {
        let (a, ea) = atan_inv(5, prec);
        let (b, eb) = atan_inv(239, prec);
        (a * 16 - b * 4, 16 * ea + 4 * eb)
    }

    fn mulf(a: &BigInt, b: &BigInt, prec: u32) -> BigInt {
        (a * b) >> prec
    }

    /// `cos(theta)` for `0 <= theta <= pi/2 + tiny`, returning value and error in ulps.
    fn cos_small(theta: &BigInt, e_theta: u64, prec: u32) -> (BigInt, u64) {
        let x = mulf(theta, theta, prec);
        let e_x = 4 * e_theta + 2;
        let one = BigInt::one() << prec;
        let mut term = one.clone();
        let mut sum = one;
        let mut j: u64 = 1;
        let mut e_term: u64 = 0;
        let mut e_sum: u64 = 0;
        loop {
            term = mulf(&term, &x, prec) / BigInt::from((2 * j - 1) * (2 * j));
            e_term = e_term + e_term / 4 + e_x + 2;
            if term.is_zero() {
                break;
            }
            if j % 2 == 1 {
                sum -= &term;
            } else {
                sum += &term;
            }
            e_sum += e_term;
            j += 1;
        }
        (sum, e_sum + e_term + 4)
    }

    pub(super) fn sign(conductor: u32, c: &[Q]) -> i8 {
        let mut prec: u32 = 128;
        loop {
            if let Some(s) = try_sign(conductor, c, prec) {
                return s;
            }
            prec = prec
                .checked_mul(2)
                .expect("sign evaluation did not converge");
            assert!(prec <= 1 << 20, "sign evaluation did not converge");
        }
    }

    fn try_sign(conductor: u32, c: &[Q], prec: u32) -> Option<i8> {
        let (pi, e_pi) = pi(prec);
        let n = conductor as u64;
        let mut total = BigInt::zero();
        let mut err = BigInt::zero();
        for (k, q) in c.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let k = k as u64;
            // Reduce to [0, pi/2] using cos(theta) = -cos(pi - theta).
            let (kk, flip) = if 2 * k > n { (n - k, true) } else { (k, false) };
            let theta = (&pi * BigInt::from(kk)) / BigInt::from(n);
            let e_theta = e_pi + 1;
            let (mut cv, e_c) = cos_small(&theta, e_theta, prec);
            if flip {
                cv = -cv;
            }
            let a = BigInt::from(*q.numer());
            let b = BigInt::from(*q.denom());
            total += (&a * cv) / &b;
            err += (a.abs() * BigInt::from(e_c) + &b - 1) / &b + 1;
        }
        if total.abs() > err {
            Some(if total.is_positive() { 1 } else { -1 })
        } else {
            None
        }
    }
}
