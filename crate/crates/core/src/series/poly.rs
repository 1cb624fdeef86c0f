//! Dense univariate polynomials in `q` with arbitrary-precision integer
//! coefficients.
//!
//! Coefficients are stored in ascending degree order. The vector is empty for
//! the zero polynomial and its last entry is nonzero otherwise.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Int;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<Int>,
}

impl QPolynomial {
    fn normalize(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial { coeffs: vec![Int::one()] }
    }

    pub fn constant(c: Int) -> Self {
        QPolynomial { coeffs: vec![c] }.normalize()
    }

    /// `c·q^k`.
    pub fn monomial(c: Int, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Int::zero(); k + 1];
        coeffs[k] = c;
        QPolynomial { coeffs }
    }

    /// `1 - q^k`; for `k = 0` this is the zero polynomial.
    pub fn one_minus_q_pow(k: usize) -> Self {
        Self::one() - Self::monomial(Int::one(), k)
    }

    pub fn from_coeffs(coeffs: Vec<Int>) -> Self {
        QPolynomial { coeffs }.normalize()
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Int> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Int {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    /// Number of trailing zero coefficients at the low end, i.e. the
    /// `q`-adic valuation. Zero for the zero polynomial.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Multiplies by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Int::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPolynomial { coeffs }
    }

    /// Divides by `q^k`; the caller guarantees `k <= valuation()`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.is_zero() || k <= self.valuation());
        QPolynomial { coeffs: self.coeffs.iter().skip(k).cloned().collect() }
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QPolynomial { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn eval(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sum of the coefficients (value at `q = 1`).
    pub fn coefficient_sum(&self) -> Int {
        self.coeffs.iter().sum()
    }

    /// Multiplies by `1 - q^k`.
    pub fn mul_one_minus_q_pow(&self, k: usize) -> Self {
        assert!(k > 0, "1 - q^0 is zero");
        let n = self.coeffs.len();
        let mut out = vec![Int::zero(); n + k];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
            out[i + k] -= c;
        }
        QPolynomial { coeffs: out }.normalize()
    }

    /// Exact division by `1 - q^k`, or `None` if it leaves a remainder.
    pub fn div_one_minus_q_pow(&self, k: usize) -> Option<Self> {
        assert!(k > 0, "1 - q^0 is zero");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        if n < k + 1 {
            return None;
        }
        // self = (1 - q^k) g, so g_i = self_i + g_{i-k}; deg g = n - 1 - k.
        let glen = n - k;
        let mut g: Vec<Int> = Vec::with_capacity(glen);
        for i in 0..glen {
            let mut v = self.coeffs[i].clone();
            if i >= k {
                v += &g[i - k];
            }
            g.push(v);
        }
        // Remaining coefficients must match: self_i = g_i - g_{i-k} for i >= glen.
        for i in glen..n {
            let prev = match i.checked_sub(k) {
                Some(j) if j < glen => -&g[j],
                _ => Int::zero(),
            };
            if self.coeffs[i] != prev {
                return None;
            }
        }
        Some(QPolynomial { coeffs: g }.normalize())
    }

    /// Exact division by an arbitrary nonzero polynomial with unit leading
    /// coefficient, or `None` if it leaves a remainder.
    pub fn div_exact(&self, divisor: &QPolynomial) -> Option<Self> {
        let dlead = divisor.leading_coeff().expect("division by zero polynomial");
        assert!(dlead.abs().is_one(), "divisor must have unit leading coefficient");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut quot = vec![Int::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &rem[i + dd] * dlead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(QPolynomial { coeffs: quot }.normalize())
    }

    /// Divides every coefficient by `c`, or `None` if some division is inexact.
    pub fn div_scalar_exact(&self, c: &Int) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            let (q, r) = num_integer::Integer::div_rem(x, c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(QPolynomial { coeffs: out })
    }

    fn small_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

fn mul_slices(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Schoolbook product on machine integers; `None` on `i128` overflow.
fn mul_small(a: &[i64], b: &[i64]) -> Option<Vec<Int>> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let p = (x as i128) * (y as i128);
            out[i + j] = out[i + j].checked_add(p)?;
        }
    }
    Some(out.into_iter().map(BigInt::from).collect())
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        if let (Some(a), Some(b)) = (self.small_coeffs(), rhs.small_coeffs()) {
            if let Some(coeffs) = mul_small(&a, &b) {
                return QPolynomial { coeffs }.normalize();
            }
        }
        QPolynomial { coeffs: mul_slices(&self.coeffs, &rhs.coeffs) }.normalize()
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let (long, short) =
            if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, x) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += x;
        }
        QPolynomial { coeffs }.normalize()
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: QPolynomial) -> QPolynomial {
        &self + &rhs
    }
}

impl Neg for QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs.clone())
    }
}

impl Sub for QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: QPolynomial) -> QPolynomial {
        &self - &rhs
    }
}

/// Prints in descending powers, e.g. `q^2 + q + 1` or `q^4 - q^3 - q^2 + q`.
impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = abs.is_one();
            match k {
                0 => write!(f, "{abs}")?,
                1 if unit => f.write_str("q")?,
                1 => write!(f, "{abs}*q")?,
                _ if unit => write!(f, "q^{k}")?,
                _ => write!(f, "{abs}*q^{k}")?,
            }
        }
        Ok(())
    }
}

/// `φ_n(q) = (1-q)(1-q^2)…(1-q^n)`, with `φ_0 = 1`.
pub fn phi(n: u32) -> QPolynomial {
    let mut p = QPolynomial::one();
    for k in 1..=n as usize {
        p = p.mul_one_minus_q_pow(k);
    }
    p
}

/// `φ_d(q) = ∏_i φ_{d_i}(q)`.
pub fn phi_dim(d: &[u32]) -> QPolynomial {
    d.iter().fold(QPolynomial::one(), |acc, &n| &acc * &phi(n))
}

/// Gaussian binomial coefficient `[n choose k]_q = φ_n / (φ_k φ_{n-k})`.
pub fn q_binomial(n: u32, k: u32) -> QPolynomial {
    if k > n {
        return QPolynomial::zero();
    }
    // Pascal rule: [n,k] = [n-1,k-1] + q^k [n-1,k].
    let n = n as usize;
    let k = k as usize;
    let mut row: Vec<QPolynomial> = vec![QPolynomial::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for j in 0..=m.min(k) {
            let left = if j > 0 { row[j - 1].clone() } else { QPolynomial::zero() };
            let right = if j < row.len() { row[j].shift_up(j) } else { QPolynomial::zero() };
            next.push(&left + &right);
        }
        row = next;
    }
    row[k].clone()
}
