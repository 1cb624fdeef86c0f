//! Power series in `q` truncated at a fixed order `N` (arithmetic modulo
//! `q^{N+1}`) with exact rational coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::poly::QPolynomial;
use crate::{Int, Rational};

/// A power series known modulo `q^{order+1}`.
///
/// Binary operations on series of different orders return a series of the
/// smaller order; nothing ever widens the order silently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Builds a series from leading coefficients, padding or truncating to
    /// `order`.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(Int::from(c))).collect(), order)
    }

    pub fn from_polynomial(p: &QPolynomial, order: usize) -> Self {
        Self::from_coeffs(p.coeffs().iter().cloned().map(Rational::from_integer).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    /// Coefficients as integers, or `None` if some coefficient is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<Int>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "truncation cannot widen a series");
        TruncatedSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inv(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NonInvertible);
        }
        let n = self.order();
        let inv0 = c0.recip();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -acc * &inv0;
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `log f = Σ_{k≥1} (-1)^{k+1} (f-1)^k / k`; requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonInvertible);
        }
        let n = self.order();
        let mut g = self.clone();
        g.coeffs[0] = Rational::zero();
        let mut out = Self::zero(n);
        let mut power = g.clone();
        // g has valuation >= 1 so g^k vanishes mod q^{n+1} once k > n.
        for k in 1..=n {
            let factor = Rational::new(Int::from(if k % 2 == 1 { 1 } else { -1 }), Int::from(k));
            out = &out + &power.scale(&factor);
            power = &power * &g;
        }
        Ok(out)
    }

    /// `exp f = Σ_{k≥0} f^k / k!`; requires constant term 0.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Invalid("exp needs a series without constant term".into()));
        }
        let n = self.order();
        let mut out = Self::one(n);
        let mut term = Self::one(n);
        for k in 1..=n {
            term = (&term * self).scale(&Rational::new(Int::one(), Int::from(k)));
            out = &out + &term;
        }
        Ok(out)
    }

    /// `self^e` for a nonnegative integer exponent.
    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect() }
    }
}

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

/// `∏_{k≥1} (1-q^k)^{-1}` raised to `colors`, truncated at `order`.
pub fn partition_gf(colors: u32, order: usize) -> TruncatedSeries {
    let mut p = euler_inverse(order);
    if colors == 0 {
        return TruncatedSeries::one(order);
    }
    let base = p.clone();
    for _ in 1..colors {
        p = &p * &base;
    }
    p
}

/// `p(q) = ∏_{k=1}^{order} (1-q^k)^{-1}` by repeated division.
fn euler_inverse(order: usize) -> TruncatedSeries {
    let mut c = vec![Int::zero(); order + 1];
    c[0] = Int::one();
    for k in 1..=order {
        divide_by_one_minus_q_pow(&mut c, k);
    }
    TruncatedSeries { coeffs: c.into_iter().map(Rational::from_integer).collect() }
}

/// In-place division of a truncated integer series by `1 - q^k`.
pub(crate) fn divide_by_one_minus_q_pow(c: &mut [Int], k: usize) {
    for i in k..c.len() {
        let prev = c[i - k].clone();
        c[i] += prev;
    }
}

/// `1 / ∏_{k=1}^{n} (1-q^k) = 1/φ_n(q)` truncated at `order`.
pub fn inverse_phi(n: u32, order: usize) -> TruncatedSeries {
    let mut c = vec![Int::zero(); order + 1];
    c[0] = Int::one();
    for k in 1..=n as usize {
        if k > order {
            break;
        }
        divide_by_one_minus_q_pow(&mut c, k);
    }
    TruncatedSeries { coeffs: c.into_iter().map(Rational::from_integer).collect() }
}

/// `q^n / φ_n(q)`: partitions into exactly `n` parts, truncated at `order`.
pub fn partitions_exact_parts_gf(n: u32, order: usize) -> TruncatedSeries {
    let base = inverse_phi(n, order);
    let mut coeffs = vec![Rational::zero(); order + 1];
    for k in (n as usize)..=order {
        coeffs[k] = base.coeffs[k - n as usize].clone();
    }
    TruncatedSeries { coeffs }
}

/// Number of partitions of `m` into exactly `n` parts, by enumerating the
/// nonincreasing part sequences directly.
pub fn p_exact(n: u32, m: u32) -> u64 {
    fn count(remaining: u32, parts_left: u32, max_part: u32) -> u64 {
        if parts_left == 0 {
            return u64::from(remaining == 0);
        }
        // Each remaining part is at least 1 and at most max_part.
        if remaining < parts_left || remaining > parts_left * max_part {
            return 0;
        }
        (1..=max_part.min(remaining)).map(|p| count(remaining - p, parts_left - 1, p)).sum()
    }
    count(m, n, m.max(1))
}
