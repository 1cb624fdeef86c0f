//! Rational functions of the form `q^s · N(q) / ∏_k (1 - q^k)`.
//!
//! Every coefficient of Hua's generating function has this shape, so the
//! denominator is kept factored as a multiset of exponents and is only ever
//! reduced by exact trial division.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg};

use num_traits::One;

use crate::error::{Error, Result};
use crate::series::poly::QPolynomial;
use crate::Int;

/// `q^shift · numerator / ∏_{k ∈ denominator} (1 - q^k)`.
///
/// After construction the numerator is either zero (then shift is zero and
/// the denominator empty) or has a nonzero constant term, and no factor of
/// the denominator divides the numerator.
#[derive(Clone, Debug)]
pub struct RationalQ {
    numerator: QPolynomial,
    shift: i64,
    denominator: Vec<u32>,
}

impl RationalQ {
    pub fn new(numerator: QPolynomial, shift: i64, mut denominator: Vec<u32>) -> Self {
        assert!(denominator.iter().all(|&k| k > 0), "(1 - q^0) is not a valid factor");
        denominator.sort_unstable();
        RationalQ { numerator, shift, denominator }.normalized()
    }

    pub fn zero() -> Self {
        RationalQ { numerator: QPolynomial::zero(), shift: 0, denominator: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_polynomial(QPolynomial::one())
    }

    pub fn from_polynomial(p: QPolynomial) -> Self {
        Self::new(p, 0, Vec::new())
    }

    /// `c · q^shift`.
    pub fn monomial(c: Int, shift: i64) -> Self {
        Self::new(QPolynomial::constant(c), shift, Vec::new())
    }

    pub fn numerator(&self) -> &QPolynomial {
        &self.numerator
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Exponents `k` of the `(1 - q^k)` factors, ascending.
    pub fn denominator(&self) -> &[u32] {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn normalized(mut self) -> Self {
        if self.numerator.is_zero() {
            return Self::zero();
        }
        let v = self.numerator.valuation();
        if v > 0 {
            self.numerator = self.numerator.shift_down(v);
            self.shift += v as i64;
        }
        // Larger factors first: (1-q^2)/((1-q)(1-q^2)) reduces fully this way.
        let mut kept = Vec::with_capacity(self.denominator.len());
        for &k in self.denominator.iter().rev() {
            match self.numerator.div_one_minus_q_pow(k as usize) {
                Some(q) => self.numerator = q,
                None => kept.push(k),
            }
        }
        kept.reverse();
        self.denominator = kept;
        self
    }

    /// Exact conversion to a polynomial, failing with
    /// [`Error::NotAPolynomial`] when a denominator factor survives or the
    /// result would contain negative powers of `q`.
    pub fn to_polynomial(&self) -> Result<QPolynomial> {
        if self.is_zero() {
            return Ok(QPolynomial::zero());
        }
        if !self.denominator.is_empty() || self.shift < 0 {
            return Err(Error::NotAPolynomial);
        }
        Ok(self.numerator.shift_up(self.shift as usize))
    }

    /// Rewrites the value over the given denominator multiset, which must be
    /// a polynomial multiple of the current one.
    pub fn over_denominator(&self, target: &[u32]) -> Result<(QPolynomial, i64)> {
        let have = product_of_factors(&self.denominator);
        let want = product_of_factors(target);
        let ratio = want.div_exact(&have).ok_or(Error::NotAPolynomial)?;
        Ok((&self.numerator * &ratio, self.shift))
    }

    /// Value of `q^shift · numerator · ∏(1-q^k)^{-1}` as a truncated power
    /// series in `q`; requires `shift >= 0`.
    pub fn to_series(&self, order: usize) -> Result<crate::series::TruncatedSeries> {
        use crate::series::truncated::divide_by_one_minus_q_pow;
        if self.shift < 0 {
            return Err(Error::Invalid("series expansion needs a nonnegative q-shift".into()));
        }
        let mut c: Vec<Int> = alloc::vec![Int::default(); order + 1];
        for (i, x) in self.numerator.coeffs().iter().enumerate() {
            let k = i + self.shift as usize;
            if k <= order {
                c[k] = x.clone();
            }
        }
        for &k in &self.denominator {
            divide_by_one_minus_q_pow(&mut c, k as usize);
        }
        Ok(crate::series::TruncatedSeries::from_coeffs(
            c.into_iter().map(crate::Rational::from_integer).collect(),
            order,
        ))
    }
}

/// `∏_{k ∈ factors} (1 - q^k)`.
pub fn product_of_factors(factors: &[u32]) -> QPolynomial {
    factors.iter().fold(QPolynomial::one(), |acc, &k| acc.mul_one_minus_q_pow(k as usize))
}

/// Multiset union with multiplicity `max` for each exponent.
fn multiset_max(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                out.push(*x);
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(*x);
                i += 1;
            }
            (Some(_), Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (Some(x), None) => {
                out.push(*x);
                i += 1;
            }
            (None, Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Elements of `big` not matched by `small` (both sorted, `small ⊆ big`).
fn multiset_difference(big: &[u32], small: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let mut j = 0;
    for &x in big {
        if j < small.len() && small[j] == x {
            j += 1;
        } else {
            out.push(x);
        }
    }
    out
}

impl Add for &RationalQ {
    type Output = RationalQ;
    fn add(self, rhs: &RationalQ) -> RationalQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let den = multiset_max(&self.denominator, &rhs.denominator);
        let shift = self.shift.min(rhs.shift);
        let lift = |x: &RationalQ| {
            let extra = multiset_difference(&den, &x.denominator);
            let n = &x.numerator * &product_of_factors(&extra);
            n.shift_up((x.shift - shift) as usize)
        };
        RationalQ::new(&lift(self) + &lift(rhs), shift, den)
    }
}

impl Add for RationalQ {
    type Output = RationalQ;
    fn add(self, rhs: RationalQ) -> RationalQ {
        &self + &rhs
    }
}

impl Mul for &RationalQ {
    type Output = RationalQ;
    fn mul(self, rhs: &RationalQ) -> RationalQ {
        if self.is_zero() || rhs.is_zero() {
            return RationalQ::zero();
        }
        let mut den = self.denominator.clone();
        den.extend_from_slice(&rhs.denominator);
        RationalQ::new(&self.numerator * &rhs.numerator, self.shift + rhs.shift, den)
    }
}

impl Mul for RationalQ {
    type Output = RationalQ;
    fn mul(self, rhs: RationalQ) -> RationalQ {
        &self * &rhs
    }
}

impl Neg for RationalQ {
    type Output = RationalQ;
    fn neg(self) -> RationalQ {
        RationalQ { numerator: -self.numerator, ..self }
    }
}

/// Equality of values, not of representations.
impl PartialEq for RationalQ {
    fn eq(&self, other: &Self) -> bool {
        let shift = self.shift.min(other.shift);
        let lhs = (&self.numerator * &product_of_factors(&other.denominator))
            .shift_up((self.shift - shift) as usize);
        let rhs = (&other.numerator * &product_of_factors(&self.denominator))
            .shift_up((other.shift - shift) as usize);
        lhs == rhs
    }
}

impl Eq for RationalQ {}

impl fmt::Display for RationalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator)?;
        if self.shift != 0 {
            write!(f, "*q^{}", self.shift)?;
        }
        if !self.denominator.is_empty() {
            f.write_str(" / ")?;
            for k in &self.denominator {
                write!(f, "(1-q^{k})")?;
            }
        }
        Ok(())
    }
}

impl From<QPolynomial> for RationalQ {
    fn from(p: QPolynomial) -> Self {
        Self::from_polynomial(p)
    }
}

impl RationalQ {
    /// `1 / φ_r(q^{-1}) = (-1)^r q^{r(r+1)/2} / φ_r(q)`.
    pub fn inverse_phi_at_inverse_q(r: u32) -> Self {
        let sign = if r % 2 == 0 { Int::one() } else { -Int::one() };
        let shift = i64::from(r) * (i64::from(r) + 1) / 2;
        Self::new(QPolynomial::constant(sign), shift, (1..=r).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division_reduces() {
        let r = RationalQ::new(QPolynomial::from_i64s(&[1, 0, -1]), 0, alloc::vec![1]);
        assert_eq!(r.to_polynomial().unwrap(), QPolynomial::from_i64s(&[1, 1]));
        assert!(r.denominator().is_empty());
    }

    #[test]
    fn surviving_denominator_is_an_error() {
        let r = RationalQ::new(QPolynomial::one(), 0, alloc::vec![1]);
        assert_eq!(r.to_polynomial(), Err(Error::NotAPolynomial));
        let neg = RationalQ::monomial(Int::one(), -1);
        assert_eq!(neg.to_polynomial(), Err(Error::NotAPolynomial));
    }

    #[test]
    fn shift_normalization() {
        // q^{-2} · q^3 = q
        let r = RationalQ::new(QPolynomial::monomial(Int::one(), 3), -2, alloc::vec![]);
        assert_eq!(r.shift(), 1);
        assert_eq!(r.to_polynomial().unwrap(), QPolynomial::monomial(Int::one(), 1));
    }

    #[test]
    fn addition_over_common_denominator() {
        // 1/(1-q) - q/(1-q) = 1
        let a = RationalQ::new(QPolynomial::one(), 0, alloc::vec![1]);
        let b = RationalQ::new(QPolynomial::from_i64s(&[0, -1]), 0, alloc::vec![1]);
        assert_eq!((&a + &b).to_polynomial().unwrap(), QPolynomial::one());
        // 1/(1-q) + 1/(1-q^2) = (2+q)/(1-q^2)
        let c = RationalQ::new(QPolynomial::one(), 0, alloc::vec![2]);
        let s = &a + &c;
        let expect = RationalQ::new(QPolynomial::from_i64s(&[2, 1]), 0, alloc::vec![2]);
        assert_eq!(s, expect);
    }

    #[test]
    fn inverse_phi_at_inverse_q_small() {
        // 1/(1 - q^{-1}) = -q/(1-q)
        let r = RationalQ::inverse_phi_at_inverse_q(1);
        let expect = RationalQ::new(QPolynomial::from_i64s(&[0, -1]), 0, alloc::vec![1]);
        assert_eq!(r, expect);
        assert_eq!(RationalQ::inverse_phi_at_inverse_q(0), RationalQ::one());
    }

    #[test]
    fn over_denominator_round_trip() {
        let r = RationalQ::new(QPolynomial::from_i64s(&[3, 1]), 2, alloc::vec![1, 2]);
        let (num, shift) = r.over_denominator(&[1, 2, 3]).unwrap();
        assert_eq!(RationalQ::new(num, shift, alloc::vec![1, 2, 3]), r);
    }
}
