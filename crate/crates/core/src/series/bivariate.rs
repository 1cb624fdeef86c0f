//! Power series in two variables `t, q`, truncated independently in each.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{Int, Rational};

/// Coefficients `c[i][j]` of `t^i q^j` for `i <= order_t`, `j <= order_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    grid: Vec<Vec<Rational>>,
}

impl BivariateSeries {
    pub fn one(order_t: usize, order_q: usize) -> Self {
        let mut grid = vec![vec![Rational::zero(); order_q + 1]; order_t + 1];
        grid[0][0] = Rational::one();
        BivariateSeries { grid }
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.grid.len() - 1, self.grid[0].len() - 1)
    }

    /// Coefficient of `t^i q^j`; zero outside the grid is not representable
    /// and panics, so callers stay within the truncation.
    pub fn coeff(&self, i: usize, j: usize) -> &Rational {
        &self.grid[i][j]
    }

    /// Integer coefficient of `t^i q^j`, or `None` if it is fractional.
    pub fn int_coeff(&self, i: usize, j: usize) -> Option<Int> {
        let c = &self.grid[i][j];
        c.is_integer().then(|| c.to_integer())
    }

    /// The `t`-polynomial multiplying `q^j`, as integers (coefficients of
    /// `t^0..t^{order_t}`).
    pub fn q_column(&self, j: usize) -> Vec<Rational> {
        self.grid.iter().map(|row| row[j].clone()).collect()
    }

    /// Multiplies in place by `(1 - t^a q^b)^{-1}`.
    fn divide_by_binomial(&mut self, a: usize, b: usize) {
        let (nt, nq) = self.orders();
        // Ascending sweep: g[i][j] += g[i-a][j-b] realizes the geometric series.
        for i in a..=nt {
            for j in b..=nq {
                let prev = self.grid[i - a][j - b].clone();
                if !prev.is_zero() {
                    self.grid[i][j] += prev;
                }
            }
        }
    }
}

/// One factor `(1 - t^{t_exp} q^{q_exp})^{-multiplicity}` of a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinomialFactor {
    pub t_exp: u32,
    pub q_exp: u32,
    pub multiplicity: u32,
}

/// `∏ (1 - t^a q^b)^{-c}` truncated to the given orders.
pub fn bivariate_product(
    factors: &[BinomialFactor],
    order_t: usize,
    order_q: usize,
) -> Result<BivariateSeries> {
    let mut s = BivariateSeries::one(order_t, order_q);
    for f in factors {
        if f.q_exp == 0 {
            return Err(Error::Invalid("bivariate factor needs a positive q-exponent".into()));
        }
        if f.t_exp as usize > order_t || f.q_exp as usize > order_q {
            continue;
        }
        for _ in 0..f.multiplicity {
            s.divide_by_binomial(f.t_exp as usize, f.q_exp as usize);
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(t_exp: u32, q_exp: u32, multiplicity: u32) -> BinomialFactor {
        BinomialFactor { t_exp, q_exp, multiplicity }
    }

    #[test]
    fn two_factor_product() {
        // 1/((1-q)(1-tq)): only tq·q contributes to t q^2.
        let s = bivariate_product(&[f(0, 1, 1), f(1, 1, 1)], 2, 2).unwrap();
        assert_eq!(s.int_coeff(1, 2), Some(Int::one()));
        // Adding (1-tq^2)^{-1} gives the second term t q^2.
        let s3 = bivariate_product(&[f(0, 1, 1), f(1, 1, 1), f(1, 2, 1)], 2, 2).unwrap();
        assert_eq!(s3.int_coeff(1, 2), Some(Int::from(2)));
        for k in 0..=2 {
            assert_eq!(s.int_coeff(0, k), Some(Int::one()));
        }
    }

    #[test]
    fn empty_product_is_one() {
        let s = bivariate_product(&[], 3, 3).unwrap();
        assert_eq!(s, BivariateSeries::one(3, 3));
    }

    #[test]
    fn zero_q_exponent_rejected() {
        assert!(bivariate_product(&[f(1, 0, 1)], 2, 2).is_err());
    }
}
