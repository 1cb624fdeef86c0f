use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::QPolynomial;
use crate::{Int, Rational};

/// The polynomial of degree at most `degree_bound` through `points`.
///
/// The first `degree_bound + 1` points determine it; any further points must
/// lie on it. The result must have integer coefficients.
pub fn interpolate(points: &[(i64, Int)], degree_bound: usize) -> Result<QPolynomial> {
    let needed = degree_bound + 1;
    if points.len() < needed {
        return Err(Error::InsufficientPoints { needed, found: points.len() });
    }
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(Error::DuplicateAbscissa(*x));
        }
    }
    let base = &points[..needed];
    let mut coeffs = alloc::vec![Rational::zero(); needed];
    for (j, (xj, yj)) in base.iter().enumerate() {
        // Lagrange basis numerator ∏_{m≠j} (q − x_m) and denominator ∏ (x_j − x_m).
        let mut basis = alloc::vec![Rational::one()];
        let mut denom = Int::one();
        for (m, (xm, _)) in base.iter().enumerate() {
            if m == j {
                continue;
            }
            let mut next = alloc::vec![Rational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * Rational::from_integer(Int::from(*xm));
            }
            basis = next;
            denom *= Int::from(xj - xm);
        }
        let scale = Rational::new(yj.clone(), denom);
        for (k, c) in basis.iter().enumerate() {
            coeffs[k] += c * &scale;
        }
    }
    let mut ints = Vec::with_capacity(needed);
    for c in coeffs {
        if !c.is_integer() {
            return Err(Error::NonIntegral);
        }
        ints.push(c.to_integer());
    }
    let poly = QPolynomial::from_coeffs(ints);
    for (x, y) in &points[needed..] {
        if &poly.eval(&Int::from(*x)) != y {
            return Err(Error::InconsistentPoints);
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<(i64, Int)> {
        v.iter().map(|&(x, y)| (x, Int::from(y))).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(interpolate(&pts(&[(2, 3), (3, 4), (5, 6)]), 1).unwrap(), QPolynomial::from_i64s(&[1, 1]));
        assert_eq!(interpolate(&pts(&[(0, 1), (1, 1)]), 0).unwrap(), QPolynomial::one());
        assert_eq!(interpolate(&pts(&[(0, 0), (1, 1), (2, 4)]), 2).unwrap(), QPolynomial::from_i64s(&[0, 0, 1]));
    }

    #[test]
    fn errors() {
        assert_eq!(interpolate(&pts(&[(1, 1), (1, 2)]), 1), Err(Error::DuplicateAbscissa(1)));
        assert_eq!(interpolate(&pts(&[(0, 0), (1, 1), (2, 5)]), 1), Err(Error::InconsistentPoints));
        assert_eq!(
            interpolate(&pts(&[(0, 0)]), 2),
            Err(Error::InsufficientPoints { needed: 3, found: 1 })
        );
        assert_eq!(interpolate(&pts(&[(0, 0), (2, 1)]), 1), Err(Error::NonIntegral));
    }
}
