//! Independent ground truth for Kac polynomials: combinatorial counts of
//! thin representations, finite-field censuses, and exact interpolation of
//! census values.

pub mod census;
pub mod fp;
pub mod interpolate;
pub mod thin;

use alloc::vec::Vec;

pub use census::{census, CensusLimits, CensusMode, CensusPartial, CensusPlan, CensusResult};
pub use interpolate::interpolate;
pub use thin::thin_kac;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};
use crate::series::QPolynomial;
use crate::Int;

/// Degree bound `1 − ⟨d,d⟩` clamped at zero.
pub fn kac_degree_bound(q: &Quiver, d: &DimVector) -> Result<usize> {
    Ok((1 - q.euler_form(d, d)?).max(0) as usize)
}

/// Interpolates absolutely indecomposable counts at the given primes.
pub fn brute_force_kac(q: &Quiver, d: &DimVector, primes: &[u64]) -> Result<QPolynomial> {
    brute_force_kac_with(q, d, primes, CensusMode::Auto, CensusLimits::default())
}

pub fn brute_force_kac_with(
    q: &Quiver,
    d: &DimVector,
    primes: &[u64],
    mode: CensusMode,
    limits: CensusLimits,
) -> Result<QPolynomial> {
    let bound = kac_degree_bound(q, d)?;
    if primes.len() < bound + 1 {
        return Err(Error::InsufficientPoints { needed: bound + 1, found: primes.len() });
    }
    let points = primes
        .iter()
        .map(|&p| {
            let r = CensusPlan::new(q, d, p, mode, limits)?.run()?;
            Ok((p as i64, Int::from(r.absolutely_indecomposable)))
        })
        .collect::<Result<Vec<_>>>()?;
    interpolate_census(&points, bound)
}

/// Interpolation of census values with the Kac degree bound.
pub fn interpolate_census(points: &[(i64, Int)], bound: usize) -> Result<QPolynomial> {
    let poly = interpolate(points, bound)?;
    if poly.degree().is_some_and(|k| k > bound) {
        return Err(Error::Internal("interpolated degree exceeds the bound".into()));
    }
    Ok(poly)
}

/// Every loop-free quiver on `n` vertices with at most `max_arrows` arrows,
/// as arrow-count matrices (labelled, not up to isomorphism).
pub fn enumerate_quivers(n: usize, max_arrows: u32) -> Vec<Quiver> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let mut out = Vec::new();
    let mut counts = alloc::vec![0u32; pairs.len()];
    fill(&pairs, 0, max_arrows, &mut counts, n, &mut out);
    out
}

fn fill(pairs: &[(usize, usize)], k: usize, left: u32, counts: &mut [u32], n: usize, out: &mut Vec<Quiver>) {
    if k == pairs.len() {
        let mut m = alloc::vec![alloc::vec![0u32; n]; n];
        for (&(i, j), &c) in pairs.iter().zip(counts.iter()) {
            m[i][j] = c;
        }
        out.push(Quiver::new(m).expect("loop-free by construction"));
        return;
    }
    for c in 0..=left {
        counts[k] = c;
        fill(pairs, k + 1, left - c, counts, n, out);
    }
    counts[k] = 0;
}

/// Nonzero dimension vectors of length `n` with entry sum at most `max_total`.
pub fn enumerate_dims(n: usize, max_total: u32) -> Vec<DimVector> {
    let mut out = Vec::new();
    let mut cur = alloc::vec![0u32; n];
    dims_rec(0, max_total, &mut cur, &mut out);
    out.retain(|d| !d.is_zero());
    out
}

fn dims_rec(k: usize, left: u32, cur: &mut [u32], out: &mut Vec<DimVector>) {
    if k == cur.len() {
        out.push(DimVector::new(cur.to_vec()));
        return;
    }
    for c in 0..=left {
        cur[k] = c;
        dims_rec(k + 1, left - c, cur, out);
    }
    cur[k] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_quivers(1, 3).len(), 1);
        assert_eq!(enumerate_quivers(2, 2).len(), 6);
        assert_eq!(enumerate_quivers(3, 3).len(), 84);
        assert_eq!(enumerate_dims(2, 2).len(), 5);
    }
}
