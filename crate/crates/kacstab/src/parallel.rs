//! Rayon drivers for the expensive loops: Hua grid cells and census chunks.
//! Results are collected in input order, so output never depends on the
//! schedule.

use std::time::Instant;

use kacstab_core::hua::{hua_cell, HuaGrid, PartitionTable};
use kacstab_core::nakajima::{nakajima_sweep_on_grid, NakajimaInstance};
use kacstab_core::oracle::{interpolate_census, kac_degree_bound, CensusLimits, CensusMode, CensusPartial, CensusPlan, CensusResult};
use kacstab_core::quiver::DistanceRule;
use kacstab_core::stabilize::{kac_sweep_on_grid, SweepReport, SweepSpec};
use kacstab_core::{DimVector, Error, Int, QPolynomial, Quiver, Result};
use rayon::prelude::*;

/// Runs `f` on a pool with `threads` workers (all cores when `None`).
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t.max(1));
    }
    match builder.build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

pub fn build_grid(q: &Quiver, target: &DimVector, cap: u128) -> Result<HuaGrid> {
    HuaGrid::check_feasible(q, target, cap)?;
    let table = PartitionTable::new(target.entries().iter().copied().max().unwrap_or(0));
    let cells: Vec<DimVector> = target.subvectors().collect();
    let computed = cells.par_iter().map(|e| hua_cell(q, e, &table)).collect();
    HuaGrid::from_cells(q, target, computed)
}

pub fn kac_polynomial(q: &Quiver, d: &DimVector, cap: u128) -> Result<QPolynomial> {
    q.check_dim(d)?;
    if d.is_zero() {
        return Err(Error::ZeroVector("dimension vector"));
    }
    if d.gcd() != 1 {
        return Err(Error::Divisible { gcd: d.gcd() });
    }
    build_grid(q, d, cap)?.kac_polynomial(d)
}

pub fn sweep(spec: &SweepSpec) -> Result<SweepReport> {
    spec.validate()?;
    let grid = build_grid(&spec.quiver, &spec.target(), spec.hua_cap)?;
    kac_sweep_on_grid(spec, &grid)
}

pub fn nakajima_sweep(
    inst: &NakajimaInstance,
    n_start: u32,
    n_end: u32,
    depth: usize,
    rule: DistanceRule,
    cap: u128,
) -> Result<SweepReport> {
    let mut spec = inst.sweep_spec(n_start, n_end, depth);
    spec.rule = rule;
    spec.hua_cap = cap;
    spec.validate()?;
    let grid = build_grid(&spec.quiver, &spec.target(), cap)?;
    nakajima_sweep_on_grid(inst, &spec, &grid)
}

const CHUNKS_PER_THREAD: u128 = 16;

/// Census at one prime; weighted censuses are split into chunks.
pub fn census(q: &Quiver, d: &DimVector, p: u64, mode: CensusMode, limits: CensusLimits) -> Result<CensusResult> {
    let start = Instant::now();
    let plan = CensusPlan::new(q, d, p, mode, limits)?;
    let mut result = if plan.mode() == CensusMode::Weighted {
        let units = plan.work_units();
        let chunks = (rayon::current_num_threads() as u128 * CHUNKS_PER_THREAD).clamp(1, units.max(1));
        let size = units.div_ceil(chunks).max(1);
        let ranges: Vec<(u128, u128)> = (0..chunks).map(|k| (k * size, ((k + 1) * size).min(units))).filter(|(a, b)| a < b).collect();
        let partials = ranges.par_iter().map(|&(a, b)| plan.run_range(a, b)).collect::<Result<Vec<CensusPartial>>>()?;
        plan.finish(&partials)?
    } else {
        plan.run()?
    };
    result.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(result)
}

/// Interpolated Kac polynomial from censuses at the given primes.
pub fn brute_force_kac(
    q: &Quiver,
    d: &DimVector,
    primes: &[u64],
    mode: CensusMode,
    limits: CensusLimits,
) -> Result<(QPolynomial, Vec<CensusResult>)> {
    let bound = kac_degree_bound(q, d)?;
    if primes.len() < bound + 1 {
        return Err(Error::InsufficientPoints { needed: bound + 1, found: primes.len() });
    }
    let results = primes.iter().map(|&p| census(q, d, p, mode, limits)).collect::<Result<Vec<_>>>()?;
    let points: Vec<(i64, Int)> = results.iter().map(|r| (r.prime as i64, Int::from(r.absolutely_indecomposable))).collect();
    Ok((interpolate_census(&points, bound)?, results))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_grid_matches_sequential() {
        let q = Quiver::kronecker(3);
        let d = DimVector::from(vec![3, 2]);
        let seq = kacstab_core::hua::kac_polynomial(&q, &d).unwrap();
        for t in [1, 3] {
            assert_eq!(with_threads(Some(t), || kac_polynomial(&q, &d, u128::MAX)).unwrap(), seq);
        }
    }

    #[test]
    fn chunked_census_matches_whole() {
        let q = Quiver::new(vec![vec![0, 2], vec![2, 0]]).unwrap();
        let d = DimVector::from(vec![2, 1]);
        let whole = CensusPlan::new(&q, &d, 3, CensusMode::Weighted, CensusLimits::default()).unwrap().run().unwrap();
        let par = with_threads(Some(4), || census(&q, &d, 3, CensusMode::Weighted, CensusLimits::default())).unwrap();
        assert_eq!(par.absolutely_indecomposable, whole.absolutely_indecomposable);
        assert_eq!(par.enumerated, whole.enumerated);
    }
}
