//! Finite-field censuses of quiver representations.
//!
//! Two strategies are available. The orbit sweep walks every representation,
//! generates its `GL_d(F_p)`-orbit explicitly and classifies one
//! representative per orbit. The weighted count uses
//! `#classes = (1/|G|) Σ_V |Aut V|`, restricted to absolutely indecomposable
//! `V` (where `|Aut V| = (p−1)p^{dim End V − 1}`), and only enumerates
//! representations whose first non-loop arrow is in rank normal form, each
//! weighted by the size of its rank class.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::oracle::fp::{
    gl_order, general_linear_group, nullspace, rank_class_size, span_dimension, Field, Matrix,
};
use crate::quiver::{DimVector, Quiver};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMode {
    Orbit,
    Weighted,
    /// Orbit sweep when small enough, weighted count otherwise.
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusLimits {
    /// Representations enumerated (after any rank reduction).
    pub representation_cap: u128,
    /// `|GL_d(F_p)|` for the orbit sweep.
    pub group_cap: u128,
    /// `p^{dim End}` when enumerating endomorphisms in the orbit sweep.
    pub endomorphism_cap: u128,
    /// [`CensusMode::Auto`] picks the orbit sweep up to these sizes.
    pub auto_orbit_representations: u128,
    pub auto_orbit_group: u128,
}

impl Default for CensusLimits {
    fn default() -> Self {
        CensusLimits {
            representation_cap: 10_000_000,
            group_cap: 100_000,
            endomorphism_cap: 1 << 20,
            auto_orbit_representations: 1_000_000,
            auto_orbit_group: 5_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusResult {
    pub prime: u64,
    /// The strategy actually used (never `Auto`).
    pub mode: CensusMode,
    /// `|Rep_d(F_p)|`.
    pub total_representations: u128,
    /// Representations visited.
    pub enumerated: u128,
    /// Isomorphism classes (orbit sweep only).
    pub classes: Option<u128>,
    /// Indecomposable classes (orbit sweep only).
    pub indecomposable: Option<u128>,
    pub absolutely_indecomposable: u128,
    /// Sum of orbit sizes, equal to `total_representations` (orbit sweep only).
    pub orbit_size_sum: Option<u128>,
    /// Filled in by drivers that can read a clock.
    pub elapsed_ms: Option<u64>,
}

/// Arrow matrices of a representation laid out as one digit vector.
#[derive(Clone, Debug)]
struct Layout {
    dims: Vec<usize>,
    arrows: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    entries: usize,
    /// Offsets of the unknowns `f_i` in an endomorphism.
    end_offsets: Vec<usize>,
    end_size: usize,
}

impl Layout {
    fn new(q: &Quiver, d: &DimVector) -> Self {
        let dims: Vec<usize> = d.entries().iter().map(|&x| x as usize).collect();
        let arrows = q.arrow_list();
        let mut offsets = Vec::with_capacity(arrows.len());
        let mut entries = 0;
        for &(s, t) in &arrows {
            offsets.push(entries);
            entries += dims[s] * dims[t];
        }
        let mut end_offsets = Vec::with_capacity(dims.len());
        let mut end_size = 0;
        for &n in &dims {
            end_offsets.push(end_size);
            end_size += n * n;
        }
        Layout { dims, arrows, offsets, entries, end_offsets, end_size }
    }

    fn arrow_matrix(&self, rep: &[u32], a: usize) -> Matrix {
        let (s, t) = self.arrows[a];
        let len = self.dims[s] * self.dims[t];
        Matrix::from_slice(self.dims[t], self.dims[s], &rep[self.offsets[a]..self.offsets[a] + len])
    }

    /// Endomorphisms `(f_i)` with `f_t B_a = B_a f_s` for every arrow.
    fn endomorphism_basis(&self, f: &Field, rep: &[u32]) -> Vec<Endo> {
        let rows: usize = self.arrows.iter().map(|&(s, t)| self.dims[s] * self.dims[t]).sum();
        let mut system = Matrix::zero(rows, self.end_size);
        let mut row = 0;
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            let b = self.arrow_matrix(rep, a);
            let (ns, nt) = (self.dims[s], self.dims[t]);
            for r in 0..nt {
                for c in 0..ns {
                    for k in 0..nt {
                        let col = self.end_offsets[t] + r * nt + k;
                        let v = f.add(system.get(row, col), b.get(k, c));
                        system.set(row, col, v);
                    }
                    for k in 0..ns {
                        let col = self.end_offsets[s] + k * ns + c;
                        let v = f.sub(system.get(row, col), b.get(r, k));
                        system.set(row, col, v);
                    }
                    row += 1;
                }
            }
        }
        nullspace(f, &system).into_iter().map(|x| self.endo_from_vector(&x)).collect()
    }

    fn endo_from_vector(&self, x: &[u32]) -> Endo {
        Endo(
            self.dims
                .iter()
                .zip(&self.end_offsets)
                .map(|(&n, &o)| Matrix::from_slice(n, n, &x[o..o + n * n]))
                .collect(),
        )
    }
}

/// An endomorphism: one square matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Endo(Vec<Matrix>);

impl Endo {
    fn mul(&self, f: &Field, other: &Endo) -> Endo {
        Endo(self.0.iter().zip(&other.0).map(|(a, b)| a.mul(f, b)).collect())
    }

    fn minus_scalar(&self, f: &Field, lambda: u32) -> Endo {
        Endo(
            self.0
                .iter()
                .map(|m| {
                    let mut m = m.clone();
                    for i in 0..m.rows {
                        let v = f.sub(m.get(i, i), lambda);
                        m.set(i, i, v);
                    }
                    m
                })
                .collect(),
        )
    }

    fn is_nilpotent(&self, f: &Field) -> bool {
        self.0.iter().all(|m| m.is_nilpotent(f))
    }

    fn is_invertible(&self, f: &Field) -> bool {
        self.0.iter().all(|m| m.rank(f) == m.rows)
    }

    fn flatten(&self) -> Vec<u32> {
        self.0.iter().flat_map(|m| m.data.iter().copied()).collect()
    }
}

/// `End V = F_p·1 ⊕ N` with `N` a nilpotent subalgebra.
fn is_absolutely_indecomposable(f: &Field, basis: &[Endo]) -> bool {
    match basis.len() {
        0 => return false,
        1 => return true,
        _ => {}
    }
    let mut nil = Vec::with_capacity(basis.len());
    for b in basis {
        let Some(n) = (0..f.order()).map(|l| b.minus_scalar(f, l)).find(|n| n.is_nilpotent(f)) else {
            return false;
        };
        nil.push(n);
    }
    let flat: Vec<Vec<u32>> = nil.iter().map(Endo::flatten).collect();
    let dim = span_dimension(f, &flat);
    // Closure N·N ⊆ N.
    for x in &nil {
        for y in &nil {
            let mut with = flat.clone();
            with.push(x.mul(f, y).flatten());
            if span_dimension(f, &with) != dim {
                return false;
            }
        }
    }
    // N^k = 0 for some k: the chain N ⊇ N² ⊇ … must reach zero.
    let mut power = nil.clone();
    let mut last = dim;
    loop {
        let mut next = Vec::new();
        for x in &power {
            for y in &nil {
                next.push(x.mul(f, y));
            }
        }
        let flat_next: Vec<Vec<u32>> = next.iter().map(Endo::flatten).collect();
        let d = span_dimension(f, &flat_next);
        if d == 0 {
            return true;
        }
        if d >= last {
            return false;
        }
        last = d;
        power = next;
    }
}

/// Every element of `End V` is a unit or nilpotent.
fn is_local(f: &Field, basis: &[Endo], cap: u128) -> Result<bool> {
    if basis.is_empty() {
        return Ok(false);
    }
    let p = f.order() as u128;
    let count = p.checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::CapExceeded { what: "endomorphism enumeration", needed: count, cap });
    }
    let mut coeffs = vec![0u32; basis.len()];
    for _ in 0..count {
        let mut x = Endo(basis[0].0.iter().map(|m| Matrix::zero(m.rows, m.cols)).collect());
        for (c, b) in coeffs.iter().zip(basis) {
            if *c == 0 {
                continue;
            }
            for (xm, bm) in x.0.iter_mut().zip(&b.0) {
                for (xe, be) in xm.data.iter_mut().zip(&bm.data) {
                    *xe = f.add(*xe, f.mul(*c, *be));
                }
            }
        }
        if !x.is_invertible(f) && !x.is_nilpotent(f) {
            return Ok(false);
        }
        for c in coeffs.iter_mut() {
            *c += 1;
            if *c < f.order() {
                break;
            }
            *c = 0;
        }
    }
    Ok(true)
}

fn increment(digits: &mut [u32], p: u32) {
    for x in digits.iter_mut() {
        *x += 1;
        if *x < p {
            return;
        }
        *x = 0;
    }
}

fn encode(digits: &[u32], p: u32) -> usize {
    digits.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

/// A census prepared for execution, possibly split into chunks.
#[derive(Clone, Debug)]
pub struct CensusPlan {
    field: Field,
    layout: Layout,
    mode: CensusMode,
    limits: CensusLimits,
    total: u128,
    /// Weighted mode: the arrow fixed to rank normal form and its rank range.
    pivot: Option<usize>,
    rest_total: u128,
}

/// Partial sums from a chunk of a weighted census.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CensusPartial {
    pub weighted_sum: u128,
    pub enumerated: u128,
}

impl CensusPlan {
    pub fn new(q: &Quiver, d: &DimVector, p: u64, mode: CensusMode, limits: CensusLimits) -> Result<Self> {
        q.check_dim(d)?;
        if d.is_zero() {
            return Err(Error::ZeroVector("dimension vector"));
        }
        let field = Field::new(p)?;
        let layout = Layout::new(q, d);
        let pp = p as u128;
        let total = pp.checked_pow(layout.entries as u32).unwrap_or(u128::MAX);
        let group: u128 = layout.dims.iter().map(|&n| gl_order(pp, n as u32)).product();
        let mode = match mode {
            CensusMode::Auto => {
                if total <= limits.auto_orbit_representations && group <= limits.auto_orbit_group {
                    CensusMode::Orbit
                } else {
                    CensusMode::Weighted
                }
            }
            m => m,
        };
        let pivot = layout
            .arrows
            .iter()
            .position(|&(s, t)| s != t && layout.dims[s] > 0 && layout.dims[t] > 0);
        let rest_total = match (mode, pivot) {
            (CensusMode::Weighted, Some(a)) => {
                let (s, t) = layout.arrows[a];
                let rest = layout.entries - layout.dims[s] * layout.dims[t];
                pp.checked_pow(rest as u32).unwrap_or(u128::MAX)
            }
            _ => total,
        };
        let plan = CensusPlan { field, layout, mode, limits, total, pivot, rest_total };
        match mode {
            CensusMode::Orbit => {
                if total > limits.representation_cap {
                    return Err(Error::CapExceeded {
                        what: "representation enumeration",
                        needed: total,
                        cap: limits.representation_cap,
                    });
                }
                if group > limits.group_cap {
                    return Err(Error::CapExceeded { what: "orbit group sweep", needed: group, cap: limits.group_cap });
                }
            }
            _ => {
                let work = plan.work_units();
                if work > limits.representation_cap {
                    return Err(Error::CapExceeded {
                        what: "weighted representation enumeration",
                        needed: work,
                        cap: limits.representation_cap,
                    });
                }
            }
        }
        Ok(plan)
    }

    pub fn mode(&self) -> CensusMode {
        self.mode
    }

    fn ranks(&self) -> u128 {
        match self.pivot {
            Some(a) => {
                let (s, t) = self.layout.arrows[a];
                self.layout.dims[s].min(self.layout.dims[t]) as u128 + 1
            }
            None => 1,
        }
    }

    /// Number of representations a weighted census visits; chunks index
    /// into `0..work_units()`.
    pub fn work_units(&self) -> u128 {
        match self.mode {
            CensusMode::Weighted => self.ranks().saturating_mul(self.rest_total),
            _ => self.total,
        }
    }

    fn group_order(&self) -> u128 {
        let p = self.field.order() as u128;
        self.layout.dims.iter().map(|&n| gl_order(p, n as u32)).product()
    }

    /// Weighted census over the work units `start..end`.
    pub fn run_range(&self, start: u128, end: u128) -> Result<CensusPartial> {
        if self.mode != CensusMode::Weighted {
            return Err(Error::Invalid("only weighted censuses run in chunks".into()));
        }
        let f = &self.field;
        let p = f.order();
        let pp = p as u128;
        let layout = &self.layout;
        let mut partial = CensusPartial::default();
        let (pivot_range, pivot_shape) = match self.pivot {
            Some(a) => {
                let (s, t) = layout.arrows[a];
                (layout.offsets[a]..layout.offsets[a] + layout.dims[s] * layout.dims[t], (layout.dims[t], layout.dims[s]))
            }
            None => (0..0, (0, 0)),
        };
        let free: Vec<usize> = (0..layout.entries).filter(|i| !pivot_range.contains(i)).collect();
        let mut unit = start;
        while unit < end.min(self.work_units()) {
            let rank = (unit / self.rest_total) as usize;
            let offset = unit % self.rest_total;
            let block_end = end.min((rank as u128 + 1) * self.rest_total);
            let weight = match self.pivot {
                Some(_) => rank_class_size(pp, pivot_shape.0 as u32, pivot_shape.1 as u32, rank as u32),
                None => 1,
            };
            let mut rep = vec![0u32; layout.entries];
            for r in 0..rank {
                rep[pivot_range.start + r * pivot_shape.1 + r] = 1;
            }
            let mut digits = vec![0u32; free.len()];
            let mut o = offset;
            for x in digits.iter_mut() {
                *x = (o % pp) as u32;
                o /= pp;
            }
            for _ in unit..block_end {
                for (&i, &x) in free.iter().zip(&digits) {
                    rep[i] = x;
                }
                let basis = layout.endomorphism_basis(f, &rep);
                if is_absolutely_indecomposable(f, &basis) {
                    let aut = (pp - 1) * pp.pow(basis.len() as u32 - 1);
                    partial.weighted_sum += weight * aut;
                }
                partial.enumerated += 1;
                increment(&mut digits, p);
            }
            unit = block_end;
        }
        Ok(partial)
    }

    /// Combines chunk results of a weighted census.
    pub fn finish(&self, partials: &[CensusPartial]) -> Result<CensusResult> {
        let sum: u128 = partials.iter().map(|x| x.weighted_sum).sum();
        let enumerated: u128 = partials.iter().map(|x| x.enumerated).sum();
        if enumerated != self.work_units() {
            return Err(Error::Internal("census chunks do not cover the work range".into()));
        }
        let g = self.group_order();
        if sum % g != 0 {
            return Err(Error::Internal("weighted census sum is not divisible by |G|".into()));
        }
        Ok(CensusResult {
            prime: self.field.order() as u64,
            mode: CensusMode::Weighted,
            total_representations: self.total,
            enumerated,
            classes: None,
            indecomposable: None,
            absolutely_indecomposable: sum / g,
            orbit_size_sum: None,
            elapsed_ms: None,
        })
    }

    /// Runs the whole census sequentially.
    pub fn run(&self) -> Result<CensusResult> {
        match self.mode {
            CensusMode::Orbit => self.run_orbits(),
            _ => {
                let part = self.run_range(0, self.work_units())?;
                self.finish(&[part])
            }
        }
    }

    fn run_orbits(&self) -> Result<CensusResult> {
        let f = &self.field;
        let p = f.order();
        let layout = &self.layout;
        let groups: Vec<Vec<(Matrix, Matrix)>> = layout
            .dims
            .iter()
            .map(|&n| {
                general_linear_group(f, n)
                    .into_iter()
                    .map(|g| {
                        let inv = g.inverse(f).expect("group element");
                        (g, inv)
                    })
                    .collect()
            })
            .collect();
        let total = self.total as usize;
        let mut visited = vec![0u64; total.div_ceil(64)];
        let mut digits = vec![0u32; layout.entries];
        let (mut classes, mut indec, mut abs, mut orbit_sum) = (0u128, 0u128, 0u128, 0u128);
        for idx in 0..total {
            if visited[idx / 64] & (1 << (idx % 64)) == 0 {
                classes += 1;
                let mut gi = vec![0usize; groups.len()];
                loop {
                    let mut image = vec![0u32; layout.entries];
                    for (a, &(s, t)) in layout.arrows.iter().enumerate() {
                        let b = layout.arrow_matrix(&digits, a);
                        let m = groups[t][gi[t]].0.mul(f, &b).mul(f, &groups[s][gi[s]].1);
                        image[layout.offsets[a]..layout.offsets[a] + m.data.len()].copy_from_slice(&m.data);
                    }
                    let j = encode(&image, p);
                    if visited[j / 64] & (1 << (j % 64)) == 0 {
                        visited[j / 64] |= 1 << (j % 64);
                        orbit_sum += 1;
                    }
                    let mut v = 0;
                    while v < gi.len() {
                        gi[v] += 1;
                        if gi[v] < groups[v].len() {
                            break;
                        }
                        gi[v] = 0;
                        v += 1;
                    }
                    if v == gi.len() {
                        break;
                    }
                }
                let basis = layout.endomorphism_basis(f, &digits);
                if is_absolutely_indecomposable(f, &basis) {
                    abs += 1;
                    indec += 1;
                } else if is_local(f, &basis, self.limits.endomorphism_cap)? {
                    indec += 1;
                }
            }
            increment(&mut digits, p);
        }
        if orbit_sum != self.total {
            return Err(Error::Internal("orbit sizes do not sum to the number of representations".into()));
        }
        Ok(CensusResult {
            prime: p as u64,
            mode: CensusMode::Orbit,
            total_representations: self.total,
            enumerated: self.total,
            classes: Some(classes),
            indecomposable: Some(indec),
            absolutely_indecomposable: abs,
            orbit_size_sum: Some(orbit_sum),
            elapsed_ms: None,
        })
    }
}

/// Census with default limits in [`CensusMode::Auto`].
pub fn census(q: &Quiver, d: &DimVector, p: u64) -> Result<CensusResult> {
    CensusPlan::new(q, d, p, CensusMode::Auto, CensusLimits::default())?.run()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector::from(v)
    }

    fn both(q: &Quiver, d: &DimVector, p: u64) -> (CensusResult, CensusResult) {
        let limits = CensusLimits::default();
        let orbit = CensusPlan::new(q, d, p, CensusMode::Orbit, limits).unwrap().run().unwrap();
        let weighted = CensusPlan::new(q, d, p, CensusMode::Weighted, limits).unwrap().run().unwrap();
        (orbit, weighted)
    }

    #[test]
    fn kronecker_counts() {
        for (p, expect) in [(2u64, 3u128), (3, 4)] {
            let (o, w) = both(&Quiver::kronecker(2), &dv(&[1, 1]), p);
            assert_eq!(o.absolutely_indecomposable, expect);
            assert_eq!(w.absolutely_indecomposable, expect);
            assert_eq!(o.orbit_size_sum, Some(o.total_representations));
        }
    }

    #[test]
    fn path_is_single_class() {
        for p in [2u64, 3, 5] {
            let (o, w) = both(&Quiver::path(2), &dv(&[1, 1]), p);
            assert_eq!(o.absolutely_indecomposable, 1);
            assert_eq!(w.absolutely_indecomposable, 1);
            assert_eq!(o.classes, Some(2));
        }
    }

    #[test]
    fn decomposable_but_indecomposable_over_extension() {
        // Jordan quiver, d = 2: companion matrices of irreducible quadratics
        // are indecomposable but not absolutely indecomposable.
        let jordan = Quiver::with_loops(vec![vec![1]]).unwrap();
        let r = CensusPlan::new(&jordan, &dv(&[2]), 3, CensusMode::Orbit, CensusLimits::default())
            .unwrap()
            .run()
            .unwrap();
        // Classes of 2×2 matrices over F_3: q² + q = 12; irreducible quadratics: 3.
        assert_eq!(r.classes, Some(12));
        assert_eq!(r.absolutely_indecomposable, 3);
        assert_eq!(r.indecomposable, Some(6));
    }

    #[test]
    fn chunks_match_whole_run() {
        let q = Quiver::kronecker(3);
        let d = dv(&[2, 1]);
        let plan = CensusPlan::new(&q, &d, 3, CensusMode::Weighted, CensusLimits::default()).unwrap();
        let n = plan.work_units();
        let parts: Vec<_> = [(0, n / 3), (n / 3, n / 2), (n / 2, n)]
            .iter()
            .map(|&(a, b)| plan.run_range(a, b).unwrap())
            .collect();
        assert_eq!(plan.finish(&parts).unwrap(), plan.run().unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(census(&Quiver::kronecker(2), &dv(&[1, 1]), 4), Err(Error::NotPrime(4)));
        assert!(census(&Quiver::kronecker(2), &dv(&[0, 0]), 2).is_err());
        let tiny = CensusLimits { representation_cap: 10, ..CensusLimits::default() };
        let err = CensusPlan::new(&Quiver::kronecker(3), &dv(&[2, 1]), 5, CensusMode::Orbit, tiny).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }
}
