//! Nakajima quiver varieties through the Crawley–Boevey quiver: limit
//! series, sweeps of `A_{(d+nδ,1)}` on `Q_w`, and the Hilbert-scheme
//! generating function with its partition identities.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hua::HuaGrid;
use crate::quiver::{cb_vector, check_star, DimVector, DistanceRule, Form, Quiver, Strictness};
use crate::series::{
    bivariate_product, inverse_phi, p_exact, partition_gf, BinomialFactor, BivariateSeries, TruncatedSeries,
};
use crate::stabilize::{
    nakajima_style_limit, summarize, sweep_row, Certifier, Expectation, Hypotheses, SweepMode, SweepReport,
    SweepSpec,
};
use crate::Int;

/// Which stabilization statement applies to an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NakajimaMode {
    /// Weak (★) and `(d, e_i) < 0` for all `i`: stabilized values are
    /// bounded by the limit.
    WeakStar,
    /// Strict (★) and `supp w ∩ supp δ ≠ ∅`: stabilized values equal the limit.
    StrictStar,
    /// Neither set of hypotheses holds.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NakajimaInstance {
    pub base: Quiver,
    pub w: DimVector,
    pub d: DimVector,
    pub delta: DimVector,
    pub cb_quiver: Quiver,
    /// `(d, 1)`.
    pub cb_d: DimVector,
    /// `(δ, 0)`.
    pub cb_delta: DimVector,
}

impl NakajimaInstance {
    pub fn new(base: Quiver, w: DimVector, d: DimVector, delta: DimVector) -> Result<Self> {
        base.check_dim(&d)?;
        base.check_dim(&delta)?;
        if delta.is_zero() {
            return Err(Error::ZeroVector("δ"));
        }
        let cb_quiver = base.crawley_boevey(&w)?;
        let cb_d = cb_vector(&d);
        let cb_delta = delta.extended(0);
        Ok(NakajimaInstance { base, w, d, delta, cb_quiver, cb_d, cb_delta })
    }

    pub fn mode(&self, rule: DistanceRule) -> Result<(NakajimaMode, Vec<String>)> {
        let q = &self.base;
        let mut notes = Vec::new();
        let strict = check_star(q, &self.delta, Form::Cartan, Strictness::Strict, rule)?.overall;
        let meets = self.w.entries().iter().zip(self.delta.entries()).any(|(&a, &b)| a > 0 && b > 0);
        if strict && meets {
            return Ok((NakajimaMode::StrictStar, notes));
        }
        let weak = check_star(q, &self.delta, Form::Cartan, Strictness::Weak, rule)?.overall;
        let neg = q.pairings_with_simples(Form::Cartan, &self.d)?.iter().all(|&x| x < 0);
        if weak && neg {
            notes.push("bound relies on Kirwan surjectivity for the framed quiver".into());
            return Ok((NakajimaMode::WeakStar, notes));
        }
        if !strict {
            notes.push("strict (★) fails for the Cartan form".into());
        } else if !meets {
            notes.push("supp w and supp δ are disjoint".into());
        }
        if !weak {
            notes.push("weak (★) fails for the Cartan form".into());
        }
        if !neg {
            notes.push("(d, e_i) < 0 fails for some vertex".into());
        }
        Ok((NakajimaMode::Unverified, notes))
    }

    /// Sweep specification on `(Q_w, (d,1), (δ,0))`.
    pub fn sweep_spec(&self, n_start: u32, n_end: u32, depth: usize) -> SweepSpec {
        SweepSpec::new(self.cb_quiver.clone(), self.cb_d.clone(), self.cb_delta.clone(), SweepMode::Kac, n_start, n_end, depth)
    }
}

/// `p^{|supp δ|}(q) / ∏_{i∉supp δ} φ_{d_i}(q)`, with `supp δ` inside `Q`.
pub fn nakajima_limit_series(inst: &NakajimaInstance, order: usize) -> TruncatedSeries {
    nakajima_style_limit(&inst.d, &inst.delta, order)
}

/// Sweep on a precomputed grid for `Q_w` (its box must contain the largest
/// `(d + nδ, 1)`).
pub fn nakajima_sweep_on_grid(inst: &NakajimaInstance, spec: &SweepSpec, grid: &HuaGrid) -> Result<SweepReport> {
    spec.validate()?;
    let (mode, notes) = inst.mode(spec.rule)?;
    let certify = check_star(&spec.quiver, &spec.delta, Form::Cartan, Strictness::Strict, spec.rule)?.overall;
    let hypotheses = Hypotheses {
        holds: mode != NakajimaMode::Unverified,
        expectation: match mode {
            NakajimaMode::StrictStar => Expectation::Equal,
            NakajimaMode::WeakStar => Expectation::AtMost,
            NakajimaMode::Unverified => Expectation::Unverified,
        },
        certifier: certify.then_some(Certifier::CartanDecomposition),
        notes,
    };
    let limit = nakajima_limit_series(inst, spec.depth);
    let rows = (spec.n_start..=spec.n_end)
        .map(|n| sweep_row(spec, grid, n, hypotheses.certifier))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(spec, hypotheses, rows, &limit))
}

pub fn nakajima_kac_sweep(inst: &NakajimaInstance, n_start: u32, n_end: u32, depth: usize) -> Result<SweepReport> {
    let spec = inst.sweep_spec(n_start, n_end, depth);
    spec.validate()?;
    let grid = HuaGrid::build(&spec.quiver, &spec.target(), spec.hua_cap)?;
    nakajima_sweep_on_grid(inst, &spec, &grid)
}

/// `∏_{m=1}^{N_q} (1 − t^{m−1}q^m)^{-1} (1 − t^m q^m)^{-b}`, with `b = r − 1`
/// unless given.
pub fn hilbert_series(r: u32, b: Option<u32>, order_t: usize, order_q: usize) -> Result<BivariateSeries> {
    if r < 2 {
        return Err(Error::Invalid(format!("r must be at least 2, got {r}")));
    }
    let b = b.unwrap_or(r - 1);
    let factors: Vec<BinomialFactor> = (1..=order_q as u32)
        .flat_map(|m| {
            [
                BinomialFactor { t_exp: m - 1, q_exp: m, multiplicity: 1 },
                BinomialFactor { t_exp: m, q_exp: m, multiplicity: b },
            ]
        })
        .collect();
    bivariate_product(&factors, order_t, order_q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    /// Coefficient of `t^k q^{k+a}`.
    pub lhs: Int,
    /// `Σ_{m+n=k} p_{≤a}(m)·[q^n] p^b`.
    pub rhs: Int,
    pub equal: bool,
    /// `[q^k] p^{b+1}` when `a ≥ k`.
    pub limit: Option<Int>,
}

impl IdentityCheck {
    pub fn passes(&self) -> bool {
        self.equal && self.limit.as_ref().is_none_or(|l| *l == self.lhs)
    }
}

/// Compares the Hilbert-series coefficient with its partition expansion.
pub fn hilbert_coefficient_identity_check(b: u32, k: u32, a: u32) -> IdentityCheck {
    let (k_us, a_us) = (k as usize, a as usize);
    let series = hilbert_series(2, Some(b), k_us, k_us + a_us).expect("r = 2 is valid");
    let lhs = series.int_coeff(k_us, k_us + a_us).expect("integral");
    let pb = partition_gf(b, k_us).integer_coeffs().expect("integral");
    let mut rhs = Int::zero();
    for m in 0..=k {
        let at_most_a: u64 = (0..=a).map(|j| p_exact(j, m)).sum();
        rhs += Int::from(at_most_a) * &pb[(k - m) as usize];
    }
    let limit = (a >= k).then(|| partition_gf(b + 1, k_us).integer_coeffs().expect("integral")[k_us].clone());
    IdentityCheck { equal: lhs == rhs, lhs, rhs, limit }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityBound {
    /// `1 − (d,d)/2`.
    pub half_norm: i64,
    /// Coefficient of `q^{half_norm}` in `(1 − q)·∏_i φ_{d_i}(q)^{-1}`.
    pub bound: Int,
}

/// Upper bound for the root multiplicity of `d` (conditional on Kirwan
/// surjectivity for zero framing).
pub fn multiplicity_bound_report(q: &Quiver, d: &DimVector) -> Result<MultiplicityBound> {
    if q.has_loops() {
        return Err(Error::LoopsPresent);
    }
    let norm = q.cartan_form(d, d)?;
    if norm % 2 != 0 {
        return Err(Error::Invalid(format!("(d,d) = {norm} is odd")));
    }
    let half_norm = 1 - norm / 2;
    if half_norm < 0 {
        return Ok(MultiplicityBound { half_norm, bound: Int::zero() });
    }
    let order = half_norm as usize;
    let mut s = TruncatedSeries::from_ints(&[1, -1], order);
    for &di in d.entries() {
        s = &s * &inverse_phi(di, order);
    }
    let bound = s.integer_coeffs().expect("integral")[order].clone();
    Ok(MultiplicityBound { half_norm, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn dv(v: &[u32]) -> DimVector {
        DimVector::from(v)
    }

    fn hyperbolic() -> Quiver {
        Quiver::new(vec![vec![0, 2, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap()
    }

    fn tp1() -> NakajimaInstance {
        NakajimaInstance::new(Quiver::kronecker(2), dv(&[0, 1]), dv(&[0, 0]), dv(&[1, 1])).unwrap()
    }

    #[test]
    fn limit_examples() {
        let s = nakajima_limit_series(&tp1(), 3);
        assert_eq!(s.integer_coeffs().unwrap(), [1, 2, 5, 10].map(Int::from).to_vec());
        let other = NakajimaInstance::new(Quiver::kronecker(2), dv(&[0, 1]), dv(&[4, 2]), dv(&[1, 1])).unwrap();
        assert_eq!(nakajima_limit_series(&other, 8), nakajima_limit_series(&tp1(), 8));
        assert!(NakajimaInstance::new(Quiver::kronecker(2), dv(&[0, 0]), dv(&[0, 0]), dv(&[1, 1])).is_err());
    }

    #[test]
    fn tp1_sweep() {
        let r = nakajima_kac_sweep(&tp1(), 1, 4, 2).unwrap();
        let polys: Vec<_> = r.rows.iter().map(|row| row.polynomial.clone().unwrap()).collect();
        assert_eq!(polys[0], crate::QPolynomial::from_i64s(&[1, 1]));
        assert_eq!(polys[1], crate::QPolynomial::from_i64s(&[2, 2, 1]));
        assert_eq!(r.rows[3].coefficients.as_ref().unwrap()[2], Int::from(5));
        assert_eq!(r.summary[1].stabilized, Some(Int::from(2)));
        assert!(r.rows.iter().all(|row| row.indivisible));
        assert_eq!(r.hypotheses.expectation, Expectation::Unverified);
    }

    #[test]
    fn hilbert_examples() {
        let h = hilbert_series(2, Some(1), 2, 4).unwrap();
        assert_eq!(h.int_coeff(1, 2), Some(Int::from(2)));
        assert_eq!(h.int_coeff(2, 2), Some(Int::from(2)));
        assert_eq!(h.int_coeff(2, 4), Some(Int::from(5)));
        let h0 = hilbert_series(2, Some(0), 0, 6).unwrap();
        assert!((0..=6).all(|k| h0.int_coeff(0, k) == Some(Int::from(1))));
        assert!(hilbert_series(1, None, 2, 2).is_err());
    }

    #[test]
    fn identity_examples() {
        let c = hilbert_coefficient_identity_check(1, 2, 2);
        assert_eq!((c.lhs.clone(), c.rhs.clone(), c.limit.clone()), (Int::from(5), Int::from(5), Some(Int::from(5))));
        let c = hilbert_coefficient_identity_check(1, 3, 0);
        assert_eq!(c.rhs, Int::from(3));
        assert!(c.passes());
        for b in 0..3 {
            assert_eq!(hilbert_coefficient_identity_check(b, 0, 0).lhs, Int::from(1));
        }
    }

    #[test]
    fn multiplicity_examples() {
        let r = multiplicity_bound_report(&hyperbolic(), &dv(&[3, 3, 1])).unwrap();
        assert_eq!(r, MultiplicityBound { half_norm: 3, bound: Int::from(10) });
        let r = multiplicity_bound_report(&hyperbolic(), &dv(&[1, 1, 1])).unwrap();
        assert_eq!(r, MultiplicityBound { half_norm: 1, bound: Int::from(2) });
        let r = multiplicity_bound_report(&hyperbolic(), &dv(&[0, 1, 0])).unwrap();
        assert_eq!(r, MultiplicityBound { half_norm: 0, bound: Int::from(1) });
    }
}
