//! Stabilization of Kac-polynomial coefficients along `τ_n = d + nδ`.
//!
//! Coefficients are read from the top: `A_τ(q) = Σ_i a_i q^{deg − i}`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hua::{HuaGrid, DEFAULT_HUA_CAP};
use crate::quiver::{check_star, DimVector, DistanceRule, Form, Quiver, Strictness};
use crate::series::{inverse_phi, partition_gf, QPolynomial, TruncatedSeries};
use crate::Int;

/// Default cap on subvector enumerations.
pub const DEFAULT_PAIRING_CAP: u128 = 10_000_000;

fn tau_of(d: &DimVector, delta: &DimVector, n: u32) -> DimVector {
    d.add_multiple(delta, n)
}

/// Closed-form bound
/// `M_n = max{ max_i F(e_i,τ)(1 − 1/τ_i), −(min_i τ_i)·(min_{j∈supp δ} τ_j) }`
/// with `F` the Euler or Cartan form.
pub fn stab_bound_mn(q: &Quiver, d: &DimVector, delta: &DimVector, n: u32, form: Form) -> Result<Ratio<i64>> {
    q.check_dim(d)?;
    q.check_dim(delta)?;
    if delta.is_zero() {
        return Err(Error::ZeroVector("δ"));
    }
    let tau = tau_of(d, delta, n);
    stab_bound_for_tau(q, &tau, delta, form)
}

pub fn stab_bound_for_tau(q: &Quiver, tau: &DimVector, delta: &DimVector, form: Form) -> Result<Ratio<i64>> {
    if let Some(i) = tau.entries().iter().position(|&x| x == 0) {
        return Err(Error::Invalid(format!("the bound needs τ_i > 0, but τ_{} = 0", i + 1)));
    }
    let nv = q.n_vertices();
    let mut best: Option<Ratio<i64>> = None;
    for i in 0..nv {
        let e = DimVector::unit(nv, i);
        let pairing = q.form_raw(form, e.entries(), tau.entries());
        let t = i64::from(tau.entries()[i]);
        let v = Ratio::new(pairing * (t - 1), t);
        best = Some(best.map_or(v, |b| b.max(v)));
    }
    let min_all = i64::from(*tau.entries().iter().min().expect("nonempty"));
    let min_supp = delta.support().iter().map(|&j| i64::from(tau.entries()[j])).min().expect("δ ≠ 0");
    let other = Ratio::from_integer(-min_all * min_supp);
    Ok(best.expect("at least one vertex").max(other))
}

/// Maximum of `F(v, τ − v)` over `0 < v < τ`, with the first maximizer in
/// [`DimVector::subvectors`] order (first coordinate varying fastest).
pub fn max_pairing(q: &Quiver, tau: &DimVector, form: Form, cap: u128) -> Result<(i64, DimVector)> {
    q.check_dim(tau)?;
    let size = tau.box_size();
    if size > cap {
        return Err(Error::CapExceeded { what: "pairing enumeration", needed: size, cap });
    }
    if size < 3 {
        return Err(Error::Invalid(format!("{tau} has no proper nonzero subvector")));
    }
    let mut best: Option<(i64, DimVector)> = None;
    for v in tau.subvectors() {
        if v.is_zero() || &v == tau {
            continue;
        }
        let w = tau.checked_sub(&v).expect("v <= τ");
        let val = q.form_raw(form, v.entries(), w.entries());
        if best.as_ref().is_none_or(|(b, _)| val > *b) {
            best = Some((val, v));
        }
    }
    Ok(best.expect("a proper subvector exists"))
}

/// Minimum codimension of a two-part HN stratum, `−max ⟨v, τ−v⟩`.
pub fn min_hn_codim(q: &Quiver, tau: &DimVector, cap: u128) -> Result<i64> {
    Ok(-max_pairing(q, tau, Form::Euler, cap)?.0)
}

/// Maximum of `F(τ,τ) − Σ_k F(d^k,d^k)` over decompositions of `τ` into
/// between 2 and `max_parts` nonzero parts (all part counts when `None`).
pub fn multi_part_max(q: &Quiver, tau: &DimVector, form: Form, max_parts: Option<u32>, cap: u128) -> Result<i64> {
    q.check_dim(tau)?;
    let parts = max_parts.unwrap_or(tau.total());
    if parts < 2 {
        return Err(Error::Invalid("a decomposition needs at least two parts".into()));
    }
    if tau.box_size() < 3 {
        return Err(Error::Invalid(format!("{tau} has no proper nonzero subvector")));
    }
    let work: u128 = tau
        .entries()
        .iter()
        .map(|&x| (u128::from(x) + 1) * (u128::from(x) + 2) / 2)
        .product::<u128>()
        .saturating_mul(u128::from(parts.min(tau.total())));
    if work > cap {
        return Err(Error::CapExceeded { what: "decomposition search", needed: work, cap });
    }
    let n = tau.len();
    let mut strides = vec![1usize; n];
    for i in 1..n {
        strides[i] = strides[i - 1] * (tau.entries()[i - 1] as usize + 1);
    }
    let index = |v: &DimVector| -> usize { v.entries().iter().zip(&strides).map(|(&x, &s)| x as usize * s).sum() };
    let cells: Vec<DimVector> = tau.subvectors().collect();
    let self_form: Vec<i64> = cells.iter().map(|v| q.form_raw(form, v.entries(), v.entries())).collect();
    // layer[v] = min Σ F(d^k,d^k) over decompositions of v into exactly l parts.
    let mut layer: Vec<Option<i64>> = cells.iter().enumerate().map(|(i, v)| (!v.is_zero()).then_some(self_form[i])).collect();
    let mut best: Option<i64> = None;
    let top = index(tau);
    for _ in 2..=parts.min(tau.total()) {
        let mut next = vec![None; cells.len()];
        for (iv, v) in cells.iter().enumerate() {
            let mut m: Option<i64> = None;
            for u in v.subvectors() {
                if u.is_zero() || &u == v {
                    continue;
                }
                let rest = v.checked_sub(&u).expect("u <= v");
                if let Some(r) = layer[index(&rest)] {
                    let c = self_form[index(&u)] + r;
                    m = Some(m.map_or(c, |x: i64| x.min(c)));
                }
            }
            next[iv] = m;
        }
        layer = next;
        if let Some(x) = layer[top] {
            best = Some(best.map_or(x, |b: i64| b.min(x)));
        }
    }
    let whole = self_form[top];
    Ok(whole - best.expect("τ splits into two parts"))
}

fn series_to_ints(s: &TruncatedSeries) -> Vec<Int> {
    s.integer_coeffs().expect("integral series")
}

/// `(1 − q)·p^{|supp δ|}(q) / ∏_{i∉supp δ} φ_{d_i}(q)` to the given order.
pub fn limit_series(q: &Quiver, d: &DimVector, delta: &DimVector, order: usize) -> Result<TruncatedSeries> {
    q.check_dim(d)?;
    q.check_dim(delta)?;
    let base = nakajima_style_limit(d, delta, order);
    let one_minus_q = TruncatedSeries::from_ints(&[1, -1], order);
    Ok(&base * &one_minus_q)
}

/// `p^{|supp δ|}(q) / ∏_{i∉supp δ} φ_{d_i}(q)`.
pub(crate) fn nakajima_style_limit(d: &DimVector, delta: &DimVector, order: usize) -> TruncatedSeries {
    let supp = delta.support().len() as u32;
    let mut s = partition_gf(supp, order);
    for (i, &di) in d.entries().iter().enumerate() {
        if delta.entries()[i] == 0 && di > 0 {
            s = &s * &inverse_phi(di, order);
        }
    }
    s
}

/// `(1 − q)·∏_i φ_{d_i}(q)^{-1}` to the given order (`q` of cohomological
/// degree 2).
pub fn equivariant_poincare(d: &DimVector, order: usize) -> Result<TruncatedSeries> {
    if d.is_zero() {
        return Err(Error::ZeroVector("dimension vector"));
    }
    let mut s = TruncatedSeries::from_ints(&[1, -1], order);
    for &di in d.entries() {
        s = &s * &inverse_phi(di, order);
    }
    Ok(s)
}

/// Which theorem a sweep is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// Symmetric quiver, strict (★) for the Euler form; certificates from
    /// the closed-form bound `M_n < −i`.
    Cohomology,
    /// Strict (★) for the Cartan form; certificates from the exact
    /// decomposition maximum `< −2i`.
    Kac,
    /// Weak (★) for the Cartan form with `(d, e_i) < 0`; no certificates,
    /// stabilized values compared against the limit as `≤` or `=`.
    Conjecture,
}

/// What the governing statement predicts for stabilized coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Equal,
    AtMost,
    /// Hypotheses fail; nothing is predicted.
    Unverified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certifier {
    /// `multi_part_max` for the Cartan form `< −2i`.
    CartanDecomposition,
    /// Closed-form Euler `M_n < −i`.
    EulerBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypotheses {
    pub holds: bool,
    pub expectation: Expectation,
    pub certifier: Option<Certifier>,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    MatchesLimit,
    BelowLimit,
    ExceedsLimit,
    NotStabilizedInRange,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::MatchesLimit => "matches_limit",
            Verdict::BelowLimit => "below_limit",
            Verdict::ExceedsLimit => "exceeds_limit",
            Verdict::NotStabilizedInRange => "not_stabilized_in_range",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub n: u32,
    pub tau: DimVector,
    pub indivisible: bool,
    /// `None` for skipped rows.
    pub polynomial: Option<QPolynomial>,
    /// `a_0..a_K`; `None` for skipped rows.
    pub coefficients: Option<Vec<Int>>,
    /// Closed-form `M_n` for the mode's form, when every `τ_i > 0`.
    pub bound: Option<Ratio<i64>>,
    /// Exact decomposition maximum for the Cartan form (Kac mode).
    pub decomposition_max: Option<i64>,
    /// Per `i`, whether this row passes the certification criterion.
    pub certifies: Vec<bool>,
}

impl SweepRow {
    pub fn degree(&self) -> Option<usize> {
        self.polynomial.as_ref().and_then(|p| p.degree())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSummary {
    pub index: usize,
    pub stabilized: Option<Int>,
    /// First `n` after which `a_i` is constant over the remaining rows.
    pub stabilization_index: Option<u32>,
    /// First `n` from which every computed row certifies `a_i`.
    pub certified_threshold: Option<u32>,
    pub limit: Int,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub quiver: Quiver,
    pub d: DimVector,
    pub delta: DimVector,
    pub mode: SweepMode,
    pub n_start: u32,
    pub n_end: u32,
    pub depth: usize,
    pub hypotheses: Hypotheses,
    pub rows: Vec<SweepRow>,
    pub summary: Vec<CoefficientSummary>,
    /// Observed departures from what the hypotheses predict.
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    pub quiver: Quiver,
    pub d: DimVector,
    pub delta: DimVector,
    pub mode: SweepMode,
    pub n_start: u32,
    pub n_end: u32,
    pub depth: usize,
    pub rule: DistanceRule,
    pub hua_cap: u128,
    pub pairing_cap: u128,
}

impl SweepSpec {
    pub fn new(quiver: Quiver, d: DimVector, delta: DimVector, mode: SweepMode, n_start: u32, n_end: u32, depth: usize) -> Self {
        SweepSpec {
            quiver,
            d,
            delta,
            mode,
            n_start,
            n_end,
            depth,
            rule: DistanceRule::default(),
            hua_cap: DEFAULT_HUA_CAP,
            pairing_cap: DEFAULT_PAIRING_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let q = &self.quiver;
        q.check_dim(&self.d)?;
        q.check_dim(&self.delta)?;
        if q.has_loops() {
            return Err(Error::LoopsPresent);
        }
        if self.delta.is_zero() {
            return Err(Error::ZeroVector("δ"));
        }
        if self.n_start > self.n_end {
            return Err(Error::Invalid(format!("empty range {}..{}", self.n_start, self.n_end)));
        }
        Ok(())
    }

    /// The largest `τ` in range; its Hua box contains every row.
    pub fn target(&self) -> DimVector {
        tau_of(&self.d, &self.delta, self.n_end)
    }

    /// Rows whose `τ` is indivisible and nonzero.
    pub fn computed_taus(&self) -> Vec<DimVector> {
        (self.n_start..=self.n_end)
            .map(|n| tau_of(&self.d, &self.delta, n))
            .filter(|t| t.gcd() == 1)
            .collect()
    }

    pub fn hypotheses(&self) -> Result<Hypotheses> {
        let q = &self.quiver;
        let mut notes = Vec::new();
        let (holds, expectation, certifier) = match self.mode {
            SweepMode::Kac => {
                let r = check_star(q, &self.delta, Form::Cartan, Strictness::Strict, self.rule)?;
                if !r.overall {
                    notes.push("strict (★) fails for the Cartan form".into());
                }
                (r.overall, Expectation::Equal, Some(Certifier::CartanDecomposition))
            }
            SweepMode::Cohomology => {
                let sym = q.is_symmetric();
                if !sym {
                    notes.push("quiver is not symmetric".into());
                }
                let r = check_star(q, &self.delta, Form::Euler, Strictness::Strict, self.rule)?;
                if !r.overall {
                    notes.push("strict (★) fails for the Euler form".into());
                }
                (sym && r.overall, Expectation::Equal, Some(Certifier::EulerBound))
            }
            SweepMode::Conjecture => {
                let r = check_star(q, &self.delta, Form::Cartan, Strictness::Weak, self.rule)?;
                if !r.overall {
                    notes.push("weak (★) fails for the Cartan form".into());
                }
                let neg = q.pairings_with_simples(Form::Cartan, &self.d)?.iter().all(|&x| x < 0);
                if !neg {
                    notes.push("(d, e_i) < 0 fails for some vertex".into());
                }
                notes.push("upper bound conditional on Kirwan surjectivity; equality is conjectural".into());
                (r.overall && neg, Expectation::AtMost, None)
            }
        };
        Ok(Hypotheses {
            holds,
            expectation: if holds { expectation } else { Expectation::Unverified },
            certifier: if holds { certifier } else { None },
            notes,
        })
    }
}

/// Coefficients `a_0..a_depth` read from the top; zero past the degree.
pub fn top_coefficients(p: &QPolynomial, depth: usize) -> Vec<Int> {
    match p.degree() {
        None => vec![Int::zero(); depth + 1],
        Some(deg) => (0..=depth).map(|i| if i <= deg { p.coeff(deg - i) } else { Int::zero() }).collect(),
    }
}

/// One sweep row from a grid whose box contains `τ`.
pub fn sweep_row(spec: &SweepSpec, grid: &HuaGrid, n: u32, certifier: Option<Certifier>) -> Result<SweepRow> {
    let tau = tau_of(&spec.d, &spec.delta, n);
    let q = &spec.quiver;
    let indivisible = tau.gcd() == 1;
    if !indivisible {
        return Ok(SweepRow {
            n,
            tau,
            indivisible,
            polynomial: None,
            coefficients: None,
            bound: None,
            decomposition_max: None,
            certifies: vec![false; spec.depth + 1],
        });
    }
    let poly = grid.kac_polynomial(&tau)?;
    let coefficients = top_coefficients(&poly, spec.depth);
    let form = match spec.mode {
        SweepMode::Cohomology => Form::Euler,
        _ => Form::Cartan,
    };
    let bound = stab_bound_for_tau(q, &tau, &spec.delta, form).ok();
    let decomposition_max = match certifier {
        Some(Certifier::CartanDecomposition) if tau.box_size() >= 3 => {
            Some(multi_part_max(q, &tau, Form::Cartan, None, spec.pairing_cap)?)
        }
        _ => None,
    };
    let min_supp = spec.delta.support().iter().map(|&j| tau.entries()[j]).min().unwrap_or(0) as i64;
    let certifies = (0..=spec.depth as i64)
        .map(|i| {
            let order_ok = i <= min_supp;
            order_ok
                && match certifier {
                    Some(Certifier::CartanDecomposition) => decomposition_max.is_some_and(|m| m < -2 * i),
                    Some(Certifier::EulerBound) => bound.is_some_and(|m| m < Ratio::from_integer(-i)),
                    None => false,
                }
        })
        .collect();
    Ok(SweepRow { n, tau, indivisible, polynomial: Some(poly), coefficients: Some(coefficients), bound, decomposition_max, certifies })
}

/// Sweep using a precomputed grid (its box must contain `spec.target()`).
pub fn kac_sweep_on_grid(spec: &SweepSpec, grid: &HuaGrid) -> Result<SweepReport> {
    spec.validate()?;
    let hypotheses = spec.hypotheses()?;
    let limit = limit_series(&spec.quiver, &spec.d, &spec.delta, spec.depth)?;
    assemble(spec, grid, hypotheses, &limit)
}

/// Builds rows and the per-coefficient summary.
pub fn assemble(spec: &SweepSpec, grid: &HuaGrid, hypotheses: Hypotheses, limit: &TruncatedSeries) -> Result<SweepReport> {
    let rows = (spec.n_start..=spec.n_end)
        .map(|n| sweep_row(spec, grid, n, hypotheses.certifier))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(spec, hypotheses, rows, limit))
}

pub fn summarize(spec: &SweepSpec, hypotheses: Hypotheses, rows: Vec<SweepRow>, limit: &TruncatedSeries) -> SweepReport {
    let limit = series_to_ints(limit);
    let computed: Vec<&SweepRow> = rows.iter().filter(|r| r.coefficients.is_some()).collect();
    let window = 3usize.max(computed.len().div_ceil(3));
    let mut summary = Vec::new();
    let mut flags = Vec::new();
    for i in 0..=spec.depth {
        let values: Vec<&Int> = computed.iter().map(|r| &r.coefficients.as_ref().expect("computed")[i]).collect();
        let stabilized = (values.len() >= window && values[values.len() - window..].iter().all(|v| *v == values[values.len() - 1]))
            .then(|| values[values.len() - 1].clone());
        let stabilization_index = values.last().map(|last| {
            let mut k = values.len() - 1;
            while k > 0 && values[k - 1] == *last {
                k -= 1;
            }
            computed[k].n
        });
        let certified_threshold = if computed.last().is_some_and(|r| r.certifies[i]) {
            let mut k = computed.len() - 1;
            while k > 0 && computed[k - 1].certifies[i] {
                k -= 1;
            }
            Some(computed[k].n)
        } else {
            None
        };
        if let Some(t) = certified_threshold {
            for r in computed.iter().filter(|r| r.n >= t) {
                let a = &r.coefficients.as_ref().expect("computed")[i];
                if *a != limit[i] {
                    flags.push(format!("a_{i} = {a} at n = {} is certified but differs from the limit {}", r.n, limit[i]));
                }
            }
        }
        let verdict = match &stabilized {
            None => Verdict::NotStabilizedInRange,
            Some(v) if *v == limit[i] => Verdict::MatchesLimit,
            Some(v) if *v < limit[i] => Verdict::BelowLimit,
            Some(_) => Verdict::ExceedsLimit,
        };
        match (hypotheses.expectation, verdict) {
            (Expectation::Equal, Verdict::BelowLimit | Verdict::ExceedsLimit) => {
                flags.push(format!("stabilized a_{i} differs from the limit coefficient {}", limit[i]));
            }
            (Expectation::AtMost, Verdict::ExceedsLimit) => {
                flags.push(format!("stabilized a_{i} exceeds the limit coefficient {}", limit[i]));
            }
            _ => {}
        }
        summary.push(CoefficientSummary { index: i, stabilized, stabilization_index, certified_threshold, limit: limit[i].clone(), verdict });
    }
    for r in &computed {
        let p = r.polynomial.as_ref().expect("computed");
        if let Some(deg) = p.degree() {
            let expected = 1 - spec.quiver.euler_raw(r.tau.entries(), r.tau.entries());
            if deg as i64 != expected {
                flags.push(format!("deg A at n = {} is {deg}, expected {expected}", r.n));
            }
        }
    }
    SweepReport {
        quiver: spec.quiver.clone(),
        d: spec.d.clone(),
        delta: spec.delta.clone(),
        mode: spec.mode,
        n_start: spec.n_start,
        n_end: spec.n_end,
        depth: spec.depth,
        hypotheses,
        rows,
        summary,
        flags,
    }
}

/// Full sweep: one Hua grid up to the largest `τ`, then every row.
pub fn kac_sweep(spec: &SweepSpec) -> Result<SweepReport> {
    spec.validate()?;
    let grid = HuaGrid::build(&spec.quiver, &spec.target(), spec.hua_cap)?;
    kac_sweep_on_grid(spec, &grid)
}

/// One two-part decomposition close to the pairing maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearMaxEntry {
    pub parts: [DimVector; 2],
    /// `(v, τ − v)` for the Cartan form.
    pub pairing: i64,
    /// Which part dominates `(n − ε√n)δ`, if any.
    pub dominant: Option<usize>,
    /// `(δ, τ − dominant part)`.
    pub remainder_pairing: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearMaxReport {
    pub tau: DimVector,
    pub hypotheses_hold: bool,
    pub notes: Vec<String>,
    pub entries: Vec<NearMaxEntry>,
}

impl NearMaxReport {
    /// Every listed decomposition has a dominant part with `(δ, remainder) = 0`.
    pub fn conclusion_holds(&self) -> bool {
        self.entries.iter().all(|e| e.remainder_pairing == Some(0))
    }
}

/// `part ≥ (n − ε√n)·δ`, decided exactly: for `δ_i > 0` either
/// `part_i ≥ n δ_i` or `(n δ_i − part_i)² ≤ ε² n δ_i²`.
fn dominates(part: &DimVector, delta: &DimVector, n: u32, eps: Ratio<i64>) -> bool {
    part.entries().iter().zip(delta.entries()).all(|(&p, &dl)| {
        if dl == 0 {
            return true;
        }
        let gap = i128::from(n) * i128::from(dl) - i128::from(p);
        if gap <= 0 {
            return true;
        }
        let (en, ed) = (i128::from(*eps.numer()), i128::from(*eps.denom()));
        en >= 0 && gap * gap * ed * ed <= en * en * i128::from(n) * i128::from(dl) * i128::from(dl)
    })
}

/// Two-part decompositions `τ = v + (τ − v)` with Cartan pairing `> −M`,
/// each annotated with its dominant part and the remainder pairing.
pub fn near_max_decompositions(
    q: &Quiver,
    d: &DimVector,
    delta: &DimVector,
    n: u32,
    m: i64,
    eps: Ratio<i64>,
    cap: u128,
) -> Result<NearMaxReport> {
    q.check_dim(d)?;
    q.check_dim(delta)?;
    if delta.is_zero() {
        return Err(Error::ZeroVector("δ"));
    }
    let tau = tau_of(d, delta, n);
    let mut notes = Vec::new();
    let star = check_star(q, delta, Form::Cartan, Strictness::Weak, DistanceRule::default())?;
    if !star.overall {
        notes.push("weak (★) fails for the Cartan form".into());
    }
    let neg = q.pairings_with_simples(Form::Cartan, &tau)?.iter().all(|&x| x < 0);
    if !neg {
        notes.push("(d + nδ, e_i) < 0 fails for some vertex".into());
    }
    if tau.box_size() > cap {
        return Err(Error::CapExceeded { what: "pairing enumeration", needed: tau.box_size(), cap });
    }
    let mut entries = Vec::new();
    for v in tau.subvectors() {
        if v.is_zero() || v == tau {
            continue;
        }
        let w = tau.checked_sub(&v).expect("v <= τ");
        if v > w {
            continue;
        }
        let pairing = q.form_raw(Form::Cartan, v.entries(), w.entries());
        if pairing <= -m {
            continue;
        }
        let dv = dominates(&v, delta, n, eps);
        let dw = dominates(&w, delta, n, eps);
        let dominant = match (dv, dw) {
            (true, true) => Some(if w.total() > v.total() || (w.total() == v.total() && w > v) { 1 } else { 0 }),
            (true, false) => Some(0),
            (false, true) => Some(1),
            (false, false) => None,
        };
        let remainder_pairing = dominant.map(|k| {
            let rest = if k == 0 { &w } else { &v };
            q.form_raw(Form::Cartan, delta.entries(), rest.entries())
        });
        entries.push(NearMaxEntry { parts: [v, w], pairing, dominant, remainder_pairing });
    }
    Ok(NearMaxReport { tau, hypotheses_hold: star.overall && neg, notes, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector::from(v)
    }

    fn s2() -> Quiver {
        Quiver::new(vec![vec![0, 2], vec![2, 0]]).unwrap()
    }

    #[test]
    fn bound_examples() {
        let d = dv(&[1, 1]);
        assert_eq!(stab_bound_mn(&s2(), &d, &d, 1, Form::Euler).unwrap(), Ratio::from_integer(-1));
        assert_eq!(stab_bound_mn(&s2(), &d, &d, 3, Form::Euler).unwrap(), Ratio::from_integer(-3));
        let m5 = stab_bound_mn(&s2(), &d, &d, 5, Form::Euler).unwrap();
        assert_eq!(m5, Ratio::from_integer(-5));
        assert!(m5 < Ratio::from_integer(-3));
        assert!(stab_bound_mn(&s2(), &dv(&[0, 0]), &dv(&[1, 0]), 1, Form::Euler).is_err());
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(max_pairing(&s2(), &dv(&[2, 2]), Form::Euler, DEFAULT_PAIRING_CAP).unwrap(), (-2, dv(&[1, 1])));
        assert_eq!(max_pairing(&s2(), &dv(&[1, 1]), Form::Euler, DEFAULT_PAIRING_CAP).unwrap(), (-2, dv(&[1, 0])));
        assert_eq!(min_hn_codim(&s2(), &dv(&[2, 2]), DEFAULT_PAIRING_CAP).unwrap(), 2);
        assert!(max_pairing(&s2(), &dv(&[1, 0]), Form::Euler, DEFAULT_PAIRING_CAP).is_err());
        assert!(matches!(
            max_pairing(&s2(), &dv(&[9, 9]), Form::Euler, 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn multi_part_examples() {
        let two = 2 * max_pairing(&s2(), &dv(&[2, 2]), Form::Euler, DEFAULT_PAIRING_CAP).unwrap().0;
        assert_eq!(multi_part_max(&s2(), &dv(&[2, 2]), Form::Euler, Some(4), DEFAULT_PAIRING_CAP).unwrap(), two);
        assert_eq!(multi_part_max(&s2(), &dv(&[2, 2]), Form::Euler, Some(2), DEFAULT_PAIRING_CAP).unwrap(), two);
        let k3 = Quiver::kronecker(3);
        let two = 2 * max_pairing(&k3, &dv(&[3, 2]), Form::Cartan, DEFAULT_PAIRING_CAP).unwrap().0;
        assert_eq!(multi_part_max(&k3, &dv(&[3, 2]), Form::Cartan, Some(4), DEFAULT_PAIRING_CAP).unwrap(), two);
    }

    #[test]
    fn limit_examples() {
        let k2 = Quiver::kronecker(2);
        let ints = |s: TruncatedSeries| s.integer_coeffs().unwrap();
        let l = limit_series(&k2, &dv(&[0, 0]), &dv(&[1, 1]), 4).unwrap();
        assert_eq!(ints(l), [1, 1, 3, 5, 10].map(Int::from).to_vec());
        let l = limit_series(&k2, &dv(&[0, 2]), &dv(&[1, 0]), 4).unwrap();
        assert_eq!(ints(l), [1, 1, 3, 4, 8].map(Int::from).to_vec());
        assert_eq!(
            limit_series(&k2, &dv(&[5, 3]), &dv(&[1, 1]), 6).unwrap(),
            limit_series(&k2, &dv(&[0, 0]), &dv(&[1, 1]), 6).unwrap()
        );
        let e = equivariant_poincare(&dv(&[2, 2]), 4).unwrap();
        assert_eq!(ints(e), [1, 1, 3, 3, 6].map(Int::from).to_vec());
        let e = equivariant_poincare(&dv(&[1]), 3).unwrap();
        assert_eq!(ints(e), [1, 0, 0, 0].map(Int::from).to_vec());
    }

    #[test]
    fn kronecker_sweep() {
        let spec = SweepSpec::new(Quiver::kronecker(3), dv(&[1, 0]), dv(&[1, 1]), SweepMode::Kac, 0, 5, 2);
        let r = kac_sweep(&spec).unwrap();
        assert!(r.hypotheses.holds);
        let stab: Vec<_> = r.summary.iter().map(|s| s.stabilized.clone().unwrap()).collect();
        assert_eq!(stab, [1, 1, 3].map(Int::from).to_vec());
        assert!(r.summary.iter().all(|s| s.verdict == Verdict::MatchesLimit));
        assert!(r.flags.is_empty(), "{:?}", r.flags);
    }

    #[test]
    fn divisible_rows_are_skipped() {
        let spec = SweepSpec::new(Quiver::kronecker(3), dv(&[0, 0]), dv(&[1, 1]), SweepMode::Kac, 1, 3, 1);
        let r = kac_sweep(&spec).unwrap();
        assert!(r.rows[0].coefficients.is_some());
        assert!(r.rows[1..].iter().all(|row| !row.indivisible && row.coefficients.is_none()));
    }

    #[test]
    fn near_max_examples() {
        let h = Quiver::new(vec![vec![0, 2, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        let d = dv(&[7, 8, 3]);
        let delta = dv(&[1, 1, 0]);
        let r = near_max_decompositions(&h, &d, &delta, 2, 0, Ratio::from_integer(1), DEFAULT_PAIRING_CAP).unwrap();
        assert!(r.hypotheses_hold);
        assert!(r.entries.is_empty());
    }
}
