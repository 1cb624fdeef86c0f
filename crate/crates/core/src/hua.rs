//! Kac polynomials from Hua's generating function
//!
//! ```text
//! P(X) = Σ_{(π^i)} q^{Σ_{i→j}⟨π^i,π^j⟩ − Σ_i⟨π^i,π^i⟩} / ∏_i b_{π^i}(q^{-1}) · X^{(|π^i|)}
//! ```
//!
//! and `A_d(q) = (q − 1)·[X^d] log P` for indivisible `d`.
//!
//! Every coefficient `c_e` of `P` is stored as `q^s · N_e(q) / φ_e(q)` with an
//! integer polynomial `N_e`. The logarithm is taken with the Euler-operator
//! recurrence `w(e)·L_e = w(e)·c_e − Σ_{0<f<e} w(f)·L_f·c_{e−f}`, where
//! `w(e) = Σ e_i`; bringing products onto the common denominator `φ_e` only
//! needs the Gaussian binomials `[e_i, f_i]_q`, so the whole recurrence runs
//! over the integers.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::quiver::{is_indivisible, DimVector, Quiver};
use crate::series::{partitions_of, phi, q_binomial, Partition, QPolynomial, RationalQ};
use crate::Int;

/// Default cap on [`HuaCost::total`].
pub const DEFAULT_HUA_CAP: u128 = 400_000_000;

/// `q^shift · poly`, with `poly` either zero or of valuation zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    pub poly: QPolynomial,
    pub shift: i64,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { poly: QPolynomial::zero(), shift: 0 }
    }

    pub fn new(poly: QPolynomial, shift: i64) -> Self {
        if poly.is_zero() {
            return Self::zero();
        }
        let v = poly.valuation();
        Laurent { poly: poly.shift_down(v), shift: shift + v as i64 }
    }

    fn add(&self, other: &Laurent) -> Laurent {
        if self.poly.is_zero() {
            return other.clone();
        }
        if other.poly.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(other.shift);
        let a = self.poly.shift_up((self.shift - s) as usize);
        let b = other.poly.shift_up((other.shift - s) as usize);
        Laurent::new(&a + &b, s)
    }

    fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&Laurent { poly: -other.poly.clone(), shift: other.shift })
    }
}

/// One partition with the data Hua's summand needs.
#[derive(Clone, Debug)]
struct PartEntry {
    dual: Vec<u32>,
    odd_length: bool,
    b_degree: u32,
    /// `φ_{|π|}(q) / b_π(q)`.
    cofactor: QPolynomial,
}

/// Partitions of `0..=max` with precomputed summand data.
#[derive(Clone, Debug)]
pub struct PartitionTable {
    by_size: Vec<Vec<PartEntry>>,
}

impl PartitionTable {
    pub fn new(max: u32) -> Self {
        let by_size = (0..=max)
            .map(|m| {
                let phi_m = phi(m);
                partitions_of(m)
                    .into_iter()
                    .map(|p: Partition| PartEntry {
                        dual: p.dual().parts().to_vec(),
                        odd_length: p.len() % 2 == 1,
                        b_degree: p.b_degree(),
                        cofactor: phi_m.div_exact(&p.b_poly()).expect("b_π divides φ_|π|"),
                    })
                    .collect()
            })
            .collect();
        PartitionTable { by_size }
    }

    pub fn max(&self) -> u32 {
        self.by_size.len() as u32 - 1
    }
}

/// `c_e = q^shift · numerator / φ_e(q)` as a bare numerator and shift.
pub fn hua_cell(q: &Quiver, e: &DimVector, table: &PartitionTable) -> Laurent {
    let n = q.n_vertices();
    let lists: Vec<&Vec<PartEntry>> = e.entries().iter().map(|&m| &table.by_size[m as usize]).collect();
    let mut idx = vec![0usize; n];
    let mut acc = Laurent::zero();
    let depth = e.entries().iter().copied().max().unwrap_or(0) as usize;
    let mut layer = vec![0u32; n];
    loop {
        let parts: Vec<&PartEntry> = (0..n).map(|i| &lists[i][idx[i]]).collect();
        // Exponent −Σ_k ⟨d^k, d^k⟩ with d^k_i the k-th column of π^i.
        let mut exponent: i64 = 0;
        for k in 0..depth {
            for i in 0..n {
                layer[i] = parts[i].dual.get(k).copied().unwrap_or(0);
            }
            exponent -= q.euler_raw(&layer, &layer);
        }
        let mut negative = false;
        let mut poly = QPolynomial::one();
        for p in &parts {
            exponent += i64::from(p.b_degree);
            negative ^= p.odd_length;
            if p.cofactor != QPolynomial::one() {
                poly = &poly * &p.cofactor;
            }
        }
        if negative {
            poly = -poly;
        }
        acc = acc.add(&Laurent::new(poly, exponent));

        let mut i = 0;
        loop {
            if i == n {
                return acc;
            }
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Work estimate for a grid over the box `0 <= e <= D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HuaCost {
    pub cells: u128,
    /// Partition tuples summed over all cells.
    pub tuples: u128,
    /// Pairs `f <= e` visited by the logarithm recurrence.
    pub pairs: u128,
}

impl HuaCost {
    pub fn total(&self) -> u128 {
        self.tuples.saturating_add(self.pairs)
    }
}

pub fn hua_cost(target: &DimVector) -> HuaCost {
    let table_counts: Vec<u128> = {
        let max = target.entries().iter().copied().max().unwrap_or(0);
        (0..=max).map(|m| partitions_of(m).len() as u128).collect()
    };
    let mut cells = 1u128;
    let mut tuples = 1u128;
    let mut pairs = 1u128;
    for &di in target.entries() {
        let di = di as u128;
        cells = cells.saturating_mul(di + 1);
        let t: u128 = table_counts[..=di as usize].iter().sum();
        tuples = tuples.saturating_mul(t);
        pairs = pairs.saturating_mul((di + 1) * (di + 2) / 2);
    }
    HuaCost { cells, tuples, pairs }
}

/// Coefficients of Hua's series on the box `0 <= e <= D`, together with the
/// Euler-operator logarithm `M_e = w(e)·[X^e] log P`, both over `φ_e`.
#[derive(Clone, Debug)]
pub struct HuaGrid {
    quiver: Quiver,
    target: DimVector,
    strides: Vec<usize>,
    cells: Vec<Laurent>,
    log_cells: Vec<Laurent>,
}

impl HuaGrid {
    /// Computes every cell sequentially.
    pub fn build(q: &Quiver, target: &DimVector, cap: u128) -> Result<Self> {
        Self::check_feasible(q, target, cap)?;
        let table = PartitionTable::new(target.entries().iter().copied().max().unwrap_or(0));
        let cells = target.subvectors().map(|e| hua_cell(q, &e, &table)).collect();
        Self::from_cells(q, target, cells)
    }

    pub fn check_feasible(q: &Quiver, target: &DimVector, cap: u128) -> Result<HuaCost> {
        q.check_dim(target)?;
        let cost = hua_cost(target);
        if cost.total() > cap {
            return Err(Error::CapExceeded { what: "Hua grid", needed: cost.total(), cap });
        }
        Ok(cost)
    }

    /// Assembles a grid from cells listed in [`DimVector::subvectors`] order
    /// (as produced by [`hua_cell`]) and runs the logarithm recurrence.
    pub fn from_cells(q: &Quiver, target: &DimVector, cells: Vec<Laurent>) -> Result<Self> {
        q.check_dim(target)?;
        let n = target.len();
        let mut strides = vec![1usize; n];
        for i in 1..n {
            strides[i] = strides[i - 1] * (target.entries()[i - 1] as usize + 1);
        }
        if cells.len() as u128 != target.box_size() {
            return Err(Error::Internal("Hua grid received the wrong number of cells".into()));
        }
        let mut grid = HuaGrid {
            quiver: q.clone(),
            target: target.clone(),
            strides,
            cells,
            log_cells: Vec::new(),
        };
        grid.run_log();
        Ok(grid)
    }

    fn index(&self, e: &[u32]) -> usize {
        e.iter().zip(&self.strides).map(|(&x, &s)| x as usize * s).sum()
    }

    fn run_log(&mut self) {
        let max = self.target.entries().iter().copied().max().unwrap_or(0);
        let binom: Vec<Vec<QPolynomial>> =
            (0..=max).map(|n| (0..=n).map(|k| q_binomial(n, k)).collect()).collect();
        let mut log_cells = vec![Laurent::zero(); self.cells.len()];
        for e in self.target.subvectors() {
            let ie = self.index(e.entries());
            if e.is_zero() {
                continue;
            }
            let c = &self.cells[ie];
            let mut acc = Laurent::new(c.poly.scale(&Int::from(e.total())), c.shift);
            for f in e.subvectors() {
                if f.is_zero() || f == e {
                    continue;
                }
                let m = &log_cells[self.index(f.entries())];
                if m.poly.is_zero() {
                    continue;
                }
                let rest: Vec<u32> =
                    e.entries().iter().zip(f.entries()).map(|(a, b)| a - b).collect();
                let c = &self.cells[self.index(&rest)];
                if c.poly.is_zero() {
                    continue;
                }
                let mut prod = &m.poly * &c.poly;
                for (&ei, &fi) in e.entries().iter().zip(f.entries()) {
                    if fi != 0 && fi != ei {
                        prod = &prod * &binom[ei as usize][fi as usize];
                    }
                }
                acc = acc.sub(&Laurent::new(prod, m.shift + c.shift));
            }
            log_cells[ie] = acc;
        }
        self.log_cells = log_cells;
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn target(&self) -> &DimVector {
        &self.target
    }

    fn locate(&self, e: &DimVector) -> Result<usize> {
        self.quiver.check_dim(e)?;
        if !e.le(&self.target) {
            return Err(Error::Invalid(alloc::format!(
                "{e} lies outside the computed box up to {}",
                self.target
            )));
        }
        Ok(self.index(e.entries()))
    }

    /// `c_e` as a reduced [`RationalQ`].
    pub fn coefficient(&self, e: &DimVector) -> Result<RationalQ> {
        let cell = &self.cells[self.locate(e)?];
        Ok(RationalQ::new(cell.poly.clone(), cell.shift, phi_factors(e)))
    }

    /// Raw numerator and shift of `c_e` over `φ_e`.
    pub fn raw_coefficient(&self, e: &DimVector) -> Result<&Laurent> {
        Ok(&self.cells[self.locate(e)?])
    }

    /// `A_d(q)` for an indivisible `d` inside the box.
    pub fn kac_polynomial(&self, d: &DimVector) -> Result<QPolynomial> {
        let i = self.locate(d)?;
        if !is_indivisible(d)? {
            return Err(Error::Divisible { gcd: d.gcd() });
        }
        let m = &self.log_cells[i];
        // A_d = (q − 1)·q^shift·M / (|d|·φ_d)
        let num = m.poly.mul_one_minus_q_pow(1);
        let num = -num;
        let den = crate::series::phi_dim(d.entries());
        let quot = num.div_exact(&den).ok_or(Error::NotAPolynomial)?;
        let quot = quot.div_scalar_exact(&Int::from(d.total())).ok_or(Error::NotAPolynomial)?;
        to_polynomial(quot, m.shift)
    }
}

fn to_polynomial(poly: QPolynomial, shift: i64) -> Result<QPolynomial> {
    if poly.is_zero() {
        return Ok(poly);
    }
    let v = poly.valuation() as i64;
    if shift + v < 0 {
        return Err(Error::NotAPolynomial);
    }
    Ok(if shift >= 0 {
        poly.shift_up(shift as usize)
    } else {
        poly.shift_down((-shift) as usize)
    })
}

fn phi_factors(e: &DimVector) -> Vec<u32> {
    e.entries().iter().flat_map(|&m| 1..=m).collect()
}

/// Hua's coefficients `c_e` for all `0 <= e <= D`.
pub fn hua_coefficients(q: &Quiver, target: &DimVector) -> Result<HuaGrid> {
    HuaGrid::build(q, target, DEFAULT_HUA_CAP)
}

fn check_kac_input(q: &Quiver, d: &DimVector) -> Result<()> {
    q.check_dim(d)?;
    if !is_indivisible(d)? {
        return Err(Error::Divisible { gcd: d.gcd() });
    }
    Ok(())
}

/// `A_d(q)` by the logarithm route.
pub fn kac_polynomial(q: &Quiver, d: &DimVector) -> Result<QPolynomial> {
    kac_polynomial_capped(q, d, DEFAULT_HUA_CAP)
}

pub fn kac_polynomial_capped(q: &Quiver, d: &DimVector, cap: u128) -> Result<QPolynomial> {
    check_kac_input(q, d)?;
    HuaGrid::build(q, d, cap)?.kac_polynomial(d)
}

/// `Σ_{chains α = d¹+…+d^s, d¹ ≥ … ≥ d^s > 0} q^{−Σ⟨d^k,d^k⟩} / ∏_k φ_{d^k − d^{k+1}}(q^{-1})`.
pub fn chain_sum(q: &Quiver, alpha: &DimVector) -> RationalQ {
    fn rec(q: &Quiver, rest: &DimVector, prev: &DimVector, exponent: i64, out: &mut RationalQ, acc: &RationalQ) {
        if rest.is_zero() {
            let mut term = acc.clone();
            for &r in prev.entries() {
                term = &term * &RationalQ::inverse_phi_at_inverse_q(r);
            }
            *out = &*out + &(&term * &RationalQ::monomial(Int::one(), exponent));
            return;
        }
        let bound = DimVector::new(
            rest.entries().iter().zip(prev.entries()).map(|(a, b)| *a.min(b)).collect(),
        );
        for next in bound.subvectors() {
            if next.is_zero() {
                continue;
            }
            let mut factor = acc.clone();
            for (a, b) in prev.entries().iter().zip(next.entries()) {
                if a != b {
                    factor = &factor * &RationalQ::inverse_phi_at_inverse_q(a - b);
                }
            }
            let e = exponent - q.euler_raw(next.entries(), next.entries());
            let rest2 = rest.checked_sub(&next).expect("next <= rest");
            rec(q, &rest2, &next, e, out, &factor);
        }
    }
    let mut out = RationalQ::zero();
    if alpha.is_zero() {
        return RationalQ::one();
    }
    for first in alpha.subvectors() {
        if first.is_zero() {
            continue;
        }
        let rest = alpha.checked_sub(&first).expect("first <= alpha");
        let e = -q.euler_raw(first.entries(), first.entries());
        rec(q, &rest, &first, e, &mut out, &RationalQ::one());
    }
    out
}

/// `A_d(q)` by summing over compositions `d = α¹+…+α^l` and chains inside
/// each `α^j`, with the `(−1)^{l+1}/l` weights of the logarithm. Exponential;
/// used to cross-check [`kac_polynomial`].
pub fn kac_polynomial_decomposition_route(q: &Quiver, d: &DimVector) -> Result<QPolynomial> {
    check_kac_input(q, d)?;
    let boxes: Vec<DimVector> = d.subvectors().collect();
    let n = d.len();
    let mut strides = vec![1usize; n];
    for i in 1..n {
        strides[i] = strides[i - 1] * (d.entries()[i - 1] as usize + 1);
    }
    let index = |e: &DimVector| -> usize { e.entries().iter().zip(&strides).map(|(&x, &s)| x as usize * s).sum() };
    let chains: Vec<RationalQ> = boxes.iter().map(|e| chain_sum(q, e)).collect();

    // t[e] = Σ over compositions of e into exactly l nonzero parts of ∏ F.
    let total = d.total();
    let lcm = (1..=total).fold(Int::one(), |acc, l| acc.lcm(&Int::from(l)));
    let mut t: Vec<RationalQ> =
        boxes.iter().map(|e| if e.is_zero() { RationalQ::zero() } else { chains[index(e)].clone() }).collect();
    let mut sum = RationalQ::zero();
    for l in 1..=total {
        let weight = &lcm / Int::from(l);
        let signed = if l % 2 == 1 { weight } else { -weight };
        sum = &sum + &(&t[index(d)] * &RationalQ::monomial(signed, 0));
        if l == total {
            break;
        }
        let mut next = vec![RationalQ::zero(); boxes.len()];
        for e in &boxes {
            let mut acc = RationalQ::zero();
            for f in e.subvectors() {
                if f.is_zero() || &f == e {
                    continue;
                }
                let prev = &t[index(&e.checked_sub(&f).expect("f <= e"))];
                if prev.is_zero() {
                    continue;
                }
                acc = &acc + &(&chains[index(&f)] * prev);
            }
            next[index(e)] = acc;
        }
        t = next;
    }
    // (q − 1) = −(1 − q)
    let scaled = &sum * &RationalQ::from_polynomial(QPolynomial::from_i64s(&[-1, 1]));
    let poly = scaled.to_polynomial()?;
    poly.div_scalar_exact(&lcm).ok_or(Error::NonIntegral)
}
