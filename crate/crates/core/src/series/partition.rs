//! Integer partitions, their duals, the pairing `⟨π₁,π₂⟩ = Σ_i π₁'_i π₂'_i`
//! and the polynomials `b_π(q) = ∏_i φ_{r_i}(q)`.

use alloc::vec::Vec;
use core::fmt;

use crate::series::poly::{phi, QPolynomial};

/// A partition stored as weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the given parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `r_i` for `i = 1..=largest part`; index 0 of the result is unused.
    pub fn multiplicities(&self) -> Vec<u32> {
        let largest = self.parts.first().copied().unwrap_or(0) as usize;
        let mut r = alloc::vec![0u32; largest + 1];
        for &p in &self.parts {
            r[p as usize] += 1;
        }
        r
    }

    /// Conjugate partition: `π'_j = #{i : π_i ≥ j}`.
    pub fn dual(&self) -> Self {
        let largest = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=largest)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// `b_π(q) = ∏_i φ_{r_i}(q)`.
    pub fn b_poly(&self) -> QPolynomial {
        self.multiplicities()
            .iter()
            .filter(|&&r| r > 0)
            .fold(QPolynomial::one(), |acc, &r| &acc * &phi(r))
    }

    /// `Σ_i r_i (r_i + 1) / 2`, the degree of `b_π`.
    pub fn b_degree(&self) -> u32 {
        self.multiplicities().iter().map(|r| r * (r + 1) / 2).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// `⟨π₁,π₂⟩ = Σ_i (π₁')_i (π₂')_i`.
pub fn partition_pairing(a: &Partition, b: &Partition) -> u64 {
    let da = a.dual();
    let db = b.dual();
    da.parts.iter().zip(&db.parts).map(|(&x, &y)| u64::from(x) * u64::from(y)).sum()
}

/// All partitions of `m` in decreasing lexicographic order, starting with
/// `(m)` and ending with `(1^m)`. `partitions_of(0)` is `[()]`.
pub fn partitions_of(m: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(rem: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            current.push(p);
            rec(rem - p, p, current, out);
            current.pop();
        }
    }
    rec(m, m, &mut current, &mut out);
    out
}
