//! Dense linear algebra over a prime field `F_p`, `p < 2^15`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub const MAX_PRIME: u64 = 1 << 15;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    p: u32,
}

impl Field {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field { p: p as u32 })
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let mut result = 1;
        let mut base = a;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }
}

/// Row-major `rows × cols` matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_slice(rows: usize, cols: usize, data: &[u32]) -> Self {
        Matrix { rows, cols, data: data.to_vec() }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn sub(&self, f: &Field, other: &Matrix) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn rank(&self, f: &Field) -> usize {
        let mut m = self.clone();
        row_reduce(f, &mut m).len()
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = row_reduce(f, &mut aug);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }

    /// `M^k = 0` for `k = rows`.
    pub fn is_nilpotent(&self, f: &Field) -> bool {
        let mut p = self.clone();
        for _ in 1..self.rows {
            if p.is_zero() {
                return true;
            }
            p = p.mul(f, self);
        }
        p.is_zero()
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(f: &Field, m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
            continue;
        };
        if pr != row {
            for c in 0..m.cols {
                let (a, b) = (m.get(row, c), m.get(pr, c));
                m.set(row, c, b);
                m.set(pr, c, a);
            }
        }
        let inv = f.inv(m.get(row, col));
        for c in 0..m.cols {
            let v = f.mul(m.get(row, c), inv);
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row {
                continue;
            }
            let factor = m.get(r, col);
            if factor == 0 {
                continue;
            }
            for c in 0..m.cols {
                let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of `{x : M x = 0}`.
pub fn nullspace(f: &Field, m: &Matrix) -> Vec<Vec<u32>> {
    let mut r = m.clone();
    let pivots = row_reduce(f, &mut r);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0u32; m.cols];
            x[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(r.get(i, fc));
            }
            x
        })
        .collect()
}

/// Dimension of the span of the given vectors.
pub fn span_dimension(f: &Field, vectors: &[Vec<u32>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].len();
    let mut m = Matrix::zero(vectors.len(), cols);
    for (i, v) in vectors.iter().enumerate() {
        m.data[i * cols..(i + 1) * cols].copy_from_slice(v);
    }
    m.rank(f)
}

/// Number of `m × n` matrices of rank `r` over `F_q`:
/// `∏_{k<r} (q^m − q^k)(q^n − q^k) / (q^r − q^k)`.
pub fn rank_class_size(q: u128, m: u32, n: u32, r: u32) -> u128 {
    let pow = |e: u32| q.pow(e);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for k in 0..r {
        num *= (pow(m) - pow(k)) * (pow(n) - pow(k));
        den *= pow(r) - pow(k);
    }
    num / den
}

/// All invertible `n × n` matrices, in increasing base-`p` order of their
/// entries.
pub fn general_linear_group(f: &Field, n: usize) -> Vec<Matrix> {
    let p = f.order();
    let total = (p as u64).pow((n * n) as u32);
    let mut out = Vec::new();
    let mut entries = vec![0u32; n * n];
    for _ in 0..total {
        let m = Matrix::from_slice(n, n, &entries);
        if m.rank(f) == n {
            out.push(m);
        }
        for e in entries.iter_mut() {
            *e += 1;
            if *e < p {
                break;
            }
            *e = 0;
        }
    }
    out
}

/// `|GL_n(F_q)| = ∏_{k<n} (q^n − q^k)`.
pub fn gl_order(q: u128, n: u32) -> u128 {
    (0..n).map(|k| q.pow(n) - q.pow(k)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(Field::new(2).is_ok());
        assert!(Field::new(11).is_ok());
        assert_eq!(Field::new(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Field::new(40_009), Err(Error::NotPrime(40_009)));
    }

    #[test]
    fn group_orders() {
        for p in [2u64, 3, 5] {
            let f = Field::new(p).unwrap();
            assert_eq!(general_linear_group(&f, 2).len() as u128, gl_order(p as u128, 2));
            assert_eq!(general_linear_group(&f, 1).len() as u128, gl_order(p as u128, 1));
        }
        assert_eq!(gl_order(3, 0), 1);
    }

    #[test]
    fn rank_classes_partition_matrices() {
        for q in [2u128, 3, 5] {
            for (m, n) in [(2, 1), (2, 2), (3, 2)] {
                let total: u128 = (0..=m.min(n)).map(|r| rank_class_size(q, m, n, r)).sum();
                assert_eq!(total, q.pow(m * n));
            }
        }
    }

    #[test]
    fn inverse_and_nullspace() {
        let f = Field::new(5).unwrap();
        let m = Matrix::from_slice(2, 2, &[1, 2, 3, 4]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Matrix::identity(2));
        assert!(Matrix::from_slice(2, 2, &[1, 2, 2, 4]).inverse(&f).is_none());
        let ns = nullspace(&f, &Matrix::from_slice(1, 3, &[1, 1, 0]));
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(f.add(v[0], v[1]), 0);
        }
        assert!(Matrix::from_slice(2, 2, &[0, 1, 0, 0]).is_nilpotent(&f));
        assert!(!Matrix::identity(2).is_nilpotent(&f));
    }
}
