use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};
use crate::series::QPolynomial;
use crate::Int;

const MAX_THIN_ARROWS: usize = 24;

/// Kac polynomial of a thin dimension vector (all entries 0 or 1).
///
/// A thin representation is a scalar per arrow. Up to the vertex torus it is
/// determined by the set `S` of arrows with nonzero scalar, leaving
/// `(q−1)^{|S|+1−|supp d|}` classes when `S` connects `supp d`; loops inside
/// the support carry a free scalar each.
pub fn thin_kac(q: &Quiver, d: &DimVector) -> Result<QPolynomial> {
    q.check_dim(d)?;
    if let Some(&x) = d.entries().iter().find(|&&x| x > 1) {
        return Err(Error::Invalid(alloc::format!("thin counting needs entries 0 or 1, found {x}")));
    }
    let supp = d.support();
    if supp.is_empty() {
        return Err(Error::ZeroVector("dimension vector"));
    }
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    let mut loops = 0usize;
    for (s, t) in q.arrow_list() {
        if d.entries()[s] == 1 && d.entries()[t] == 1 {
            if s == t {
                loops += 1;
            } else {
                arrows.push((s, t));
            }
        }
    }
    if arrows.len() > MAX_THIN_ARROWS {
        return Err(Error::CapExceeded {
            what: "thin arrow-subset enumeration",
            needed: 1u128 << arrows.len(),
            cap: 1u128 << MAX_THIN_ARROWS,
        });
    }
    // counts[k] = number of connected spanning subsets with |S| + 1 − |supp| = k
    let mut counts = alloc::vec![0u64; arrows.len() + 1];
    let n = q.n_vertices();
    let mut parent: Vec<usize> = alloc::vec![0; n];
    for mask in 0u32..(1u32 << arrows.len()) {
        let size = mask.count_ones() as usize;
        if size + 1 < supp.len() {
            continue;
        }
        for &v in &supp {
            parent[v] = v;
        }
        let mut components = supp.len();
        for (bit, &(s, t)) in arrows.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                let (a, b) = (find(&mut parent, s), find(&mut parent, t));
                if a != b {
                    parent[a] = b;
                    components -= 1;
                }
            }
        }
        if components == 1 {
            counts[size + 1 - supp.len()] += 1;
        }
    }
    let q_minus_one = QPolynomial::from_i64s(&[-1, 1]);
    let mut power = QPolynomial::one();
    let mut total = QPolynomial::zero();
    for c in counts {
        if c != 0 {
            total = &total + &power.scale(&Int::from(c));
        }
        power = &power * &q_minus_one;
    }
    Ok(total.shift_up(loops))
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector::from(v)
    }

    #[test]
    fn examples() {
        assert_eq!(thin_kac(&Quiver::kronecker(2), &dv(&[1, 1])).unwrap(), QPolynomial::from_i64s(&[1, 1]));
        assert_eq!(thin_kac(&Quiver::kronecker(3), &dv(&[1, 1])).unwrap(), QPolynomial::from_i64s(&[1, 1, 1]));
        let empty = Quiver::new(alloc::vec![alloc::vec![0, 0], alloc::vec![0, 0]]).unwrap();
        assert!(thin_kac(&empty, &dv(&[1, 1])).unwrap().is_zero());
        assert_eq!(thin_kac(&Quiver::path(3), &dv(&[1, 0, 1])).unwrap(), QPolynomial::zero());
        assert_eq!(thin_kac(&Quiver::path(3), &dv(&[0, 1, 0])).unwrap(), QPolynomial::one());
        let jordan = Quiver::with_loops(alloc::vec![alloc::vec![1]]).unwrap();
        assert_eq!(thin_kac(&jordan, &dv(&[1])).unwrap(), QPolynomial::from_i64s(&[0, 1]));
        assert!(thin_kac(&Quiver::kronecker(2), &dv(&[2, 1])).is_err());
    }
}
