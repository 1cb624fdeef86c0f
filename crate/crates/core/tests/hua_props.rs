use kacstab_core::hua::{kac_polynomial, kac_polynomial_decomposition_route};
use kacstab_core::oracle::{enumerate_dims, enumerate_quivers, thin_kac};
use kacstab_core::quiver::root_type;
use kacstab_core::{DimVector, Quiver, RootType};
use num_bigint::BigInt;
use num_traits::{One, Signed};

fn dv(v: &[u32]) -> DimVector {
    DimVector::from(v)
}

#[test]
fn kac_properties_on_small_quivers() {
    let zero = BigInt::from(0);
    for n in 1..=3 {
        for q in enumerate_quivers(n, 3) {
            for d in enumerate_dims(n, 6).into_iter().filter(|d| d.gcd() == 1) {
                let a = kac_polynomial(&q, &d).unwrap();
                let rt = root_type(&q, &d).unwrap();
                assert_eq!(a.is_zero(), rt == RootType::NotRoot, "{q:?} {d}");
                if d.total() > 5 {
                    continue;
                }
                assert!(a.coeffs().iter().all(|c| !c.is_negative()), "{q:?} {d}");
                if !a.is_zero() {
                    let expected = 1 - q.euler_form(&d, &d).unwrap();
                    assert_eq!(a.degree(), Some(expected as usize), "{q:?} {d}");
                    assert!(a.leading_coeff().unwrap().is_one());
                }
                for (s, t) in q.arrow_list() {
                    let r = q.reverse_one_arrow(s, t).unwrap();
                    assert_eq!(kac_polynomial(&r, &d).unwrap(), a, "{q:?} {d} reversing {s}->{t}");
                }
                assert!(a.coeffs().iter().all(|c| *c >= zero));
            }
        }
    }
}

#[test]
fn routes_agree_up_to_total_five() {
    for n in 1..=3 {
        for q in enumerate_quivers(n, 2) {
            for d in enumerate_dims(n, 5).into_iter().filter(|d| d.gcd() == 1) {
                let a = kac_polynomial(&q, &d).unwrap();
                let b = kac_polynomial_decomposition_route(&q, &d).unwrap();
                assert_eq!(a, b, "{q:?} {d}");
            }
        }
    }
    let looped = Quiver::with_loops(vec![vec![1, 1], vec![0, 0]]).unwrap();
    for d in [dv(&[2, 1]), dv(&[1, 2]), dv(&[3, 1])] {
        assert_eq!(kac_polynomial(&looped, &d).unwrap(), kac_polynomial_decomposition_route(&looped, &d).unwrap(), "{d}");
    }
}

#[test]
fn thin_scan_matches_hua() {
    for n in 1..=4 {
        let thin: Vec<DimVector> = enumerate_dims(n, n as u32).into_iter().filter(|d| d.entries().iter().all(|&x| x <= 1)).collect();
        for q in enumerate_quivers(n, 4) {
            for d in &thin {
                assert_eq!(thin_kac(&q, d).unwrap(), kac_polynomial(&q, d).unwrap(), "{q:?} {d}");
            }
        }
    }
}

#[test]
fn orientation_independence_on_named_quivers() {
    let k3 = Quiver::kronecker(3);
    let hyper = Quiver::new(vec![vec![0, 2, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
    for (q, ds) in [(k3, vec![dv(&[2, 1]), dv(&[3, 2]), dv(&[2, 3])]), (hyper, vec![dv(&[1, 1, 1]), dv(&[2, 2, 1]), dv(&[2, 3, 1])])] {
        for d in ds {
            let a = kac_polynomial(&q, &d).unwrap();
            for (s, t) in q.arrow_list() {
                assert_eq!(kac_polynomial(&q.reverse_one_arrow(s, t).unwrap(), &d).unwrap(), a);
            }
        }
    }
}
