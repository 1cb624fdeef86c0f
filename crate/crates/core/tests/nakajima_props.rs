use kacstab_core::nakajima::{
    hilbert_coefficient_identity_check, hilbert_series, nakajima_kac_sweep, nakajima_limit_series, NakajimaInstance,
    NakajimaMode,
};
use kacstab_core::quiver::DistanceRule;
use kacstab_core::stabilize::{limit_series, Verdict};
use kacstab_core::{DimVector, Int, Quiver};
use proptest::prelude::*;

fn dv(v: &[u32]) -> DimVector {
    DimVector::from(v)
}

fn instance_strategy() -> impl Strategy<Value = NakajimaInstance> {
    (1usize..=3).prop_flat_map(|n| {
        (
            proptest::collection::vec(0u32..=2, n * n),
            proptest::collection::vec(0u32..=3, n),
            proptest::collection::vec(0u32..=4, n),
            proptest::collection::vec(0u32..=2, n),
        )
            .prop_filter_map("w and δ nonzero", move |(flat, w, d, delta)| {
                if w.iter().all(|&x| x == 0) || delta.iter().all(|&x| x == 0) {
                    return None;
                }
                let m = (0..n).map(|i| (0..n).map(|j| if i == j { 0 } else { flat[i * n + j] }).collect()).collect();
                NakajimaInstance::new(Quiver::new(m).unwrap(), DimVector::new(w), DimVector::new(d), DimVector::new(delta)).ok()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn one_minus_q_cancels_on_the_framing_vertex(inst in instance_strategy()) {
        let direct = limit_series(&inst.cb_quiver, &inst.cb_d, &inst.cb_delta, 20).unwrap();
        prop_assert_eq!(direct, nakajima_limit_series(&inst, 20));
    }
}

#[test]
fn hilbert_identity_grid() {
    for b in 0..=3 {
        for k in 0..=10 {
            let mut previous: Option<Int> = None;
            for a in 0..=12 {
                let c = hilbert_coefficient_identity_check(b, k, a);
                assert!(c.passes(), "b={b} k={k} a={a}: {c:?}");
                if a >= k {
                    assert!(c.limit.is_some());
                }
                if let Some(p) = previous {
                    assert!(c.lhs >= p);
                }
                previous = Some(c.lhs);
            }
        }
    }
}

#[test]
fn cotangent_line_matches_hilbert_columns() {
    let inst = NakajimaInstance::new(Quiver::kronecker(2), dv(&[0, 1]), dv(&[0, 0]), dv(&[1, 1])).unwrap();
    let report = nakajima_kac_sweep(&inst, 1, 4, 4).unwrap();
    let h = hilbert_series(2, Some(1), 4, 4).unwrap();
    for row in &report.rows {
        let p = row.polynomial.as_ref().unwrap();
        let n = row.n as usize;
        assert_eq!(p.degree(), Some(n));
        for i in 0..=n {
            assert_eq!(h.int_coeff(i, n).unwrap(), p.coeff(n - i), "n={n} t^{i}");
        }
    }
    assert_eq!(h.int_coeff(2, 4), Some(Int::from(5)));
}

#[test]
fn weak_mode_stays_below_limit() {
    let hyper = Quiver::new(vec![vec![0, 2, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
    let inst = NakajimaInstance::new(hyper, dv(&[0, 0, 1]), dv(&[6, 7, 3]), dv(&[1, 1, 0])).unwrap();
    assert_eq!(inst.mode(DistanceRule::default()).unwrap().0, NakajimaMode::WeakStar);
    let report = nakajima_kac_sweep(&inst, 0, 2, 2).unwrap();
    let limit = nakajima_limit_series(&inst, 2).integer_coeffs().unwrap();
    for row in &report.rows {
        for (i, a) in row.coefficients.as_ref().unwrap().iter().enumerate() {
            assert!(a <= &limit[i], "n={} a_{i}={a} > {}", row.n, limit[i]);
        }
    }
    assert!(report.summary.iter().all(|s| s.verdict != Verdict::ExceedsLimit));
}
