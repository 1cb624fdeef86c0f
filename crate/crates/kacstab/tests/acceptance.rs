//! Acceptance criteria 1–10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use kacstab::parallel;
use kacstab_core::hua::kac_polynomial;
use kacstab_core::nakajima::{
    hilbert_coefficient_identity_check, hilbert_series, nakajima_limit_series, NakajimaInstance,
};
use kacstab_core::oracle::{enumerate_dims, enumerate_quivers, thin_kac, CensusLimits, CensusMode};
use kacstab_core::quiver::{check_star, root_type, DistanceRule, Strictness};
use kacstab_core::series::partition_gf;
use kacstab_core::stabilize::{
    limit_series, max_pairing, multi_part_max, near_max_decompositions, stab_bound_mn, Expectation, SweepMode,
    SweepSpec, Verdict, DEFAULT_PAIRING_CAP,
};
use kacstab_core::{DimVector, Form, Int, QPolynomial, Quiver, RootType, TruncatedSeries};
use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn dv(v: &[u32]) -> DimVector {
    DimVector::from(v)
}

fn poly(c: &[i64]) -> QPolynomial {
    QPolynomial::from_i64s(c)
}

fn s2() -> Quiver {
    Quiver::new(vec![vec![0, 2], vec![2, 0]]).unwrap()
}

fn hyperbolic() -> Quiver {
    Quiver::new(vec![vec![0, 2, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1() -> Outcome {
    let cb = Quiver::kronecker(2).crawley_boevey(&dv(&[0, 1])).map_err(|e| e.to_string())?;
    let cases = [
        ("K2 (1,1)", Quiver::kronecker(2), dv(&[1, 1]), poly(&[1, 1])),
        ("K3 (1,1)", Quiver::kronecker(3), dv(&[1, 1]), poly(&[1, 1, 1])),
        ("A2 (1,1)", Quiver::path(2), dv(&[1, 1]), poly(&[1])),
        ("CB(K2,(0,1)) (1,1,1)", cb, dv(&[1, 1, 1]), poly(&[1, 1])),
    ];
    for (name, q, d, expected) in &cases {
        let hua = kac_polynomial(q, d).map_err(|e| e.to_string())?;
        let thin = thin_kac(q, d).map_err(|e| e.to_string())?;
        ensure(hua == *expected && thin == *expected, || format!("{name}: Hua {hua}, thin {thin}, expected {expected}"))?;
    }
    Ok(format!("Hua equals the thin oracle on {} instances", cases.len()))
}

fn c2() -> Outcome {
    let cases = [
        ("K3 (2,1)", Quiver::kronecker(3), dv(&[2, 1]), vec![2u64, 3, 5]),
        ("S2 (1,1)", s2(), dv(&[1, 1]), vec![2, 3, 5, 7]),
        ("S2 (2,1)", s2(), dv(&[2, 1]), vec![2, 3, 5, 7, 11]),
    ];
    let mut notes = Vec::new();
    for (name, q, d, primes) in &cases {
        let hua = kac_polynomial(q, d).map_err(|e| e.to_string())?;
        let (brute, _) = parallel::brute_force_kac(q, d, primes, CensusMode::Auto, CensusLimits::default()).map_err(|e| format!("{name}: {e}"))?;
        ensure(hua == brute, || format!("{name}: Hua {hua}, census {brute}"))?;
        notes.push(format!("{name} = {hua} (p in {primes:?})"));
    }
    Ok(notes.join("; "))
}

fn c3() -> Outcome {
    let mut checked = 0usize;
    for n in 1..=3 {
        for q in enumerate_quivers(n, 3) {
            for d in enumerate_dims(n, 5).into_iter().filter(|d| d.gcd() == 1) {
                let a = kac_polynomial(&q, &d).map_err(|e| e.to_string())?;
                let rt = root_type(&q, &d).map_err(|e| e.to_string())?;
                let ctx = || format!("{:?} d = {d}", q.arrow_matrix());
                ensure(a.is_zero() == (rt == RootType::NotRoot), || format!("{}: A = {a}, root type {rt:?}", ctx()))?;
                if !a.is_zero() {
                    let deg = 1 - q.euler_form(&d, &d).unwrap();
                    ensure(a.degree() == Some(deg as usize), || format!("{}: degree of {a} is not {deg}", ctx()))?;
                }
                ensure(a.coeffs().iter().all(|c| *c >= Int::from(0)), || format!("{}: negative coefficient in {a}", ctx()))?;
                for (s, t) in q.arrow_list() {
                    let r = q.reverse_one_arrow(s, t).unwrap();
                    let b = kac_polynomial(&r, &d).map_err(|e| e.to_string())?;
                    ensure(a == b, || format!("{}: reversing {s}->{t} gives {b} instead of {a}", ctx()))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (quiver, d) pairs"))
}

fn c4() -> Outcome {
    let spec = SweepSpec::new(Quiver::kronecker(3), dv(&[1, 0]), dv(&[1, 1]), SweepMode::Kac, 0, 5, 2);
    let r = parallel::sweep(&spec).map_err(|e| e.to_string())?;
    let independent = &TruncatedSeries::from_ints(&[1, -1], 2) * &partition_gf(2, 2);
    let limit = limit_series(&spec.quiver, &spec.d, &spec.delta, 2).map_err(|e| e.to_string())?;
    ensure(limit == independent, || format!("limit series {limit} differs from (1-q)p^2 = {independent}"))?;
    let expected = [1, 1, 3].map(Int::from);
    let mut thresholds = Vec::new();
    for s in &r.summary {
        ensure(s.stabilized.as_ref() == Some(&expected[s.index]), || format!("a_{} stabilized at {:?}", s.index, s.stabilized))?;
        ensure(s.verdict == Verdict::MatchesLimit, || format!("a_{} verdict {}", s.index, s.verdict.as_str()))?;
        let t = s.certified_threshold.ok_or_else(|| format!("a_{} never certified", s.index))?;
        let obs = s.stabilization_index.expect("rows exist");
        ensure(obs <= t, || format!("a_{} certified from {t} but moves until {obs}", s.index))?;
        for row in r.rows.iter().filter(|row| row.n >= t) {
            let a = &row.coefficients.as_ref().expect("indivisible")[s.index];
            ensure(*a == expected[s.index], || format!("a_{} = {a} at certified n = {}", s.index, row.n))?;
        }
        thresholds.push(format!("a_{}: observed {obs}, certified {t}", s.index));
    }
    ensure(r.flags.is_empty(), || format!("flags: {:?}", r.flags))?;
    Ok(format!("stabilized 1,1,3 = limit; {}", thresholds.join(", ")))
}

fn c5() -> Outcome {
    let q = s2();
    let zero = dv(&[0, 0]);
    let delta = dv(&[1, 1]);
    let mut pairings = Vec::new();
    for n in 1..=8 {
        let tau = dv(&[n, n]);
        let (best, _) = max_pairing(&q, &tau, Form::Euler, DEFAULT_PAIRING_CAP).map_err(|e| e.to_string())?;
        let bound = stab_bound_mn(&q, &zero, &delta, n, Form::Euler).map_err(|e| e.to_string())?;
        ensure(Ratio::from_integer(best) <= bound, || format!("n = {n}: max pairing {best} > M_n = {bound}"))?;
        pairings.push(best);
    }
    let mut multi_checked = 0;
    for d in enumerate_dims(2, 8) {
        if d.total() < 2 || root_type(&q, &d).map_err(|e| e.to_string())? == RootType::NotRoot {
            continue;
        }
        let (two, _) = max_pairing(&q, &d, Form::Euler, DEFAULT_PAIRING_CAP).map_err(|e| e.to_string())?;
        let multi = multi_part_max(&q, &d, Form::Euler, Some(4), DEFAULT_PAIRING_CAP).map_err(|e| e.to_string())?;
        ensure(multi == 2 * two, || format!("τ = {d}: multi-part {multi} ≠ 2·{two}"))?;
        multi_checked += 1;
    }
    Ok(format!("max pairings {pairings:?} within M_n; multi = 2·max on {multi_checked} roots"))
}

fn c6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x6b61_6373);
    let mut done = 0;
    while done < 10 {
        let n = rng.gen_range(1..=4usize);
        let m: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| if i == j { 0 } else { rng.gen_range(0..=2) }).collect()).collect();
        let mut vec_of = |hi: u32| DimVector::new((0..n).map(|_| rng.gen_range(0..=hi)).collect());
        let (w, d, delta) = (vec_of(3), vec_of(5), vec_of(2));
        if w.is_zero() || delta.is_zero() {
            continue;
        }
        let inst = NakajimaInstance::new(Quiver::new(m).unwrap(), w, d, delta).map_err(|e| e.to_string())?;
        let direct = limit_series(&inst.cb_quiver, &inst.cb_d, &inst.cb_delta, 20).map_err(|e| e.to_string())?;
        let nak = nakajima_limit_series(&inst, 20);
        ensure(direct == nak, || format!("instance {done}: {direct} vs {nak}"))?;
        done += 1;
    }
    Ok("10 seeded random instances agree to order 20".into())
}

fn c7() -> Outcome {
    let q = Quiver::kronecker(2);
    let inst = NakajimaInstance::new(q, dv(&[0, 1]), dv(&[0, 0]), dv(&[1, 1])).map_err(|e| e.to_string())?;
    let r = parallel::nakajima_sweep(&inst, 1, 4, 4, DistanceRule::default(), u128::MAX).map_err(|e| e.to_string())?;
    let h = hilbert_series(2, Some(1), 4, 4).map_err(|e| e.to_string())?;
    for row in &r.rows {
        let p = row.polynomial.as_ref().ok_or("row skipped")?;
        let n = row.n as usize;
        let column: Vec<Int> = (0..=n).map(|i| h.int_coeff(i, n).unwrap()).collect();
        let top: Vec<Int> = (0..=n).map(|i| p.coeff(n - i)).collect();
        ensure(p.degree() == Some(n) && column == top, || format!("n = {n}: A = {p}, column {column:?}"))?;
    }
    let a221 = &r.rows[1].polynomial.as_ref().unwrap().clone();
    ensure(*a221 == poly(&[2, 2, 1]), || format!("A_(2,2,1) = {a221}"))?;
    let t2q4 = h.int_coeff(2, 4).unwrap();
    let p2 = partition_gf(2, 2).integer_coeffs().unwrap()[2].clone();
    ensure(t2q4 == Int::from(5) && t2q4 == p2, || format!("t^2 q^4 coefficient {t2q4}, p^2(2) = {p2}"))?;
    Ok("A_(n,n,1) equals the q^n column for n = 1..4; A_(2,2,1) = q^2 + 2*q + 2; t^2q^4 = 5".into())
}

fn c8() -> Outcome {
    let mut count = 0;
    for b in 0..=3u32 {
        let pb1 = partition_gf(b + 1, 10).integer_coeffs().unwrap();
        for k in 0..=10u32 {
            for a in 0..=12u32 {
                let c = hilbert_coefficient_identity_check(b, k, a);
                ensure(c.equal, || format!("b={b} k={k} a={a}: {} ≠ {}", c.lhs, c.rhs))?;
                if a >= k {
                    ensure(c.lhs == pb1[k as usize] && c.limit.as_ref() == Some(&pb1[k as usize]), || {
                        format!("b={b} k={k} a={a}: {} vs p^{}({k}) = {}", c.lhs, b + 1, pb1[k as usize])
                    })?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} identity checks"))
}

fn c9() -> Outcome {
    let q = hyperbolic();
    let delta = dv(&[1, 1, 0]);
    let weak = check_star(&q, &delta, Form::Cartan, Strictness::Weak, DistanceRule::default()).map_err(|e| e.to_string())?;
    ensure(weak.overall, || "weak (★) fails for δ = (1,1,0)".into())?;
    let candidates: Vec<DimVector> = enumerate_dims(3, 18)
        .into_iter()
        .filter(|d| q.pairings_with_simples(Form::Cartan, d).unwrap().iter().all(|&x| x < 0))
        .collect();
    let d = dv(&[7, 8, 3]);
    ensure(candidates.contains(&d), || "(7,8,3) fails the (d,e_i) < 0 scan".into())?;
    let spec = SweepSpec::new(q, d, delta, SweepMode::Conjecture, 0, 4, 3);
    let r = parallel::sweep(&spec).map_err(|e| e.to_string())?;
    ensure(r.hypotheses.holds && r.hypotheses.expectation == Expectation::AtMost, || format!("hypotheses {:?}", r.hypotheses))?;
    let mut verdicts = Vec::new();
    for s in &r.summary {
        if let Some(v) = &s.stabilized {
            ensure(*v <= s.limit, || format!("a_{} = {v} exceeds the limit {}", s.index, s.limit))?;
        }
        for row in &r.rows {
            if let Some(c) = &row.coefficients {
                ensure(c[s.index] <= s.limit, || format!("a_{} = {} at n = {} exceeds {}", s.index, c[s.index], row.n, s.limit))?;
            }
        }
        verdicts.push(format!("a_{} {}", s.index, s.verdict.as_str()));
    }
    ensure(r.flags.is_empty(), || format!("flags: {:?}", r.flags))?;
    Ok(format!("{} valid d with total ≤ 18; d = (7,8,3), n = 0..4: {}", candidates.len(), verdicts.join(", ")))
}

fn c10() -> Outcome {
    let q = hyperbolic();
    let (d, delta) = (dv(&[7, 8, 3]), dv(&[1, 1, 0]));
    let mut listed = 0;
    for n in 3..=7 {
        for m in [4, 7] {
            let r = near_max_decompositions(&q, &d, &delta, n, m, Ratio::from_integer(1), DEFAULT_PAIRING_CAP).map_err(|e| e.to_string())?;
            ensure(r.hypotheses_hold, || format!("n = {n}: {:?}", r.notes))?;
            ensure(!r.entries.is_empty(), || format!("n = {n}, M = {m}: nothing listed"))?;
            ensure(r.conclusion_holds(), || format!("n = {n}, M = {m}: {:?}", r.entries))?;
            listed += r.entries.len();
        }
    }
    Ok(format!("{listed} decompositions listed for n = 3..7, M in {{4, 7}}, ε = 1; all have a dominant part with (δ, remainder) = 0"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Hua engine vs thin oracle", c1),
        ("Hua engine vs finite-field census", c2),
        ("Kac-property suite", c3),
        ("stabilization sweep on K3", c4),
        ("bound lemmas on S2", c5),
        ("Crawley-Boevey limit cancellation", c6),
        ("Hilbert-scheme cross-check", c7),
        ("partition identity suite", c8),
        ("weak-(★) conjecture harness", c9),
        ("near-maximal decompositions", c10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({ms} ms): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
