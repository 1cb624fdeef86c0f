//! Text, JSON and CSV encodings of computed reports.

use std::fmt::Write as _;

use kacstab_core::oracle::{CensusMode, CensusResult};
use kacstab_core::quiver::{DistanceRule, StarReport, Strictness};
use kacstab_core::stabilize::{Certifier, Expectation, NearMaxReport, SweepMode, SweepReport};
use kacstab_core::{DimVector, Form, Int, QPolynomial, Quiver};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::document::QuiverDocument;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
pub fn int_json(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn poly_json(p: &QPolynomial) -> Value {
    json!({
        "text": p.to_string(),
        "coefficients": p.coeffs().iter().map(int_json).collect::<Vec<_>>(),
        "degree": p.degree(),
    })
}

pub fn form_name(f: Form) -> &'static str {
    match f {
        Form::Euler => "euler",
        Form::Cartan => "cartan",
    }
}

pub fn mode_name(m: SweepMode) -> &'static str {
    match m {
        SweepMode::Cohomology => "cohomology",
        SweepMode::Kac => "kac",
        SweepMode::Conjecture => "conjecture",
    }
}

fn expectation_name(e: Expectation) -> &'static str {
    match e {
        Expectation::Equal => "equal",
        Expectation::AtMost => "at_most",
        Expectation::Unverified => "unverified",
    }
}

fn certifier_name(c: Option<Certifier>) -> Value {
    match c {
        Some(Certifier::CartanDecomposition) => json!("cartan_decomposition"),
        Some(Certifier::EulerBound) => json!("euler_bound"),
        None => Value::Null,
    }
}

pub fn rule_name(r: DistanceRule) -> &'static str {
    match r {
        DistanceRule::CommonNeighbour => "proof",
        DistanceRule::Adjacent => "literal",
    }
}

fn joined<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn certified_indices(cert: &[bool]) -> Vec<usize> {
    cert.iter().enumerate().filter(|(_, &c)| c).map(|(i, _)| i).collect()
}

pub fn sweep_json(r: &SweepReport) -> Value {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "n": row.n,
                "tau": row.tau.entries(),
                "indivisible": row.indivisible,
                "deg": row.degree(),
                "coefficients": row.coefficients.as_ref().map(|c| c.iter().map(int_json).collect::<Vec<_>>()),
                "polynomial": row.polynomial.as_ref().map(|p| p.to_string()),
                "certified": certified_indices(&row.certifies),
                "bound": row.bound.map(|b| b.to_string()),
                "decomposition_max": row.decomposition_max,
            })
        })
        .collect();
    let summary: Vec<Value> = r
        .summary
        .iter()
        .map(|s| {
            json!({
                "index": s.index,
                "stabilized": s.stabilized.as_ref().map(int_json),
                "stabilization_index": s.stabilization_index,
                "certified_threshold": s.certified_threshold,
                "limit": int_json(&s.limit),
                "verdict": s.verdict.as_str(),
            })
        })
        .collect();
    json!({
        "quiver": serde_json::to_value(QuiverDocument::from_quiver(&r.quiver)).expect("serializable"),
        "d": r.d.entries(),
        "delta": r.delta.entries(),
        "mode": mode_name(r.mode),
        "n_start": r.n_start,
        "n_end": r.n_end,
        "depth": r.depth,
        "hypotheses": {
            "holds": r.hypotheses.holds,
            "expectation": expectation_name(r.hypotheses.expectation),
            "certifier": certifier_name(r.hypotheses.certifier),
            "notes": r.hypotheses.notes,
        },
        "rows": rows,
        "summary": summary,
        "flags": r.flags,
    })
}

/// Data rows first, then the rows `stabilized`, `limit`,
/// `stabilization_index` and `certified_threshold`.
pub fn sweep_csv(r: &SweepReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["n".to_string(), "tau".into(), "indivisible".into(), "deg".into()];
    header.extend((0..=r.depth).map(|i| format!("a_{i}")));
    header.push("certified".into());
    header.push("verdict".into());
    w.write_record(&header).expect("in-memory write");
    for row in &r.rows {
        let mut rec = vec![
            row.n.to_string(),
            joined(row.tau.entries(), ";"),
            row.indivisible.to_string(),
            row.degree().map(|d| d.to_string()).unwrap_or_default(),
        ];
        match &row.coefficients {
            Some(c) => rec.extend(c.iter().map(|x| x.to_string())),
            None => rec.extend((0..=r.depth).map(|_| String::new())),
        }
        rec.push(joined(certified_indices(&row.certifies), ";"));
        rec.push(String::new());
        w.write_record(&rec).expect("in-memory write");
    }
    let opt = |x: Option<String>| x.unwrap_or_default();
    let summary_rows: [(&str, Vec<String>); 4] = [
        ("stabilized", r.summary.iter().map(|s| opt(s.stabilized.as_ref().map(|v| v.to_string()))).collect()),
        ("limit", r.summary.iter().map(|s| s.limit.to_string()).collect()),
        ("stabilization_index", r.summary.iter().map(|s| opt(s.stabilization_index.map(|v| v.to_string()))).collect()),
        ("certified_threshold", r.summary.iter().map(|s| opt(s.certified_threshold.map(|v| v.to_string()))).collect()),
    ];
    for (label, values) in summary_rows {
        let mut rec = vec![label.to_string(), String::new(), String::new(), String::new()];
        rec.extend(values);
        rec.push(String::new());
        rec.push(if label == "stabilized" { joined(r.summary.iter().map(|s| s.verdict.as_str()), ";") } else { String::new() });
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn sweep_text(r: &SweepReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "sweep ({}) d = {}, δ = {}, n = {}..{}", mode_name(r.mode), r.d, r.delta, r.n_start, r.n_end);
    let _ = writeln!(
        s,
        "hypotheses: {} (expect {})",
        if r.hypotheses.holds { "hold" } else { "fail" },
        expectation_name(r.hypotheses.expectation)
    );
    for note in &r.hypotheses.notes {
        let _ = writeln!(s, "  note: {note}");
    }
    for row in &r.rows {
        match &row.polynomial {
            None => {
                let _ = writeln!(s, "n = {:>3}  τ = {}  skipped (divisible)", row.n, row.tau);
            }
            Some(p) => {
                let coeffs = joined(row.coefficients.as_ref().expect("computed"), ", ");
                let _ = writeln!(s, "n = {:>3}  τ = {}  top [{coeffs}]  certified [{}]  A = {p}", row.n, row.tau, joined(certified_indices(&row.certifies), ","));
            }
        }
    }
    for c in &r.summary {
        let show = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "a_{}: stabilized {} from n = {}, certified from {}, limit {}, {}",
            c.index,
            show(c.stabilized.as_ref().map(|v| v.to_string())),
            show(c.stabilization_index.map(|v| v.to_string())),
            show(c.certified_threshold.map(|v| v.to_string())),
            c.limit,
            c.verdict.as_str()
        );
    }
    for f in &r.flags {
        let _ = writeln!(s, "FLAG: {f}");
    }
    s
}

pub fn encode_sweep(r: &SweepReport, format: Format) -> String {
    match format {
        Format::Text => sweep_text(r),
        Format::Json => pretty(&sweep_json(r)),
        Format::Csv => sweep_csv(r),
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn star_json(q: &Quiver, r: &StarReport) -> Value {
    let labels = q.labels();
    json!({
        "form": form_name(r.form),
        "strictness": match r.strictness { Strictness::Strict => "strict", Strictness::Weak => "weak" },
        "distance_rule": rule_name(r.rule),
        "vertices": r.vertices.iter().map(|v| json!({
            "vertex": labels[v.vertex],
            "out_pairing": v.out_pairing,
            "in_pairing": v.in_pairing,
            "out_ok": v.out_ok,
            "in_ok": v.in_ok,
        })).collect::<Vec<_>>(),
        "components": r.components.components.iter().map(|c| c.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "distances": r.components.distances,
        "inequalities_ok": r.inequalities_ok(),
        "components_ok": r.components_ok,
        "holds": r.overall,
    })
}

pub fn star_text(q: &Quiver, r: &StarReport) -> String {
    let labels = q.labels();
    let mut s = String::new();
    for v in &r.vertices {
        let _ = writeln!(
            s,
            "{}: out {} {}, in {} {}",
            labels[v.vertex],
            v.out_pairing,
            if v.out_ok { "ok" } else { "FAILS" },
            v.in_pairing,
            if v.in_ok { "ok" } else { "FAILS" }
        );
    }
    let comps = joined(r.components.components.iter().map(|c| format!("{{{}}}", joined(c.iter().map(|&i| &labels[i]), ","))), " ");
    let _ = writeln!(s, "components: {comps} ({})", if r.components_ok { "ok" } else { "too far apart" });
    let _ = writeln!(s, "(★) {}", if r.overall { "holds" } else { "fails" });
    s
}

pub fn census_json(r: &CensusResult) -> Value {
    json!({
        "prime": r.prime,
        "mode": match r.mode { CensusMode::Orbit => "orbit", CensusMode::Weighted => "weighted", CensusMode::Auto => "auto" },
        "total_representations": r.total_representations.to_string(),
        "enumerated": r.enumerated.to_string(),
        "classes": r.classes.map(|x| x.to_string()),
        "indecomposable": r.indecomposable.map(|x| x.to_string()),
        "absolutely_indecomposable": r.absolutely_indecomposable.to_string(),
        "orbit_size_sum": r.orbit_size_sum.map(|x| x.to_string()),
        "elapsed_ms": r.elapsed_ms,
    })
}

pub fn near_max_json(r: &NearMaxReport) -> Value {
    json!({
        "tau": r.tau.entries(),
        "hypotheses_hold": r.hypotheses_hold,
        "notes": r.notes,
        "conclusion_holds": r.conclusion_holds(),
        "entries": r.entries.iter().map(|e| json!({
            "parts": [e.parts[0].entries(), e.parts[1].entries()],
            "pairing": e.pairing,
            "dominant": e.dominant,
            "remainder_pairing": e.remainder_pairing,
        })).collect::<Vec<_>>(),
    })
}

pub fn dim_json(d: &DimVector) -> Value {
    json!(d.entries())
}
