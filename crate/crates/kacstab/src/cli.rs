//! The `kacstab` command line. [`run`] is the whole program minus the
//! process boundary, so tests drive it in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use kacstab_core::hua::{kac_polynomial_decomposition_route, DEFAULT_HUA_CAP};
use kacstab_core::nakajima::{hilbert_coefficient_identity_check, hilbert_series, multiplicity_bound_report, NakajimaInstance};
use kacstab_core::oracle::{thin_kac, CensusLimits, CensusMode};
use kacstab_core::quiver::{check_star, generic_character, root_type, DistanceRule, Strictness};
use kacstab_core::stabilize::{
    max_pairing, multi_part_max, near_max_decompositions, stab_bound_mn, SweepMode, SweepSpec, DEFAULT_PAIRING_CAP,
};
use kacstab_core::{ErrorKind, Form, RootType};
use num_rational::Ratio;
use serde_json::json;

use crate::document::{parse_vector, DocumentError, QuiverDocument};
use crate::parallel;
use crate::report::{self, int_json, poly_json, pretty, Format};

#[derive(Debug, Parser)]
#[command(name = "kacstab", version, about = "Kac polynomials of quivers and the stabilization of their coefficients")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Override every enumeration cap.
    #[arg(long, global = true)]
    pub cap: Option<u128>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormArg {
    Euler,
    Cartan,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Form {
        match f {
            FormArg::Euler => Form::Euler,
            FormArg::Cartan => Form::Cartan,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum DistArg {
    /// Components of supp δ may share a neighbouring vertex.
    #[default]
    Proof,
    /// Components of supp δ must be adjacent.
    Literal,
}

impl From<DistArg> for DistanceRule {
    fn from(d: DistArg) -> DistanceRule {
        match d {
            DistArg::Proof => DistanceRule::CommonNeighbour,
            DistArg::Literal => DistanceRule::Adjacent,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Route {
    Log,
    Decomp,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Cohomology,
    Kac,
    Conjecture,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum CensusModeArg {
    #[default]
    Auto,
    Orbit,
    Weighted,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the Euler or Cartan form.
    Form {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        d: String,
        #[arg(long)]
        v: String,
        #[arg(long, value_enum, default_value = "euler")]
        form: FormArg,
    },
    /// Classify d as a real root, an imaginary root, or not a root.
    RootType {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        d: String,
    },
    /// Check condition (★) for δ.
    Star {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        delta: String,
        #[arg(long, value_enum, default_value = "cartan")]
        form: FormArg,
        #[arg(long, conflicts_with = "weak")]
        strict: bool,
        #[arg(long)]
        weak: bool,
        #[arg(long, value_enum, default_value_t)]
        dist_interpretation: DistArg,
    },
    /// Kac polynomial A_d(q).
    Kac {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        d: String,
        #[arg(long, value_enum, default_value = "log")]
        route: Route,
    },
    /// Coefficient sweep of A_{d+nδ} for n in a range.
    Sweep {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        d: String,
        #[arg(long)]
        delta: String,
        /// `A..B` (inclusive).
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, value_enum, default_value = "kac")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t)]
        dist_interpretation: DistArg,
    },
    /// Two-part Harder–Narasimhan data for τ.
    Hn {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        max_parts: Option<u32>,
    },
    /// A generic character for d.
    GenericChi {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        d: String,
    },
    /// Crawley–Boevey quiver for the framing w, as a quiver document.
    Cb {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        w: String,
    },
    /// Sweep of A_{(d+nδ,1)} on the Crawley–Boevey quiver.
    NakajimaSweep {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        w: String,
        #[arg(long)]
        d: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, value_enum, default_value_t)]
        dist_interpretation: DistArg,
    },
    /// Bivariate Hilbert-scheme series, or one partition identity check.
    Hilbert {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        b: Option<u32>,
        /// `NT,NQ`.
        #[arg(long, default_value = "4,4")]
        orders: String,
        /// `k,a`.
        #[arg(long)]
        identity: Option<String>,
    },
    /// Independent ground truth: thin counts or finite-field censuses.
    Oracle {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        d: String,
        #[arg(long, conflicts_with = "census_primes")]
        thin: bool,
        /// Comma-separated primes.
        #[arg(long)]
        census_primes: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        census_mode: CensusModeArg,
    },
    /// Closed-form bound M_n.
    Bound {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        d: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "euler")]
        form: FormArg,
    },
    /// Two-part decompositions of d+nδ with Cartan pairing above −M.
    NearMax {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        d: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: i64,
        /// Rational ε, e.g. `1` or `1/2`.
        #[arg(long, default_value = "1")]
        eps: String,
    },
    /// Conditional root-multiplicity bound for d.
    MultBound {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        d: String,
    },
}

/// An error with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<kacstab_core::Error> for Failure {
    fn from(e: kacstab_core::Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Invalid => 1,
            ErrorKind::Infeasible => 2,
            ErrorKind::Internal => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Core(c) => c.into(),
            other => Failure::invalid(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

/// Parses arguments (including the program name) and runs the command.
/// Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match parallel::with_threads(cli.threads, || execute(&cli)) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(path: &PathBuf) -> Result<(QuiverDocument, kacstab_core::Quiver), Failure> {
    let doc = QuiverDocument::load(path)?;
    let q = doc.to_quiver()?;
    Ok((doc, q))
}

fn parse_range(text: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::invalid(format!("cannot parse {text:?} as a range A..B"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (text, text),
    };
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(Failure::invalid(format!("empty range {text}")));
    }
    Ok((a, b))
}

fn parse_pair(text: &str, what: &str) -> Result<(u32, u32), Failure> {
    match parse_vector(text).ok().as_deref() {
        Some(&[a, b]) => Ok((a, b)),
        _ => Err(Failure::invalid(format!("{what} must be two comma-separated integers, got {text:?}"))),
    }
}

fn parse_ratio(text: &str) -> Result<Ratio<i64>, Failure> {
    let bad = || Failure::invalid(format!("cannot parse {text:?} as a rational number"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
        None => (text.trim().parse().map_err(|_| bad())?, 1i64),
    };
    if d == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(n, d))
}

fn root_name(r: RootType) -> &'static str {
    match r {
        RootType::Real => "real",
        RootType::Imaginary => "imaginary",
        RootType::NotRoot => "not_root",
    }
}

fn census_limits(cap: Option<u128>) -> CensusLimits {
    let mut limits = CensusLimits::default();
    if let Some(c) = cap {
        limits.representation_cap = c;
        limits.group_cap = c;
        limits.endomorphism_cap = c;
    }
    limits
}

fn execute(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    let hua_cap = cli.cap.unwrap_or(DEFAULT_HUA_CAP);
    let pairing_cap = cli.cap.unwrap_or(DEFAULT_PAIRING_CAP);
    let json_or = |v: serde_json::Value, text: String| if fmt == Format::Json { pretty(&v) } else { text };
    match &cli.command {
        Command::Form { quiver, d, v, form } => {
            let (doc, q) = load(quiver)?;
            let (d, v) = (doc.dimension_vector(d)?, doc.dimension_vector(v)?);
            let value = q.form((*form).into(), &d, &v)?;
            Ok(json_or(json!({ "form": report::form_name((*form).into()), "value": value }), format!("{value}\n")))
        }
        Command::RootType { quiver, d } => {
            let (doc, q) = load(quiver)?;
            let d = doc.dimension_vector(d)?;
            let r = root_name(root_type(&q, &d)?);
            Ok(json_or(json!({ "d": d.entries(), "root_type": r }), format!("{r}\n")))
        }
        Command::Star { quiver, delta, form, strict: _, weak, dist_interpretation } => {
            let (doc, q) = load(quiver)?;
            let delta = doc.dimension_vector(delta)?;
            let strictness = if *weak { Strictness::Weak } else { Strictness::Strict };
            let r = check_star(&q, &delta, (*form).into(), strictness, (*dist_interpretation).into())?;
            Ok(json_or(report::star_json(&q, &r), report::star_text(&q, &r)))
        }
        Command::Kac { quiver, d, route } => {
            let (doc, q) = load(quiver)?;
            let d = doc.dimension_vector(d)?;
            let p = match route {
                Route::Log => parallel::kac_polynomial(&q, &d, hua_cap)?,
                Route::Decomp => kac_polynomial_decomposition_route(&q, &d)?,
                Route::Both => {
                    let a = parallel::kac_polynomial(&q, &d, hua_cap)?;
                    let b = kac_polynomial_decomposition_route(&q, &d)?;
                    if a != b {
                        return Err(Failure { code: 3, message: format!("routes disagree: {a} vs {b}") });
                    }
                    a
                }
            };
            Ok(json_or(json!({ "d": d.entries(), "kac_polynomial": poly_json(&p) }), format!("{p}\n")))
        }
        Command::Sweep { quiver, d, delta, n, depth, mode, dist_interpretation } => {
            let (doc, q) = load(quiver)?;
            let (d, delta) = (doc.dimension_vector(d)?, doc.dimension_vector(delta)?);
            let (a, b) = parse_range(n)?;
            let mode = match mode {
                ModeArg::Cohomology => SweepMode::Cohomology,
                ModeArg::Kac => SweepMode::Kac,
                ModeArg::Conjecture => SweepMode::Conjecture,
            };
            let mut spec = SweepSpec::new(q, d, delta, mode, a, b, *depth);
            spec.rule = (*dist_interpretation).into();
            spec.hua_cap = hua_cap;
            spec.pairing_cap = pairing_cap;
            eprintln!("sweep: Hua grid up to {}", spec.target());
            Ok(report::encode_sweep(&parallel::sweep(&spec)?, fmt))
        }
        Command::Hn { quiver, tau, max_parts } => {
            let (doc, q) = load(quiver)?;
            let tau = doc.dimension_vector(tau)?;
            let (best, arg) = max_pairing(&q, &tau, Form::Euler, pairing_cap)?;
            let multi = multi_part_max(&q, &tau, Form::Euler, *max_parts, pairing_cap)?;
            let v = json!({
                "tau": tau.entries(),
                "min_codim": -best,
                "max_pairing": best,
                "argmax": arg.entries(),
                "multi_part_max": multi,
            });
            let text = format!("min codim {}\nmax pairing {best} at {arg}\nmulti-part max {multi}\n", -best);
            Ok(json_or(v, text))
        }
        Command::GenericChi { quiver, d } => {
            let (doc, q) = load(quiver)?;
            let d = doc.dimension_vector(d)?;
            let chi = generic_character(&q, &d)?;
            Ok(json_or(json!({ "d": d.entries(), "character": chi.weights() }), format!("{chi}\n")))
        }
        Command::Cb { quiver, w } => {
            let (doc, q) = load(quiver)?;
            let w = doc.framing(w)?;
            Ok(QuiverDocument::from_quiver(&q.crawley_boevey(&w)?).to_json() + "\n")
        }
        Command::NakajimaSweep { quiver, w, d, delta, n, depth, dist_interpretation } => {
            let (doc, q) = load(quiver)?;
            let (w, d, delta) = (doc.framing(w)?, doc.dimension_vector(d)?, doc.dimension_vector(delta)?);
            let (a, b) = parse_range(n)?;
            let inst = NakajimaInstance::new(q, w, d, delta)?;
            let rule: DistanceRule = (*dist_interpretation).into();
            let (mode, _) = inst.mode(rule)?;
            eprintln!("nakajima-sweep: statement {mode:?}");
            Ok(report::encode_sweep(&parallel::nakajima_sweep(&inst, a, b, *depth, rule, hua_cap)?, fmt))
        }
        Command::Hilbert { r, b, orders, identity } => {
            if let Some(ka) = identity {
                let (k, a) = parse_pair(ka, "--identity")?;
                let b = b.unwrap_or(r.saturating_sub(1));
                let c = hilbert_coefficient_identity_check(b, k, a);
                let v = json!({
                    "b": b, "k": k, "a": a,
                    "lhs": int_json(&c.lhs), "rhs": int_json(&c.rhs), "equal": c.equal,
                    "limit": c.limit.as_ref().map(int_json), "passes": c.passes(),
                });
                let limit = c.limit.as_ref().map(|l| format!(", limit {l}")).unwrap_or_default();
                return Ok(json_or(v, format!("lhs {} rhs {}{limit}: {}\n", c.lhs, c.rhs, if c.passes() { "pass" } else { "FAIL" })));
            }
            let (nt, nq) = parse_pair(orders, "--orders")?;
            let h = hilbert_series(*r, *b, nt as usize, nq as usize)?;
            let grid: Vec<Vec<serde_json::Value>> = (0..=nt as usize)
                .map(|i| (0..=nq as usize).map(|j| h.int_coeff(i, j).map(|x| int_json(&x)).unwrap_or(serde_json::Value::Null)).collect())
                .collect();
            let mut text = String::new();
            for (i, row) in grid.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(text, "t^{i}: {}", cells.join(" "));
            }
            Ok(json_or(json!({ "r": r, "b": b.unwrap_or(r.saturating_sub(1)), "coefficients": grid }), text))
        }
        Command::Oracle { quiver, d, thin, census_primes, census_mode } => {
            let (doc, q) = load(quiver)?;
            let d = doc.dimension_vector(d)?;
            if *thin || census_primes.is_none() {
                let p = thin_kac(&q, &d)?;
                return Ok(json_or(json!({ "d": d.entries(), "thin_kac": poly_json(&p) }), format!("{p}\n")));
            }
            let primes: Vec<u64> = parse_vector(census_primes.as_deref().unwrap_or_default())
                .map_err(|e| Failure::invalid(e.to_string()))?
                .into_iter()
                .map(u64::from)
                .collect();
            let mode = match census_mode {
                CensusModeArg::Auto => CensusMode::Auto,
                CensusModeArg::Orbit => CensusMode::Orbit,
                CensusModeArg::Weighted => CensusMode::Weighted,
            };
            let (p, results) = parallel::brute_force_kac(&q, &d, &primes, mode, census_limits(cli.cap))?;
            let v = json!({
                "d": d.entries(),
                "brute_force_kac": poly_json(&p),
                "censuses": results.iter().map(report::census_json).collect::<Vec<_>>(),
            });
            let mut text = String::new();
            for r in &results {
                let _ = writeln!(text, "p = {}: {} absolutely indecomposable", r.prime, r.absolutely_indecomposable);
            }
            let _ = writeln!(text, "{p}");
            Ok(json_or(v, text))
        }
        Command::Bound { quiver, d, delta, n, form } => {
            let (doc, q) = load(quiver)?;
            let (d, delta) = (doc.dimension_vector(d)?, doc.dimension_vector(delta)?);
            let m = stab_bound_mn(&q, &d, &delta, *n, (*form).into())?;
            Ok(json_or(json!({ "n": n, "form": report::form_name((*form).into()), "bound": m.to_string() }), format!("{m}\n")))
        }
        Command::NearMax { quiver, d, delta, n, m, eps } => {
            let (doc, q) = load(quiver)?;
            let (d, delta) = (doc.dimension_vector(d)?, doc.dimension_vector(delta)?);
            let r = near_max_decompositions(&q, &d, &delta, *n, *m, parse_ratio(eps)?, pairing_cap)?;
            let mut text = String::new();
            for e in &r.entries {
                let _ = writeln!(
                    text,
                    "{} + {}: pairing {}, dominant {}, remainder pairing {}",
                    e.parts[0],
                    e.parts[1],
                    e.pairing,
                    e.dominant.map(|k| e.parts[k].to_string()).unwrap_or_else(|| "-".into()),
                    e.remainder_pairing.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
                );
            }
            let _ = writeln!(text, "conclusion {}", if r.conclusion_holds() { "holds" } else { "fails" });
            Ok(json_or(report::near_max_json(&r), text))
        }
        Command::MultBound { quiver, d } => {
            let (doc, q) = load(quiver)?;
            let d = doc.dimension_vector(d)?;
            let r = multiplicity_bound_report(&q, &d)?;
            Ok(json_or(
                json!({ "d": d.entries(), "half_norm": r.half_norm, "bound": int_json(&r.bound), "conditional": true }),
                format!("half norm {}, bound {} (conditional)\n", r.half_norm, r.bound),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_kinds_map_to_exit_codes() {
        assert_eq!(Failure::from(kacstab_core::Error::NotAPolynomial).code, 3);
        assert_eq!(Failure::from(kacstab_core::Error::Internal("x".into())).code, 3);
        assert_eq!(Failure::from(DocumentError::Core(kacstab_core::Error::NotAPolynomial)).code, 3);
    }
}
