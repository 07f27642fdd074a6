//! The `typel` command line.
//!
//! Every subcommand prints one JSON report on stdout. Exit codes: 0 all checks
//! pass, 2 a check fails, 3 inconclusive, 64 usage or input error, 70 internal.

pub mod report;
pub mod spec;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_traits::{Signed, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde_json::json;

use crate::error::Error;
use crate::exact_moments::{check_moment_comparison, check_r_logconcave, even_pairs, GaussPolyLaw, LatticeDistribution};
use crate::ferro::{
    compare_from_moments, enumerate, ghost_equivalence_check, lee_yang_polynomial, linear_comb_moments, random_system, SpinSystem,
    DEFAULT_STATE_CAP,
};
use crate::gausspoly::{
    abs_moment_closed_zb, abs_moment_quadrature, density_from_law, g_lambda_analysis, moment_bounds_check, schur_concavity_probe,
    zb_monotone_in_b, YSpec,
};
use crate::rational::{binomial_row, format_rational, parse_rational, ratio, to_f64, Rational};
use crate::real::decimal_tolerance;
use crate::seq_tools::{egf_logconcavity_grid, gurvits_scan, logconcave_check, EgfMode, NonnegSequence};
use crate::typel_cert::{classify, lattice_to_polynomial, CircleVerdict, Overall};
use crate::verdict::Verdict;

use report::{exact, precision, Anchor, Record, Report};
use spec::{Payload, SpecFile};

pub const DEFAULT_PRECISION: u32 = 50;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_N: usize = 10;
pub const PRECISION_ENV: &str = "TYPEL_PRECISION";

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Parser)]
#[command(name = "typel", version, about = "Exact and certified moment-comparison checks")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Significant decimal digits for non-exact arithmetic.
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Root-location tolerance, as a rational such as 1/1000000000.
    #[arg(long, global = true)]
    tol: Option<String>,
    /// Directory for report.json and CSV artifacts.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include per-record runtimes (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certify that a lattice distribution is of type L.
    Classify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<String>,
    },
    /// Exact r-log-concavity and moment comparison.
    VerifyMoments {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Spin-system checks by enumeration.
    Ferro {
        #[arg(long)]
        spec: PathBuf,
        /// Coefficients of the linear combination.
        #[arg(long, value_delimiter = ',')]
        a: Vec<String>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Coefficient and exponential-generating-function checks on a sequence.
    Gurvits {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Absolute moments of the normalized Z_b family.
    Zb {
        #[arg(long, value_delimiter = ',')]
        p: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        b: Vec<String>,
        /// Also evaluate p < 3.
        #[arg(long)]
        diagnostic: bool,
    },
    /// Compare E|Σ √b_j X_j + Y|^p at two majorization-ordered weight vectors.
    SchurProbe {
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<String>,
        #[arg(long = "b-prime", value_delimiter = ',', required = true)]
        b_prime: Vec<String>,
        #[arg(long)]
        p: String,
        /// Optional lattice or gausspoly spec for Y.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Run the built-in battery of examples.
    ReportAll,
}

/// Failure before a report could be produced.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoConvergence(_) | Error::Degenerate(_) => EXIT_INTERNAL,
            Error::PrecisionExhausted(_) => EXIT_INCONCLUSIVE,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

struct Ctx {
    digits: u32,
    tol: f64,
    timings: bool,
}

impl Ctx {
    /// Runs `f` and stamps its records with the elapsed time when requested.
    fn group(&self, f: impl FnOnce() -> Result<Vec<Record>, Failure>) -> Result<Vec<Record>, Failure> {
        let start = Instant::now();
        let mut recs = f()?;
        if self.timings {
            let ms = start.elapsed().as_millis() as u64;
            for r in &mut recs {
                r.runtime_ms = Some(ms);
            }
        }
        Ok(recs)
    }
}

fn rec(check: impl Into<String>, anchor: Anchor, verdict: Verdict, value: Option<String>, mode: String) -> Record {
    Record { check: check.into(), anchor, verdict, value, mode, runtime_ms: None }
}

fn parse_list(items: &[String], what: &str) -> Result<Vec<Rational>, Failure> {
    items.iter().map(|s| parse_rational(s.trim()).map_err(|e| Failure::usage(format!("--{what}: {e}")))).collect()
}

fn load_spec(path: &Path) -> Result<(SpecFile, Payload), Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    SpecFile::parse(&src).map_err(|e| Failure::usage(format!("{}:{e}", path.display())))
}

fn write_artifact(out: Option<&Path>, name: &str, contents: &str) -> Result<(), Failure> {
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| Failure { code: EXIT_INTERNAL, message: format!("{}: {e}", dir.display()) })?;
        let path = dir.join(name);
        std::fs::write(&path, contents).map_err(|e| Failure { code: EXIT_INTERNAL, message: format!("{}: {e}", path.display()) })?;
    }
    Ok(())
}

/// Entry point shared by the binary and the tests. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| execute(&cli)));
    match result {
        Ok(Ok((report, artifacts))) => {
            let json = report.to_json();
            let mut written = write_artifact(cli.out.as_deref(), "report.json", &json);
            for (name, body) in &artifacts {
                if written.is_ok() {
                    written = write_artifact(cli.out.as_deref(), name, body);
                }
            }
            if let Err(f) = written {
                let _ = writeln!(stderr, "typel: {}", f.message);
                return f.code;
            }
            let _ = stdout.write_all(json.as_bytes());
            report.exit_code()
        }
        Ok(Err(f)) => {
            let _ = writeln!(stderr, "typel: {}", f.message);
            f.code
        }
        Err(_) => {
            let _ = writeln!(stderr, "typel: internal error");
            EXIT_INTERNAL
        }
    }
}

type Artifacts = Vec<(String, String)>;

fn resolve_digits(cli: &Cli, spec: Option<&SpecFile>) -> Result<u32, Failure> {
    if let Some(d) = cli.precision.or_else(|| spec.and_then(|s| s.options.precision)) {
        return check_digits(d);
    }
    match std::env::var(PRECISION_ENV) {
        Ok(v) => check_digits(v.trim().parse().map_err(|_| Failure::usage(format!("{PRECISION_ENV}={v} is not a digit count")))?),
        Err(_) => Ok(DEFAULT_PRECISION),
    }
}

fn check_digits(d: u32) -> Result<u32, Failure> {
    if (1..=10_000).contains(&d) {
        Ok(d)
    } else {
        Err(Failure::usage(format!("precision {d} must lie in 1..=10000")))
    }
}

fn resolve_tol(cli: &Cli, spec: Option<&SpecFile>) -> Result<f64, Failure> {
    let q = match &cli.tol {
        Some(s) => Some(parse_rational(s).map_err(|e| Failure::usage(format!("--tol: {e}")))?),
        None => spec.and_then(|s| s.options.tolerance.as_ref().map(|q| q.0.clone())),
    };
    match q {
        Some(q) if q.is_positive() => Ok(to_f64(&q)),
        Some(_) => Err(Failure::usage("tolerance must be positive")),
        None => Ok(DEFAULT_TOL),
    }
}

fn ctx(cli: &Cli, spec: Option<&SpecFile>) -> Result<Ctx, Failure> {
    Ok(Ctx { digits: resolve_digits(cli, spec)?, tol: resolve_tol(cli, spec)?, timings: cli.timings })
}

fn execute(cli: &Cli) -> Result<(Report, Artifacts), Failure> {
    match &cli.command {
        Command::Classify { spec, alpha } => {
            let (file, payload) = load_spec(spec)?;
            let Payload::Lattice(d) = payload else {
                return Err(Failure::usage("classify needs a spec of kind `lattice`"));
            };
            let c = ctx(cli, Some(&file))?;
            let alphas = if alpha.is_empty() {
                file.options.alpha.iter().flatten().map(|q| q.0.clone()).collect()
            } else {
                parse_list(alpha, "alpha")?
            };
            let mut report = Report::new("classify");
            let (records, overall, details) = classify_records(&c, &d, &alphas)?;
            for r in records {
                report.push(r);
            }
            report.overall = overall;
            report.details = details;
            Ok((report, vec![("polynomial.csv".into(), lattice_to_polynomial(&d).to_csv())]))
        }
        Command::VerifyMoments { spec, n, p, q } => {
            let (file, payload) = load_spec(spec)?;
            let c = ctx(cli, Some(&file))?;
            let n = n.or(file.options.n).unwrap_or(DEFAULT_N);
            let pair = match (p.or(file.options.p), q.or(file.options.q)) {
                (Some(p), Some(q)) => Some((p, q)),
                (None, None) => None,
                _ => return Err(Failure::usage("give both --p and --q, or neither")),
            };
            let mut report = Report::new("verify-moments");
            let (records, details, csv) = moment_records(&c, &payload, n, pair)?;
            for r in records {
                report.push(r);
            }
            report.details = details;
            Ok((report, vec![("moments.csv".into(), csv)]))
        }
        Command::Ferro { spec, a, p, q } => {
            let (file, payload) = load_spec(spec)?;
            let Payload::SpinSystem { system, weights } = payload else {
                return Err(Failure::usage("ferro needs a spec of kind `spin-system`"));
            };
            let c = ctx(cli, Some(&file))?;
            let weights = if a.is_empty() { weights.unwrap_or_else(|| vec![Rational::from_integer(1.into()); system.n()]) } else { parse_list(a, "a")? };
            let pairs = match (p.or(file.options.p), q.or(file.options.q)) {
                (Some(p), Some(q)) => vec![(p, q)],
                (None, None) => vec![(2, 4), (2, 8), (4, 10)],
                _ => return Err(Failure::usage("give both --p and --q, or neither")),
            };
            let mut report = Report::new("ferro");
            let (records, artifacts) = ferro_records(&c, &system, &weights, &pairs, true)?;
            for r in records {
                report.push(r);
            }
            Ok((report, artifacts))
        }
        Command::Gurvits { spec } => {
            let (file, payload) = load_spec(spec)?;
            let Payload::Sequence { values, .. } = payload else {
                return Err(Failure::usage("gurvits needs a spec of kind `sequence`"));
            };
            let c = ctx(cli, Some(&file))?;
            let mut report = Report::new("gurvits");
            let (records, csv) = gurvits_records(&c, &NonnegSequence::new(values)?)?;
            for r in records {
                report.push(r);
            }
            Ok((report, vec![("gurvits.csv".into(), csv)]))
        }
        Command::Zb { p, b, diagnostic } => {
            let c = ctx(cli, None)?;
            let ps = if p.is_empty() { vec![ratio(3, 1), ratio(7, 2), ratio(4, 1), ratio(5, 1), ratio(15, 2)] } else { parse_list(p, "p")? };
            let bs = if b.is_empty() { quarter_grid() } else { parse_list(b, "b")? };
            let mut report = Report::new("zb");
            let (records, csv) = zb_records(&c, &ps, &bs, *diagnostic)?;
            for r in records {
                report.push(r);
            }
            Ok((report, vec![("zb.csv".into(), csv)]))
        }
        Command::SchurProbe { b, b_prime, p, spec } => {
            let loaded = spec.as_deref().map(load_spec).transpose()?;
            let c = ctx(cli, loaded.as_ref().map(|x| &x.0))?;
            let y = match loaded.map(|x| x.1) {
                None => YSpec::Zero,
                Some(Payload::Lattice(d)) => YSpec::Lattice(d),
                Some(Payload::GaussPoly(l)) => YSpec::GaussPoly(l),
                Some(_) => return Err(Failure::usage("Y must be a lattice or gausspoly spec")),
            };
            let p = parse_rational(p).map_err(|e| Failure::usage(format!("--p: {e}")))?;
            let mut report = Report::new("schur-probe");
            for r in schur_records(&c, &parse_list(b, "b")?, &parse_list(b_prime, "b-prime")?, &p, &y)? {
                report.push(r);
            }
            Ok((report, Vec::new()))
        }
        Command::ReportAll => {
            let c = ctx(cli, None)?;
            report_all(&c, cli.seed.unwrap_or(0))
        }
    }
}

fn quarter_grid() -> Vec<Rational> {
    (0..=4).map(|k| ratio(k, 4)).collect()
}

fn overall_verdict(o: Overall) -> Verdict {
    match o {
        Overall::Certified => Verdict::Holds,
        Overall::Refuted => Verdict::Fails,
        Overall::Inconclusive => Verdict::Inconclusive,
    }
}

fn classify_records(c: &Ctx, d: &LatticeDistribution, alphas: &[Rational]) -> Result<(Vec<Record>, Verdict, serde_json::Value), Failure> {
    let mut out = (Verdict::Na, serde_json::Value::Null);
    let records = c.group(|| {
        let cert = classify(d, alphas, c.tol)?;
        let mut recs = vec![rec("enestrom-kakeya", Anchor::EnestromKakeya, cert.ek, None, exact())];
        for (sv, a) in cert.sv.iter().zip(alphas) {
            let mode = if a.is_integer() { exact() } else { precision(crate::typel_cert::SV_DIGITS) };
            recs.push(rec(format!("sv-alpha={}", sv.alpha), Anchor::SvAlphaCondition, sv.verdict, sv.slack.clone(), mode));
        }
        let on = cert.schur_cohn.verdict == CircleVerdict::AllOnCircle;
        let sc_value = format!("{}{}", if on { "all-on-circle" } else { "not-all-on-circle" }, if cert.schur_cohn.repeated_roots { ", repeated" } else { "" });
        recs.push(rec("schur-cohn", Anchor::UnitCircleExact, if on { Verdict::Holds } else { Verdict::Fails }, Some(sc_value), exact()));
        match &cert.numeric {
            Some(nr) => {
                let v = if nr.max_deviation <= c.tol { Verdict::Holds } else if nr.max_deviation > 10.0 * c.tol { Verdict::Fails } else { Verdict::Inconclusive };
                recs.push(rec("numeric-roots", Anchor::UnitCircleNumeric, v, Some(format!("{:.3e}", nr.max_deviation)), "float-160bit".into()));
            }
            None => recs.push(rec("numeric-roots", Anchor::UnitCircleNumeric, Verdict::Na, Some("constant polynomial".into()), exact())),
        }
        out = (
            overall_verdict(cert.overall),
            json!({
                "certificate": cert,
                "polynomial": lattice_to_polynomial(d).coeffs().iter().map(format_rational).collect::<Vec<_>>(),
            }),
        );
        Ok(recs)
    })?;
    Ok((records, out.0, out.1))
}

fn moment_records(c: &Ctx, payload: &Payload, n: usize, pair: Option<(u32, u32)>) -> Result<(Vec<Record>, serde_json::Value, String), Failure> {
    let seq = payload.moments(n)?;
    let n_eff = seq.len() - 1;
    let pairs = match pair {
        Some((p, q)) => {
            if q as usize > 2 * n_eff {
                return Err(Failure::usage(format!("q = {q} exceeds 2N = {}", 2 * n_eff)));
            }
            vec![(p, q)]
        }
        None => even_pairs(2 * n_eff as u32),
    };
    let records = c.group(|| {
        let lc = check_r_logconcave(&seq);
        let (v, value) = if lc.vacuous {
            (Verdict::Na, Some("fewer than three terms".to_string()))
        } else {
            match lc.result {
                crate::seq_tools::LogConcavity::Holds => (Verdict::Holds, None),
                crate::seq_tools::LogConcavity::FailsAt(i) => (Verdict::Fails, Some(format!("fails at n={i}"))),
                crate::seq_tools::LogConcavity::SupportGap(i) => (Verdict::Fails, Some(format!("support gap at n={i}"))),
            }
        };
        let mut recs = vec![rec("r-log-concavity", Anchor::RLogConcavity, v, value, exact())];
        for (p, q) in &pairs {
            let cmp = check_moment_comparison(&seq, *p, *q)?;
            let v = if cmp.holds() { Verdict::Holds } else { Verdict::Fails };
            recs.push(rec(format!("moment-comparison p={p} q={q}"), Anchor::MomentComparison, v, Some(format_rational(&cmp.slack)), exact()));
        }
        Ok(recs)
    })?;
    let r: Vec<_> = seq.r().iter().enumerate().map(|(i, x)| json!({"n": i, "r": format_rational(x)})).collect();
    let mut csv = String::from("n,r_n\n");
    for (i, x) in seq.r().iter().enumerate() {
        csv.push_str(&format!("{i},{}\n", format_rational(x)));
    }
    Ok((records, json!({ "r": r }), csv))
}

fn ferro_records(c: &Ctx, sys: &SpinSystem, a: &[Rational], pairs: &[(u32, u32)], artifacts: bool) -> Result<(Vec<Record>, Artifacts), Failure> {
    let mode = precision(c.digits);
    let mut files = Vec::new();
    let mut recs = c.group(|| {
        let g = ghost_equivalence_check(sys, c.digits)?;
        let v = if g.passes { Verdict::Holds } else { Verdict::Fails };
        Ok(vec![rec("ghost-equivalence", Anchor::GhostSpin, v, Some(format!("{:.3e}", g.max_discrepancy.to_f64())), mode.clone())])
    })?;
    recs.extend(c.group(|| {
        let ints: Option<Vec<u64>> = a.iter().map(|x| if x.is_integer() { x.to_integer().to_u64() } else { None }).collect();
        let supports_ok = sys.sites().iter().all(|s| s.atoms().iter().all(|(x, _)| x.is_integer()));
        let Some(ints) = ints.filter(|_| supports_ok) else {
            return Ok(vec![rec("lee-yang", Anchor::LeeYang, Verdict::Na, Some("non-integer supports or weights".into()), mode.clone())]);
        };
        let ly = match lee_yang_polynomial(sys, &ints, c.digits) {
            Ok(ly) => ly,
            Err(Error::OutOfRange(m)) => return Ok(vec![rec("lee-yang", Anchor::LeeYang, Verdict::Na, Some(m), mode.clone())]),
            Err(e) => return Err(e.into()),
        };
        if artifacts {
            let mut csv = String::from("k,coefficient\n");
            for (k, x) in ly.coeffs.iter().enumerate() {
                csv.push_str(&format!("{k},{}\n", x.to_decimal(c.digits as usize)));
            }
            files.push(("lee_yang.csv".to_string(), csv));
        }
        if ly.coeffs.len() == 1 {
            return Ok(vec![rec("lee-yang", Anchor::LeeYang, Verdict::Na, Some("constant polynomial".into()), mode.clone())]);
        }
        let nr = ly.roots(c.tol)?;
        let v = if nr.max_deviation <= c.tol { Verdict::Holds } else if nr.max_deviation > 1e-6 { Verdict::Fails } else { Verdict::Inconclusive };
        Ok(vec![rec("lee-yang", Anchor::LeeYang, v, Some(format!("{:.3e}", nr.max_deviation)), mode.clone())])
    })?);
    recs.extend(c.group(|| {
        let q_max = pairs.iter().map(|x| x.1).max().unwrap_or(2);
        for &(p, q) in pairs {
            crate::exact_moments::validate_even_pair(p, q)?;
        }
        let m = linear_comb_moments(sys, a, (q_max / 2) as usize, c.digits)?;
        Ok(pairs
            .iter()
            .map(|&(p, q)| {
                let cmp = compare_from_moments(&m, p, q, c.digits);
                rec(format!("ferro-comparison p={p} q={q}"), Anchor::FerroMomentComparison, cmp.check.verdict, Some(cmp.slack.to_decimal(20)), mode.clone())
            })
            .collect())
    })?);
    if artifacts {
        let table = enumerate(sys, c.digits, DEFAULT_STATE_CAP)?;
        files.insert(0, ("states.csv".to_string(), table.to_csv(c.digits as usize)));
    }
    Ok((recs, files))
}

fn gurvits_records(c: &Ctx, a: &NonnegSequence) -> Result<(Vec<Record>, String), Failure> {
    let mut csv = String::from("n,coefficient\n");
    let recs = c.group(|| {
        let lc = logconcave_check(a);
        let value = match lc {
            crate::seq_tools::LogConcavity::Holds => None,
            crate::seq_tools::LogConcavity::FailsAt(i) => Some(format!("fails at k={i}")),
            crate::seq_tools::LogConcavity::SupportGap(i) => Some(format!("support gap at k={i}")),
        };
        let mut recs = vec![rec("input-log-concavity", Anchor::SequenceLogConcavity, lc.verdict(), value, exact())];
        for (n, v) in gurvits_scan(a) {
            csv.push_str(&format!("{n},{}\n", format_rational(&v)));
            let verdict = if v.is_negative() { Verdict::Fails } else { Verdict::Holds };
            recs.push(rec(format!("gurvits n={n}"), Anchor::GurvitsCoefficients, verdict, Some(format_rational(&v)), exact()));
        }
        let grid: Vec<Rational> = (-4..=4).map(|k: i32| Rational::from_integer(2.into()).pow(k)).collect();
        let egf = egf_logconcavity_grid(a, &grid, EgfMode::Exact)?;
        recs.push(rec("egf-grid 2^-4..2^4", Anchor::EgfLogConcavity, egf.verdict, None, exact()));
        Ok(recs)
    })?;
    Ok((recs, csv))
}

fn zb_records(c: &Ctx, ps: &[Rational], bs: &[Rational], diagnostic: bool) -> Result<(Vec<Record>, String), Failure> {
    let mut csv = String::from("p,b,value\n");
    let recs = c.group(|| {
        let mut recs = Vec::new();
        for p in ps {
            let m = zb_monotone_in_b(p, bs, c.digits, diagnostic)?;
            for (b, v) in &m.values {
                csv.push_str(&format!("{},{},{}\n", format_rational(p), format_rational(b), v.to_decimal(c.digits as usize)));
            }
            let (verdict, value) = if m.diagnostic {
                (Verdict::Na, Some(if m.constant { "constant".to_string() } else { "diagnostic".to_string() }))
            } else {
                (m.verdict(), None)
            };
            recs.push(rec(format!("zb-decreasing p={}", format_rational(p)), Anchor::ZbMonotonicity, verdict, value, precision(c.digits)));
        }
        Ok(recs)
    })?;
    Ok((recs, csv))
}

fn schur_records(c: &Ctx, b: &[Rational], bp: &[Rational], p: &Rational, y: &YSpec) -> Result<Vec<Record>, Failure> {
    c.group(|| {
        let probe = schur_concavity_probe(b, bp, p, y, c.digits)?;
        Ok(vec![rec(
            format!("schur-probe p={}", format_rational(p)),
            Anchor::SchurConcavity,
            probe.check.verdict,
            Some(probe.slack.to_decimal(20)),
            precision(c.digits),
        )])
    })
}

fn prefixed(prefix: &str, recs: Vec<Record>) -> impl Iterator<Item = Record> + '_ {
    recs.into_iter().map(move |mut r| {
        r.check = format!("{prefix}/{}", r.check);
        r
    })
}

fn report_all(c: &Ctx, seed: u64) -> Result<(Report, Artifacts), Failure> {
    let mut report = Report::new("report-all");
    let lattices = [
        ("rademacher", LatticeDistribution::rademacher(), Verdict::Holds),
        ("three-atom 1/4", LatticeDistribution::three_atom(&ratio(1, 4))?, Verdict::Fails),
        ("three-atom 1/2", LatticeDistribution::three_atom(&ratio(1, 2))?, Verdict::Holds),
        ("three-atom 3/4", LatticeDistribution::three_atom(&ratio(3, 4))?, Verdict::Holds),
    ];
    for (name, d, expected) in lattices {
        for r in c.group(|| {
            let (_, overall, _) = classify_records(c, &d, &[Rational::from_integer(1.into())])?;
            // The battery checks that the classifier reaches the known answer.
            let v = if overall == expected { Verdict::Holds } else { Verdict::Fails };
            Ok(vec![rec(format!("classify/{name}"), Anchor::UnitCircleExact, v, Some(overall.as_str().to_string()), exact())])
        })? {
            report.push(r);
        }
    }
    let z1 = Payload::GaussPoly(GaussPolyLaw::z_b(ratio(1, 1))?);
    for r in prefixed("z1", moment_records(c, &z1, 2, Some((2, 4)))?.0) {
        report.push(r);
    }
    for r in prefixed("rademacher", moment_records(c, &Payload::Lattice(LatticeDistribution::rademacher()), 10, None)?.0) {
        report.push(r);
    }
    let row = NonnegSequence::new(binomial_row(8).into_iter().map(Rational::from_integer).collect())?;
    for r in prefixed("binomial-8", gurvits_records(c, &row)?.0) {
        report.push(r);
    }
    for r in zb_records(c, &[ratio(3, 1)], &quarter_grid(), false)?.0 {
        report.push(r);
    }
    for r in c.group(|| {
        let mut recs = Vec::new();
        let tol = decimal_tolerance(c.digits);
        for b in quarter_grid() {
            let d = density_from_law(&GaussPolyLaw::z_b(b.clone())?)?;
            let p = ratio(3, 1);
            let diff = &abs_moment_closed_zb(&p, &b, c.digits, false)? - &abs_moment_quadrature(&d, &p, c.digits)?;
            let v = if diff.mag().to_rational() <= tol { Verdict::Holds } else { Verdict::Fails };
            recs.push(rec(format!("closed-form p=3 b={}", format_rational(&b)), Anchor::ZbClosedForm, v, Some(format!("{:.3e}", diff.mag().to_f64())), precision(c.digits)));
        }
        for p in [ratio(3, 1), ratio(4, 1)] {
            let law = GaussPolyLaw::new(ratio(2, 1), vec![ratio(1, 2), ratio(1, 2)])?;
            let m = moment_bounds_check(&law, &p, c.digits, false)?;
            recs.push(rec(format!("moment-bounds p={}", format_rational(&p)), Anchor::GaussPolyMomentBounds, m.verdict(), Some(m.lower_slack.to_decimal(20)), precision(c.digits)));
        }
        let g = g_lambda_analysis(&ratio(1, 4), &ratio(1, 3), c.digits)?;
        let v = if g.brackets_verified && g.pattern == "+-+" { Verdict::Holds } else { Verdict::Fails };
        recs.push(rec("g-lambda 1/4 1/3", Anchor::GLambdaZeros, v, Some(g.pattern.clone()), precision(c.digits)));
        Ok(recs)
    })? {
        report.push(r);
    }
    for r in schur_records(c, &[ratio(1, 2), ratio(1, 2)], &[ratio(1, 1), ratio(0, 1)], &ratio(3, 1), &YSpec::Zero)? {
        report.push(r);
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let sys = random_system(&mut rng, 3);
    let ones = vec![Rational::from_integer(1.into()); sys.n()];
    for r in prefixed(&format!("random-system seed={seed}"), ferro_records(c, &sys, &ones, &[(2, 4), (2, 8), (4, 10)], false)?.0) {
        report.push(r);
    }
    debug_assert!(report.records.iter().all(|r| !r.check.is_empty() && !r.mode.is_empty()));
    Ok((report, Vec::new()))
}
