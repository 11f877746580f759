//! The `dioph` command line: `construct`, `analyze` and `verify`.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input, 3 a resource guard
//! (depth or size limit) stopped the computation.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::approx::{brute_force_minima_with, plot_csv, summarize, to_csv, SearchOptions, Summary, Which};
use crate::construction::file::{run_from_json, run_to_json, write_run};
use crate::construction::heights::DEFAULT_DIGIT_LIMIT;
use crate::construction::{run_construction_with, ConstructionParams, FiniteParams, RunOptions, SeedChoice};
use crate::error::{ConstructionError, Error, ParseError, SearchError};
use crate::num::{parse_rational, Enclosure, ExtReal};
use crate::target::parse_target;
use crate::verify::{certify_run, to_json, verify_quadruple, ExponentQuadruple, RunCheckOptions};

/// Environment variable holding the default decimal precision of targets.
pub const PRECISION_ENV: &str = "DIOPH_PRECISION";
pub const DEFAULT_PRECISION: u32 = 60;
pub const DEFAULT_MAX_DEPTH: usize = 12;
pub const DEFAULT_WINDOW: usize = 10;
pub const SUMMARY_SCHEMA: &str = "dioph-summary/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    CheckFailed = 1,
    BadInput = 2,
    ResourceGuard = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    fn bad(message: impl Into<String>) -> Self {
        CliError { exit: Exit::BadInput, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit = match &e {
            Error::Construction(ConstructionError::DigitBudget { .. }) => Exit::ResourceGuard,
            Error::Construction(ConstructionError::CertificateViolation(_)) => Exit::CheckFailed,
            Error::Search(SearchError::HmaxTooLarge(_)) => Exit::ResourceGuard,
            _ => Exit::BadInput,
        };
        let mut message = e.to_string();
        match &e {
            Error::Search(SearchError::TargetTooCoarse) => {
                message.push_str("; use a sharper target (more digits or a deeper expansion)")
            }
            Error::Search(SearchError::RationalDependence { .. }) => {
                message.push_str("; 1, alpha, beta are linearly dependent over Q, so the exponents are not defined")
            }
            _ => {}
        }
        CliError { exit, message }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        Error::from(e).into()
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        Error::from(e).into()
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dioph",
    version,
    about = "Approximation exponents of points in the plane: constructions, search and checks"
)]
pub struct Cli {
    /// TOML file whose settings override the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a certified construction run and write it to a file.
    Construct(ConstructArgs),
    /// Search the best approximations of a target and estimate its exponents.
    Analyze(AnalyzeArgs),
    /// Re-check a stored run, or test a quadruple against the transference inequalities.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Finite,
    VInfinite,
    AllInfinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeedArg {
    Standard,
    Swapped,
}

impl From<SeedArg> for SeedChoice {
    fn from(s: SeedArg) -> Self {
        match s {
            SeedArg::Standard => SeedChoice::Standard,
            SeedArg::Swapped => SeedChoice::Swapped,
        }
    }
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum, default_value_t = Mode::Finite)]
    pub mode: Mode,
    #[arg(long)]
    pub w: Option<String>,
    #[arg(long)]
    pub tau0: Option<String>,
    #[arg(long)]
    pub tau1: Option<String>,
    #[arg(long)]
    pub sigma: Option<String>,
    /// Prescribed v' in v-infinite mode (`inf` allowed).
    #[arg(long = "v-prime")]
    pub v_prime: Option<String>,
    #[arg(long, default_value = "20")]
    pub h1: String,
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    #[arg(long, value_enum)]
    pub seed: Option<SeedArg>,
    /// Run file to write (default `run.json`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest number of decimal digits allowed in any coordinate.
    #[arg(long = "digit-limit")]
    pub digit_limit: Option<u64>,
    #[arg(long = "max-depth")]
    pub max_depth: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// `sqrt:p,q`, `fib:depth`, `run:<file>#n,k` or `lit:a,b,radius`.
    #[arg(long)]
    pub target: String,
    #[arg(long, default_value_t = 1000)]
    pub hmax: u64,
    #[arg(long, default_value = "L")]
    pub which: Which,
    /// Number of trailing records the summary uses.
    #[arg(long)]
    pub window: Option<usize>,
    /// Trace CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Two-column plot data; a JSON summary is written beside it.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// Summary JSON (defaults to the plot path with a `.json` extension).
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Decimal digits of algebraic targets.
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "quad", required_unless_present = "quad")]
    pub run: Option<PathBuf>,
    /// `v,v',w,w'` with rationals or `inf`.
    #[arg(long)]
    pub quad: Option<String>,
    /// Report JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Norm bound of the blind scan for best approximations outside the run; 0 disables it.
    #[arg(long = "scan-hmax")]
    pub scan_hmax: Option<u64>,
}

/// Settings read from `--config`; any field given here wins over the flag.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct CliConfig {
    pub precision: Option<u32>,
    pub max_depth: Option<usize>,
    pub digit_limit: Option<u64>,
    pub window: Option<usize>,
    pub workers: Option<usize>,
    pub scan_hmax: Option<u64>,
    pub seed: Option<SeedChoice>,
    pub out: Option<PathBuf>,
    pub plot: Option<PathBuf>,
    pub summary: Option<PathBuf>,
}

impl CliConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::bad(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::bad(format!("config {}: {e}", path.display())))
    }

    fn check(&self) -> Result<(), CliError> {
        let positive = [
            ("precision", self.precision.map(u64::from)),
            ("max-depth", self.max_depth.map(|x| x as u64)),
            ("digit-limit", self.digit_limit),
            ("window", self.window.map(|x| x as u64)),
            ("workers", self.workers.map(|x| x as u64)),
        ];
        for (name, value) in positive {
            if value == Some(0) {
                return Err(CliError::bad(format!("{name} must be positive")));
            }
        }
        Ok(())
    }
}

fn writable(path: &Path) -> Result<(), CliError> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if !parent.is_dir() {
        return Err(CliError::bad(format!("cannot write {}: {} is not a directory", path.display(), parent.display())));
    }
    if path.is_dir() {
        return Err(CliError::bad(format!("cannot write {}: it is a directory", path.display())));
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.display().to_string(), source }.into())
}

/// Shortest round-trip form, identical to what the JSON files contain.
fn num(x: f64) -> String {
    match x {
        f64::INFINITY => "inf".into(),
        f64::NEG_INFINITY => "-inf".into(),
        _ => serde_json::to_string(&x).unwrap_or_else(|_| x.to_string()),
    }
}

fn enc(e: &Option<Enclosure>) -> String {
    match e {
        Some(e) => format!("[{}, {}]", num(e.lo), num(e.hi)),
        None => "n/a".into(),
    }
}

fn rational_arg(name: &str, v: &Option<String>) -> Result<num_rational::BigRational, CliError> {
    let s = v.as_deref().ok_or_else(|| CliError::bad(format!("finite mode needs --{name}")))?;
    parse_rational(s).map_err(|e| CliError::bad(format!("--{name}: {e}")))
}

fn construct_params(a: &ConstructArgs) -> Result<ConstructionParams, CliError> {
    Ok(match a.mode {
        Mode::Finite => ConstructionParams::Finite(FiniteParams::new(
            rational_arg("w", &a.w)?,
            rational_arg("tau0", &a.tau0)?,
            rational_arg("tau1", &a.tau1)?,
            rational_arg("sigma", &a.sigma)?,
        )),
        Mode::VInfinite => {
            let w = rational_arg("w", &a.w)?;
            let vp = a.v_prime.as_deref().ok_or_else(|| CliError::bad("v-infinite mode needs --v-prime"))?;
            let v_prime: ExtReal = vp.parse().map_err(|e: ParseError| CliError::bad(format!("--v-prime: {e}")))?;
            ConstructionParams::VInfinite { w, v_prime }
        }
        Mode::AllInfinite => ConstructionParams::AllInfinite,
    })
}

fn describe(params: &ConstructionParams) -> String {
    match params {
        ConstructionParams::Finite(p) => {
            format!("finite: w = {}, tau0 = {}, tau1 = {}, sigma = {}", p.w, p.tau0, p.tau1, p.sigma)
        }
        ConstructionParams::VInfinite { w, v_prime } => format!("v-infinite: w = {w}, v' = {v_prime}"),
        ConstructionParams::AllInfinite => "all-infinite".into(),
    }
}

pub fn cmd_construct(a: &ConstructArgs, cfg: &CliConfig, out: &mut dyn Write) -> Result<Exit, CliError> {
    let params = construct_params(a)?;
    params.validate()?;
    let h1: BigInt = a.h1.trim().parse().map_err(|_| CliError::bad(format!("--h1: not an integer: {:?}", a.h1)))?;
    let max_depth = cfg.max_depth.or(a.max_depth).unwrap_or(DEFAULT_MAX_DEPTH);
    if a.depth > max_depth {
        return Err(CliError {
            exit: Exit::ResourceGuard,
            message: format!("depth {} exceeds the limit {max_depth} (raise it with --max-depth)", a.depth),
        });
    }
    let digit_limit = cfg.digit_limit.or(a.digit_limit).unwrap_or(DEFAULT_DIGIT_LIMIT);
    if digit_limit == 0 {
        return Err(CliError::bad("digit-limit must be positive"));
    }
    let seed = cfg.seed.or(a.seed.map(Into::into)).unwrap_or_default();
    let path = cfg.out.clone().or(a.out.clone()).unwrap_or_else(|| PathBuf::from("run.json"));
    writable(&path)?;

    let run = run_construction_with(&params, &h1, a.depth, &RunOptions { seed, digit_limit })?;
    write_run(&path, &run)?;

    let held = run.certificates.iter().filter(|c| c.holds).count();
    writeln!(out, "mode {}", describe(&run.params)).ok();
    writeln!(out, "h1 = {}, depth = {}, levels {}..{}", run.h1, run.depth, run.first_level(), run.last_level().n).ok();
    writeln!(out, "predicted Ω = {}", run.predicted).ok();
    writeln!(out, "certificates: {held} of {} hold", run.certificates.len()).ok();
    writeln!(out, "wrote {}", path.display()).ok();
    Ok(Exit::Ok)
}

/// Summary exponents written beside the plot data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryDocument {
    pub schema: String,
    pub target: String,
    pub hmax: u64,
    pub records: usize,
    pub summary: Summary,
    /// Absent when the enclosure is unbounded.
    pub omega_width: Option<f64>,
    pub omega_hat_width: Option<f64>,
    /// Known value of ω̂ for Fibonacci targets and the relative deviation from it.
    pub reference_omega_hat: Option<f64>,
    pub deviation: Option<f64>,
}

/// ω̂ of the Fibonacci continued-fraction point: `(3+√5)/2` for the linear
/// form and `(√5−1)/2` for simultaneous approximation.
pub fn fibonacci_reference(which: Which) -> f64 {
    let s5 = 5f64.sqrt();
    match which {
        Which::L => (3.0 + s5) / 2.0,
        Which::M => (s5 - 1.0) / 2.0,
    }
}

pub fn cmd_analyze(
    a: &AnalyzeArgs,
    cfg: &CliConfig,
    env_precision: Option<&str>,
    out: &mut dyn Write,
) -> Result<Exit, CliError> {
    let env = match env_precision {
        Some(s) => Some(
            s.trim()
                .parse::<u32>()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| CliError::bad(format!("{PRECISION_ENV} must be a positive integer, got {s:?}")))?,
        ),
        None => None,
    };
    let precision = cfg.precision.or(a.precision).or(env).unwrap_or(DEFAULT_PRECISION);
    let window = cfg.window.or(a.window).unwrap_or(DEFAULT_WINDOW);
    let workers = cfg.workers.or(a.workers);
    if precision == 0 || window == 0 || workers == Some(0) {
        return Err(CliError::bad("precision, window and workers must be positive"));
    }
    if a.hmax < 2 {
        return Err(CliError::bad(format!("--hmax must be at least 2, got {}", a.hmax)));
    }
    let csv_path = cfg.out.clone().or(a.out.clone());
    let plot_path = cfg.plot.clone().or(a.plot.clone());
    let summary_path =
        cfg.summary.clone().or(a.summary.clone()).or_else(|| plot_path.as_ref().map(|p| p.with_extension("json")));
    for p in [&csv_path, &plot_path, &summary_path].into_iter().flatten() {
        writable(p)?;
    }

    let target = parse_target(&a.target, precision)?;
    let trace = brute_force_minima_with(&target, a.hmax, a.which, &SearchOptions { workers })?;
    let summary = summarize(&trace, window);
    let is_fib = a.target.trim_start().starts_with("fib:");
    let reference = is_fib.then(|| fibonacci_reference(a.which));
    let deviation = match (reference, summary.omega_hat) {
        (Some(r), Some(e)) => Some((e.mid() - r).abs() / r),
        _ => None,
    };
    let doc = SummaryDocument {
        schema: SUMMARY_SCHEMA.into(),
        target: a.target.clone(),
        hmax: a.hmax,
        records: trace.records.len(),
        omega_width: summary.omega.map(|e| e.width()).filter(|w| w.is_finite()),
        omega_hat_width: summary.omega_hat.map(|e| e.width()).filter(|w| w.is_finite()),
        summary,
        reference_omega_hat: reference,
        deviation,
    };

    if let Some(p) = &csv_path {
        write_file(p, &to_csv(&trace))?;
    }
    if let Some(p) = &plot_path {
        write_file(p, &plot_csv(&trace))?;
    }
    if let Some(p) = &summary_path {
        write_file(p, &to_json(&doc)?)?;
    }

    let s = &doc.summary;
    writeln!(out, "target {} = {}", a.target, target).ok();
    writeln!(
        out,
        "{}: {} records up to H = {}, {} certified, window {}",
        s.which, doc.records, doc.hmax, s.certified_records, s.window
    )
    .ok();
    writeln!(
        out,
        "summary {}: omega_hat in {} (width {}), omega in {} (width {})",
        s.which,
        enc(&s.omega_hat),
        doc.omega_hat_width.map(num).unwrap_or_else(|| "n/a".into()),
        enc(&s.omega),
        doc.omega_width.map(num).unwrap_or_else(|| "n/a".into()),
    )
    .ok();
    if let (Some(r), Some(d)) = (doc.reference_omega_hat, doc.deviation) {
        writeln!(out, "fibonacci reference omega_hat {}, relative deviation {}", num(r), num(d)).ok();
    }
    for p in [&csv_path, &plot_path, &summary_path].into_iter().flatten() {
        writeln!(out, "wrote {}", p.display()).ok();
    }
    Ok(Exit::Ok)
}

pub fn cmd_verify(a: &VerifyArgs, cfg: &CliConfig, out: &mut dyn Write) -> Result<Exit, CliError> {
    let report_path = cfg.out.clone().or(a.out.clone());
    if let Some(p) = &report_path {
        writable(p)?;
    }
    let (text, pass) = if let Some(q) = &a.quad {
        let quad: ExponentQuadruple = q.parse().map_err(|e: ParseError| CliError::bad(e.to_string()))?;
        let report = verify_quadruple(&quad);
        writeln!(out, "quadruple {}", report.quadruple).ok();
        for c in &report.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{mark} {} (residual {})", c.name, c.residual).ok();
        }
        (to_json(&report)?, report.pass)
    } else {
        let path = a.run.as_ref().expect("clap enforces --run or --quad");
        let raw = std::fs::read_to_string(path)
            .map_err(|source| CliError::from(Error::Io { path: path.display().to_string(), source }))?;
        let run = run_from_json(&raw)?;
        let scan_hmax = cfg.scan_hmax.or(a.scan_hmax).unwrap_or(RunCheckOptions::default().scan_hmax);
        let mut report = certify_run(&run, &RunCheckOptions { scan_hmax });
        let round_trip = run_to_json(&run)? == raw;
        report.file_round_trip = Some(round_trip);
        report.pass &= round_trip;

        let held = report.certificates.iter().filter(|c| c.holds).count();
        writeln!(out, "certificates: {held} of {} hold", report.certificates.len()).ok();
        for c in report.certificates.iter().filter(|c| !c.holds) {
            writeln!(out, "FAIL {} (slack {})", c.name, c.slack).ok();
        }
        writeln!(out, "stored certificates match: {}", report.stored_certificates_match).ok();
        writeln!(out, "file round trip: {round_trip}").ok();
        if let (Some(e), Some(c)) = (&report.empirical, &report.comparison) {
            writeln!(out, "predicted Ω = {}", c.predicted).ok();
            let names = ["v", "v'", "w", "w'"];
            for (i, comp) in e.components().iter().enumerate() {
                let rel = c.relative_error[i].map(num).unwrap_or_else(|| "n/a".into());
                writeln!(out, "level {} {}: {} (relative error {rel})", e.level, names[i], enc(&Some(*comp))).ok();
            }
        }
        if let Some(s) = &report.scan {
            writeln!(
                out,
                "scan to H = {}: {} foreign best approximations among certified records (diagnostic)",
                s.hmax,
                s.foreign.len()
            )
            .ok();
        }
        (to_json(&report)?, report.pass)
    };
    match &report_path {
        Some(p) => {
            write_file(p, &text)?;
            writeln!(out, "wrote {}", p.display()).ok();
        }
        None => {
            out.write_all(text.as_bytes()).ok();
        }
    }
    writeln!(out, "{}", if pass { "all checks pass" } else { "check failure" }).ok();
    Ok(if pass { Exit::Ok } else { Exit::CheckFailed })
}

pub fn run(cli: &Cli, env_precision: Option<&str>, out: &mut dyn Write) -> Result<Exit, CliError> {
    let cfg = match &cli.config {
        Some(p) => CliConfig::load(p)?,
        None => CliConfig::default(),
    };
    cfg.check()?;
    match &cli.command {
        Command::Construct(a) => cmd_construct(a, &cfg, out),
        Command::Analyze(a) => cmd_analyze(a, &cfg, env_precision, out),
        Command::Verify(a) => cmd_verify(a, &cfg, out),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with<I, T>(args: I, env_precision: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Exit::BadInput as i32 } else { 0 };
            if e.use_stderr() {
                write!(err, "{e}").ok();
            } else {
                write!(out, "{e}").ok();
            }
            return code;
        }
    };
    match run(&cli, env_precision, out) {
        Ok(exit) => exit as i32,
        Err(e) => {
            writeln!(err, "error: {}", e.message).ok();
            e.exit as i32
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["dioph"];
        full.extend_from_slice(args);
        let code = main_with(full, None, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn equal_taus_rejected_with_named_inequality() {
        let (code, _, err) = call(&["construct", "--w", "2", "--tau0", "1/2", "--tau1", "1/2", "--sigma", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("requires tau0 < tau1"), "{err}");
    }

    #[test]
    fn missing_finite_parameter() {
        let (code, _, err) = call(&["construct", "--w", "3"]);
        assert_eq!(code, 2);
        assert!(err.contains("--tau0"), "{err}");
    }

    #[test]
    fn depth_guard_is_exit_three() {
        let (code, _, err) = call(&["construct", "--mode", "all-infinite", "--depth", "40"]);
        assert_eq!(code, 3, "{err}");
    }

    #[test]
    fn quadruple_checks() {
        let (code, out, _) = call(&["verify", "--quad", "6,4/3,3,2/3"]);
        assert_eq!(code, 0);
        assert!(out.contains("PASS refined upper"));
        let (code, out, _) = call(&["verify", "--quad", "6,3,3,2/3"]);
        assert_eq!(code, 1);
        assert!(out.contains("FAIL refined upper"));
    }

    #[test]
    fn rational_dependence_is_bad_input() {
        let (code, _, err) = call(&["analyze", "--target", "lit:2/5,7/10,0"]);
        assert_eq!(code, 2);
        assert!(err.contains("rational dependence"), "{err}");
    }

    #[test]
    fn bad_env_precision() {
        let cli = Cli::try_parse_from(["dioph", "analyze", "--target", "sqrt:2,3"]).unwrap();
        let e = run(&cli, Some("zero"), &mut Vec::new()).unwrap_err();
        assert_eq!(e.exit, Exit::BadInput);
    }

    #[test]
    fn config_rejects_unknown_and_zero() {
        assert!(toml::from_str::<CliConfig>("bogus = 1").is_err());
        let c: CliConfig = toml::from_str("window = 0").unwrap();
        assert_eq!(c.check().unwrap_err().exit, Exit::BadInput);
        let c: CliConfig = toml::from_str("seed = \"swapped\"\nmax-depth = 5").unwrap();
        assert_eq!(c.seed, Some(SeedChoice::Swapped));
        assert_eq!(c.max_depth, Some(5));
    }
}
