//! Command-line front end.
//!
//! Primary output (CSV or JSON) goes to stdout or `--output`; warnings and
//! errors are single lines on stderr. Exit codes: 0 success, 2 invalid
//! input, 3 work budget exceeded, 4 numerical failure.

use crate::limit_laws::{tail_asymptote, LimitLaw, DEFAULT_CDF_TOL};
use crate::norming::{
    default_law, default_regime, product_norming, regime_for_law, truncated_ratio_warning,
    EnsembleSpec, NormingConstants, PreTransform, ProductRegime,
};
use crate::samplers::{run_monte_carlo_with_budget, DEFAULT_WORK_BUDGET};
use crate::stats::{ks_against_law, normalized_statistics, KsReport};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Debug, Parser)]
#[command(
    name = "specrad",
    version,
    about = "Spectral radii of non-Hermitian random matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a limit law's cdf on a grid.
    Cdf(CdfArgs),
    /// Draw Monte Carlo replicates of the spectral radius.
    Sample(SampleArgs),
    /// KS distance between a normalized batch and its limit law.
    Ks(KsArgs),
    /// KS distance over a list of matrix sizes.
    Converge(ConvergeArgs),
    /// Print the norming constants of an ensemble.
    Norming(NormingArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Spherical,
    Truncated,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawName {
    Auto,
    SphericalH,
    Gumbel,
    ProductAlpha,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeName {
    Auto,
    SmallK,
    ProportionalK,
    LargeK,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the primary output to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EnsembleArgs {
    #[arg(long, value_enum)]
    pub ensemble: Family,
    #[arg(long)]
    pub n: u64,
    /// Truncated block size.
    #[arg(long)]
    pub p: Option<u64>,
    /// Number of Ginibre factors.
    #[arg(long)]
    pub k: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct LawArgs {
    #[arg(long, value_enum, default_value_t = LawName::Auto)]
    pub law: LawName,
    /// Product-law parameter; defaults to k/n for the product ensemble.
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub reps: usize,
    #[arg(long, env = "SPECRAD_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Maximum number of Gamma variates to draw.
    #[arg(long, default_value_t = DEFAULT_WORK_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Clone, Args)]
pub struct CdfArgs {
    #[command(flatten)]
    pub law: LawArgs,
    /// `lo:hi:steps`
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    /// Add the leading-order tail approximation of 1 - cdf.
    #[arg(long)]
    pub with_tail: bool,
    #[arg(long, default_value_t = DEFAULT_CDF_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub law: LawArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct KsArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub law: LawArgs,
    /// Report runtime_ms as 0 so output is byte-reproducible.
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    #[arg(long, value_enum)]
    pub ensemble: Family,
    /// Comma-separated matrix sizes.
    #[arg(long)]
    pub n_list: String,
    /// Truncated block size as a fraction of n.
    #[arg(long, default_value_t = 0.5)]
    pub p_ratio: f64,
    /// Fixed number of product factors.
    #[arg(long, conflicts_with = "k_ratio")]
    pub k: Option<u64>,
    /// Number of product factors as a multiple of n.
    #[arg(long)]
    pub k_ratio: Option<f64>,
    #[command(flatten)]
    pub run: RunArgs,
    /// Limit law; `auto` resolves from the first size.
    #[command(flatten)]
    pub law: LawArgs,
    #[arg(long)]
    pub no_timing: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct NormingArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long, value_enum, default_value_t = RegimeName::Auto)]
    pub regime: RegimeName,
    /// Proportional-regime parameter; defaults to k/n.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the subcommand,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let line = rendered
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            let _ = writeln!(stderr, "specrad: error: {line}");
            return 2;
        }
    };
    let mut warnings = Vec::new();
    let outcome = execute(&cli.command, &mut warnings);
    for w in &warnings {
        let _ = writeln!(stderr, "specrad: warning: {w}");
    }
    match outcome.and_then(|(text, path)| emit(&text, path.as_deref(), stdout)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "specrad: error: {e}");
            e.exit_code()
        }
    }
}

fn emit(text: &str, path: Option<&std::path::Path>, stdout: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Validation(format!("cannot write output: {e}"));
    match path {
        Some(p) => std::fs::write(p, text).map_err(io),
        None => stdout.write_all(text.as_bytes()).map_err(io),
    }
}

type Output = (String, Option<PathBuf>);

fn execute(command: &Command, warnings: &mut Vec<String>) -> Result<Output> {
    match command {
        Command::Cdf(a) => cmd_cdf(a).map(|t| (t, a.output.output.clone())),
        Command::Sample(a) => cmd_sample(a, warnings).map(|t| (t, a.output.output.clone())),
        Command::Ks(a) => cmd_ks(a, warnings).map(|t| (t, a.output.clone())),
        Command::Converge(a) => cmd_converge(a, warnings).map(|t| (t, a.output.output.clone())),
        Command::Norming(a) => cmd_norming(a, warnings).map(|t| (t, a.output.clone())),
    }
}

/// Shortest decimal string that reads back as the same `f64`.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else if v.is_finite() {
        format!("{v:e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn json_number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string(value).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Parses `lo:hi:steps` into `steps` evenly spaced points.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::Validation(format!("grid must be lo:hi:steps, got '{spec}'"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if steps == 0 || !lo.is_finite() || !hi.is_finite() || hi < lo || (steps == 1 && hi != lo) {
        return Err(Error::Validation(format!(
            "grid needs finite lo <= hi and steps >= 1 (lo = hi when steps = 1), got '{spec}'"
        )));
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / last)
        .collect())
}

/// Parses a comma-separated list of positive sizes.
pub fn parse_n_list(list: &str) -> Result<Vec<u64>> {
    let sizes: Option<Vec<u64>> = list
        .split(',')
        .map(|s| s.trim().parse::<u64>().ok().filter(|&n| n > 0))
        .collect();
    match sizes {
        Some(v) if !v.is_empty() => Ok(v),
        _ => Err(Error::Validation(format!(
            "n-list must be comma-separated positive integers, got '{list}'"
        ))),
    }
}

fn build_spec(family: Family, n: u64, p: Option<u64>, k: Option<u64>) -> Result<EnsembleSpec> {
    let missing = |flag: &str| Error::Validation(format!("--{flag} is required for this ensemble"));
    match family {
        Family::Spherical => EnsembleSpec::spherical(n),
        Family::Truncated => EnsembleSpec::truncated(n, p.ok_or_else(|| missing("p"))?),
        Family::Product => EnsembleSpec::product(n, k.ok_or_else(|| missing("k"))?),
    }
}

fn spec_warnings(spec: &EnsembleSpec, warnings: &mut Vec<String>) {
    if let EnsembleSpec::TruncatedUnitary { n, p } = *spec {
        warnings.extend(truncated_ratio_warning(n, p));
    }
}

/// Resolves `--law`/`--alpha` for `spec`; `auto` follows [`default_law`].
fn resolve_law(args: &LawArgs, spec: Option<&EnsembleSpec>) -> Result<LimitLaw> {
    let ratio = spec.and_then(|s| match *s {
        EnsembleSpec::GinibreProduct { n, k } => Some(k as f64 / n as f64),
        _ => None,
    });
    let law = match args.law {
        LawName::Auto => {
            let spec =
                spec.ok_or_else(|| Error::Validation("--law auto needs an ensemble".into()))?;
            match (default_law(spec), args.alpha) {
                (LimitLaw::ProductLaw { .. }, Some(alpha)) => LimitLaw::ProductLaw { alpha },
                (law, _) => law,
            }
        }
        LawName::SphericalH => LimitLaw::SphericalH,
        LawName::Gumbel => LimitLaw::Gumbel,
        LawName::Normal => LimitLaw::StandardNormal,
        LawName::ProductAlpha => {
            let alpha = args
                .alpha
                .or(ratio)
                .ok_or_else(|| Error::Validation("--law product-alpha requires --alpha".into()))?;
            LimitLaw::ProductLaw { alpha }
        }
    };
    law.validate()?;
    if let Some(spec) = spec {
        regime_for_law(spec, law)?;
    }
    Ok(law)
}

fn law_json(law: LimitLaw) -> (Value, Value) {
    let alpha = match law {
        LimitLaw::ProductLaw { alpha } => json_number(alpha),
        _ => Value::Null,
    };
    (Value::String(law.name().into()), alpha)
}

fn spec_json(spec: &EnsembleSpec) -> Value {
    match *spec {
        EnsembleSpec::Spherical { n } => json!({ "family": "spherical", "n": n }),
        EnsembleSpec::TruncatedUnitary { n, p } => json!({ "family": "truncated", "n": n, "p": p }),
        EnsembleSpec::GinibreProduct { n, k } => json!({ "family": "product", "n": n, "k": k }),
    }
}

fn ks_json(report: &KsReport) -> Value {
    json!({
        "statistic": json_number(report.statistic),
        "location": json_number(report.location),
        "critical_005": json_number(report.critical_005),
    })
}

fn elapsed_ms(start: Instant, no_timing: bool) -> f64 {
    if no_timing {
        0.0
    } else {
        (start.elapsed().as_secs_f64() * 1e3).round()
    }
}

pub fn cmd_cdf(args: &CdfArgs) -> Result<String> {
    if args.law.law == LawName::Auto {
        return Err(Error::Validation("cdf needs an explicit --law".into()));
    }
    let law = resolve_law(&args.law, None)?;
    if !(args.tol > 0.0) {
        return Err(Error::Validation(format!(
            "--tol must be > 0, got {}",
            args.tol
        )));
    }
    let grid = parse_grid(&args.grid)?;
    let mut rows = Vec::with_capacity(grid.len());
    for &x in &grid {
        let cdf = law.cdf(x, args.tol)?;
        let tail = if args.with_tail && x > 1.0 {
            Some(tail_asymptote(law, x)?)
        } else {
            None
        };
        rows.push((x, cdf, tail));
    }
    Ok(match args.output.format {
        Format::Csv => {
            let mut out = String::from(if args.with_tail {
                "x,cdf,tail\n"
            } else {
                "x,cdf\n"
            });
            for (x, cdf, tail) in rows {
                let _ = write!(out, "{},{}", format_number(x), format_number(cdf));
                if args.with_tail {
                    out.push(',');
                    out.push_str(&tail.map(format_number).unwrap_or_default());
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let (name, alpha) = law_json(law);
            let rows: Vec<Value> = rows
                .into_iter()
                .map(|(x, cdf, tail)| {
                    let mut row = json!({ "x": json_number(x), "cdf": json_number(cdf) });
                    if args.with_tail {
                        row["tail"] = tail.map_or(Value::Null, json_number);
                    }
                    row
                })
                .collect();
            to_json(&json!({ "law": name, "alpha": alpha, "rows": rows }))
        }
    })
}

pub fn cmd_sample(args: &SampleArgs, warnings: &mut Vec<String>) -> Result<String> {
    let e = &args.ensemble;
    let spec = build_spec(e.ensemble, e.n, e.p, e.k)?;
    spec_warnings(&spec, warnings);
    let law = resolve_law(&args.law, Some(&spec))?;
    let r = &args.run;
    let batch = run_monte_carlo_with_budget(spec, r.reps, r.seed, r.workers, r.budget)?;
    let normalized = normalized_statistics(&batch, law)?;
    let raw_kind = if spec.raw_is_log() {
        "log_radius"
    } else {
        "radius"
    };
    Ok(match args.output.format {
        Format::Csv => {
            let mut out = String::new();
            if spec.raw_is_log() {
                out.push_str("# raw=log_radius\n");
            }
            out.push_str("replicate,raw,normalized\n");
            for (i, (raw, z)) in batch.statistics.iter().zip(&normalized).enumerate() {
                let _ = writeln!(out, "{i},{},{}", format_number(*raw), format_number(*z));
            }
            out
        }
        Format::Json => {
            let (name, alpha) = law_json(law);
            to_json(&json!({
                "ensemble": spec_json(&spec),
                "law": name,
                "alpha": alpha,
                "seed": r.seed,
                "reps": r.reps,
                "raw_kind": raw_kind,
                "raw": batch.statistics.iter().map(|&v| json_number(v)).collect::<Vec<_>>(),
                "normalized": normalized.iter().map(|&v| json_number(v)).collect::<Vec<_>>(),
            }))
        }
    })
}

pub fn cmd_ks(args: &KsArgs, warnings: &mut Vec<String>) -> Result<String> {
    let start = Instant::now();
    let e = &args.ensemble;
    let spec = build_spec(e.ensemble, e.n, e.p, e.k)?;
    spec_warnings(&spec, warnings);
    let law = resolve_law(&args.law, Some(&spec))?;
    let r = &args.run;
    let batch = run_monte_carlo_with_budget(spec, r.reps, r.seed, r.workers, r.budget)?;
    let report = ks_against_law(&batch, law)?;
    let (name, alpha) = law_json(law);
    Ok(to_json(&json!({
        "ensemble": spec_json(&spec),
        "law": name,
        "alpha": alpha,
        "reps": r.reps,
        "seed": r.seed,
        "ks": ks_json(&report),
        "runtime_ms": json_number(elapsed_ms(start, args.no_timing)),
    })))
}

fn converge_spec(args: &ConvergeArgs, n: u64) -> Result<EnsembleSpec> {
    match args.ensemble {
        Family::Spherical => EnsembleSpec::spherical(n),
        Family::Truncated => {
            if !(args.p_ratio > 0.0 && args.p_ratio < 1.0) {
                return Err(Error::Validation(format!(
                    "--p-ratio must lie in (0, 1), got {}",
                    args.p_ratio
                )));
            }
            EnsembleSpec::truncated(n, (args.p_ratio * n as f64).round() as u64)
        }
        Family::Product => {
            let k = match (args.k, args.k_ratio) {
                (Some(k), _) => k,
                (None, Some(ratio)) if ratio > 0.0 && ratio.is_finite() => {
                    ((ratio * n as f64).round() as u64).max(1)
                }
                (None, Some(ratio)) => {
                    return Err(Error::Validation(format!(
                        "--k-ratio must be > 0, got {ratio}"
                    )))
                }
                (None, None) => {
                    return Err(Error::Validation(
                        "product ensemble needs --k or --k-ratio".into(),
                    ))
                }
            };
            EnsembleSpec::product(n, k)
        }
    }
}

pub fn cmd_converge(args: &ConvergeArgs, warnings: &mut Vec<String>) -> Result<String> {
    let sizes = parse_n_list(&args.n_list)?;
    let specs = sizes
        .iter()
        .map(|&n| converge_spec(args, n))
        .collect::<Result<Vec<_>>>()?;
    let law = resolve_law(&args.law, Some(&specs[0]))?;
    for spec in &specs {
        regime_for_law(spec, law)?;
        spec_warnings(spec, warnings);
    }
    let r = &args.run;
    let mut rows = Vec::with_capacity(specs.len());
    for spec in &specs {
        let start = Instant::now();
        let batch = run_monte_carlo_with_budget(*spec, r.reps, r.seed, r.workers, r.budget)?;
        let report = ks_against_law(&batch, law)?;
        rows.push((spec.n(), report, elapsed_ms(start, args.no_timing)));
    }
    Ok(match args.output.format {
        Format::Csv => {
            let mut out = String::from("n,ks,critical_005,runtime_ms\n");
            for (n, report, ms) in &rows {
                let _ = writeln!(
                    out,
                    "{n},{},{},{}",
                    format_number(report.statistic),
                    format_number(report.critical_005),
                    format_number(*ms)
                );
            }
            out
        }
        Format::Json => {
            let (name, alpha) = law_json(law);
            let rows: Vec<Value> = rows
                .iter()
                .zip(&specs)
                .map(|((n, report, ms), spec)| {
                    json!({
                        "n": n,
                        "ensemble": spec_json(spec),
                        "ks": json_number(report.statistic),
                        "critical_005": json_number(report.critical_005),
                        "runtime_ms": json_number(*ms),
                    })
                })
                .collect();
            to_json(&json!({
                "law": name,
                "alpha": alpha,
                "reps": r.reps,
                "seed": r.seed,
                "rows": rows,
            }))
        }
    })
}

/// 17 significant digits, as a JSON number.
fn sig17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".into()
    }
}

pub fn cmd_norming(args: &NormingArgs, warnings: &mut Vec<String>) -> Result<String> {
    let e = &args.ensemble;
    let spec = build_spec(e.ensemble, e.n, e.p, e.k)?;
    spec_warnings(&spec, warnings);
    let (constants, regime) = match spec {
        EnsembleSpec::GinibreProduct { n, k } => {
            let alpha = args.alpha.unwrap_or(k as f64 / n as f64);
            let regime = match args.regime {
                RegimeName::Auto => match (default_regime(n, k), args.alpha) {
                    (ProductRegime::ProportionalK { .. }, Some(a)) => {
                        ProductRegime::ProportionalK { alpha: a }
                    }
                    (r, _) => r,
                },
                RegimeName::SmallK => ProductRegime::SmallK,
                RegimeName::ProportionalK => ProductRegime::ProportionalK { alpha },
                RegimeName::LargeK => ProductRegime::LargeK,
            };
            (product_norming(n, k, regime)?, Some(regime))
        }
        _ => {
            if args.regime != RegimeName::Auto {
                return Err(Error::Validation(
                    "--regime applies to the product ensemble only".into(),
                ));
            }
            (NormingConstants::for_spec(&spec, None)?, None)
        }
    };
    let mut out = String::from("{");
    let _ = write!(out, "\"ensemble\":{}", spec_json(&spec));
    match regime {
        Some(r) => {
            let _ = write!(out, ",\"regime\":\"{}\"", r.name());
        }
        None => out.push_str(",\"regime\":null"),
    }
    let pre = match constants.pre_transform {
        PreTransform::Identity => "identity",
        PreTransform::LogSpace { .. } => "log_space",
    };
    let _ = write!(out, ",\"pre_transform\":\"{pre}\"");
    let _ = write!(
        out,
        ",\"shift\":{},\"scale\":{}",
        sig17(constants.shift),
        sig17(constants.scale)
    );
    for (name, value) in &constants.aux {
        let _ = write!(out, ",\"{name}\":{}", sig17(*value));
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["specrad"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn number_formatting_round_trips() {
        for v in [
            0.0,
            1.0,
            -2.5,
            0.1,
            1e-300,
            6.02e23,
            0.36787944117144233,
            12345.678,
        ] {
            assert_eq!(format_number(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(1e-300), "1e-300");
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("0:0:1").unwrap(), vec![0.0]);
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(parse_grid("1:0:3").is_err());
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("0:1:1").is_err());
    }

    #[test]
    fn n_list_parsing() {
        assert_eq!(parse_n_list("20,200, 2000").unwrap(), vec![20, 200, 2000]);
        assert!(parse_n_list("20,,200").is_err());
        assert!(parse_n_list("20,x").is_err());
        assert!(parse_n_list("0").is_err());
    }

    #[test]
    fn gumbel_row() {
        let (code, out, err) = run_capture(&["cdf", "--law", "gumbel", "--grid", "0:0:1"]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(out, "x,cdf\n0,0.36787944117144233\n");
    }

    #[test]
    fn validation_is_single_line_exit_2() {
        let (code, out, err) = run_capture(&[
            "sample",
            "--ensemble",
            "truncated",
            "--n",
            "5",
            "--p",
            "5",
            "--reps",
            "3",
        ]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 1, "{err}");
        let (code, _, err) = run_capture(&["sample", "--bogus"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1, "{err}");
    }

    #[test]
    fn budget_exit_3() {
        let (code, _, err) = run_capture(&[
            "sample",
            "--ensemble",
            "product",
            "--n",
            "100",
            "--k",
            "100",
            "--reps",
            "1000",
            "--budget",
            "1000",
        ]);
        assert_eq!(code, 3, "{err}");
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("norming"));
    }
}
