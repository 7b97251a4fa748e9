//! `mhz`: exact special values of multiple Hurwitz zeta functions at
//! non-positive integers.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 pole, 3 verification failure.

mod table;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use mhz_core::arith::global_cache;
use mhz_core::oracles::Tolerance;
use mhz_core::verify::{run_suite, Suite, VerifyOptions};
use mhz_core::{is_polar, parse_rational, zeta_value, AlphaVec, BernoulliCache, MultiIndex, Rational, Variant};

use crate::table::{render, Format};

const CACHE_ENV: &str = "MHZ_CACHE";

#[derive(Parser, Debug)]
#[command(name = "mhz", version, about = "Multiple Hurwitz zeta values at non-positive integers")]
struct Cli {
    /// Bernoulli number cache file (MHZ_CACHE takes precedence).
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one value and print it as a JSON report.
    Value(ValueArgs),
    /// Tabulate values over {0..Nmax}^n.
    Table(TableArgs),
    /// List polar points in {0..Nmax}^n.
    Poles(PolesArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct ValueArgs {
    /// Comma-separated positive rationals, e.g. `1,3/2`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Comma-separated non-negative integers.
    #[arg(long = "N", value_name = "N")]
    point: String,
    #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
    variant: VariantArg,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    n: usize,
    /// One rational (broadcast) or `n` comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, alias = "Nmax")]
    nmax: u32,
    #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
    variant: VariantArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PolesArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, alias = "Nmax")]
    nmax: u32,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON report destination; stdout when absent.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Series truncation cap for numeric suites.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Absolute tolerance for numeric suites.
    #[arg(long)]
    eps: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Corrected,
    Paper,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Corrected => Variant::Corrected,
            VariantArg::Paper => Variant::Paper,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Raabe,
    Oracle,
    Variants,
    Special,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Raabe => Suite::Raabe,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::Variants => Suite::Variants,
            SuiteArg::Special => Suite::Special,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

impl From<mhz_core::Error> for Failure {
    fn from(e: mhz_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let cache_path = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from).or(cli.cache);
    let loaded = match &cache_path {
        Some(path) => load_cache(path)?,
        None => 0,
    };
    let code = match cli.command {
        Command::Value(args) => cmd_value(args)?,
        Command::Table(args) => cmd_table(args)?,
        Command::Poles(args) => cmd_poles(args)?,
        Command::Verify(args) => cmd_verify(args)?,
    };
    if let Some(path) = &cache_path {
        let cache = global_cache().read().unwrap_or_else(|e| e.into_inner());
        if cache.highest() > loaded || !path.exists() {
            cache.save(path).map_err(|e| anyhow::anyhow!("{e}"))?;
        }
    }
    Ok(code)
}

/// Merges a cache file into the process cache; returns the highest index
/// that was on disk.
fn load_cache(path: &Path) -> Result<usize, Failure> {
    if !path.exists() {
        return Ok(0);
    }
    let disk = BernoulliCache::load(path).map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut cache = global_cache().write().unwrap_or_else(|e| e.into_inner());
    cache.merge(&disk).map_err(|e| anyhow::anyhow!("{e}"))?;
    Ok(disk.highest())
}

fn parse_alpha_list(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',').map(|s| parse_rational(s.trim()).map_err(Failure::from)).collect()
}

fn parse_point(text: &str) -> Result<MultiIndex, Failure> {
    let entries = text
        .split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| Failure::Usage(format!("malformed N entry {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MultiIndex::new(entries)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).context("writing stdout")?;
        }
    }
    Ok(())
}

fn cmd_value(args: ValueArgs) -> Outcome {
    let alpha = AlphaVec::new(parse_alpha_list(&args.alpha)?)?;
    let point = parse_point(&args.point)?;
    let report = zeta_value(&alpha, &point, args.variant.into())?;
    emit(args.out.as_deref(), &format!("{}\n", report.to_json()))?;
    Ok(if report.polar { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn cmd_table(args: TableArgs) -> Outcome {
    if args.n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let alphas = parse_alpha_list(&args.alpha)?;
    let alpha = match alphas.len() {
        1 => AlphaVec::broadcast(alphas[0].clone(), args.n)?,
        len if len == args.n => AlphaVec::new(alphas)?,
        len => return Err(Failure::Usage(format!("--alpha has {len} entries, expected 1 or {}", args.n))),
    };
    let text = render(&alpha, args.nmax, args.variant.into(), args.format)?;
    emit(args.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_poles(args: PolesArgs) -> Outcome {
    use rayon::prelude::*;
    if args.n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let lines: Vec<String> = MultiIndex::grid(args.n, args.nmax)
        .par_iter()
        .filter_map(|p| {
            let scan = is_polar(p);
            let witness = scan.witness.map(|w| w.to_string()).unwrap_or_default();
            scan.polar.then(|| format!("N={p} witness k={witness}\n"))
        })
        .collect();
    let text = if lines.is_empty() { "none found\n".to_string() } else { lines.concat() };
    emit(args.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Outcome {
    let tolerance = if args.eps.is_some() || args.cutoff.is_some() {
        let base = Tolerance::default();
        Some(Tolerance::new(args.eps.unwrap_or(base.abs_eps), args.cutoff.unwrap_or(base.cutoff))?)
    } else {
        None
    };
    let report = run_suite(args.suite.into(), &VerifyOptions { seed: args.seed, tolerance });
    let json = serde_json::to_string_pretty(&report).context("serializing report")?;
    emit(args.out.as_deref(), &format!("{json}\n"))?;

    let failed: Vec<_> = report.cases.iter().filter(|c| !c.pass).collect();
    let informational = report.cases.iter().filter(|c| c.informational).count();
    for case in &failed {
        eprintln!("FAIL {}: {}", case.name, case.detail);
    }
    if let Some(arb) = &report.arbitration {
        match arb.consistent_variant {
            Some(v) => eprintln!("arbitration: {v} is consistent with quadrature at every grid point"),
            None => eprintln!("arbitration: no single variant is consistent with quadrature"),
        }
    }
    eprintln!(
        "suite {}: {} cases, {} failed, {} informational",
        report.suite,
        report.cases.len(),
        failed.len(),
        informational
    );
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(3) })
}
