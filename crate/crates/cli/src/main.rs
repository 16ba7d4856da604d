//! Command-line interface: per-discriminant reports, range census with a
//! file cache, and the verification suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use shimura_volumes::census::{default_cache_path, run_census, CensusCache};
use shimura_volumes::report::component_reports;
use shimura_volumes::verify::{run_scope, Scope};

#[derive(Parser)]
#[command(
    name = "shimura-census",
    about = "Class groups, self-dual hermitian lattices, Eichler orders, and \
             arithmetic volumes of unitary Shimura curve components, in exact arithmetic",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every connected component for one discriminant.
    Report(ReportArgs),
    /// Census over a range of discriminants, with caching.
    Census(CensusArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ReportArgs {
    /// Odd negative fundamental discriminant.
    #[arg(short = 'D', long = "discriminant", allow_hyphen_values = true)]
    d: i64,
    /// Decimal digits for the numeric volume.
    #[arg(long, default_value_t = 30)]
    precision: u32,
}

#[derive(Args)]
struct CensusArgs {
    /// Smallest (most negative) discriminant, inclusive.
    #[arg(long, allow_hyphen_values = true)]
    min: i64,
    /// Largest discriminant, inclusive; must be negative.
    #[arg(long, allow_hyphen_values = true)]
    max: i64,
    /// Decimal digits for numeric volumes.
    #[arg(long, default_value_t = 30)]
    precision: u32,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Cache file (default: $SHIMURA_CENSUS_CACHE_DIR/census.ndjson or
    /// ./.shimura-census/census.ndjson). Pass --no-cache to disable.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Disable the cache entirely.
    #[arg(long, default_value_t = false)]
    no_cache: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: symbols, classgroup, lattices, orders, volumes, all.
    #[arg(long)]
    scope: String,
    /// Discriminant (or prime) bound for the suites.
    #[arg(long, default_value_t = 200)]
    bound: i64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Report(args) => cmd_report(args),
        Command::Census(args) => cmd_census(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_report(args: ReportArgs) -> shimura_volumes::Result<ExitCode> {
    let reports = component_reports(args.d, args.precision)?;
    for r in reports {
        println!("{}", serde_json::to_string(&r).expect("report serializes"));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_census(args: CensusArgs) -> shimura_volumes::Result<ExitCode> {
    let mut cache_store;
    let cache = if args.no_cache {
        None
    } else {
        let path = args.cache.unwrap_or_else(default_cache_path);
        cache_store = CensusCache::open(&path)?;
        for w in cache_store.warnings() {
            eprintln!("warning: {w}");
        }
        Some(&mut cache_store)
    };
    let (records, stats) = run_census(args.min, args.max, args.precision, args.jobs, cache)?;
    for r in &records {
        println!("{}", serde_json::to_string(r).expect("record serializes"));
    }
    eprintln!(
        "census: {} records (computed={}, cached={})",
        records.len(),
        stats.computed,
        stats.cached
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> shimura_volumes::Result<ExitCode> {
    let scope: Scope = args.scope.parse()?;
    let reports = run_scope(scope, args.bound);
    let mut ok = true;
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        println!("[{status}] {}: {} checks, {} failures", r.name, r.checks, r.failures.len());
        for f in &r.failures {
            println!("        {f}");
        }
        ok &= r.passed();
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
