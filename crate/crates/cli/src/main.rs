//! `sextic-index`: prime splitting, index valuations and non-monogenity
//! certificates for sextic fields from the command line.

mod scan_output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sextic_index::engstrom::table_text;
use sextic_index::parse::parse_poly;
use sextic_index::report::{analyze, FailureKind};
use sextic_index::scan::{default_primes, run_scan, CoeffRange, ScanSpec};
use sextic_index::verify::{all_passed, run_all, DEFAULT_SEED};
use sextic_index::zpoly::Prime;

use scan_output::{Format, RowWriter};

/// Process exit codes.
mod exit {
    pub const OK: u8 = 0;
    /// Verification failure or internal error.
    pub const FAILURE: u8 = 1;
    pub const PARSE: u8 = 3;
    pub const NOT_REGULAR: u8 = 4;
    pub const ZERO_MOD_P: u8 = 5;
    /// Reducible, non-monic or otherwise unusable input.
    pub const BAD_INPUT: u8 = 6;
}

#[derive(Debug, Parser)]
#[command(
    name = "sextic-index",
    version,
    about = "Newton polygons, prime splitting and index divisors of sextic fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze one polynomial at the given primes.
    Analyze {
        /// Polynomial, e.g. "x^6+15x^2+8x+128".
        #[arg(long)]
        poly: String,
        /// Prime to analyze at (repeatable; default 2 and 3).
        #[arg(long = "prime", value_parser = parse_prime)]
        primes: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Analyze a family x^6 + a x^m + b x + c over congruence ranges.
    Scan(ScanArgs),
    /// Re-run every reproduction and oracle check.
    VerifyPaper {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the embedded index table.
    Table,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// TOML scan specification.
    #[arg(long, conflicts_with_all = ["m", "a", "b", "c"])]
    spec: Option<PathBuf>,
    /// Exponent m of the middle term.
    #[arg(long, required_unless_present = "spec")]
    m: Option<u32>,
    /// Constraint on a: residue:modulus:min:max, or a single value.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range, required_unless_present = "spec")]
    a: Option<CoeffRange>,
    /// Constraint on b, same syntax as --a.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range, required_unless_present = "spec")]
    b: Option<CoeffRange>,
    /// Constraint on c, same syntax as --a.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range, required_unless_present = "spec")]
    c: Option<CoeffRange>,
    /// Prime to analyze at (repeatable; default 2 and 3).
    #[arg(long = "prime", value_parser = parse_prime)]
    primes: Vec<u64>,
    /// Analyze only the first N instances.
    #[arg(long)]
    limit: Option<u64>,
    /// Analyze N instances drawn uniformly with --seed.
    #[arg(long)]
    sample: Option<u64>,
    /// Seed for --sample (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// One CSV record per instance, with a header.
    #[arg(long, conflicts_with = "json")]
    csv: bool,
    /// One JSON object per line.
    #[arg(long)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, env = "ORE_INDEX_JOBS")]
    jobs: Option<usize>,
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|_| format!("{s:?} is not an integer"))?;
    Prime::new(p).map(Prime::get).map_err(|e| e.to_string())
}

fn parse_range(s: &str) -> Result<CoeffRange, String> {
    CoeffRange::parse(s).map_err(|e| e.to_string())
}

/// Error carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(exit::FAILURE, format!("i/o error: {e}"))
    }
}

fn primes_or_default(ps: &[u64]) -> Vec<u64> {
    if ps.is_empty() {
        default_primes()
    } else {
        ps.to_vec()
    }
}

fn cmd_analyze(poly: &str, primes: &[u64], json: bool) -> Result<u8, Failure> {
    let f = parse_poly(poly).map_err(|e| Failure::new(exit::PARSE, format!("cannot parse polynomial: {e}")))?;
    let primes: Vec<Prime> = primes_or_default(primes)
        .into_iter()
        .map(|p| Prime::new(p).expect("validated by the argument parser"))
        .collect();
    let report = analyze(&f, &primes).map_err(|e| Failure::new(exit::BAD_INPUT, e.to_string()))?;
    let mut out = io::stdout().lock();
    if json {
        serde_json::to_writer_pretty(&mut out, &report).map_err(|e| Failure::new(exit::FAILURE, e.to_string()))?;
        writeln!(out)?;
    } else {
        write!(out, "{report}")?;
    }
    out.flush()?;
    if report.is_reducible() {
        let factor = report.irreducibility.factor.as_deref().unwrap_or("?");
        return Err(Failure::new(
            exit::BAD_INPUT,
            format!("{} is reducible (factor {factor})", report.input),
        ));
    }
    match report.first_failure() {
        None => Ok(exit::OK),
        Some(e) => {
            let code = match e.kind {
                FailureKind::NotRegular => exit::NOT_REGULAR,
                FailureKind::ZeroModP => exit::ZERO_MOD_P,
                FailureKind::Polygon => exit::BAD_INPUT,
            };
            Err(Failure::new(code, e.message.clone()))
        }
    }
}

fn scan_spec(args: &ScanArgs) -> Result<ScanSpec, Failure> {
    let mut spec = match &args.spec {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::new(exit::BAD_INPUT, format!("cannot read {}: {e}", path.display())))?;
            toml::from_str::<ScanSpec>(&text)
                .map_err(|e| Failure::new(exit::BAD_INPUT, format!("bad scan spec {}: {e}", path.display())))?
        }
        None => ScanSpec {
            m: args.m.expect("required by clap"),
            a: args.a.expect("required by clap"),
            b: args.b.expect("required by clap"),
            c: args.c.expect("required by clap"),
            primes: default_primes(),
            limit: None,
            sample: None,
            seed: 0,
        },
    };
    if !args.primes.is_empty() {
        spec.primes = args.primes.clone();
    }
    if args.limit.is_some() {
        spec.limit = args.limit;
    }
    if args.sample.is_some() {
        spec.sample = args.sample;
    }
    if let Some(s) = args.seed {
        spec.seed = s;
    }
    spec.validate()
        .map_err(|e| Failure::new(exit::BAD_INPUT, e.to_string()))?;
    Ok(spec)
}

fn cmd_scan(args: &ScanArgs) -> Result<u8, Failure> {
    let spec = scan_spec(args)?;
    let total = spec.total();
    if total == 0 {
        eprintln!("warning: the scan specification enumerates no instances");
    } else {
        eprintln!(
            "scanning {total} instances of x^6 + a x^{} + b x + c (a: {}; b: {}; c: {})",
            spec.m, spec.a, spec.b, spec.c
        );
    }
    let format = if args.csv {
        Format::Csv
    } else if args.json {
        Format::Json
    } else {
        Format::Text
    };
    let stdout = io::stdout().lock();
    let mut writer = RowWriter::new(format, &spec.primes, stdout)?;
    let mut write_err: Option<io::Error> = None;
    let summary = run_scan(&spec, args.jobs, |row| {
        if write_err.is_none() {
            if let Err(e) = writer.write(row) {
                write_err = Some(e);
            }
        }
    })
    .map_err(|e| Failure::new(exit::BAD_INPUT, e.to_string()))?;
    if let Some(e) = write_err {
        return Err(e.into());
    }
    writer.finish()?;
    eprintln!(
        "{} instances: {} irreducible, {} reducible, {} undecided; {} with per-prime errors; {} non-monogenic; {} checker disagreements",
        summary.total,
        summary.irreducible,
        summary.reducible,
        summary.unknown,
        summary.with_errors,
        summary.non_monogenic,
        summary.disagreements
    );
    Ok(exit::OK)
}

fn cmd_verify(seed: u64, json: bool) -> Result<u8, Failure> {
    let results = run_all(seed);
    let ok = all_passed(&results);
    let mut out = io::stdout().lock();
    if json {
        let doc = serde_json::json!({ "seed": seed, "passed": ok, "criteria": results });
        serde_json::to_writer_pretty(&mut out, &doc).map_err(|e| Failure::new(exit::FAILURE, e.to_string()))?;
        writeln!(out)?;
    } else {
        writeln!(out, "seed {seed}")?;
        for r in &results {
            writeln!(out, "{r}")?;
        }
        writeln!(out, "{}", if ok { "all checks passed" } else { "SOME CHECKS FAILED" })?;
    }
    Ok(if ok { exit::OK } else { exit::FAILURE })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze { poly, primes, json } => cmd_analyze(&poly, &primes, json),
        Command::Scan(args) => cmd_scan(&args),
        Command::VerifyPaper { seed, json } => cmd_verify(seed, json),
        Command::Table => {
            print!("{}", table_text());
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
