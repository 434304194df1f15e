//! `cubesect`: exact values, bounds and simulations of face numbers of random
//! cube sections.

mod grid;
mod output;
mod verify;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand};
use cubesect::analysis::DEFAULT_TOL;
use cubesect::formulas::{f0_asymptotic, f0_exact, f_codim_asymptotic, face_bounds};
use cubesect::geometry::DEFAULT_EPS;
use cubesect::montecarlo::estimate;
use cubesect::{Error, FaceQuery, Method, RunConfig};

use grid::{Seed, Span};
use output::{Format, OutputRecord, RecordWriter};
use verify::Level;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_011_227;

#[derive(Debug, Parser)]
#[command(
    name = "cubesect",
    version,
    about = "Face numbers of random sections of the n-cube"
)]
struct Cli {
    /// More log output on stderr (repeat for debug level).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact vertex counts, bounds and asymptotics from the formulas.
    Eval(EvalArgs),
    /// Monte Carlo estimates of f(j, k, n).
    Simulate(SimulateArgs),
    /// Run the consistency checks and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Face dimension, a value or an inclusive range `a..b`.
    #[arg(long)]
    j: Span,
    /// Section dimension, a value or an inclusive range `a..b`.
    #[arg(long)]
    k: Span,
    /// Cube dimension, a value or an inclusive range `a..b`.
    #[arg(long)]
    n: Span,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Absolute error tolerance of the quadrature.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// Integer seed, or `random` to draw one from the operating system.
    #[arg(long, default_value_t = Seed::Fixed(DEFAULT_SEED))]
    seed: Seed,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(
        long,
        default_value = "face_hit_lp",
        value_parser = PossibleValuesParser::new(Method::ALL.map(Method::name))
            .map(|s| s.parse::<Method>().expect("listed method"))
    )]
    method: Method,
    /// Slack for boundary-grazing intersections.
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Print the vertex-count distribution to stderr (polygon and hull methods).
    #[arg(long)]
    histogram: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Level::Quick)]
    level: Level,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    /// Perturb a reference constant so that the affected checks must fail.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numerical(Error),
    Io(io::Error),
    ChecksFailed(Vec<String>),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e)
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Every point of the grid in `n`, `k`, `j` order; any invalid point rejects
/// the whole grid before output starts.
fn queries(grid: &GridArgs) -> Result<Vec<FaceQuery>, CliError> {
    let mut out = Vec::new();
    for n in grid.n.values() {
        for k in grid.k.values() {
            for j in grid.j.values() {
                let q = FaceQuery::new(j, k, n).map_err(|_| {
                    CliError::Usage(format!("(j, k, n) = ({j}, {k}, {n}) needs 0 ≤ j < k < n"))
                })?;
                out.push(q);
            }
        }
    }
    Ok(out)
}

fn eval_record(q: FaceQuery, tol: f64) -> Result<OutputRecord, Error> {
    let (j, k, n) = (q.j(), q.k(), q.n());
    let bounds = face_bounds(q, tol)?;
    let (method, value, asymptotic) = if j == 0 {
        (
            "quadrature",
            Some(f0_exact(k, n, tol)?),
            f0_asymptotic(k, u64::from(n))?,
        )
    } else {
        ("bounds", None, f_codim_asymptotic(n - k, n - j, n)?)
    };
    Ok(OutputRecord {
        j,
        k,
        n,
        method: method.into(),
        value,
        std_error: None,
        lower_bound: Some(bounds.lower),
        upper_bound: Some(bounds.upper),
        asymptotic: Some(asymptotic),
        samples: None,
        seed: None,
    })
}

fn cmd_eval(args: &EvalArgs) -> Result<(), CliError> {
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(CliError::Usage(format!(
            "--tol {} must be positive",
            args.tol
        )));
    }
    let queries = queries(&args.grid)?;
    let mut w = RecordWriter::new(io::stdout().lock(), args.format)?;
    for q in queries {
        w.write(&eval_record(q, args.tol)?)?;
    }
    w.finish()?;
    Ok(())
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let queries = queries(&args.grid)?;
    let seed = args.seed.resolve();
    let configs: Vec<RunConfig> = queries
        .into_iter()
        .map(|query| {
            let cfg = RunConfig {
                query,
                samples: args.samples,
                seed,
                workers: args.workers.unwrap_or_else(default_workers),
                eps: args.eps,
                method: args.method,
            };
            cfg.validate().map(|()| cfg)
        })
        .collect::<Result<_, _>>()?;

    let mut w = RecordWriter::new(io::stdout().lock(), args.format)?;
    for cfg in &configs {
        let e = estimate(cfg)?;
        let q = cfg.query;
        if args.histogram {
            if let Some(h) = &e.vertex_histogram {
                let cells: Vec<String> = h.iter().map(|(v, c)| format!("{v}:{c}")).collect();
                eprintln!(
                    "vertices j={} k={} n={}: {}",
                    q.j(),
                    q.k(),
                    q.n(),
                    cells.join(" ")
                );
            }
        }
        w.write(&OutputRecord {
            j: q.j(),
            k: q.k(),
            n: q.n(),
            method: cfg.method.name().into(),
            value: Some(e.mean),
            std_error: Some(e.std_error),
            lower_bound: None,
            upper_bound: None,
            asymptotic: None,
            samples: Some(e.samples),
            seed: Some(e.seed),
        })?;
    }
    w.finish()?;
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let workers = args.workers.unwrap_or_else(default_workers);
    if workers == 0 {
        return Err(CliError::Usage("--workers must be positive".into()));
    }
    let report = verify::run(args.level, args.seed, workers, args.inject_fault);
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &report).map_err(io::Error::other)?;
    writeln!(out)?;
    let failed = report.failed();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::ChecksFailed(failed))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();

    let result = match &cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::ChecksFailed(names)) => {
            eprintln!("cubesect: failed checks: {}", names.join(", "));
            ExitCode::from(1)
        }
        Err(CliError::Io(e)) => {
            eprintln!("cubesect: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("cubesect: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(e)) => {
            eprintln!("cubesect: {e}");
            ExitCode::from(3)
        }
    }
}
