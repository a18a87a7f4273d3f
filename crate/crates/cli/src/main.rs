use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lie2::group::TracePairing;
use lie2::report::{self, Grid, ReportDocument, RunConfig, RunError, SplittingSpec, Tolerances, SUITES};

/// Numerical certification of the string Lie 2-algebra models.
#[derive(Parser)]
#[command(name = "lie2", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and emit a JSON report.
    Verify(VerifyArgs),
    /// Explain what a suite checks.
    Describe {
        /// Suite name; omit to list every suite.
        suite: Option<String>,
    },
    /// Re-run the witness trials recorded in a report.
    Replay {
        /// Report produced by `verify --report`.
        report: PathBuf,
        /// Restrict to these suites (repeatable).
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Bundled algebra name (su2, so3, sl2) or path to a JSON presentation.
    #[arg(long, default_value = "su2")]
    algebra: String,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    k: f64,
    /// Degree of the random polynomial paths, at least 2.
    #[arg(long, default_value_t = 4)]
    degree: usize,
    /// `linear`, `smoothstep`, or comma-separated coefficients of f(u), u = θ/2π.
    #[arg(long, default_value = "linear", allow_hyphen_values = true)]
    splitting: String,
    #[arg(long, default_value_t = 128)]
    nt: usize,
    #[arg(long, default_value_t = 128)]
    ntheta: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol_exact: f64,
    /// Override the per-suite thresholds of the grid-based suites.
    #[arg(long)]
    tol_quad: Option<f64>,
    /// Scale linking the matrix trace form to the algebra's form.
    #[arg(long, default_value_t = 1.0)]
    pairing_scale: f64,
    /// Suite to run (repeatable); `all` runs every suite.
    #[arg(long = "suite", default_value = "all")]
    suites: Vec<String>,
    /// Worker threads; defaults to one per core.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Suppress the summary table on standard error.
    #[arg(long)]
    quiet: bool,
}

impl VerifyArgs {
    fn config(&self) -> Result<RunConfig, RunError> {
        Ok(RunConfig {
            algebra: self.algebra.clone(),
            k: self.k,
            degree: self.degree,
            splitting: self.splitting.parse::<SplittingSpec>()?,
            grid: Grid {
                nt: self.nt,
                ntheta: self.ntheta,
            },
            seed: self.seed,
            trials: self.trials,
            tolerances: Tolerances {
                exact: self.tol_exact,
                quadrature: self.tol_quad,
            },
            pairing: TracePairing::new(self.pairing_scale),
            suites: self.suites.clone(),
        })
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), RunError> {
    std::fs::write(path, text).map_err(|source| RunError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn verify(args: &VerifyArgs) -> Result<bool, RunError> {
    let config = args.config()?;
    let report = report::run(&config, args.jobs)?;
    let json = report.to_json_pretty();
    match &args.report {
        Some(path) => write_file(path, &json)?,
        None => println!("{json}"),
    }
    if !args.quiet {
        eprint!("{}", report.table());
    }
    Ok(report.all_pass())
}

fn replay(path: &PathBuf, suites: &[String]) -> Result<bool, RunError> {
    let text = std::fs::read_to_string(path).map_err(|source| RunError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let report = ReportDocument::from_json_str(&text)?;
    let replays = report::replay(&report, suites)?;
    println!("{}", serde_json::to_string_pretty(&replays).expect("replays serialize"));
    for r in &replays {
        eprintln!(
            "{:<20} trial {:>4}  residual {:>10}  {}  {}",
            r.suite,
            r.trial,
            r.residual.map_or("n/a".into(), |v| format!("{v:.3e}")),
            if r.pass { "PASS" } else { "FAIL" },
            if r.reproduced { "reproduced" } else { "DIFFERS from report" }
        );
    }
    Ok(replays.iter().all(|r| r.reproduced))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(args) => verify(args),
        Command::Describe { suite: Some(name) } => report::describe(name).map(|text| {
            print!("{text}");
            true
        }),
        Command::Describe { suite: None } => {
            for s in SUITES {
                println!("{}", s.name);
            }
            Ok(true)
        }
        Command::Replay { report, suites } => replay(report, suites),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
