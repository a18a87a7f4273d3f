//! Configured runs of the verification suites and their JSON reports.
//!
//! Every suite gets its own ChaCha stream derived from the run seed and
//! the suite name; every trial gets a seed drawn from that stream. Trials
//! are evaluated in parallel but reduced in index order, so a report is a
//! function of its configuration alone (apart from `wall_time_seconds`).

mod config;
mod suites;

use std::fmt::Write as _;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

pub use config::{Grid, RunConfig, SplittingSpec, Tolerances};
pub use suites::{suite, Context, Slot, Suite, Tolerance, Trial, TrialCount, GRID_TRIALS, LADDER_LEVELS, SUITES};

use crate::error::Error;
use crate::group::sampled::GROUP_TOL;

/// Failures that stop a run before any suite executes. Residual failures
/// are not errors; they are recorded in the report.
#[derive(Debug, Error)]
pub enum RunError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown suite {0:?} (see `describe`)")]
    UnknownSuite(String),

    #[error("cannot load algebra {path:?}: {source}")]
    AlgebraFile { path: String, source: Error },

    #[error("invalid splitting function: {0}")]
    Splitting(Error),

    #[error("cannot read or write {path:?}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("malformed report: {0}")]
    Report(String),
}

impl RunError {
    /// Process exit status for this error. `0` and `1` are reserved for
    /// all-pass and residual failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::UnknownSuite(_) => 3,
            RunError::AlgebraFile { .. } => 4,
            RunError::Splitting(_) => 5,
            RunError::Io { .. } | RunError::Report(_) => 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: usize,
    pub trial_seed: u64,
    pub residual: Option<f64>,
    pub inputs: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub trials: usize,
    /// `None` when a trial produced a non-finite residual or an error.
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    /// The first failing trial, or the worst one when all pass.
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub suites: usize,
    pub passed: usize,
    pub failed: usize,
    pub wall_time_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub config: RunConfig,
    pub suites: Vec<SuiteReport>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json_str(text: &str) -> Result<Self, RunError> {
        serde_json::from_str(text).map_err(|e| RunError::Report(e.to_string()))
    }

    /// The report with `wall_time_seconds` zeroed, for comparisons.
    pub fn without_wall_time(&self) -> Self {
        let mut out = self.clone();
        out.summary.wall_time_seconds = 0.0;
        out
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let width = self.suites.iter().map(|s| s.name.len()).max().unwrap_or(5).max(5);
        let _ = writeln!(out, "{:<width$}  {:>6}  {:>12}  {:>10}  result", "suite", "trials", "max residual", "tolerance");
        for s in &self.suites {
            let residual = s.max_residual.map_or("n/a".to_string(), |r| format!("{r:.3e}"));
            let _ = writeln!(
                out,
                "{:<width$}  {:>6}  {:>12}  {:>10.1e}  {}",
                s.name,
                s.trials,
                residual,
                s.tolerance,
                if s.pass { "PASS" } else { "FAIL" }
            );
        }
        let _ = writeln!(
            out,
            "{} of {} suites passed in {:.2} s",
            self.summary.passed, self.summary.suites, self.summary.wall_time_seconds
        );
        out
    }
}

/// FNV-1a, used to give every suite its own ChaCha stream.
fn stream_id(name: &str) -> u64 {
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Seeds of the first `count` trials of `suite` under run seed `seed`.
pub fn trial_seeds(seed: u64, suite: &str, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id(suite));
    (0..count).map(|_| rng.next_u64()).collect()
}

/// Resolves and validates everything a run needs.
pub fn prepare(config: &RunConfig) -> Result<(Vec<&'static Suite>, Context), RunError> {
    config.validate()?;
    let selected: Vec<&'static Suite> = config
        .suite_names()?
        .into_iter()
        .map(|n| suite(n).expect("names come from the registry"))
        .collect();
    let algebra = config.load_algebra()?;
    let splitting = config.splitting.resolve()?;
    if selected.iter().any(|s| s.group_level) {
        config.pairing.validate(&algebra, GROUP_TOL).map_err(|e| {
            RunError::Config(format!("the group-level suites need an algebra matching su(2): {e}"))
        })?;
    }
    let level = config.integer_level();
    if level.is_none() {
        if let Some(s) = selected.iter().find(|s| s.integer_level) {
            return Err(RunError::Config(format!(
                "suite {} needs an integer level k, got {}",
                s.name, config.k
            )));
        }
    }
    let ctx = Context {
        algebra,
        k: config.k,
        level,
        degree: config.degree,
        splitting,
        nt: config.grid.nt,
        ntheta: config.grid.ntheta,
        pairing: config.pairing,
    };
    Ok((selected, ctx))
}

fn run_trial(s: &Suite, ctx: &Context, slot: Slot, seed: u64) -> (Trial, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match (s.run)(ctx, slot, &mut rng) {
        Ok(t) => {
            let ok = t.passes(slot.tolerance);
            (t, ok)
        }
        Err(e) => (
            Trial {
                residual: f64::NAN,
                pass: Some(false),
                inputs: json!({ "error": e.to_string() }),
            },
            false,
        ),
    }
}

fn finite(r: f64) -> Option<f64> {
    r.is_finite().then_some(r)
}

fn run_suite(s: &Suite, ctx: &Context, config: &RunConfig) -> SuiteReport {
    let tolerance = s.tolerance(config.tolerances.exact, config.tolerances.quadrature);
    let count = s.trial_count(config.trials);
    let seeds = trial_seeds(config.seed, s.name, count);
    let trials: Vec<(Trial, bool)> = seeds
        .par_iter()
        .enumerate()
        .map(|(index, &seed)| run_trial(s, ctx, Slot { index, tolerance }, seed))
        .collect();

    let first_failure = trials.iter().position(|(_, ok)| !ok);
    let worst = trials
        .iter()
        .enumerate()
        .fold(0, |best, (i, (t, _))| if t.residual > trials[best].0.residual { i } else { best });
    let chosen = first_failure.unwrap_or(worst);
    let max_residual = trials
        .iter()
        .try_fold(0.0f64, |m, (t, _)| finite(t.residual).map(|r| m.max(r)));
    let (trial, _) = &trials[chosen];

    SuiteReport {
        name: s.name.to_string(),
        trials: count,
        max_residual,
        tolerance,
        pass: first_failure.is_none(),
        witness: Witness {
            trial: chosen,
            trial_seed: seeds[chosen],
            residual: finite(trial.residual),
            inputs: trial.inputs.clone(),
        },
    }
}

/// Executes the configured suites. `jobs` bounds the worker threads;
/// `None` uses one per core. The result does not depend on `jobs`.
pub fn run(config: &RunConfig, jobs: Option<usize>) -> Result<ReportDocument, RunError> {
    let start = Instant::now();
    let (selected, ctx) = prepare(config)?;
    let execute = || -> Vec<SuiteReport> { selected.par_iter().map(|s| run_suite(s, &ctx, config)).collect() };
    let suites = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| RunError::Config(format!("cannot start {n} workers: {e}")))?
            .install(execute),
        None => execute(),
    };
    let passed = suites.iter().filter(|s| s.pass).count();
    Ok(ReportDocument {
        config: config.clone(),
        summary: Summary {
            suites: suites.len(),
            passed,
            failed: suites.len() - passed,
            wall_time_seconds: start.elapsed().as_secs_f64(),
        },
        suites,
    })
}

/// Result of re-running one recorded trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Replay {
    pub suite: String,
    pub trial: usize,
    pub trial_seed: u64,
    pub recorded: Option<f64>,
    pub residual: Option<f64>,
    pub pass: bool,
    /// Whether the recomputed residual is bit-identical to the recorded one.
    pub reproduced: bool,
}

/// Re-runs trial `index` of `suite_name` under `config`.
pub fn replay_trial(config: &RunConfig, suite_name: &str, index: usize) -> Result<(Trial, bool, u64), RunError> {
    let s = suite(suite_name).ok_or_else(|| RunError::UnknownSuite(suite_name.to_string()))?;
    let cfg = RunConfig {
        suites: vec![suite_name.to_string()],
        ..config.clone()
    };
    let (_, ctx) = prepare(&cfg)?;
    let count = s.trial_count(config.trials);
    if index >= count {
        return Err(RunError::Config(format!("{suite_name} has {count} trials, no trial {index}")));
    }
    let seed = trial_seeds(config.seed, s.name, index + 1)[index];
    let tolerance = s.tolerance(config.tolerances.exact, config.tolerances.quadrature);
    let (trial, ok) = run_trial(s, &ctx, Slot { index, tolerance }, seed);
    Ok((trial, ok, seed))
}

/// Re-runs the witness trial of every suite in `report`, or of the named
/// ones.
pub fn replay(report: &ReportDocument, only: &[String]) -> Result<Vec<Replay>, RunError> {
    for name in only {
        if report.suite(name).is_none() {
            return Err(RunError::UnknownSuite(name.clone()));
        }
    }
    report
        .suites
        .iter()
        .filter(|s| only.is_empty() || only.contains(&s.name))
        .map(|s| {
            let (trial, pass, seed) = replay_trial(&report.config, &s.name, s.witness.trial)?;
            let residual = finite(trial.residual);
            Ok(Replay {
                suite: s.name.clone(),
                trial: s.witness.trial,
                trial_seed: seed,
                recorded: s.witness.residual,
                residual,
                pass,
                reproduced: seed == s.witness.trial_seed
                    && residual.map(f64::to_bits) == s.witness.residual.map(f64::to_bits),
            })
        })
        .collect()
}

/// Human-readable description of a suite.
pub fn describe(name: &str) -> Result<String, RunError> {
    let s = suite(name).ok_or_else(|| RunError::UnknownSuite(name.to_string()))?;
    let tolerance = match s.tolerance {
        Tolerance::Exact => "the exact tolerance (--tol-exact, default 1e-10) on relative residuals".to_string(),
        Tolerance::Quadrature(t) => format!(
            "{t:e} at the finest of {LADDER_LEVELS} grids (--tol-quad overrides), with \
             residual(N)/residual(2N) in [3, 5] or all residuals at roundoff"
        ),
        Tolerance::Zero => "zero: every check is an exact comparison".to_string(),
    };
    let trials = match s.trials {
        TrialCount::Configured => "--trials seeded samples".to_string(),
        TrialCount::Grid => format!("min(--trials, {GRID_TRIALS}) seeded refinement ladders"),
        TrialCount::Once => "one deterministic pass".to_string(),
    };
    Ok(format!("{}\n  checks:    {}\n  tolerance: {tolerance}\n  trials:    {trials}\n", s.name, s.checks))
}
