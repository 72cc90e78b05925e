//! Verification suites: each check runs on each fixture it applies to and
//! leaves exactly one record.

mod actions;
mod anti;
mod beurling;
mod core;
mod correspondence;
mod tensor;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crossbench_core::fixtures::Fixture;
use crossbench_core::{AFunction, Error as CoreError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::FunctionSpec;
use crate::error::HarnessError;
use crate::report::{CheckRecord, Report, Status};

/// Slack allowed on inequalities for rounding.
pub const ROUNDING: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Core,
    Beurling,
    Correspondence,
    Anti,
    Tensor,
    Actions,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 6] = [
        Suite::Core,
        Suite::Beurling,
        Suite::Correspondence,
        Suite::Anti,
        Suite::Tensor,
        Suite::Actions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Beurling => "beurling",
            Suite::Correspondence => "correspondence",
            Suite::Anti => "anti",
            Suite::Tensor => "tensor",
            Suite::Actions => "actions",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::PARTS
            .iter()
            .chain(&[Suite::All])
            .copied()
            .find(|x| x.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| HarnessError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOptions {
    pub seed: u64,
    /// Relative tolerance for equalities.
    pub tolerance: f64,
    /// Random samples per sampled check.
    pub samples: usize,
    /// Record wall time per check (makes reports non-reproducible).
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            tolerance: 1e-9,
            samples: 100,
            timings: false,
        }
    }
}

/// What a single check found.
#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    status: Status,
    max_error: f64,
    bound_slack: Option<f64>,
    detail: Option<String>,
    reproducer: Option<AFunction>,
}

impl Outcome {
    pub(crate) fn equality(max_error: f64, tol: f64) -> Self {
        let status = if max_error <= tol {
            Status::Pass
        } else {
            Status::Fail
        };
        Outcome {
            status,
            max_error,
            bound_slack: None,
            detail: None,
            reproducer: None,
        }
    }

    pub(crate) fn inequality(slack: f64) -> Self {
        let status = if slack >= -ROUNDING {
            Status::Pass
        } else {
            Status::Fail
        };
        Outcome {
            status,
            max_error: 0.0,
            bound_slack: Some(slack),
            detail: None,
            reproducer: None,
        }
    }

    /// Equality error and inequality slack judged together.
    pub(crate) fn both(max_error: f64, tol: f64, slack: f64) -> Self {
        let mut out = Outcome::equality(max_error, tol);
        if slack < -ROUNDING {
            out.status = Status::Fail;
        }
        out.bound_slack = Some(slack);
        out
    }

    pub(crate) fn flag(ok: bool) -> Self {
        Outcome {
            status: if ok { Status::Pass } else { Status::Fail },
            max_error: 0.0,
            bound_slack: None,
            detail: None,
            reproducer: None,
        }
    }

    pub(crate) fn skipped(reason: impl Into<String>) -> Self {
        Outcome {
            status: Status::SkippedHypothesis,
            max_error: 0.0,
            bound_slack: None,
            detail: Some(reason.into()),
            reproducer: None,
        }
    }

    pub(crate) fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    /// Attaches `f` when the check failed.
    pub(crate) fn witness(mut self, f: Option<AFunction>) -> Self {
        if self.status == Status::Fail {
            self.reproducer = f;
        }
        self
    }
}

/// Tracks the worst sample of a sampled check.
pub(crate) struct Worst {
    pub error: f64,
    pub slack: f64,
    pub at: Option<AFunction>,
}

impl Worst {
    pub(crate) fn new() -> Self {
        Worst {
            error: 0.0,
            slack: f64::INFINITY,
            at: None,
        }
    }

    pub(crate) fn error(&mut self, e: f64, f: &AFunction) {
        if self.at.is_none() || e > self.error {
            self.error = self.error.max(e);
            self.at = Some(f.clone());
        }
    }

    pub(crate) fn slack(&mut self, s: f64, f: &AFunction) {
        if s < self.slack {
            self.slack = s;
            self.at = Some(f.clone());
        }
    }

    pub(crate) fn finite_slack(&self) -> f64 {
        if self.slack.is_finite() {
            self.slack
        } else {
            1.0
        }
    }
}

/// `(rhs − lhs)/max(rhs, tiny)`.
pub(crate) fn rel_slack(lhs: f64, rhs: f64) -> f64 {
    if rhs <= 0.0 {
        if lhs <= ROUNDING {
            0.0
        } else {
            -1.0
        }
    } else {
        (rhs - lhs) / rhs
    }
}

pub(crate) fn rel_error(diff: f64, scale: f64) -> f64 {
    diff / (1.0 + scale)
}

fn check_seed(seed: u64, check_id: &str, fixture_id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed;
    for b in check_id.bytes().chain([0u8]).chain(fixture_id.bytes()) {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Collects records for one suite run.
pub(crate) struct Runner<'a> {
    opts: &'a RunOptions,
    records: Vec<CheckRecord>,
}

impl<'a> Runner<'a> {
    fn new(opts: &'a RunOptions) -> Self {
        Runner {
            opts,
            records: Vec::new(),
        }
    }

    pub(crate) fn opts(&self) -> &RunOptions {
        self.opts
    }

    /// Runs `check` with its own RNG, derived from the seed and the ids so
    /// that results do not depend on which other checks ran.
    pub(crate) fn run<F>(&mut self, check_id: &str, anchor: &str, fixture_id: &str, check: F)
    where
        F: FnOnce(&mut ChaCha8Rng) -> Result<Outcome, CoreError>,
    {
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(self.opts.seed, check_id, fixture_id));
        let start = Instant::now();
        let outcome = match check(&mut rng) {
            Ok(o) => o,
            Err(CoreError::HypothesisViolated(why)) => Outcome::skipped(why),
            Err(CoreError::NoApproximateIdentity(which)) => Outcome::skipped(format!("no {which}")),
            Err(e) => Outcome::flag(false).detail(e.to_string()),
        };
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let finite = |x: f64| if x.is_finite() { x } else { f64::MAX };
        self.records.push(CheckRecord {
            check_id: check_id.to_string(),
            anchor: anchor.to_string(),
            fixture_id: fixture_id.to_string(),
            status: outcome.status,
            max_error: finite(outcome.max_error),
            bound_slack: outcome.bound_slack.map(finite),
            elapsed_ms: self.opts.timings.then_some(elapsed),
            detail: outcome.detail,
            reproducer: outcome.reproducer.as_ref().map(FunctionSpec::from_function),
        });
    }
}

/// Runs `suite` on `fixtures`. The report is ordered by check id, then
/// fixture id.
pub fn run_suite(fixtures: &[Fixture], suite: Suite, opts: &RunOptions) -> Report {
    let mut runner = Runner::new(opts);
    let parts: Vec<Suite> = match suite {
        Suite::All => Suite::PARTS.to_vec(),
        s => vec![s],
    };
    for part in parts {
        match part {
            Suite::Core => core::run(&mut runner, fixtures),
            Suite::Beurling => beurling::run(&mut runner, fixtures),
            Suite::Correspondence => correspondence::run(&mut runner, fixtures),
            Suite::Anti => anti::run(&mut runner, fixtures),
            Suite::Tensor => tensor::run(&mut runner, fixtures),
            Suite::Actions => actions::run(&mut runner, fixtures),
            Suite::All => unreachable!("expanded above"),
        }
    }
    let mut report = Report::new(
        suite.name(),
        opts.seed,
        fixtures.iter().map(|f| f.id.clone()).collect(),
    );
    report.checks = runner.records;
    report.normalize();
    report
}

pub(crate) fn random_fn(fx: &Fixture, rng: &mut ChaCha8Rng) -> AFunction {
    AFunction::random(fx.system.group().order(), fx.system.algebra().dim(), rng)
}
