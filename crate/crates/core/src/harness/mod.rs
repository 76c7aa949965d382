//! Game runs, parameter sweeps and their row output.

mod check;

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::board::{play_game, GameError, GameRecord, Player};
use crate::properties::{extremal, tau_bounds, GameFamily, PropertyError};
use crate::solver::{GameValue, SolverError};
use crate::strategies::{build, AuditLog, StrategyError, StrategyId};

pub use check::{check_transcript, CheckError, CheckFailure, CheckReport};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Property(#[from] PropertyError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// What to run: every (n, avoider, enforcer, trial) combination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub family: GameFamily,
    pub ns: Vec<usize>,
    pub avoiders: Vec<StrategyId>,
    pub enforcers: Vec<StrategyId>,
    pub trials: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn single(family: GameFamily, n: usize, avoider: StrategyId, enforcer: StrategyId, seed: u64) -> Self {
        Self {
            family,
            ns: vec![n],
            avoiders: vec![avoider],
            enforcers: vec![enforcer],
            trials: 1,
            seed,
        }
    }

    /// `min..=max` in steps of `step`.
    pub fn n_range(min: usize, max: usize, step: usize) -> Result<Vec<usize>, HarnessError> {
        if step == 0 || min > max {
            return Err(HarnessError::Usage(format!(
                "empty n range {min}..={max} step {step}"
            )));
        }
        Ok((min..=max).step_by(step).collect())
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.ns.is_empty() {
            return Err(HarnessError::Usage("no board sizes given".into()));
        }
        if self.trials == 0 {
            return Err(HarnessError::Usage("trial count must be at least 1".into()));
        }
        if self.avoiders.is_empty() || self.enforcers.is_empty() {
            return Err(HarnessError::Usage("no strategies given".into()));
        }
        for &n in &self.ns {
            tau_bounds(self.family, n)?;
            for &a in &self.avoiders {
                build(a, Player::Avoider, n, self.family, 0)?;
            }
            for &e in &self.enforcers {
                build(e, Player::Enforcer, n, self.family, 0)?;
            }
        }
        self.seed
            .checked_add(self.trials as u64 - 1)
            .ok_or_else(|| HarnessError::Usage("seed range overflows u64".into()))?;
        Ok(())
    }

    /// Every game of the sweep, in output order.
    pub fn jobs(&self) -> Vec<Job> {
        let mut jobs = Vec::new();
        for &n in &self.ns {
            for &avoider in &self.avoiders {
                for &enforcer in &self.enforcers {
                    for trial in 0..self.trials {
                        jobs.push(Job {
                            n,
                            avoider,
                            enforcer,
                            seed: self.seed + trial as u64,
                        });
                    }
                }
            }
        }
        jobs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Job {
    pub n: usize,
    pub avoider: StrategyId,
    pub enforcer: StrategyId,
    pub seed: u64,
}

/// Survival guarantee of the scripted Avoider: 2n-7, d(n)-2 or e(n)+1.
pub fn theorem_lower(family: GameFamily, n: usize) -> Result<usize, PropertyError> {
    let ex = extremal(family, n)?;
    Ok(match family {
        GameFamily::Outerplanar => (2 * n).saturating_sub(7),
        GameFamily::DiamondFree => ex.saturating_sub(2),
        GameFamily::KDegenerate(_) => ex + 1,
    })
}

/// One CSV/JSON output row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub family: String,
    pub k: Option<usize>,
    pub avoider: String,
    pub enforcer: String,
    pub seed: u64,
    pub loss_move: Option<usize>,
    pub bound_lower: usize,
    pub bound_upper: usize,
    pub theorem_lower: usize,
    pub within_bounds: bool,
    pub diagnostics: usize,
}

impl SweepRow {
    pub fn new(
        family: GameFamily,
        n: usize,
        avoider: &str,
        enforcer: &str,
        seed: u64,
        loss_move: Option<usize>,
        diagnostics: usize,
    ) -> Result<Self, PropertyError> {
        let (bound_lower, bound_upper) = tau_bounds(family, n)?;
        Ok(Self {
            n,
            family: family.name().to_string(),
            k: family.k(),
            avoider: avoider.to_string(),
            enforcer: enforcer.to_string(),
            seed,
            loss_move,
            bound_lower,
            bound_upper,
            theorem_lower: theorem_lower(family, n)?,
            within_bounds: loss_move.is_none_or(|t| t <= bound_upper),
            diagnostics,
        })
    }

    /// Row for a solver value; both strategy columns read `optimal`.
    pub fn optimal(family: GameFamily, n: usize, value: GameValue) -> Result<Self, PropertyError> {
        let loss = match value {
            GameValue::Finite(t) => Some(t),
            GameValue::Infinite => None,
        };
        Self::new(family, n, "optimal", "optimal", 0, loss, 0)
    }
}

/// A played sweep game. `record` is `None` when a strategy faulted.
#[derive(Clone, Debug)]
pub struct GameOutcome {
    pub job: Job,
    pub row: SweepRow,
    pub record: Option<GameRecord>,
    pub fault: Option<String>,
}

impl GameOutcome {
    pub fn audit(&self) -> Option<&AuditLog> {
        self.record.as_ref().map(|r| &r.audit)
    }
}

/// Builds both strategies by id and plays one game.
pub fn run_game(
    family: GameFamily,
    n: usize,
    avoider: StrategyId,
    enforcer: StrategyId,
    seed: u64,
) -> Result<GameRecord, HarnessError> {
    let mut a = build(avoider, Player::Avoider, n, family, seed)?;
    let mut e = build(enforcer, Player::Enforcer, n, family, seed)?;
    Ok(play_game(n, family, a.as_mut(), e.as_mut(), seed)?)
}

fn run_job(family: GameFamily, job: Job) -> Result<GameOutcome, HarnessError> {
    let row = |loss, diags| {
        SweepRow::new(family, job.n, job.avoider.as_str(), job.enforcer.as_str(), job.seed, loss, diags)
    };
    match run_game(family, job.n, job.avoider, job.enforcer, job.seed) {
        Ok(record) => Ok(GameOutcome {
            job,
            row: row(record.result.loss_move(), record.transcript.diagnostics.len())?,
            record: Some(record),
            fault: None,
        }),
        Err(HarnessError::Game(err @ GameError::StrategyFault { .. })) => {
            let mut r = row(None, 1)?;
            r.within_bounds = false;
            Ok(GameOutcome {
                job,
                row: r,
                record: None,
                fault: Some(err.to_string()),
            })
        }
        Err(err) => Err(err),
    }
}

/// Plays every job of `config` (in parallel) and returns outcomes in job order.
pub fn sweep(config: &RunConfig) -> Result<Vec<GameOutcome>, HarnessError> {
    config.validate()?;
    config
        .jobs()
        .into_par_iter()
        .map(|job| run_job(config.family, job))
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(HarnessError::Usage(format!("unknown format `{s}`"))),
        }
    }
}

pub fn write_rows<W: Write>(rows: &[SweepRow], format: OutputFormat, mut out: W) -> Result<(), HarnessError> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if rows.is_empty() {
                w.write_record(CSV_HEADER)?;
            }
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub const CSV_HEADER: [&str; 12] = [
    "n",
    "family",
    "k",
    "avoider",
    "enforcer",
    "seed",
    "loss_move",
    "bound_lower",
    "bound_upper",
    "theorem_lower",
    "within_bounds",
    "diagnostics",
];

/// Min and median loss move over the rows of one (n, avoider, enforcer) group.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub n: usize,
    pub avoider: String,
    pub enforcer: String,
    pub games: usize,
    pub survived: usize,
    pub min: Option<usize>,
    pub median: Option<f64>,
    pub theorem_lower: usize,
}

pub fn summarize(rows: &[SweepRow]) -> Vec<Summary> {
    let mut out: Vec<Summary> = Vec::new();
    let mut losses: Vec<Vec<usize>> = Vec::new();
    for row in rows {
        let same = out.last().is_some_and(|s| {
            s.n == row.n && s.avoider == row.avoider && s.enforcer == row.enforcer
        });
        if !same {
            out.push(Summary {
                n: row.n,
                avoider: row.avoider.clone(),
                enforcer: row.enforcer.clone(),
                games: 0,
                survived: 0,
                min: None,
                median: None,
                theorem_lower: row.theorem_lower,
            });
            losses.push(Vec::new());
        }
        let s = out.last_mut().expect("pushed above");
        s.games += 1;
        match row.loss_move {
            Some(t) => losses.last_mut().expect("pushed above").push(t),
            None => s.survived += 1,
        }
    }
    for (s, mut l) in out.iter_mut().zip(losses) {
        l.sort_unstable();
        s.min = l.first().copied();
        s.median = match l.len() {
            0 => None,
            len if len % 2 == 1 => Some(l[len / 2] as f64),
            len => Some((l[len / 2 - 1] + l[len / 2]) as f64 / 2.0),
        };
    }
    out
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        write!(
            f,
            "n={} {} vs {}: games={} survived={} min={} median={} guarantee={}",
            self.n,
            self.avoider,
            self.enforcer,
            self.games,
            self.survived,
            show(self.min.map(|m| m.to_string())),
            show(self.median.map(|m| m.to_string())),
            self.theorem_lower
        )
    }
}
