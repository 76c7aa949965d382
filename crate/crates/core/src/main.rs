use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use avoider_enforcer::board::Transcript;
use avoider_enforcer::harness::{
    check_transcript, run_game, summarize, sweep, write_rows, HarnessError, OutputFormat, RunConfig,
    SweepRow,
};
use avoider_enforcer::properties::GameFamily;
use avoider_enforcer::solver::{verify_relation1, Solver, DEFAULT_MEMO_BUDGET};
use avoider_enforcer::strategies::StrategyId;

#[derive(Parser)]
#[command(name = "ae", version, about = "Avoider-Enforcer games on the edges of K_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game and write its transcript.
    Play(PlayArgs),
    /// Play many games and write one row per game.
    Sweep(SweepArgs),
    /// Compute the exact game value on a small board.
    Solve(SolveArgs),
    /// Replay a transcript and verify it.
    Check(CheckArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// outerplanar, diamond or kdegenerate
    #[arg(long)]
    family: String,
    /// Degeneracy bound for the kdegenerate family.
    #[arg(long)]
    k: Option<usize>,
}

impl FamilyArgs {
    fn family(&self) -> Result<GameFamily, HarnessError> {
        Ok(GameFamily::from_parts(&self.family, self.k)?)
    }
}

#[derive(Args)]
struct PlayArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    avoider: String,
    #[arg(long)]
    enforcer: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the transcript.
    #[arg(long)]
    transcript: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    n: Option<usize>,
    #[arg(long, requires = "n_max")]
    n_min: Option<usize>,
    #[arg(long, requires = "n_min")]
    n_max: Option<usize>,
    #[arg(long, default_value_t = 1)]
    n_step: usize,
    /// Strategy id, or a comma-separated list.
    #[arg(long)]
    avoider: String,
    /// Strategy id, or a comma-separated list.
    #[arg(long)]
    enforcer: String,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Base seed; trial t uses seed + t.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    n: usize,
    /// Memo size limit in entries.
    #[arg(long, default_value_t = DEFAULT_MEMO_BUDGET)]
    memo_budget: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct CheckArgs {
    /// Transcript file (flag or positional).
    #[arg(long = "transcript", value_name = "PATH")]
    transcript: Option<PathBuf>,
    #[arg(conflicts_with = "transcript", value_name = "FILE")]
    file: Option<PathBuf>,
}

/// Failure kinds mapped onto exit codes.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Usage(_) | HarnessError::Strategy(_) | HarnessError::Property(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_ids(list: &str) -> Result<Vec<StrategyId>, Failure> {
    list.split(',')
        .map(|s| s.trim().parse::<StrategyId>().map_err(|e| usage(e.to_string())))
        .collect()
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn play(args: PlayArgs) -> Result<bool, Failure> {
    let family = args.family.family()?;
    let avoider: StrategyId = args.avoider.parse().map_err(|e: avoider_enforcer::strategies::StrategyError| usage(e.to_string()))?;
    let enforcer: StrategyId = args.enforcer.parse().map_err(|e: avoider_enforcer::strategies::StrategyError| usage(e.to_string()))?;
    let config = RunConfig::single(family, args.n, avoider, enforcer, args.seed);
    config.validate()?;
    let record = run_game(family, args.n, avoider, enforcer, args.seed)?;
    if let Some(path) = &args.transcript {
        std::fs::write(path, record.transcript.to_json_pretty() + "\n")
            .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    }
    for d in &record.transcript.diagnostics {
        eprintln!("diagnostic at move {} ({}): {}", d.move_index, d.strategy, d.message);
    }
    for v in &record.audit.warnings {
        eprintln!("warning {} at move {}: {}", v.invariant, v.move_index, v.detail);
    }
    for v in &record.audit.violations {
        eprintln!("invariant {} violated at move {}: {}", v.invariant, v.move_index, v.detail);
    }
    let outcome = record
        .result
        .loss_move()
        .map_or_else(|| "survived".to_string(), |t| t.to_string());
    println!("{} {} {} {}", family.name(), args.n, args.seed, outcome);
    Ok(record.audit.is_clean())
}

fn run_sweep(args: SweepArgs) -> Result<bool, Failure> {
    let family = args.family.family()?;
    let format: OutputFormat = args.format.parse()?;
    let ns = match (args.n, args.n_min, args.n_max) {
        (Some(n), None, None) => vec![n],
        (None, Some(lo), Some(hi)) => RunConfig::n_range(lo, hi, args.n_step)?,
        _ => return Err(usage("give either --n or both --n-min and --n-max")),
    };
    let config = RunConfig {
        family,
        ns,
        avoiders: parse_ids(&args.avoider)?,
        enforcers: parse_ids(&args.enforcer)?,
        trials: args.trials,
        seed: args.seed,
    };
    let outcomes = sweep(&config)?;
    let rows: Vec<SweepRow> = outcomes.iter().map(|o| o.row.clone()).collect();
    write_rows(&rows, format, output(args.out.as_deref())?)?;

    let mut clean = true;
    for o in &outcomes {
        if let Some(fault) = &o.fault {
            clean = false;
            eprintln!("n={} seed={}: {fault}", o.job.n, o.job.seed);
        }
        for v in o.audit().map(|a| a.violations.as_slice()).unwrap_or_default() {
            clean = false;
            eprintln!(
                "n={} {} vs {} seed={}: invariant {} violated at move {}: {}",
                o.job.n, o.job.avoider, o.job.enforcer, o.job.seed, v.invariant, v.move_index, v.detail
            );
        }
    }
    for s in summarize(&rows) {
        eprintln!("{s}");
    }
    Ok(clean)
}

fn solve(args: SolveArgs) -> Result<bool, Failure> {
    let family = args.family.family()?;
    let format: OutputFormat = args.format.parse()?;
    let mut solver =
        Solver::with_budget(family, args.n, args.memo_budget).map_err(|e| Failure::Runtime(e.to_string()))?;
    let value = solver.value();
    let report = verify_relation1(family, args.n).map_err(|e| Failure::Runtime(e.to_string()))?;
    println!("{value}");
    println!("{report}");
    if let Some(path) = &args.out {
        let row = SweepRow::optimal(family, args.n, value).map_err(HarnessError::from)?;
        write_rows(&[row], format, output(Some(path))?)?;
    }
    Ok(report.pass)
}

fn check(args: CheckArgs) -> Result<bool, Failure> {
    let path = args
        .transcript
        .or(args.file)
        .ok_or_else(|| usage("no transcript given"))?;
    let text = std::fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let transcript =
        Transcript::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let report = check_transcript(&transcript).map_err(|e| usage(e.to_string()))?;
    println!("{report}");
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Play(a) => play(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Solve(a) => solve(a),
        Command::Check(a) => check(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
