//! Transcript validation by replay.
//!
//! Legality and the loss index are checked from the move list alone. When a
//! recorded strategy id is registered, the strategy is rebuilt from the
//! transcript's seed and shadowed: every recorded move must match what it
//! plays, and its invariant audit runs after each Avoider move.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::board::{Board, BoardError, GameResult, Player, Transcript, TRANSCRIPT_VERSION};
use crate::properties::{is_losing, GameFamily};
use crate::strategies::{build, AuditLog, Strategy, StrategyId};

/// The document itself is unusable.
#[derive(Debug, Error)]
pub enum CheckError {
    #[error("unsupported transcript version {0}")]
    Version(u32),
    #[error("bad family: {0}")]
    Family(String),
    #[error("bad board: {0}")]
    Board(#[from] BoardError),
    #[error("move {index}: unknown player tag `{tag}`")]
    PlayerTag { index: usize, tag: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckFailure {
    pub check: String,
    /// 1-based index into the move list.
    pub move_index: usize,
    pub detail: String,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FAIL {} at move {}: {}", self.check, self.move_index, self.detail)
    }
}

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub moves: usize,
    pub failures: Vec<CheckFailure>,
    /// Evaluation counts per check, including strategy invariants.
    pub checks: BTreeMap<String, usize>,
    pub warnings: Vec<CheckFailure>,
    /// Strategies that were rebuilt and shadowed.
    pub shadowed: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, check: &str) -> bool {
        self.failures.iter().any(|f| f.check == check)
    }

    fn count(&mut self, check: &str) {
        *self.checks.entry(check.to_string()).or_default() += 1;
    }

    fn fail(&mut self, check: &str, move_index: usize, detail: String) {
        self.failures.push(CheckFailure {
            check: check.to_string(),
            move_index,
            detail,
        });
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (check, count) in &self.checks {
            let status = if self.failed(check) { "FAIL" } else { "ok" };
            writeln!(f, "{status:>4} {check} ({count} evaluations)")?;
        }
        for w in &self.warnings {
            writeln!(f, "warn {} at move {}: {}", w.check, w.move_index, w.detail)?;
        }
        for fail in &self.failures {
            writeln!(f, "{fail}")?;
        }
        write!(
            f,
            "{} after {} moves",
            if self.passed() { "pass" } else { "FAIL" },
            self.moves
        )
    }
}

struct Shadow {
    role: Player,
    strategy: Box<dyn Strategy + Send>,
    in_sync: bool,
}

fn shadows(t: &Transcript, family: GameFamily, report: &mut CheckReport) -> Vec<Shadow> {
    let mut out = Vec::new();
    for (role, id) in [(Player::Avoider, &t.avoider), (Player::Enforcer, &t.enforcer)] {
        let Ok(sid) = id.parse::<StrategyId>() else {
            continue;
        };
        if let Ok(strategy) = build(sid, role, t.n, family, t.seed) {
            report.shadowed.push(id.clone());
            out.push(Shadow {
                role,
                strategy,
                in_sync: true,
            });
        }
    }
    out
}

pub fn check_transcript(t: &Transcript) -> Result<CheckReport, CheckError> {
    if t.version != TRANSCRIPT_VERSION {
        return Err(CheckError::Version(t.version));
    }
    let family = GameFamily::from_parts(&t.family, t.k).map_err(|e| CheckError::Family(e.to_string()))?;
    let mut board = Board::new(t.n)?;
    let mut report = CheckReport {
        moves: t.moves.len(),
        ..CheckReport::default()
    };
    let mut shadows = shadows(t, family, &mut report);
    let mut audit = AuditLog::default();
    let mut first_loss: Option<(usize, usize)> = None;

    for (i, mv) in t.moves.iter().enumerate() {
        let ply = i + 1;
        let player = match mv.p.as_str() {
            "A" => Player::Avoider,
            "E" => Player::Enforcer,
            tag => {
                return Err(CheckError::PlayerTag {
                    index: ply,
                    tag: tag.to_string(),
                })
            }
        };
        report.count("alternation");
        if board.is_full() || player != board.to_move() {
            report.fail(
                "alternation",
                ply,
                format!("{player} moved, expected {}", board.to_move()),
            );
            break;
        }
        report.count("duplicate-edge");
        if let Err(err) = board.check_edge(mv.e) {
            report.fail("duplicate-edge", ply, err.to_string());
            break;
        }
        if !board.is_unclaimed(mv.e) {
            report.fail("duplicate-edge", ply, format!("edge {} claimed twice", mv.e));
            break;
        }

        for s in shadows.iter_mut().filter(|s| s.role == player && s.in_sync) {
            report.count("strategy-replay");
            let expected = s.strategy.next_move(&board);
            if expected != mv.e {
                s.in_sync = false;
                let id = s.strategy.id().to_string();
                report.fail(
                    "strategy-replay",
                    ply,
                    format!("{id} would play {expected}, transcript has {}", mv.e),
                );
            }
            s.strategy.take_diagnostics();
        }

        board.claim(player, mv.e)?;

        if player == Player::Avoider {
            audit.set_move_index(ply);
            for s in shadows.iter().filter(|s| s.in_sync) {
                s.strategy.audit(&board, &mut audit);
            }
            if first_loss.is_none() && is_losing(board.graph(Player::Avoider), family) {
                first_loss = Some((board.moves_made(Player::Avoider), ply));
            }
        }
    }

    for (check, count) in &audit.checks {
        *report.checks.entry(check.to_string()).or_default() += count;
    }
    for v in &audit.violations {
        report.fail(v.invariant, v.move_index, v.detail.clone());
    }
    for v in &audit.warnings {
        report.warnings.push(CheckFailure {
            check: v.invariant.to_string(),
            move_index: v.move_index,
            detail: v.detail.clone(),
        });
    }

    report.count("loss-index");
    let recorded = GameResult::from(&t.result);
    let stopped = report.failed("alternation") || report.failed("duplicate-edge");
    if !stopped {
        match (recorded, first_loss) {
            (GameResult::Lost(r), Some((t_loss, ply))) if r == t_loss => {
                if ply != t.moves.len() {
                    report.fail(
                        "loss-index",
                        ply + 1,
                        format!("moves continue after the losing move {ply}"),
                    );
                }
            }
            (GameResult::Lost(r), Some((t_loss, ply))) => report.fail(
                "loss-index",
                ply,
                format!("recorded loss at Avoider move {r}, replay loses at {t_loss}"),
            ),
            (GameResult::Lost(r), None) => report.fail(
                "loss-index",
                t.moves.len(),
                format!("recorded loss at Avoider move {r}, replay never loses"),
            ),
            (GameResult::Survived, Some((t_loss, ply))) => report.fail(
                "loss-index",
                ply,
                format!("recorded survival, replay loses at Avoider move {t_loss}"),
            ),
            (GameResult::Survived, None) if !board.is_full() => report.fail(
                "loss-index",
                t.moves.len(),
                "recorded survival but the board is not exhausted".into(),
            ),
            (GameResult::Survived, None) => {}
        }
    }
    Ok(report)
}
