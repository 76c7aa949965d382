//! The game loop.

use thiserror::Error;

use crate::properties::{is_losing, GameFamily};
use crate::strategies::{AuditLog, Strategy};

use super::{Board, BoardError, Diagnostic, Edge, MoveRecord, Player, ResultDoc, Transcript, TRANSCRIPT_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GameResult {
    /// Avoider's t-th edge (1-based) was the first to create a losing set.
    Lost(usize),
    Survived,
}

impl GameResult {
    pub fn loss_move(&self) -> Option<usize> {
        match self {
            Self::Lost(t) => Some(*t),
            Self::Survived => None,
        }
    }

    pub fn to_doc(self) -> ResultDoc {
        match self {
            Self::Lost(t) => ResultDoc::Lost { lost_at: t },
            Self::Survived => ResultDoc::Survived { survived: true },
        }
    }
}

impl From<&ResultDoc> for GameResult {
    fn from(doc: &ResultDoc) -> Self {
        match doc {
            ResultDoc::Lost { lost_at } => Self::Lost(*lost_at),
            ResultDoc::Survived { .. } => Self::Survived,
        }
    }
}

#[derive(Debug, Error)]
pub enum GameError {
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error("strategy `{strategy}` played illegal edge {edge} at move {move_index}: {source}")]
    StrategyFault {
        strategy: String,
        move_index: usize,
        edge: Edge,
        #[source]
        source: BoardError,
    },
}

/// A finished game: the transcript, its result, and the invariant audit.
#[derive(Clone, Debug)]
pub struct GameRecord {
    pub transcript: Transcript,
    pub result: GameResult,
    pub audit: AuditLog,
    pub board: Board,
}

/// Plays one game, Avoider first, stopping at Avoider's first losing move.
///
/// Both strategies' `audit` hooks run after every Avoider move, before the loss
/// check.
pub fn play_game(
    n: usize,
    family: GameFamily,
    avoider: &mut dyn Strategy,
    enforcer: &mut dyn Strategy,
    seed: u64,
) -> Result<GameRecord, GameError> {
    let mut board = Board::new(n)?;
    let mut moves = Vec::new();
    let mut diagnostics = Vec::new();
    let mut audit = AuditLog::default();
    let mut result = GameResult::Survived;

    while !board.is_full() {
        let player = board.to_move();
        let strategy: &mut dyn Strategy = match player {
            Player::Avoider => &mut *avoider,
            Player::Enforcer => &mut *enforcer,
        };
        let e = strategy.next_move(&board);
        let ply = moves.len() + 1;
        board.claim(player, e).map_err(|source| GameError::StrategyFault {
            strategy: strategy.id().to_string(),
            move_index: ply,
            edge: e,
            source,
        })?;
        moves.push(MoveRecord {
            p: player.tag().to_string(),
            e,
        });
        for message in strategy.take_diagnostics() {
            diagnostics.push(Diagnostic {
                move_index: ply,
                strategy: strategy.id().to_string(),
                message,
            });
        }
        if player == Player::Avoider {
            audit.set_move_index(ply);
            avoider.audit(&board, &mut audit);
            enforcer.audit(&board, &mut audit);
            if is_losing(board.graph(Player::Avoider), family) {
                result = GameResult::Lost(board.moves_made(Player::Avoider));
                break;
            }
        }
    }

    let transcript = Transcript {
        version: TRANSCRIPT_VERSION,
        family: family.name().to_string(),
        k: family.k(),
        n,
        seed,
        avoider: avoider.id().to_string(),
        enforcer: enforcer.id().to_string(),
        moves,
        result: result.to_doc(),
        diagnostics,
    };
    Ok(GameRecord {
        transcript,
        result,
        audit,
        board,
    })
}
