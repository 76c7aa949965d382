//! Move generators for both players.
//!
//! Every strategy is a deterministic function of its construction parameters
//! (n, family, seed, role) and the board it is shown. Scripted strategies
//! additionally report monitored invariants through [`AuditLog`].

mod baseline;
mod diamond;
mod kdegenerate;
mod outerplanar;
mod pairing;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::board::{Board, Edge, Owner, Player};
use crate::properties::{is_losing, GameFamily};

pub use baseline::{GreedyAvoider, RandomStrategy, SaboteurEnforcer, Scripted};
pub use diamond::{density, DiamondAvoider, DiamondPhase};
pub use kdegenerate::{f_value, subphase_target, KDegenerateAvoider, KdegPhase};
pub use outerplanar::{OuterplanarAvoider, OuterplanarPhase, VertexClass};
pub use pairing::PairingEnforcer;

/// Smallest n at which the outerplanar script is considered in range.
pub const OUTERPLANAR_MIN_N: usize = 50;
/// Smallest n at which the diamond script is considered in range.
pub const DIAMOND_MIN_N: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("unknown strategy `{0}`")]
    Unknown(String),
    #[error("strategy `{id}` cannot play as {role}")]
    WrongRole { id: StrategyId, role: Player },
    #[error("strategy `{id}` only plays the {family} game")]
    WrongFamily { id: StrategyId, family: &'static str },
}

/// Registered strategy identifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrategyId {
    PaperOuterplanarAvoider,
    PaperDiamondAvoider,
    PaperKdegAvoider,
    PairingEnforcer,
    Random,
    GreedyAvoider,
    SaboteurEnforcer,
}

impl StrategyId {
    pub const ALL: [StrategyId; 7] = [
        Self::PaperOuterplanarAvoider,
        Self::PaperDiamondAvoider,
        Self::PaperKdegAvoider,
        Self::PairingEnforcer,
        Self::Random,
        Self::GreedyAvoider,
        Self::SaboteurEnforcer,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::PaperOuterplanarAvoider => "paper-op-avoider",
            Self::PaperDiamondAvoider => "paper-diamond-avoider",
            Self::PaperKdegAvoider => "paper-kdeg-avoider",
            Self::PairingEnforcer => "pairing-enforcer",
            Self::Random => "random",
            Self::GreedyAvoider => "greedy-avoider",
            Self::SaboteurEnforcer => "saboteur-enforcer",
        }
    }

    pub fn can_play(&self, role: Player) -> bool {
        match self {
            Self::Random => true,
            Self::PairingEnforcer | Self::SaboteurEnforcer => role == Player::Enforcer,
            _ => role == Player::Avoider,
        }
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StrategyId {
    type Err = StrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| StrategyError::Unknown(s.to_string()))
    }
}

/// One broken invariant, tied to the 1-based move index after which it was
/// observed.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub invariant: &'static str,
    pub move_index: usize,
    pub detail: String,
}

/// Collects invariant checks and running maxima while a game is played or
/// replayed.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AuditLog {
    move_index: usize,
    pub violations: Vec<Violation>,
    /// Soft findings: reported but never fatal.
    pub warnings: Vec<Violation>,
    /// Running maxima of monitored quantities.
    pub maxima: BTreeMap<&'static str, f64>,
    /// Number of times each invariant was evaluated.
    pub checks: BTreeMap<&'static str, usize>,
}

impl AuditLog {
    pub fn set_move_index(&mut self, i: usize) {
        self.move_index = i;
    }

    pub fn move_index(&self) -> usize {
        self.move_index
    }

    pub fn check(&mut self, invariant: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        *self.checks.entry(invariant).or_default() += 1;
        if !ok {
            self.violations.push(Violation {
                invariant,
                move_index: self.move_index,
                detail: detail(),
            });
        }
    }

    pub fn check_soft(&mut self, invariant: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        *self.checks.entry(invariant).or_default() += 1;
        if !ok {
            self.warnings.push(Violation {
                invariant,
                move_index: self.move_index,
                detail: detail(),
            });
        }
    }

    pub fn observe_max(&mut self, metric: &'static str, value: f64) {
        let slot = self.maxima.entry(metric).or_insert(f64::NEG_INFINITY);
        if value > *slot {
            *slot = value;
        }
    }

    pub fn checked(&self, invariant: &str) -> usize {
        self.checks.get(invariant).copied().unwrap_or(0)
    }

    pub fn violated(&self, invariant: &str) -> bool {
        self.violations.iter().any(|v| v.invariant == invariant)
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Common contract for move generators.
pub trait Strategy {
    fn id(&self) -> &str;

    /// Called only when it is this strategy's turn and the board is not full.
    /// Must return an unclaimed edge.
    fn next_move(&mut self, board: &Board) -> Edge;

    /// Evaluates monitored invariants; called after every Avoider move.
    fn audit(&self, _board: &Board, _log: &mut AuditLog) {}

    /// Fallback events raised since the last call.
    fn take_diagnostics(&mut self) -> Vec<String> {
        Vec::new()
    }
}

/// Independent random stream per (seed, role).
pub fn role_rng(seed: u64, role: Player) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(match role {
        Player::Avoider => 0xA,
        Player::Enforcer => 0xE,
    });
    rng
}

/// Instantiates a registered strategy for one game.
pub fn build(
    id: StrategyId,
    role: Player,
    n: usize,
    family: GameFamily,
    seed: u64,
) -> Result<Box<dyn Strategy + Send>, StrategyError> {
    if !id.can_play(role) {
        return Err(StrategyError::WrongRole { id, role });
    }
    let wrong_family = |family: &'static str| StrategyError::WrongFamily { id, family };
    Ok(match id {
        StrategyId::PaperOuterplanarAvoider => {
            if family != GameFamily::Outerplanar {
                return Err(wrong_family("outerplanar"));
            }
            Box::new(OuterplanarAvoider::new(n))
        }
        StrategyId::PaperDiamondAvoider => {
            if family != GameFamily::DiamondFree {
                return Err(wrong_family("diamond"));
            }
            Box::new(DiamondAvoider::new(n))
        }
        StrategyId::PaperKdegAvoider => match family {
            GameFamily::KDegenerate(k) => Box::new(KDegenerateAvoider::new(n, k)),
            _ => return Err(wrong_family("kdegenerate")),
        },
        StrategyId::PairingEnforcer => Box::new(PairingEnforcer::new()),
        StrategyId::Random => Box::new(RandomStrategy::new(role_rng(seed, role))),
        StrategyId::GreedyAvoider => Box::new(GreedyAvoider::new(family)),
        StrategyId::SaboteurEnforcer => Box::new(SaboteurEnforcer::new()),
    })
}

/// Lowest-index unclaimed edge that keeps Avoider's graph non-losing, falling
/// back to the lowest-index unclaimed edge.
///
/// Losing extensions stay losing as the game goes on, so rejected edges are
/// remembered and never retested.
#[derive(Clone, Debug)]
pub struct SafeMovePicker {
    family: GameFamily,
    dead: Vec<bool>,
    cursor: usize,
}

impl SafeMovePicker {
    pub fn new(family: GameFamily) -> Self {
        Self {
            family,
            dead: Vec::new(),
            cursor: 0,
        }
    }

    fn ensure(&mut self, board: &Board) {
        if self.dead.len() != board.edge_total() {
            self.dead = vec![false; board.edge_total()];
        }
    }

    fn skip(&self, board: &Board, i: usize) -> bool {
        board.owner_at(i) != Owner::Unclaimed || self.dead[i]
    }

    fn is_safe(&mut self, board: &Board, g: &mut crate::properties::SimpleGraph, i: usize) -> bool {
        let e = Edge::from_index(i, board.n());
        g.add_edge(e.u(), e.v());
        let safe = !is_losing(g, self.family);
        g.remove_edge(e.u(), e.v());
        if !safe {
            self.dead[i] = true;
        }
        safe
    }

    /// Lowest-index safe edge, if any.
    pub fn safe_move(&mut self, board: &Board) -> Option<Edge> {
        self.ensure(board);
        while self.cursor < self.dead.len() && self.skip(board, self.cursor) {
            self.cursor += 1;
        }
        let mut g = board.player_graph(Player::Avoider);
        for i in self.cursor..self.dead.len() {
            if !self.skip(board, i) && self.is_safe(board, &mut g, i) {
                return Some(Edge::from_index(i, board.n()));
            }
        }
        None
    }

    /// Lowest-index safe edge among `candidates` (tested in the given order).
    pub fn safe_among<I>(&mut self, board: &Board, candidates: I) -> Option<Edge>
    where
        I: IntoIterator<Item = Edge>,
    {
        self.ensure(board);
        let mut g = board.player_graph(Player::Avoider);
        for e in candidates {
            let i = e.index(board.n());
            if !self.skip(board, i) && self.is_safe(board, &mut g, i) {
                return Some(e);
            }
        }
        None
    }

    pub fn pick(&mut self, board: &Board) -> Edge {
        self.safe_move(board)
            .unwrap_or_else(|| lowest_unclaimed(board).expect("pick called on a full board"))
    }
}

pub fn lowest_unclaimed(board: &Board) -> Option<Edge> {
    board
        .first_unclaimed_from(0)
        .map(|i| Edge::from_index(i, board.n()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers_roundtrip() {
        for id in StrategyId::ALL {
            assert_eq!(id.as_str().parse::<StrategyId>(), Ok(id));
        }
        assert!("minimax".parse::<StrategyId>().is_err());
    }

    #[test]
    fn roles_and_families_enforced() {
        assert!(matches!(
            build(StrategyId::PairingEnforcer, Player::Avoider, 10, GameFamily::Outerplanar, 0),
            Err(StrategyError::WrongRole { .. })
        ));
        assert!(matches!(
            build(StrategyId::PaperDiamondAvoider, Player::Avoider, 10, GameFamily::Outerplanar, 0),
            Err(StrategyError::WrongFamily { .. })
        ));
        assert!(build(StrategyId::Random, Player::Enforcer, 10, GameFamily::DiamondFree, 0).is_ok());
    }

    #[test]
    fn safe_picker_skips_losing_edges() {
        let b = Board::from_moves(5, &[Edge::new(0, 1), Edge::new(1, 2)], &[Edge::new(3, 4), Edge::new(2, 4)])
            .unwrap();
        let mut p = SafeMovePicker::new(GameFamily::KDegenerate(1));
        assert_eq!(p.pick(&b), Edge::new(0, 3));
    }
}
