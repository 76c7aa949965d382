//! The shared board E(K_n) and the alternating-move protocol.

mod engine;
mod transcript;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::properties::SimpleGraph;

pub use engine::{play_game, GameError, GameRecord, GameResult};
pub use transcript::{Diagnostic, MoveRecord, ResultDoc, Transcript, TRANSCRIPT_VERSION};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoardError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("edge {0} is already claimed by {1}")]
    OccupiedEdge(Edge, Player),
    #[error("it is {expected}'s turn, not {got}'s")]
    OutOfTurn { expected: Player, got: Player },
    #[error("edge {edge} has a vertex outside 0..{n}")]
    VertexOutOfRange { edge: Edge, n: usize },
    #[error("board is full")]
    Full,
}

/// An edge of K_n in canonical orientation `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Canonicalises the endpoint order. Panics on a loop.
    pub fn new(a: usize, b: usize) -> Self {
        Self::try_new(a, b).expect("an edge needs two distinct endpoints")
    }

    pub fn try_new(a: usize, b: usize) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Self { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(Self { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`; `None` if `x` is not an endpoint.
    pub fn other(&self, x: usize) -> Option<usize> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }

    /// Row-major position among the C(n,2) edges.
    pub fn index(&self, n: usize) -> usize {
        self.u * n - self.u * (self.u + 1) / 2 + (self.v - self.u - 1)
    }

    pub fn from_index(index: usize, n: usize) -> Self {
        // Row u starts at u*n - u(u+1)/2 and holds n-u-1 edges.
        let mut u = 0;
        let mut start = 0;
        while start + (n - u - 1) <= index {
            start += n - u - 1;
            u += 1;
        }
        Self {
            u,
            v: u + 1 + (index - start),
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.u, e.v]
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = String;

    fn try_from([a, b]: [usize; 2]) -> Result<Self, Self::Error> {
        Edge::try_new(a, b).ok_or_else(|| format!("loop {a}-{b} is not an edge"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Avoider,
    Enforcer,
}

impl Player {
    pub fn other(self) -> Self {
        match self {
            Self::Avoider => Self::Enforcer,
            Self::Enforcer => Self::Avoider,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Self::Avoider => "A",
            Self::Enforcer => "E",
        }
    }

    fn slot(self) -> usize {
        match self {
            Self::Avoider => 0,
            Self::Enforcer => 1,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Avoider => "Avoider",
            Self::Enforcer => "Enforcer",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
#[repr(u8)]
pub enum Owner {
    #[default]
    Unclaimed,
    Avoider,
    Enforcer,
}

impl From<Player> for Owner {
    fn from(p: Player) -> Self {
        match p {
            Player::Avoider => Owner::Avoider,
            Player::Enforcer => Owner::Enforcer,
        }
    }
}

/// Ownership of every edge of K_n plus the move history.
///
/// Each player's graph is maintained incrementally so strategies can query
/// degrees and adjacency without rebuilding anything.
#[derive(Clone, Debug)]
pub struct Board {
    n: usize,
    owner: Vec<Owner>,
    history: Vec<(Player, Edge)>,
    graphs: [SimpleGraph; 2],
}

impl Board {
    pub fn new(n: usize) -> Result<Self, BoardError> {
        if n < 2 {
            return Err(BoardError::InvalidParameter(format!(
                "board needs at least 2 vertices, got {n}"
            )));
        }
        Ok(Self {
            n,
            owner: vec![Owner::Unclaimed; n * (n - 1) / 2],
            history: Vec::new(),
            graphs: [SimpleGraph::new(n), SimpleGraph::new(n)],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_total(&self) -> usize {
        self.owner.len()
    }

    pub fn unclaimed_count(&self) -> usize {
        self.owner.len() - self.history.len()
    }

    pub fn is_full(&self) -> bool {
        self.history.len() == self.owner.len()
    }

    pub fn to_move(&self) -> Player {
        if self.moves_made(Player::Avoider) == self.moves_made(Player::Enforcer) {
            Player::Avoider
        } else {
            Player::Enforcer
        }
    }

    pub fn moves_made(&self, p: Player) -> usize {
        self.graphs[p.slot()].edge_count()
    }

    pub fn history(&self) -> &[(Player, Edge)] {
        &self.history
    }

    pub fn last_move(&self) -> Option<(Player, Edge)> {
        self.history.last().copied()
    }

    /// Most recent edge claimed by `p`.
    pub fn last_move_by(&self, p: Player) -> Option<Edge> {
        self.history.iter().rev().find(|(q, _)| *q == p).map(|&(_, e)| e)
    }

    pub fn owner(&self, e: Edge) -> Owner {
        self.owner[e.index(self.n)]
    }

    pub fn owner_at(&self, index: usize) -> Owner {
        self.owner[index]
    }

    pub fn is_unclaimed(&self, e: Edge) -> bool {
        self.owner(e) == Owner::Unclaimed
    }

    /// Convenience for vertex pairs that may coincide.
    pub fn pair_unclaimed(&self, a: usize, b: usize) -> bool {
        Edge::try_new(a, b).is_some_and(|e| self.is_unclaimed(e))
    }

    pub fn owned_by(&self, a: usize, b: usize, p: Player) -> bool {
        Edge::try_new(a, b).is_some_and(|e| self.owner(e) == Owner::from(p))
    }

    /// Graph of the edges `p` owns; borrowed view.
    pub fn graph(&self, p: Player) -> &SimpleGraph {
        &self.graphs[p.slot()]
    }

    /// Graph of the edges `p` owns; owned copy.
    pub fn player_graph(&self, p: Player) -> SimpleGraph {
        self.graphs[p.slot()].clone()
    }

    pub fn degree(&self, p: Player, v: usize) -> usize {
        self.graphs[p.slot()].degree(v)
    }

    pub fn check_edge(&self, e: Edge) -> Result<(), BoardError> {
        if e.v >= self.n {
            return Err(BoardError::VertexOutOfRange { edge: e, n: self.n });
        }
        Ok(())
    }

    pub fn claim(&mut self, player: Player, e: Edge) -> Result<(), BoardError> {
        self.check_edge(e)?;
        if self.is_full() {
            return Err(BoardError::Full);
        }
        let expected = self.to_move();
        if player != expected {
            return Err(BoardError::OutOfTurn {
                expected,
                got: player,
            });
        }
        let i = e.index(self.n);
        match self.owner[i] {
            Owner::Unclaimed => {}
            Owner::Avoider => return Err(BoardError::OccupiedEdge(e, Player::Avoider)),
            Owner::Enforcer => return Err(BoardError::OccupiedEdge(e, Player::Enforcer)),
        }
        self.owner[i] = player.into();
        self.history.push((player, e));
        self.graphs[player.slot()].add_edge(e.u, e.v);
        Ok(())
    }

    /// Lowest-index unclaimed edge at or after `from`.
    pub fn first_unclaimed_from(&self, from: usize) -> Option<usize> {
        (from..self.owner.len()).find(|&i| self.owner[i] == Owner::Unclaimed)
    }

    pub fn unclaimed_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |u| (u + 1..n).map(move |v| Edge { u, v }))
            .filter(|e| self.is_unclaimed(*e))
    }

    /// Builds a board by interleaving two move lists (Avoider first).
    pub fn from_moves(
        n: usize,
        avoider: &[Edge],
        enforcer: &[Edge],
    ) -> Result<Self, BoardError> {
        let mut b = Self::new(n)?;
        let rounds = avoider.len().max(enforcer.len());
        for i in 0..rounds {
            if let Some(&e) = avoider.get(i) {
                b.claim(Player::Avoider, e)?;
            }
            if let Some(&e) = enforcer.get(i) {
                b.claim(Player::Enforcer, e)?;
            }
        }
        Ok(b)
    }
}
