//! Enforcer's triangle-blocking pairing: claim an anchor `uv`, then answer
//! every Avoider edge `xu` with `xv` (and `xv` with `xu`).

use crate::board::{Board, Edge, Owner, Player};

use super::{AuditLog, Strategy};

#[derive(Clone, Debug, Default)]
pub struct PairingEnforcer {
    anchor: Option<Edge>,
    /// Every edge before this index is claimed or touches the anchor.
    free_cursor: usize,
    /// Every edge before this index is claimed.
    any_cursor: usize,
}

impl PairingEnforcer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn anchor(&self) -> Option<Edge> {
        self.anchor
    }

    fn choose_anchor(board: &Board) -> Edge {
        let n = board.n();
        let opening = board.last_move_by(Player::Avoider);
        let disjoint = |e: &Edge| opening.is_none_or(|o| !o.touches(e.u()) && !o.touches(e.v()));
        board
            .unclaimed_edges()
            .find(disjoint)
            .or_else(|| board.unclaimed_edges().next())
            .unwrap_or_else(|| panic!("no unclaimed edge on K_{n}"))
    }

    /// The anchor-pair partner of Avoider's edge `e`, if `e` hangs off the anchor.
    pub fn partner(anchor: Edge, e: Edge) -> Option<Edge> {
        let (u, v) = (anchor.u(), anchor.v());
        if e == anchor {
            return None;
        }
        for (w, other) in [(u, v), (v, u)] {
            if let Some(x) = e.other(w) {
                if x != other {
                    return Some(Edge::new(x, other));
                }
            }
        }
        None
    }

    fn fallback(&mut self, board: &Board, anchor: Edge) -> Edge {
        let n = board.n();
        while self.free_cursor < board.edge_total() {
            let e = Edge::from_index(self.free_cursor, n);
            if board.owner_at(self.free_cursor) == Owner::Unclaimed
                && !e.touches(anchor.u())
                && !e.touches(anchor.v())
            {
                return e;
            }
            self.free_cursor += 1;
        }
        while board.owner_at(self.any_cursor) != Owner::Unclaimed {
            self.any_cursor += 1;
        }
        Edge::from_index(self.any_cursor, n)
    }
}

impl Strategy for PairingEnforcer {
    fn id(&self) -> &str {
        "pairing-enforcer"
    }

    fn next_move(&mut self, board: &Board) -> Edge {
        let Some(anchor) = self.anchor else {
            let a = Self::choose_anchor(board);
            self.anchor = Some(a);
            return a;
        };
        if let Some(last) = board.last_move_by(Player::Avoider) {
            if let Some(p) = Self::partner(anchor, last) {
                if board.is_unclaimed(p) {
                    return p;
                }
            }
        }
        self.fallback(board, anchor)
    }

    fn audit(&self, board: &Board, log: &mut AuditLog) {
        let Some(anchor) = self.anchor else {
            return;
        };
        log.check("pairing-anchor", board.owner(anchor) == Owner::Enforcer, || {
            format!("anchor {anchor} not owned by Enforcer")
        });
        let (u, v) = (anchor.u(), anchor.v());
        let both = (0..board.n()).find(|&x| {
            x != u && x != v && board.owned_by(x, u, Player::Avoider) && board.owned_by(x, v, Player::Avoider)
        });
        log.check("pairing-block", both.is_none(), || {
            let x = both.unwrap_or_default();
            format!("Avoider owns both {x}-{u} and {x}-{v} around anchor {anchor}")
        });
    }
}
