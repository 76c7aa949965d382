//! Avoider's script for staying diamond-free.
//!
//! Phase One grows two stars centred at `c1 = 0` and `c2 = 1` (joined by an
//! edge) until they span every vertex. Phase Two builds a matching inside each
//! leaf set, so every matching edge closes a triangle with its centre.

use std::collections::BTreeSet;

use crate::board::{Board, Edge, Player};
use crate::properties::GameFamily;

use super::{AuditLog, SafeMovePicker, Strategy, DIAMOND_MIN_N};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiamondPhase {
    One,
    Two,
    /// Both leaf sets are exhausted; Avoider plays safe leftovers.
    Done,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Center(usize),
    Leaf(usize),
    Rest,
}

#[derive(Clone, Debug)]
pub struct DiamondAvoider {
    centers: [usize; 2],
    side: Vec<Side>,
    leaf_count: [usize; 2],
    rest_count: usize,
    phase: DiamondPhase,
    live: [BTreeSet<usize>; 2],
    matched: Vec<bool>,
    done_at: Option<usize>,
    picker: SafeMovePicker,
    diagnostics: Vec<String>,
}

impl DiamondAvoider {
    pub fn new(n: usize) -> Self {
        let centers = [0, 1];
        let mut side = vec![Side::Rest; n];
        for (i, &c) in centers.iter().enumerate() {
            if c < n {
                side[c] = Side::Center(i);
            }
        }
        let mut diagnostics = Vec::new();
        if n < DIAMOND_MIN_N {
            diagnostics.push(format!(
                "n={n} is below the scripted range (n >= {DIAMOND_MIN_N})"
            ));
        }
        Self {
            centers,
            side,
            leaf_count: [0, 0],
            rest_count: n.saturating_sub(2),
            phase: DiamondPhase::One,
            live: [BTreeSet::new(), BTreeSet::new()],
            matched: vec![false; n],
            done_at: None,
            picker: SafeMovePicker::new(GameFamily::DiamondFree),
            diagnostics,
        }
    }

    pub fn phase(&self) -> DiamondPhase {
        self.phase
    }

    pub fn centers(&self) -> (usize, usize) {
        (self.centers[0], self.centers[1])
    }

    /// Leaf set `L_i`, `i` in {1, 2}.
    pub fn leaves(&self, i: usize) -> Vec<usize> {
        (0..self.side.len())
            .filter(|&v| self.side[v] == Side::Leaf(i - 1))
            .collect()
    }

    /// Vertices still isolated in Avoider's graph.
    pub fn rest(&self) -> Vec<usize> {
        (0..self.side.len())
            .filter(|&v| self.side[v] == Side::Rest)
            .collect()
    }

    pub fn live(&self, i: usize) -> &BTreeSet<usize> {
        &self.live[i - 1]
    }

    fn balance(&self) -> usize {
        usize::from(self.leaf_count[1] < self.leaf_count[0])
    }

    fn enforcer_degree_into(&self, board: &Board, w: usize, accept: impl Fn(Side) -> bool) -> usize {
        board
            .graph(Player::Enforcer)
            .neighbors(w)
            .iter()
            .filter(|&&x| accept(self.side[x]))
            .count()
    }

    /// Rest vertex of maximum Enforcer degree toward `L_i ∪ R`, lowest on ties,
    /// whose edge to `c_i` is free.
    fn choose_rest(&self, board: &Board, i: usize) -> Option<usize> {
        let c = self.centers[i];
        (0..self.side.len())
            .filter(|&w| self.side[w] == Side::Rest && board.pair_unclaimed(w, c))
            .max_by_key(|&w| {
                let d = self.enforcer_degree_into(board, w, |s| s == Side::Leaf(i) || s == Side::Rest);
                (d, std::cmp::Reverse(w))
            })
    }

    fn attach(&mut self, v: usize, i: usize) -> Edge {
        self.side[v] = Side::Leaf(i);
        self.leaf_count[i] += 1;
        self.rest_count -= 1;
        if self.rest_count == 0 {
            self.phase = DiamondPhase::Two;
            for j in 0..2 {
                self.live[j] = self.leaves(j + 1).into_iter().collect();
            }
        }
        Edge::new(v, self.centers[i])
    }

    /// Joins rest vertex `v` to `c_i`, or to the other centre if that edge is gone.
    fn join(&mut self, board: &Board, v: usize, i: usize) -> Option<Edge> {
        for j in [i, 1 - i] {
            if board.pair_unclaimed(v, self.centers[j]) {
                if j != i {
                    self.diagnostics
                        .push(format!("edge {v}-{} taken, joining the other star", self.centers[i]));
                }
                return Some(self.attach(v, j));
            }
        }
        self.diagnostics.push(format!("vertex {v} cannot join either star"));
        self.free_join(board)
    }

    fn free_join(&mut self, board: &Board) -> Option<Edge> {
        let first = self.balance();
        for i in [first, 1 - first] {
            if let Some(w) = self.choose_rest(board, i) {
                return Some(self.attach(w, i));
            }
        }
        None
    }

    fn phase_one(&mut self, board: &Board) -> Option<Edge> {
        let Some(last) = board.last_move_by(Player::Enforcer) else {
            self.diagnostics.push("no Enforcer move to answer".into());
            return self.free_join(board);
        };
        let (x, y) = (last.u(), last.v());
        match (self.side[x], self.side[y]) {
            (Side::Center(i), _) | (_, Side::Center(i)) => {
                let z = if self.side[x] == Side::Center(i) { y } else { x };
                if self.side[z] == Side::Rest {
                    self.join(board, z, 1 - i)
                } else {
                    self.free_join(board)
                }
            }
            (Side::Leaf(i), Side::Rest) => self.join(board, y, 1 - i),
            (Side::Rest, Side::Leaf(i)) => self.join(board, x, 1 - i),
            (Side::Leaf(i), Side::Leaf(j)) if i == j => match self.choose_rest(board, i) {
                Some(w) => Some(self.attach(w, i)),
                None => self.free_join(board),
            },
            (Side::Leaf(_), Side::Leaf(_)) => self.free_join(board),
            (Side::Rest, Side::Rest) => {
                let i = self.balance();
                self.join(board, x.min(y), i)
            }
        }
    }

    fn live_degree(&self, board: &Board, i: usize, v: usize) -> usize {
        board
            .graph(Player::Enforcer)
            .neighbors(v)
            .iter()
            .filter(|x| self.live[i].contains(x))
            .count()
    }

    /// One matching edge inside `live_i`, discarding blocked maximum-degree vertices.
    fn match_in(&mut self, board: &Board, i: usize) -> Option<Edge> {
        loop {
            if self.live[i].len() < 2 {
                return None;
            }
            let by_degree = |v: usize| (self.live_degree(board, i, v), std::cmp::Reverse(v));
            let m = *self.live[i].iter().max_by_key(|&&v| by_degree(v)).expect("nonempty");
            let partner = self
                .live[i]
                .iter()
                .copied()
                .filter(|&y| y != m && board.pair_unclaimed(m, y))
                .max_by_key(|&y| by_degree(y));
            match partner {
                Some(y) => {
                    self.live[i].remove(&m);
                    self.live[i].remove(&y);
                    self.matched[m] = true;
                    self.matched[y] = true;
                    return Some(Edge::new(m, y));
                }
                None => {
                    self.live[i].remove(&m);
                }
            }
        }
    }

    fn phase_two(&mut self, board: &Board) -> Option<Edge> {
        let inside = board.last_move_by(Player::Enforcer).and_then(|e| {
            (0..2).find(|&i| self.live[i].contains(&e.u()) && self.live[i].contains(&e.v()))
        });
        let first = inside.unwrap_or_else(|| usize::from(self.live[1].len() > self.live[0].len()));
        for i in [first, 1 - first] {
            if let Some(e) = self.match_in(board, i) {
                return Some(e);
            }
        }
        None
    }

    fn density_parts(&self, board: &Board, i: usize) -> (usize, usize) {
        let counted = |s: Side, v: usize| match self.phase {
            DiamondPhase::One => s == Side::Leaf(i) || s == Side::Rest,
            _ => self.live[i].contains(&v),
        };
        let inside = |s: Side, v: usize| match self.phase {
            DiamondPhase::One => s == Side::Leaf(i),
            _ => self.live[i].contains(&v),
        };
        let num = board
            .graph(Player::Enforcer)
            .edges()
            .filter(|&(u, v)| {
                let (su, sv) = (self.side[u], self.side[v]);
                (inside(su, u) && counted(sv, v)) || (inside(sv, v) && counted(su, u))
            })
            .count();
        let den = match self.phase {
            DiamondPhase::One => self.leaf_count[i],
            _ => self.live[i].len(),
        };
        (num, den.max(1))
    }

    fn unsaturated(&self) -> usize {
        (0..self.side.len())
            .filter(|&v| matches!(self.side[v], Side::Leaf(_)) && !self.matched[v])
            .count()
    }
}

/// Enforcer edge density of star `i` (1 or 2), as tracked by the script.
pub fn density(state: &DiamondAvoider, board: &Board, i: usize) -> f64 {
    assert!(i == 1 || i == 2, "star index must be 1 or 2");
    let (num, den) = state.density_parts(board, i - 1);
    num as f64 / den as f64
}

impl Strategy for DiamondAvoider {
    fn id(&self) -> &str {
        "paper-diamond-avoider"
    }

    fn next_move(&mut self, board: &Board) -> Edge {
        if board.moves_made(Player::Avoider) == 0 {
            let c = Edge::new(self.centers[0], self.centers[1]);
            if board.is_unclaimed(c) {
                if self.rest_count == 0 {
                    self.phase = DiamondPhase::Two;
                }
                return c;
            }
        }
        let scripted = match self.phase {
            DiamondPhase::One => self.phase_one(board),
            DiamondPhase::Two => {
                let e = self.phase_two(board);
                if e.is_none() {
                    self.phase = DiamondPhase::Done;
                    self.done_at = Some(board.moves_made(Player::Avoider) + 1);
                }
                e
            }
            DiamondPhase::Done => None,
        };
        if let Some(e) = scripted {
            return e;
        }
        if self.phase == DiamondPhase::One {
            self.diagnostics.push("phase one rule not applicable".into());
        }
        self.picker.pick(board)
    }

    fn audit(&self, board: &Board, log: &mut AuditLog) {
        if self.phase != DiamondPhase::Done {
            for i in 0..2 {
                let (num, den) = self.density_parts(board, i);
                log.observe_max("density", num as f64 / den as f64);
                log.check("density", num <= den, || {
                    format!("star {}: {num} Enforcer edges over {den} vertices", i + 1)
                });
            }
        }
        if self.phase == DiamondPhase::One {
            let a = board.graph(Player::Avoider);
            let [c1, c2] = self.centers;
            let ok = a.edge_count() == 1 + self.leaf_count[0] + self.leaf_count[1]
                && a.edges().all(|(u, v)| {
                    (u, v) == (c1.min(c2), c1.max(c2))
                        || matches!((self.side[u], self.side[v]),
                            (Side::Center(i), Side::Leaf(j)) | (Side::Leaf(j), Side::Center(i)) if i == j)
                });
            log.check("star-structure", ok, || "Avoider's graph is not two joined stars".into());
        }
        if self.done_at == Some(board.moves_made(Player::Avoider)) {
            let u = self.unsaturated();
            log.observe_max("unsaturated", u as f64);
            log.check("unsaturated", u <= 6, || format!("{u} leaves unsaturated by the matchings"));
        }
    }

    fn take_diagnostics(&mut self) -> Vec<String> {
        std::mem::take(&mut self.diagnostics)
    }
}
