//! Avoider's script for keeping its graph outerplanar.
//!
//! Avoider keeps a core that is a maximal outerplanar graph minus one virtual
//! edge `m`, plus isolated vertices. Each isolated vertex is attached in two
//! moves through three consecutive outer-face vertices. Isolated vertices
//! that can no longer be attached that way are *bad*.

use crate::board::{Board, Edge, Owner, Player};
use crate::properties::{is_outerplanar, GameFamily};

use super::{AuditLog, SafeMovePicker, Strategy, OUTERPLANAR_MIN_N};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OuterplanarPhase {
    Bootstrap,
    GrowEarly,
    ReduceBad,
    GrowLate,
    Endgame,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexClass {
    Good,
    Bad,
}

/// Half-finished attachment of `v`: `v·mid` is claimed, one of `v·left`,
/// `v·right` follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pending {
    v: usize,
    left: usize,
    mid: usize,
    right: usize,
    reduce: bool,
}

#[derive(Clone, Debug)]
pub struct OuterplanarAvoider {
    n: usize,
    /// Outer face of core ∪ {m}, in cyclic order.
    face: Vec<usize>,
    in_core: Vec<bool>,
    virtual_edge: Option<Edge>,
    phase: OuterplanarPhase,
    pending: Option<Pending>,
    rotor: usize,
    reduce_checked: bool,
    /// Avoider move count at which a reduction finished.
    reduce_finished_at: Option<usize>,
    endgame_bad: Vec<usize>,
    picker: SafeMovePicker,
    diagnostics: Vec<String>,
}

impl OuterplanarAvoider {
    pub fn new(n: usize) -> Self {
        let mut diagnostics = Vec::new();
        if n < OUTERPLANAR_MIN_N {
            diagnostics.push(format!(
                "n={n} is below the scripted range (n >= {OUTERPLANAR_MIN_N})"
            ));
        }
        Self {
            n,
            face: Vec::new(),
            in_core: vec![false; n],
            virtual_edge: None,
            phase: OuterplanarPhase::Bootstrap,
            pending: None,
            rotor: 0,
            reduce_checked: false,
            reduce_finished_at: None,
            endgame_bad: Vec::new(),
            picker: SafeMovePicker::new(GameFamily::Outerplanar),
            diagnostics,
        }
    }

    /// Resumes from an existing core (the board must already hold it).
    pub fn with_core(n: usize, face: Vec<usize>, virtual_edge: Edge) -> Self {
        let mut s = Self::new(n);
        s.diagnostics.clear();
        for &v in &face {
            s.in_core[v] = true;
        }
        s.face = face;
        s.virtual_edge = Some(virtual_edge);
        s.phase = OuterplanarPhase::GrowEarly;
        s
    }

    pub fn phase(&self) -> OuterplanarPhase {
        self.phase
    }

    pub fn outer_face(&self) -> &[usize] {
        &self.face
    }

    pub fn virtual_edge(&self) -> Option<Edge> {
        self.virtual_edge
    }

    pub fn core_order(&self) -> usize {
        self.face.len()
    }

    fn target_order(&self) -> usize {
        self.n.div_ceil(4)
    }

    /// Face positions `j` with Enforcer owning `v·face[j]`.
    fn hits(&self, board: &Board, v: usize) -> Vec<bool> {
        self.face
            .iter()
            .map(|&x| board.owned_by(v, x, Player::Enforcer))
            .collect()
    }

    /// Good iff some three consecutive face vertices have no Enforcer edge to `v`.
    pub fn classify_vertex(&self, board: &Board, v: usize) -> VertexClass {
        if self.free_window(board, v, 0).is_some() {
            VertexClass::Good
        } else {
            VertexClass::Bad
        }
    }

    /// First window start `s` (scanning cyclically from `from`) such that none
    /// of `v·face[s]`, `v·face[s+1]`, `v·face[s+2]` is claimed.
    fn free_window(&self, board: &Board, v: usize, from: usize) -> Option<usize> {
        let len = self.face.len();
        if len < 3 {
            return None;
        }
        let free: Vec<bool> = self.face.iter().map(|&x| board.pair_unclaimed(v, x)).collect();
        (0..len)
            .map(|d| (from + d) % len)
            .find(|&s| free[s] && free[(s + 1) % len] && free[(s + 2) % len])
    }

    fn is_isolated_candidate(&self, board: &Board, v: usize) -> bool {
        !self.in_core[v]
            && board.degree(Player::Avoider, v) == 0
            && self.pending.is_none_or(|p| p.v != v)
    }

    fn split_isolated(&self, board: &Board) -> (Vec<usize>, Vec<usize>) {
        (0..self.n)
            .filter(|&v| self.is_isolated_candidate(board, v))
            .partition(|&v| self.classify_vertex(board, v) == VertexClass::Good)
    }

    pub fn bad_vertices(&self, board: &Board) -> Vec<usize> {
        self.split_isolated(board).1
    }

    fn splice(&mut self, v: usize, a: usize, b: usize) {
        let len = self.face.len();
        let pa = self.face.iter().position(|&x| x == a).expect("face vertex");
        let pos = if self.face[(pa + 1) % len] == b {
            pa + 1
        } else {
            debug_assert_eq!(self.face[(pa + len - 1) % len], b);
            pa
        };
        self.face.insert(pos, v);
        self.in_core[v] = true;
    }

    fn bootstrap(&mut self, board: &Board) -> Option<Edge> {
        let n = self.n;
        match board.moves_made(Player::Avoider) {
            0 => {
                let untouched = |x: usize| {
                    board.degree(Player::Avoider, x) + board.degree(Player::Enforcer, x) == 0
                };
                board
                    .unclaimed_edges()
                    .find(|e| untouched(e.u()) && untouched(e.v()))
                    .or_else(|| board.unclaimed_edges().next())
            }
            1 => {
                let first = board.last_move_by(Player::Avoider)?;
                let (a, b) = (first.u(), first.v());
                let pick = |hub: usize, other: usize| {
                    (0..n)
                        .filter(|&c| c != a && c != b)
                        .find(|&c| board.pair_unclaimed(hub, c))
                        .map(|c| (hub, other, c))
                };
                let (hub, other, c) = pick(b, a).or_else(|| pick(a, b))?;
                self.face = vec![other, hub, c];
                for v in [a, b, c] {
                    self.in_core[v] = true;
                }
                self.virtual_edge = Some(Edge::new(other, c));
                self.phase = OuterplanarPhase::GrowEarly;
                Some(Edge::new(hub, c))
            }
            _ => None,
        }
    }

    fn finish_pending(&mut self, board: &Board, p: Pending) -> Option<Edge> {
        self.pending = None;
        let (second, a, b) = if board.pair_unclaimed(p.v, p.left) {
            (Edge::new(p.v, p.left), p.left, p.mid)
        } else if board.pair_unclaimed(p.v, p.right) {
            (Edge::new(p.v, p.right), p.mid, p.right)
        } else {
            self.diagnostics.push(format!(
                "attachment of {} blocked: both {}-{} and {}-{} taken",
                p.v, p.v, p.left, p.v, p.right
            ));
            return None;
        };
        self.splice(p.v, a, b);
        if p.reduce {
            self.phase = OuterplanarPhase::GrowLate;
            self.reduce_finished_at = Some(board.moves_made(Player::Avoider) + 1);
        }
        Some(second)
    }

    /// Picks the reduction triple `(w1, w2, w3)` for the current bad set.
    fn reduction_triple(&self, board: &Board, bad: &[usize]) -> Option<(usize, usize, usize)> {
        let len = self.face.len();
        // For each bad vertex and face edge j = (face[j], face[j+1]): (block start, block size).
        let blocks: Vec<Vec<(usize, usize)>> = bad
            .iter()
            .map(|&b| {
                let hits: Vec<usize> = self
                    .hits(board, b)
                    .iter()
                    .enumerate()
                    .filter_map(|(j, &h)| h.then_some(j))
                    .collect();
                let mut of_edge = vec![(0, 0); len];
                for (t, &p) in hits.iter().enumerate() {
                    let q = hits[(t + 1) % hits.len()];
                    let size = match (q + len - p) % len {
                        0 => len,
                        d => d,
                    };
                    for d in 0..size {
                        of_edge[(p + d) % len] = (p, size);
                    }
                }
                of_edge
            })
            .collect();
        let contains = |(start, size): (usize, usize), j: usize| (j + len - start) % len < size;

        for j in 0..len {
            // sum of 1/|f_i(e)| < 2, scaled by 6
            let scaled: usize = blocks.iter().map(|bl| 6 / bl[j].1.clamp(1, 6)).sum();
            if scaled >= 12 {
                continue;
            }
            let triples: Vec<(usize, usize)> = blocks
                .iter()
                .map(|bl| bl[j])
                .filter(|&(_, size)| size == 3)
                .collect();
            let next = (j + 1) % len;
            let prev = (j + len - 1) % len;
            let count = |k: usize| triples.iter().filter(|&&bl| contains(bl, k)).count();
            if count(next) >= 2 {
                return Some((self.face[j], self.face[next], self.face[(j + 2) % len]));
            }
            if count(prev) >= 2 {
                return Some((self.face[next], self.face[j], self.face[prev]));
            }
        }
        None
    }

    fn start_reduction(&mut self, board: &Board, bad: &[usize]) -> Option<Edge> {
        let Some((w1, w2, w3)) = self.reduction_triple(board, bad) else {
            self.diagnostics
                .push("five bad vertices but no face edge with block sum below 2".into());
            return None;
        };
        let fresh = (0..self.n).find(|&u| {
            self.is_isolated_candidate(board, u) && board.degree(Player::Enforcer, u) == 0
        });
        let u = match fresh {
            Some(u) => u,
            None => {
                let alt = (0..self.n).find(|&u| {
                    self.is_isolated_candidate(board, u)
                        && !bad.contains(&u)
                        && [w1, w2, w3].iter().all(|&w| board.pair_unclaimed(u, w))
                });
                self.diagnostics
                    .push("no vertex isolated in Enforcer's graph for the reduction".into());
                alt?
            }
        };
        self.phase = OuterplanarPhase::ReduceBad;
        self.pending = Some(Pending {
            v: u,
            left: w1,
            mid: w2,
            right: w3,
            reduce: true,
        });
        Some(Edge::new(u, w2))
    }

    fn grow(&mut self, board: &Board) -> Option<Edge> {
        if !self.reduce_checked && self.face.len() >= self.target_order() {
            self.reduce_checked = true;
            let bad = self.bad_vertices(board);
            if bad.len() >= 5 {
                if bad.len() > 5 {
                    self.diagnostics
                        .push(format!("{} bad vertices at the reduction point", bad.len()));
                }
                if let Some(e) = self.start_reduction(board, &bad[..5]) {
                    return Some(e);
                }
            }
        }
        self.phase = if self.face.len() < self.target_order() {
            OuterplanarPhase::GrowEarly
        } else {
            OuterplanarPhase::GrowLate
        };
        let (good, bad) = self.split_isolated(board);
        let Some(&v) = good
            .iter()
            .max_by_key(|&&v| (board.degree(Player::Enforcer, v), std::cmp::Reverse(v)))
        else {
            self.phase = OuterplanarPhase::Endgame;
            self.endgame_bad = bad;
            return None;
        };
        let s = self
            .free_window(board, v, self.rotor % self.face.len())
            .expect("good vertex has a free window");
        self.rotor += 1;
        let len = self.face.len();
        let p = Pending {
            v,
            left: self.face[s],
            mid: self.face[(s + 1) % len],
            right: self.face[(s + 2) % len],
            reduce: false,
        };
        self.pending = Some(p);
        Some(Edge::new(v, p.mid))
    }

    fn endgame(&mut self, board: &Board) -> Edge {
        let n = board.n();
        let mut at_bad: Vec<Edge> = self
            .endgame_bad
            .iter()
            .flat_map(|&b| (0..n).filter_map(move |x| Edge::try_new(b, x)))
            .collect();
        at_bad.sort_unstable();
        at_bad.dedup();
        if let Some(e) = self.picker.safe_among(board, at_bad) {
            return e;
        }
        self.picker.pick(board)
    }

    fn fallback(&mut self, board: &Board) -> Edge {
        self.picker.pick(board)
    }
}

impl Strategy for OuterplanarAvoider {
    fn id(&self) -> &str {
        "paper-op-avoider"
    }

    fn next_move(&mut self, board: &Board) -> Edge {
        if let Some(p) = self.pending {
            if let Some(e) = self.finish_pending(board, p) {
                return e;
            }
            return self.fallback(board);
        }
        if self.phase == OuterplanarPhase::Bootstrap {
            if let Some(e) = self.bootstrap(board) {
                return e;
            }
            self.diagnostics.push("bootstrap triangle unavailable".into());
            return self.fallback(board);
        }
        if self.phase != OuterplanarPhase::Endgame {
            if let Some(e) = self.grow(board) {
                return e;
            }
            if self.phase != OuterplanarPhase::Endgame {
                return self.fallback(board);
            }
        }
        self.endgame(board)
    }

    fn audit(&self, board: &Board, log: &mut AuditLog) {
        use OuterplanarPhase::*;
        if !matches!(self.phase, GrowEarly | ReduceBad | GrowLate) || self.face.is_empty() {
            return;
        }
        let (good, bad) = self.split_isolated(board);
        log.check("bad-vertex-bound", bad.len() <= 5, || {
            format!("{} bad vertices: {bad:?}", bad.len())
        });
        if self.reduce_finished_at == Some(board.moves_made(Player::Avoider)) {
            log.check("bad-after-reduce", bad.len() <= 4, || {
                format!("{} bad vertices after reduction", bad.len())
            });
        }

        let max_deg = good
            .iter()
            .map(|&v| board.degree(Player::Enforcer, v))
            .max()
            .unwrap_or(0);
        let limit = 4.0 * (self.n as f64).ln();
        log.observe_max("good-enforcer-degree", max_deg as f64);
        log.observe_max("good-enforcer-degree-ratio", max_deg as f64 / limit);
        log.check_soft("box-degree", (max_deg as f64) <= limit, || {
            format!("good vertex with Enforcer degree {max_deg} > 4 ln n = {limit:.2}")
        });

        if self.pending.is_none() {
            let a = board.graph(Player::Avoider);
            let k = self.face.len();
            let m = self.virtual_edge.expect("core exists");
            let inside = a.edges().all(|(u, v)| self.in_core[u] && self.in_core[v]);
            let mut closed = a.clone();
            closed.add_edge(m.u(), m.v());
            let ok = inside
                && a.edge_count() == 2 * k - 4
                && board.owner(m) != Owner::Avoider
                && is_outerplanar(&closed);
            log.check("outerplanar-core", ok, || {
                format!(
                    "core of order {k} with {} Avoider edges is not maximal-outerplanar minus {m}",
                    a.edge_count()
                )
            });
        }
    }

    fn take_diagnostics(&mut self) -> Vec<String> {
        std::mem::take(&mut self.diagnostics)
    }
}
