//! Avoider's script for staying k-degenerate.
//!
//! Phase One builds a maximal k-degenerate seed on `R = V_k ∪ {v_1..v_k}` by
//! nested stars. Phase Two attaches every other vertex with exactly `k` edges
//! through pairings of unclaimed edges.

use std::collections::HashMap;

use crate::board::{Board, Edge, Player};
use crate::properties::{DegeneracyCertificate, GameFamily};

use super::{lowest_unclaimed, AuditLog, SafeMovePicker, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KdegPhase {
    One,
    Two,
    /// Every pair is retired.
    Exhausted,
}

fn pow3(e: usize) -> usize {
    u32::try_from(e)
        .ok()
        .and_then(|e| 3usize.checked_pow(e))
        .unwrap_or(usize::MAX)
}

/// Size of `V_i`: `3^(3k - i + 1)`, saturating.
pub fn subphase_target(k: usize, i: usize) -> usize {
    pow3((3 * k + 1).saturating_sub(i))
}

/// Pairing slack of a vertex outside `R`.
pub fn f_value(deg_a: usize, deg_e: usize, r: usize) -> f64 {
    deg_a as f64 + (r as f64 - deg_e as f64 - deg_a as f64) / 2.0
}

#[derive(Clone, Debug)]
pub struct KDegenerateAvoider {
    n: usize,
    k: usize,
    phase: KdegPhase,
    anchors: Vec<usize>,
    levels: Vec<Vec<usize>>,
    /// Members of the current subphase's pool `V_{i-1}` (all vertices for i = 1).
    pool: Vec<bool>,
    in_level: Vec<bool>,
    /// (Avoider move count, available, needed) at the latest subphase start.
    feasibility: Option<(usize, usize, usize)>,
    /// (Avoider move count, |F|) when the partition was formed.
    f_size: Option<(usize, usize)>,
    ordering: Vec<usize>,
    d_set: Vec<usize>,
    f_set: Vec<usize>,
    pairs: Vec<[Edge; 2]>,
    pair_of: HashMap<usize, usize>,
    live: Vec<bool>,
    cursor: usize,
    complete: bool,
    picker: SafeMovePicker,
    /// n is above the size where the phase-one counts are guaranteed.
    in_range: bool,
    diagnostics: Vec<String>,
}

impl KDegenerateAvoider {
    pub fn new(n: usize, k: usize) -> Self {
        let mut diagnostics = Vec::new();
        let gate = pow3(3 * k + 1).saturating_mul(2);
        if n <= gate {
            diagnostics.push(format!(
                "n={n} is below the scripted range (n > 2*3^{} = {gate})",
                3 * k + 1
            ));
        }
        Self {
            n,
            k,
            phase: KdegPhase::One,
            anchors: Vec::new(),
            levels: Vec::new(),
            pool: vec![true; n],
            in_level: vec![false; n],
            feasibility: None,
            f_size: None,
            ordering: Vec::new(),
            d_set: Vec::new(),
            f_set: Vec::new(),
            pairs: Vec::new(),
            pair_of: HashMap::new(),
            live: Vec::new(),
            cursor: 0,
            complete: false,
            picker: SafeMovePicker::new(GameFamily::KDegenerate(k)),
            in_range: n > gate,
            diagnostics,
        }
    }

    pub fn phase(&self) -> KdegPhase {
        self.phase
    }

    /// Current subphase (1-based); 0 before the first move.
    pub fn subphase(&self) -> usize {
        self.anchors.len()
    }

    pub fn anchors(&self) -> &[usize] {
        &self.anchors
    }

    pub fn level(&self, i: usize) -> &[usize] {
        &self.levels[i - 1]
    }

    pub fn partition(&self) -> (&[usize], &[usize]) {
        (&self.d_set, &self.f_set)
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Starts subphase `i` (1-based) and returns its anchor.
    fn start_subphase(&mut self, board: &Board, i: usize) -> usize {
        let anchor = if i == 1 {
            self.pool = vec![true; self.n];
            0
        } else {
            let mut pool = vec![false; self.n];
            for &v in &self.levels[i - 2] {
                pool[v] = true;
            }
            self.pool = pool;
            *self.levels[i - 2]
                .iter()
                .min_by_key(|&&v| (self.induced_degree(board, v), v))
                .expect("previous level is nonempty")
        };
        self.in_level = vec![false; self.n];
        let available = (0..self.n)
            .filter(|&x| x != anchor && self.pool[x] && board.pair_unclaimed(anchor, x))
            .count();
        self.feasibility = Some((
            board.moves_made(Player::Avoider) + 1,
            available,
            subphase_target(self.k, i).saturating_mul(2),
        ));
        self.anchors.push(anchor);
        self.levels.push(Vec::new());
        anchor
    }

    /// Enforcer degree of `v` inside the current pool.
    fn induced_degree(&self, board: &Board, v: usize) -> usize {
        board
            .graph(Player::Enforcer)
            .neighbors(v)
            .iter()
            .filter(|&&x| self.pool[x])
            .count()
    }

    fn phase_one(&mut self, board: &Board) -> Option<Edge> {
        let mut i = self.anchors.len();
        if i == 0 || self.levels[i - 1].len() >= subphase_target(self.k, i) {
            if i == self.k {
                return None;
            }
            i += 1;
            self.start_subphase(board, i);
        }
        let anchor = self.anchors[i - 1];
        let key = |x: usize| {
            if i == 1 {
                board.degree(Player::Enforcer, x)
            } else {
                self.induced_degree(board, x)
            }
        };
        let pick = (0..self.n)
            .filter(|&x| {
                x != anchor && self.pool[x] && !self.in_level[x] && board.pair_unclaimed(anchor, x)
            })
            .min_by_key(|&x| (key(x), x));
        let Some(x) = pick else {
            self.diagnostics.push(format!(
                "subphase {i} stalled after {} of {} edges",
                self.levels[i - 1].len(),
                subphase_target(self.k, i)
            ));
            return None;
        };
        self.in_level[x] = true;
        self.levels[i - 1].push(x);
        Some(Edge::new(anchor, x))
    }

    fn build_pairs(&mut self, board: &Board) {
        let n = self.n;
        let k = self.k;
        let a = board.graph(Player::Avoider);
        let e = board.graph(Player::Enforcer);
        let mut in_r = vec![false; n];
        self.ordering = self.anchors.clone();
        for &v in &self.anchors {
            in_r[v] = true;
        }
        if let Some(top) = self.levels.last() {
            for &v in top {
                if !in_r[v] {
                    in_r[v] = true;
                    self.ordering.push(v);
                }
            }
        }
        let r = self.ordering.len();
        let count_into = |g: &crate::properties::SimpleGraph, x: usize, mask: &[bool]| {
            g.neighbors(x).iter().filter(|&&y| mask[y]).count()
        };
        let mut deg_a = vec![0; n];
        for x in (0..n).filter(|&x| !in_r[x]) {
            deg_a[x] = count_into(a, x, &in_r);
            let deg_e = count_into(e, x, &in_r);
            if deg_a[x] + r >= 2 * k + deg_e {
                self.d_set.push(x);
            } else {
                self.f_set.push(x);
            }
        }
        self.f_size = Some((board.moves_made(Player::Avoider) + 1, self.f_set.len()));

        let mut in_rd = in_r.clone();
        for &x in &self.d_set {
            in_rd[x] = true;
        }
        let mut complete = true;
        let groups = [(&self.d_set, &in_r), (&self.f_set, &in_rd)];
        let mut pairs = Vec::new();
        for (set, mask) in groups {
            for &x in set.iter() {
                let need = 2 * k.saturating_sub(deg_a[x]);
                if need == 0 {
                    continue;
                }
                let mut cands: Vec<Edge> = (0..n)
                    .filter(|&y| mask[y] && board.pair_unclaimed(x, y))
                    .map(|y| Edge::new(x, y))
                    .collect();
                cands.sort_unstable_by_key(|c| c.index(n));
                if cands.len() < need {
                    complete = false;
                    self.diagnostics.push(format!(
                        "vertex {x}: only {} of {need} unclaimed edges to pair",
                        cands.len()
                    ));
                }
                let take = need.min(cands.len()) & !1;
                for ch in cands[..take].chunks_exact(2) {
                    pairs.push([ch[0], ch[1]]);
                }
            }
        }
        self.ordering.extend(self.d_set.iter().copied());
        self.ordering.extend(self.f_set.iter().copied());
        for (p, pair) in pairs.iter().enumerate() {
            for e in pair {
                self.pair_of.insert(e.index(n), p);
            }
        }
        self.live = vec![true; pairs.len()];
        self.pairs = pairs;
        self.complete = complete && self.anchors.len() == k;
    }

    fn phase_two(&mut self, board: &Board) -> Option<Edge> {
        let n = self.n;
        if let Some(last) = board.last_move_by(Player::Enforcer) {
            if let Some(&p) = self.pair_of.get(&last.index(n)) {
                if self.live[p] {
                    self.live[p] = false;
                    let [a, b] = self.pairs[p];
                    let partner = if a == last { b } else { a };
                    if board.is_unclaimed(partner) {
                        return Some(partner);
                    }
                    self.diagnostics
                        .push(format!("partner {partner} of {last} already claimed"));
                }
            }
        }
        while self.cursor < self.pairs.len() && !self.live[self.cursor] {
            self.cursor += 1;
        }
        let p = self.cursor;
        if p == self.pairs.len() {
            return None;
        }
        self.live[p] = false;
        self.pairs[p].into_iter().find(|&e| board.is_unclaimed(e))
    }
}

impl Strategy for KDegenerateAvoider {
    fn id(&self) -> &str {
        "paper-kdeg-avoider"
    }

    fn next_move(&mut self, board: &Board) -> Edge {
        if self.phase == KdegPhase::One {
            if let Some(e) = self.phase_one(board) {
                return e;
            }
            self.build_pairs(board);
            self.phase = KdegPhase::Two;
        }
        if self.phase == KdegPhase::Two {
            if let Some(e) = self.phase_two(board) {
                return e;
            }
            self.phase = KdegPhase::Exhausted;
        }
        if self.complete {
            lowest_unclaimed(board).expect("board not full")
        } else {
            self.picker.pick(board)
        }
    }

    fn audit(&self, board: &Board, log: &mut AuditLog) {
        let now = board.moves_made(Player::Avoider);
        if let Some((at, available, needed)) = self.feasibility {
            if at == now {
                // below the range a shortfall is expected and only reported
                let check = if self.in_range { AuditLog::check } else { AuditLog::check_soft };
                check(log, "feasibility", available >= needed, || {
                    format!(
                        "subphase {}: {available} free anchor edges, need {needed}",
                        self.anchors.len()
                    )
                });
            }
        }
        if let Some((at, f)) = self.f_size {
            if at == now {
                let bound = pow3(3 * self.k + 1);
                log.observe_max("f-size", f as f64);
                log.check("f-size", f <= bound, || format!("|F| = {f} exceeds {bound}"));
            }
        }
        if self.phase == KdegPhase::Two {
            let a = board.graph(Player::Avoider);
            let back = DegeneracyCertificate::max_back_degree(a, &self.ordering);
            log.check("ordering-certificate", back.is_some_and(|b| b <= self.k), || {
                format!("ordering has maximum back-degree {back:?} > {}", self.k)
            });
        }
    }

    fn take_diagnostics(&mut self) -> Vec<String> {
        std::mem::take(&mut self.diagnostics)
    }
}
