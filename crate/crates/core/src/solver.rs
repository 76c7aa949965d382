//! Exact game values for small boards by memoised minimax.
//!
//! A position is a pair of disjoint edge masks. The memo is a flat array
//! indexed by the base-3 encoding of the board (0 unclaimed, 1 Avoider,
//! 2 Enforcer), so each entry is one byte.

use std::fmt;

use thiserror::Error;

use crate::board::Edge;
use crate::properties::{is_losing, tau_bounds, GameFamily, PropertyError, SimpleGraph};

/// Largest board the solver accepts.
pub const SOLVER_MAX_N: usize = 6;
/// Default memo budget in entries: enough for n = 6.
pub const DEFAULT_MEMO_BUDGET: usize = 14_348_907;

const UNKNOWN: u8 = 0;
const INF: u8 = u8::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GameValue {
    Finite(usize),
    Infinite,
}

impl fmt::Display for GameValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(t) => write!(f, "{t}"),
            Self::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("solver supports n <= {max}, got {n}")]
    Capacity { n: usize, max: usize },
    #[error("memo needs {needed} entries, budget is {budget}")]
    Budget { needed: usize, budget: usize },
    #[error("invalid position: {0}")]
    Position(String),
    #[error(transparent)]
    Property(#[from] PropertyError),
}

fn decode(v: u8) -> GameValue {
    if v == INF {
        GameValue::Infinite
    } else {
        GameValue::Finite(v as usize)
    }
}

fn encode(v: GameValue) -> u8 {
    match v {
        GameValue::Infinite => INF,
        GameValue::Finite(t) => t as u8,
    }
}

#[derive(Clone, Debug)]
pub struct Solver {
    family: GameFamily,
    n: usize,
    m: usize,
    pow3: Vec<usize>,
    memo: Vec<u8>,
    /// 0 unknown, 1 safe, 2 losing; keyed by Avoider's mask.
    loss: Vec<u8>,
    edges: Vec<Edge>,
}

impl Solver {
    pub fn new(family: GameFamily, n: usize) -> Result<Self, SolverError> {
        Self::with_budget(family, n, DEFAULT_MEMO_BUDGET)
    }

    pub fn with_budget(family: GameFamily, n: usize, budget: usize) -> Result<Self, SolverError> {
        if !(2..=SOLVER_MAX_N).contains(&n) {
            return Err(SolverError::Capacity {
                n,
                max: SOLVER_MAX_N,
            });
        }
        let m = n * (n - 1) / 2;
        let needed = 3usize.pow(m as u32);
        if needed > budget {
            return Err(SolverError::Budget { needed, budget });
        }
        let pow3 = (0..m).map(|i| 3usize.pow(i as u32)).collect();
        Ok(Self {
            family,
            n,
            m,
            pow3,
            memo: vec![UNKNOWN; needed],
            loss: vec![0; 1 << m],
            edges: (0..m).map(|i| Edge::from_index(i, n)).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn losing(&mut self, a: u32) -> bool {
        let slot = &mut self.loss[a as usize];
        if *slot == 0 {
            let g = SimpleGraph::from_edges(
                self.n,
                (0..self.m)
                    .filter(|&i| a >> i & 1 == 1)
                    .map(|i| (self.edges[i].u(), self.edges[i].v())),
            );
            *slot = if is_losing(&g, self.family) { 2 } else { 1 };
        }
        self.loss[a as usize] == 2
    }

    fn search(&mut self, a: u32, e: u32, key: usize) -> GameValue {
        if self.memo[key] != UNKNOWN {
            return decode(self.memo[key]);
        }
        let taken = a | e;
        let full = (1u32 << self.m) - 1;
        if taken == full {
            self.memo[key] = INF;
            return GameValue::Infinite;
        }
        let avoider_to_move = a.count_ones() == e.count_ones();
        let value = if avoider_to_move {
            let mut best = GameValue::Finite(0);
            for i in (0..self.m).filter(|&i| taken >> i & 1 == 0) {
                let a2 = a | 1 << i;
                let v = if self.losing(a2) {
                    GameValue::Finite(a2.count_ones() as usize)
                } else {
                    self.search(a2, e, key + self.pow3[i])
                };
                best = best.max(v);
                if best == GameValue::Infinite {
                    break;
                }
            }
            best
        } else {
            // Avoider cannot lose before its next move.
            let floor = GameValue::Finite(a.count_ones() as usize + 1);
            let mut best = GameValue::Infinite;
            for i in (0..self.m).filter(|&i| taken >> i & 1 == 0) {
                let v = self.search(a, e | 1 << i, key + 2 * self.pow3[i]);
                best = best.min(v);
                if best == floor {
                    break;
                }
            }
            best
        };
        self.memo[key] = encode(value);
        value
    }

    fn masks(&self, avoider: &[Edge], enforcer: &[Edge]) -> Result<(u32, u32, usize), SolverError> {
        let mut masks = [0u32; 2];
        let mut key = 0;
        for (side, list) in [avoider, enforcer].into_iter().enumerate() {
            for edge in list {
                if edge.v() >= self.n {
                    return Err(SolverError::Position(format!("edge {edge} outside K_{}", self.n)));
                }
                let i = edge.index(self.n);
                if (masks[0] | masks[1]) >> i & 1 == 1 {
                    return Err(SolverError::Position(format!("edge {edge} listed twice")));
                }
                masks[side] |= 1 << i;
                key += (side + 1) * self.pow3[i];
            }
        }
        let [a, e] = masks;
        let (ca, ce) = (a.count_ones(), e.count_ones());
        if ca != ce && ca != ce + 1 {
            return Err(SolverError::Position("move counts do not alternate".into()));
        }
        Ok((a, e, key))
    }

    /// Value of the game from the empty board.
    pub fn value(&mut self) -> GameValue {
        self.search(0, 0, 0)
    }

    /// Value from a given position. If Avoider's graph is already losing, the
    /// value is Avoider's edge count.
    pub fn value_at(&mut self, avoider: &[Edge], enforcer: &[Edge]) -> Result<GameValue, SolverError> {
        let (a, e, key) = self.masks(avoider, enforcer)?;
        if self.losing(a) {
            return Ok(GameValue::Finite(a.count_ones() as usize));
        }
        Ok(self.search(a, e, key))
    }

    /// One optimal line from the empty board: lowest-index optimal move at each
    /// turn, until Avoider loses or the board fills.
    pub fn principal_variation(&mut self) -> Vec<Edge> {
        let target = self.value();
        let (mut a, mut e, mut key) = (0u32, 0u32, 0usize);
        let mut line = Vec::new();
        loop {
            let taken = a | e;
            if taken == (1u32 << self.m) - 1 {
                break;
            }
            let avoider_to_move = a.count_ones() == e.count_ones();
            let here = self.search(a, e, key);
            debug_assert_eq!(here, target);
            let mut chosen = None;
            for i in (0..self.m).filter(|&i| taken >> i & 1 == 0) {
                let v = if avoider_to_move {
                    let a2 = a | 1 << i;
                    if self.losing(a2) {
                        GameValue::Finite(a2.count_ones() as usize)
                    } else {
                        self.search(a2, e, key + self.pow3[i])
                    }
                } else {
                    self.search(a, e | 1 << i, key + 2 * self.pow3[i])
                };
                if v == here {
                    chosen = Some(i);
                    break;
                }
            }
            let i = chosen.expect("some move attains the position value");
            line.push(self.edges[i]);
            if avoider_to_move {
                a |= 1 << i;
                key += self.pow3[i];
                if self.losing(a) {
                    break;
                }
            } else {
                e |= 1 << i;
                key += 2 * self.pow3[i];
            }
        }
        line
    }
}

pub fn solve_tau(family: GameFamily, n: usize) -> Result<GameValue, SolverError> {
    Ok(Solver::new(family, n)?.value())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation1Report {
    pub family: GameFamily,
    pub n: usize,
    pub tau: GameValue,
    pub lower: usize,
    pub upper: usize,
    pub pass: bool,
    /// Avoider wins, so the bounds hold trivially.
    pub vacuous: bool,
}

impl fmt::Display for Relation1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tau={} bounds=({}, {}) {}",
            self.tau,
            self.lower,
            self.upper,
            if self.pass { "pass" } else { "FAIL" }
        )?;
        if self.vacuous {
            f.write_str(" (vacuous: Avoider wins)")?;
        }
        Ok(())
    }
}

pub fn verify_relation1(family: GameFamily, n: usize) -> Result<Relation1Report, SolverError> {
    let tau = solve_tau(family, n)?;
    let (lower, upper) = tau_bounds(family, n)?;
    let (pass, vacuous) = match tau {
        GameValue::Infinite => (true, true),
        GameValue::Finite(t) => (lower <= t && t <= upper, false),
    };
    Ok(Relation1Report {
        family,
        n,
        tau,
        lower,
        upper,
        pass,
        vacuous,
    })
}

/// Plain minimax that always plays the board out and scores the index of
/// Avoider's first losing move. No memo; meant for boards of at most 10 edges.
pub fn reference_value(family: GameFamily, n: usize) -> Result<GameValue, SolverError> {
    let m = n * (n - 1) / 2;
    if n < 2 || m > 10 {
        return Err(SolverError::Capacity { n, max: 5 });
    }
    let edges: Vec<Edge> = (0..m).map(|i| Edge::from_index(i, n)).collect();
    fn go(
        family: GameFamily,
        n: usize,
        edges: &[Edge],
        a: u32,
        e: u32,
        first_loss: Option<usize>,
    ) -> GameValue {
        let m = edges.len();
        let taken = a | e;
        if taken == (1u32 << m) - 1 {
            return first_loss.map_or(GameValue::Infinite, GameValue::Finite);
        }
        let avoider = a.count_ones() == e.count_ones();
        let children = (0..m).filter(|&i| taken >> i & 1 == 0).map(|i| {
            if avoider {
                let a2 = a | 1 << i;
                let loss = first_loss.or_else(|| {
                    let g = SimpleGraph::from_edges(
                        n,
                        (0..m).filter(|&j| a2 >> j & 1 == 1).map(|j| (edges[j].u(), edges[j].v())),
                    );
                    is_losing(&g, family).then(|| a2.count_ones() as usize)
                });
                go(family, n, edges, a2, e, loss)
            } else {
                go(family, n, edges, a, e | 1 << i, first_loss)
            }
        });
        if avoider {
            children.max().expect("nonempty")
        } else {
            children.min().expect("nonempty")
        }
    }
    Ok(go(family, n, &edges, 0, 0, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_values() {
        assert_eq!(solve_tau(GameFamily::Outerplanar, 4), Ok(GameValue::Infinite));
        assert_eq!(solve_tau(GameFamily::DiamondFree, 4), Ok(GameValue::Infinite));
        assert_eq!(solve_tau(GameFamily::Outerplanar, 5), Ok(GameValue::Infinite));
        assert_eq!(solve_tau(GameFamily::KDegenerate(1), 4), Ok(GameValue::Infinite));
        assert_eq!(solve_tau(GameFamily::KDegenerate(1), 3), Ok(GameValue::Infinite));
    }

    #[test]
    fn ordering() {
        assert!(GameValue::Infinite > GameValue::Finite(1000));
        assert!(GameValue::Finite(3) < GameValue::Finite(4));
    }

    #[test]
    fn capacity_errors() {
        assert!(matches!(solve_tau(GameFamily::Outerplanar, 7), Err(SolverError::Capacity { .. })));
        assert!(matches!(
            Solver::with_budget(GameFamily::Outerplanar, 5, 1000),
            Err(SolverError::Budget { needed: 59049, .. })
        ));
    }

    #[test]
    fn pruning_matches_full_playout() {
        for family in [GameFamily::Outerplanar, GameFamily::DiamondFree, GameFamily::KDegenerate(1)] {
            assert_eq!(reference_value(family, 4).unwrap(), solve_tau(family, 4).unwrap());
        }
    }

    #[test]
    fn losing_position_value() {
        let mut s = Solver::new(GameFamily::KDegenerate(1), 4).unwrap();
        let a = [Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 2)];
        let e = [Edge::new(2, 3), Edge::new(0, 3)];
        assert_eq!(s.value_at(&a, &e), Ok(GameValue::Finite(3)));
        assert!(s.value_at(&a[..1], &e).is_err());
    }
}
