//! Baseline opponents: uniform random, greedy survival, and a degree-greedy
//! saboteur.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::board::{Board, Edge, Player};
use crate::properties::GameFamily;

use super::{SafeMovePicker, Strategy};

const REJECTION_TRIES: usize = 64;

/// Uniform over unclaimed edges.
#[derive(Clone, Debug)]
pub struct RandomStrategy {
    rng: ChaCha8Rng,
}

impl RandomStrategy {
    pub fn new(rng: ChaCha8Rng) -> Self {
        Self { rng }
    }
}

impl Strategy for RandomStrategy {
    fn id(&self) -> &str {
        "random"
    }

    fn next_move(&mut self, board: &Board) -> Edge {
        let total = board.edge_total();
        for _ in 0..REJECTION_TRIES {
            let i = self.rng.gen_range(0..total);
            if board.owner_at(i) == crate::board::Owner::Unclaimed {
                return Edge::from_index(i, board.n());
            }
        }
        let k = self.rng.gen_range(0..board.unclaimed_count());
        board
            .unclaimed_edges()
            .nth(k)
            .expect("unclaimed count out of sync")
    }
}

/// Lowest-index edge that keeps Avoider's graph non-losing.
#[derive(Clone, Debug)]
pub struct GreedyAvoider {
    picker: SafeMovePicker,
}

impl GreedyAvoider {
    pub fn new(family: GameFamily) -> Self {
        Self {
            picker: SafeMovePicker::new(family),
        }
    }
}

impl Strategy for GreedyAvoider {
    fn id(&self) -> &str {
        "greedy-avoider"
    }

    fn next_move(&mut self, board: &Board) -> Edge {
        self.picker.pick(board)
    }
}

/// Claims the unclaimed edge whose endpoints have the largest total Avoider
/// degree; ties go to the lowest edge index.
#[derive(Clone, Debug, Default)]
pub struct SaboteurEnforcer;

impl SaboteurEnforcer {
    pub fn new() -> Self {
        Self
    }

    pub fn choose(board: &Board) -> Edge {
        let n = board.n();
        let deg: Vec<usize> = (0..n).map(|v| board.degree(Player::Avoider, v)).collect();
        let mut by_deg: Vec<usize> = (0..n).collect();
        by_deg.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));

        // Largest achievable endpoint-degree sum.
        let mut best: Option<usize> = None;
        for (i, &u) in by_deg.iter().enumerate() {
            if let Some(b) = best {
                if deg[u] + deg[by_deg[0]] < b {
                    break;
                }
            }
            for &v in &by_deg[i + 1..] {
                if best.is_some_and(|b| deg[u] + deg[v] < b) {
                    break;
                }
                if board.pair_unclaimed(u, v) {
                    best = Some(best.map_or(deg[u] + deg[v], |b| b.max(deg[u] + deg[v])));
                    break;
                }
            }
        }
        let target = best.expect("saboteur called on a full board");

        // Lowest-index edge attaining it.
        let mut buckets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, &d) in deg.iter().enumerate() {
            buckets.entry(d).or_default().push(v);
        }
        for (u, &d) in deg.iter().enumerate() {
            let Some(need) = target.checked_sub(d) else {
                continue;
            };
            let Some(cands) = buckets.get(&need) else {
                continue;
            };
            let start = cands.partition_point(|&v| v <= u);
            if let Some(&v) = cands[start..].iter().find(|&&v| board.pair_unclaimed(u, v)) {
                return Edge::new(u, v);
            }
        }
        unreachable!("maximum degree sum was attained by some unclaimed edge")
    }
}

impl Strategy for SaboteurEnforcer {
    fn id(&self) -> &str {
        "saboteur-enforcer"
    }

    fn next_move(&mut self, board: &Board) -> Edge {
        Self::choose(board)
    }
}

/// Replays a fixed move list; used to push solver lines through the engine.
#[derive(Clone, Debug)]
pub struct Scripted {
    id: String,
    moves: std::vec::IntoIter<Edge>,
}

impl Scripted {
    pub fn new(id: impl Into<String>, moves: Vec<Edge>) -> Self {
        Self {
            id: id.into(),
            moves: moves.into_iter(),
        }
    }
}

impl Strategy for Scripted {
    fn id(&self) -> &str {
        &self.id
    }

    fn next_move(&mut self, board: &Board) -> Edge {
        self.moves
            .next()
            .or_else(|| super::lowest_unclaimed(board))
            .expect("scripted strategy asked to move on a full board")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::role_rng;

    #[test]
    fn random_is_reproducible() {
        let run = || {
            let mut b = Board::new(8).unwrap();
            let mut s = RandomStrategy::new(role_rng(42, Player::Avoider));
            let mut t = RandomStrategy::new(role_rng(42, Player::Enforcer));
            let mut seq = Vec::new();
            while !b.is_full() {
                let p = b.to_move();
                let e = if p == Player::Avoider {
                    s.next_move(&b)
                } else {
                    t.next_move(&b)
                };
                b.claim(p, e).unwrap();
                seq.push(e);
            }
            seq
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn greedy_skips_cycle_edge() {
        let b = Board::from_moves(
            6,
            &[Edge::new(0, 1), Edge::new(1, 2)],
            &[Edge::new(4, 5), Edge::new(3, 5)],
        )
        .unwrap();
        let mut g = GreedyAvoider::new(GameFamily::KDegenerate(1));
        assert_eq!(g.next_move(&b), Edge::new(0, 3));
    }

    #[test]
    fn saboteur_hits_star_center() {
        let b = Board::from_moves(
            7,
            &[Edge::new(0, 1), Edge::new(0, 2), Edge::new(0, 3)],
            &[Edge::new(4, 5), Edge::new(5, 6)],
        )
        .unwrap();
        let e = SaboteurEnforcer::choose(&b);
        assert!(e.touches(0), "{e}");
        // 0 has degree 3; all of 1..3 are owned, so the best partner has degree 0
        // and the lowest index among those is 4.
        assert_eq!(e, Edge::new(0, 4));
    }

    #[test]
    fn saboteur_prefers_two_hubs() {
        let b = Board::from_moves(
            8,
            &[Edge::new(0, 2), Edge::new(1, 3), Edge::new(0, 4), Edge::new(1, 5)],
            &[Edge::new(6, 7), Edge::new(2, 6), Edge::new(3, 7)],
        )
        .unwrap();
        assert_eq!(SaboteurEnforcer::choose(&b), Edge::new(0, 1));
    }
}
