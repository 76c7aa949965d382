//! Outerplanarity recognition.
//!
//! A graph is outerplanar iff every block is. A 2-connected outerplanar block
//! on three or more vertices is a polygon with non-crossing chords, so it
//! always has a vertex of degree two whose neighbours are consecutive on the
//! outer cycle. Removing such a vertex `v` (neighbours `u`, `w`) and keeping or
//! inserting `uw` peels one inner face off. Every edge records how many peeled
//! faces it borders; an edge can border at most two inner faces, and the
//! reduction must end on a single edge.

use std::collections::{BTreeMap, VecDeque};

use super::blocks::blocks;
use super::SimpleGraph;

pub fn is_outerplanar(g: &SimpleGraph) -> bool {
    if g.n() >= 2 && g.edge_count() > 2 * g.n() - 3 {
        return false;
    }
    blocks(g).iter().all(|b| {
        let (nv, ne) = (b.vertices.len(), b.edges.len());
        if nv <= 2 {
            return true;
        }
        if ne > 2 * nv - 3 {
            return false;
        }
        block_is_outerplanar(&b.vertices, &b.edges)
    })
}

fn block_is_outerplanar(vertices: &[usize], edges: &[(usize, usize)]) -> bool {
    let local = |x: usize| vertices.binary_search(&x).expect("edge endpoint outside block");
    // neighbour -> number of peeled faces bordering that edge
    let mut adj: Vec<BTreeMap<usize, u8>> = vec![BTreeMap::new(); vertices.len()];
    for &(a, b) in edges {
        let (a, b) = (local(a), local(b));
        adj[a].insert(b, 0);
        adj[b].insert(a, 0);
    }

    let mut alive = vertices.len();
    let mut removed = vec![false; vertices.len()];
    let mut queue: VecDeque<usize> = (0..vertices.len()).filter(|&v| adj[v].len() == 2).collect();

    while alive > 2 {
        let Some(v) = queue.pop_front() else {
            return false;
        };
        if removed[v] || adj[v].len() != 2 {
            continue;
        }
        let mut it = adj[v].iter();
        let (&u, &cu) = it.next().unwrap();
        let (&w, &cw) = it.next().unwrap();
        if cu >= 2 || cw >= 2 {
            return false;
        }
        removed[v] = true;
        alive -= 1;
        adj[v].clear();
        adj[u].remove(&v);
        adj[w].remove(&v);

        let c = adj[u].get(&w).map_or(1, |&c| c + 1);
        if c > 2 {
            return false;
        }
        adj[u].insert(w, c);
        adj[w].insert(u, c);

        for x in [u, w] {
            if adj[x].len() == 2 {
                queue.push_back(x);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forbidden_minors_rejected() {
        assert!(!is_outerplanar(&SimpleGraph::complete(4)));
        assert!(!is_outerplanar(&SimpleGraph::complete_bipartite(2, 3)));
    }

    #[test]
    fn triangulated_hexagon_accepted() {
        let mut g = SimpleGraph::cycle(6);
        // hexagon on 0..5 with chords 1-5, 1-4, 2-4 (vertices 1..6 relabelled to 0..5)
        for (a, b) in [(1, 5), (1, 4), (2, 4)] {
            g.add_edge(a, b);
        }
        assert_eq!(g.edge_count(), 2 * 6 - 3);
        assert!(is_outerplanar(&g));
    }

    #[test]
    fn subdivided_k4_rejected() {
        // K_4 with every edge subdivided once is still not outerplanar.
        let mut g = SimpleGraph::new(10);
        let mut next = 4;
        for a in 0..4 {
            for b in a + 1..4 {
                g.add_edge(a, next);
                g.add_edge(next, b);
                next += 1;
            }
        }
        assert!(!is_outerplanar(&g));
    }

    #[test]
    fn k23_with_extra_chord_rejected_by_face_counts() {
        // Edge count alone passes (7 <= 2*5-3); the peeled-face bookkeeping catches it.
        let mut g = SimpleGraph::complete_bipartite(2, 3);
        g.add_edge(0, 1);
        assert!(!is_outerplanar(&g));
    }

    #[test]
    fn diamond_and_fans_are_outerplanar() {
        assert!(is_outerplanar(&SimpleGraph::diamond()));
        let fan = SimpleGraph::from_edges(7, (1..7).map(|v| (0, v)).chain((1..6).map(|v| (v, v + 1))));
        assert!(is_outerplanar(&fan));
    }
}
