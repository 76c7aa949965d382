//! Exhaustive minor containment for small graphs.
//!
//! `h` is a minor of `g` iff some graph reachable from `g` by edge contractions
//! contains `h` as a (not necessarily induced) subgraph; vertex and edge
//! deletions are absorbed by the subgraph test. Contraction results are
//! memoised in a normalised labelled form (vertices renumbered in increasing
//! order of their smallest original member).

use std::collections::HashSet;

use thiserror::Error;

use super::SimpleGraph;

pub const ORACLE_MAX_VERTICES: usize = 9;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("minor oracle supports at most {max} vertices, got {got}")]
pub struct CapacityError {
    pub max: usize,
    pub got: usize,
}

/// Adjacency as bitmasks over at most 16 vertices.
type Masks = Vec<u16>;

fn masks_of(g: &SimpleGraph) -> Masks {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, &w| m | (1 << w)))
        .collect()
}

fn edge_total(m: &Masks) -> u32 {
    m.iter().map(|x| x.count_ones()).sum::<u32>() / 2
}

pub fn has_minor_oracle(g: &SimpleGraph, h: &SimpleGraph) -> Result<bool, CapacityError> {
    if g.n() > ORACLE_MAX_VERTICES {
        return Err(CapacityError {
            max: ORACLE_MAX_VERTICES,
            got: g.n(),
        });
    }
    if h.n() > ORACLE_MAX_VERTICES {
        return Err(CapacityError {
            max: ORACLE_MAX_VERTICES,
            got: h.n(),
        });
    }
    // Isolated vertices of h can always be mapped to spare vertices.
    let h_core: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) > 0).collect();
    let spare = h.n() - h_core.len();
    let hc = SimpleGraph::from_edges(
        h_core.len(),
        h.edges().map(|(a, b)| {
            (
                h_core.binary_search(&a).unwrap(),
                h_core.binary_search(&b).unwrap(),
            )
        }),
    );
    if g.n() < h.n() {
        return Ok(false);
    }
    let target = Target::new(&hc);
    let mut seen = HashSet::new();
    Ok(search(masks_of(g), spare, &target, &mut seen))
}

struct Target {
    adj: Masks,
    edges: u32,
    order: Vec<usize>,
}

impl Target {
    fn new(h: &SimpleGraph) -> Self {
        // Map high-degree pattern vertices first for earlier pruning.
        let mut order: Vec<usize> = (0..h.n()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
        Self {
            adj: masks_of(h),
            edges: h.edge_count() as u32,
            order,
        }
    }
}

fn search(g: Masks, spare: usize, h: &Target, seen: &mut HashSet<Masks>) -> bool {
    let nv = g.len();
    if nv < h.adj.len() + spare || edge_total(&g) < h.edges {
        return false;
    }
    if !seen.insert(g.clone()) {
        return false;
    }
    if contains_subgraph(&g, h) {
        return true;
    }
    for a in 0..nv {
        let mut rest = g[a] & !((1u16 << (a + 1)) - 1);
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if search(contract(&g, a, b), spare, h, seen) {
                return true;
            }
        }
    }
    false
}

/// Merges `b` into `a` (`a < b`) and renumbers vertices above `b` down by one.
fn contract(g: &Masks, a: usize, b: usize) -> Masks {
    let squeeze = |m: u16| -> u16 {
        let low = m & ((1u16 << b) - 1);
        let high = (m >> (b + 1)) << b;
        low | high
    };
    let mut out = Vec::with_capacity(g.len() - 1);
    for (v, &m) in g.iter().enumerate() {
        if v == b {
            continue;
        }
        let mut m = m;
        if v == a {
            m |= g[b];
        }
        if m & (1 << b) != 0 {
            m = (m & !(1 << b)) | (1 << a);
        }
        m &= !(1 << v);
        out.push(squeeze(m));
    }
    out[a] &= !(1 << a);
    out
}

fn contains_subgraph(g: &Masks, h: &Target) -> bool {
    let mut image = vec![usize::MAX; h.adj.len()];
    embed(g, h, 0, 0, &mut image)
}

fn embed(g: &Masks, h: &Target, depth: usize, used: u16, image: &mut [usize]) -> bool {
    if depth == h.order.len() {
        return true;
    }
    let x = h.order[depth];
    let need = h.adj[x].count_ones();
    for v in 0..g.len() {
        if used & (1 << v) != 0 || g[v].count_ones() < need {
            continue;
        }
        let ok = h.order[..depth].iter().all(|&y| {
            let adjacent_h = h.adj[x] & (1 << y) != 0;
            !adjacent_h || g[v] & (1 << image[y]) != 0
        });
        if ok {
            image[x] = v;
            if embed(g, h, depth + 1, used | (1 << v), image) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_contains_diamond() {
        assert_eq!(
            has_minor_oracle(&SimpleGraph::complete(4), &SimpleGraph::diamond()),
            Ok(true)
        );
    }

    #[test]
    fn cycles_have_no_k4_minor() {
        assert_eq!(
            has_minor_oracle(&SimpleGraph::cycle(9), &SimpleGraph::complete(4)),
            Ok(false)
        );
    }

    #[test]
    fn subdivided_k4_contracts_to_k4() {
        let mut g = SimpleGraph::new(9);
        // K4 on 0..3 with edges 0-1, 0-2, 1-2, 2-3 subdivided.
        for (next, (a, b)) in (4..).zip([(0, 1), (0, 2), (1, 2), (2, 3)]) {
            g.add_edge(a, next);
            g.add_edge(next, b);
        }
        g.add_edge(0, 3);
        g.add_edge(1, 3);
        assert_eq!(has_minor_oracle(&g, &SimpleGraph::complete(4)), Ok(true));
    }

    #[test]
    fn petersen_sized_inputs_rejected() {
        assert_eq!(
            has_minor_oracle(&SimpleGraph::cycle(10), &SimpleGraph::complete(4)),
            Err(CapacityError { max: 9, got: 10 })
        );
    }

    #[test]
    fn contraction_renumbers() {
        // path 0-1-2-3, contract 1-2 -> path on 3 vertices
        let g = masks_of(&SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]));
        let c = contract(&g, 1, 2);
        assert_eq!(c, vec![0b010, 0b101, 0b010]);
    }

    #[test]
    fn k23_not_a_minor_of_outerplanar_fan() {
        let fan = SimpleGraph::from_edges(6, (1..6).map(|v| (0, v)).chain((1..5).map(|v| (v, v + 1))));
        assert_eq!(
            has_minor_oracle(&fan, &SimpleGraph::complete_bipartite(2, 3)),
            Ok(false)
        );
    }
}
