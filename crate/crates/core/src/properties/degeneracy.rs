//! Degeneracy orderings.

use std::collections::BTreeSet;

use super::SimpleGraph;

/// Degeneracy of a graph together with an ordering in which every vertex has
/// at most `k` neighbours that precede it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyCertificate {
    pub k: usize,
    pub ordering: Vec<usize>,
}

impl DegeneracyCertificate {
    /// Largest number of earlier neighbours any vertex has in `ordering`.
    /// `None` if `ordering` is not a permutation of the vertices of `g`.
    pub fn max_back_degree(g: &SimpleGraph, ordering: &[usize]) -> Option<usize> {
        let n = g.n();
        if ordering.len() != n {
            return None;
        }
        let mut rank = vec![usize::MAX; n];
        for (i, &v) in ordering.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return None;
            }
            rank[v] = i;
        }
        Some(
            (0..n)
                .map(|v| g.neighbors(v).iter().filter(|&&w| rank[w] < rank[v]).count())
                .max()
                .unwrap_or(0),
        )
    }

    /// True if the ordering witnesses `k` and `g` is not `(k-1)`-degenerate.
    pub fn validate(&self, g: &SimpleGraph) -> bool {
        let Some(back) = Self::max_back_degree(g, &self.ordering) else {
            return false;
        };
        back <= self.k && (self.k == 0 || !is_k_degenerate(g, self.k - 1))
    }
}

/// Repeatedly removes the minimum-degree vertex (lowest index among ties).
/// The ordering is the reverse removal order.
pub fn degeneracy(g: &SimpleGraph) -> DegeneracyCertificate {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); max_deg + 1];
    for v in 0..n {
        buckets[deg[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut k = 0;
    let mut cur = 0;
    for _ in 0..n {
        while buckets[cur].is_empty() {
            cur += 1;
        }
        let v = buckets[cur].pop_first().unwrap();
        k = k.max(cur);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                buckets[deg[w]].remove(&w);
                deg[w] -= 1;
                buckets[deg[w]].insert(w);
            }
        }
        cur = cur.saturating_sub(1);
    }
    order.reverse();
    DegeneracyCertificate { k, ordering: order }
}

/// Threshold peeling: can every vertex be removed while its current degree
/// is at most `k`?
pub fn is_k_degenerate(g: &SimpleGraph, k: usize) -> bool {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] <= k).collect();
    let mut count = 0;
    while let Some(v) = stack.pop() {
        if gone[v] {
            continue;
        }
        gone[v] = true;
        count += 1;
        for &w in g.neighbors(v) {
            if !gone[w] {
                deg[w] -= 1;
                if deg[w] == k {
                    stack.push(w);
                }
            }
        }
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_cycle_clique() {
        let tree = SimpleGraph::from_edges(6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]);
        let c = degeneracy(&tree);
        assert_eq!(c.k, 1);
        assert!(c.validate(&tree));
        assert_eq!(degeneracy(&SimpleGraph::cycle(5)).k, 2);
        let k5 = SimpleGraph::complete(5);
        let c5 = degeneracy(&k5);
        assert_eq!(c5.k, 4);
        assert!(c5.validate(&k5));
    }

    #[test]
    fn edgeless_graph_is_zero_degenerate() {
        let g = SimpleGraph::new(4);
        let c = degeneracy(&g);
        assert_eq!(c.k, 0);
        assert!(c.validate(&g));
    }

    #[test]
    fn ties_broken_by_lowest_index() {
        // Path 0-1-2: vertices 0 and 2 tie at degree 1, so 0 is removed first
        // and comes last in the ordering.
        let g = SimpleGraph::from_edges(3, [(0, 1), (1, 2)]);
        assert_eq!(degeneracy(&g).ordering, vec![2, 1, 0]);
    }

    #[test]
    fn wrong_ordering_rejected() {
        let g = SimpleGraph::cycle(4);
        let bogus = DegeneracyCertificate {
            k: 1,
            ordering: vec![0, 1, 2, 3],
        };
        assert!(!bogus.validate(&g));
        assert_eq!(DegeneracyCertificate::max_back_degree(&g, &[0, 0, 1, 2]), None);
    }
}
