//! Biconnected components (blocks) via an iterative low-link DFS.

use super::SimpleGraph;

/// One block: its vertex set (sorted) and its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Splits the edge set of `g` into blocks. Isolated vertices belong to no block.
pub fn blocks(g: &SimpleGraph) -> Vec<Block> {
    let n = g.n();
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut counter = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    // (vertex, parent, next neighbor position)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if order[root] != usize::MAX || g.degree(root) == 0 {
            continue;
        }
        order[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push((root, usize::MAX, 0));

        while let Some(top) = stack.last_mut() {
            let (v, parent, pos) = *top;
            if pos < g.degree(v) {
                top.2 += 1;
                let w = g.neighbors(v)[pos];
                if w == parent {
                    continue;
                }
                if order[w] == usize::MAX {
                    edge_stack.push((v, w));
                    order[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push((w, v, 0));
                } else if order[w] < order[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(order[w]);
                }
            } else {
                stack.pop();
                if parent == usize::MAX {
                    continue;
                }
                low[parent] = low[parent].min(low[v]);
                if low[v] >= order[parent] {
                    let mut edges = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        edges.push(e);
                        if e == (parent, v) {
                            break;
                        }
                    }
                    out.push(make_block(edges));
                }
            }
        }
    }
    out
}

fn make_block(edges: Vec<(usize, usize)>) -> Block {
    let mut vertices: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let mut edges: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
        .collect();
    edges.sort_unstable();
    Block { vertices, edges }
}
