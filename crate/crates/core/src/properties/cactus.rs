use super::blocks::blocks;
use super::SimpleGraph;

/// A graph has no diamond minor iff it is a cactus: every block is a bridge
/// or a cycle, i.e. has no more edges than vertices.
pub fn is_diamond_minor_free(g: &SimpleGraph) -> bool {
    blocks(g).iter().all(|b| b.edges.len() <= b.vertices.len())
}
