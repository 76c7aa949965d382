//! Unbiased Avoider-Enforcer games on the edges of K_n.
//!
//! Three losing families are supported: non-outerplanar graphs, graphs with a
//! diamond minor, and graphs that are not k-degenerate.

pub mod board;
pub mod harness;
pub mod properties;
pub mod solver;
pub mod strategies;
