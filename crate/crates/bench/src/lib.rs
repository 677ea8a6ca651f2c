//! Fixture graphs shared by the criterion benches.

use measiso_core::generate;
use measiso_core::Graph;

/// K_n on vertices `v0..`.
pub fn complete(n: usize) -> Graph {
    generate::complete(n)
}

/// A chain of `k` squares glued along edges: many 2-separations, many reversals.
pub fn square_ladder(k: usize) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..=k {
        pairs.push((format!("a{i}"), format!("b{i}")));
        if i < k {
            pairs.push((format!("a{i}"), format!("a{}", i + 1)));
            pairs.push((format!("b{i}"), format!("b{}", i + 1)));
        }
    }
    Graph::from_pairs(&pairs).expect("ladder is loop-free")
}
