//! Seeded random hypernetworks for the benchmarks.

use std::collections::HashSet;

use hyperforman::{Hyperedge, Hypernetwork, Hypervertex, NodeId};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// `hypervertices` random node sets of size 1 to `max_size` over `nodes`
/// ground nodes, joined by about `edge_factor * hypervertices` hyperedges.
pub fn random_network(seed: u64, nodes: usize, hypervertices: usize, max_size: usize, edge_factor: usize) -> Hypernetwork {
    let mut rng = StdRng::seed_from_u64(seed);
    let hvs = (0..hypervertices)
        .map(|i| {
            let size = rng.gen_range(1..=max_size.min(nodes));
            let members: Vec<NodeId> = (0..size)
                .map(|_| NodeId::new(format!("n{}", rng.gen_range(0..nodes))))
                .collect();
            Hypervertex::new(format!("H{i}"), members)
        })
        .collect();
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for _ in 0..hypervertices * edge_factor {
        let (a, b) = (rng.gen_range(0..hypervertices), rng.gen_range(0..hypervertices));
        if a != b && seen.insert((a.min(b), a.max(b))) {
            edges.push(Hyperedge::new(format!("E{}", edges.len()), format!("H{a}"), format!("H{b}"), false));
        }
    }
    Hypernetwork::new(None, hvs, edges, false).expect("generated networks are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_networks_repeat() {
        let a = random_network(7, 20, 10, 4, 2);
        let b = random_network(7, 20, 10, 4, 2);
        assert_eq!(a, b);
        assert_eq!(a.hypervertices().len(), 10);
    }
}
