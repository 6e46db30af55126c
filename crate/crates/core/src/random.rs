//! Seeded random instances.

use std::sync::Arc;

use rand::Rng;

use crate::coloured::HColouredGraph;
use crate::graph::Graph;

/// `G(n, p)`.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).expect("pairs are distinct and in range")
}

/// A random `h`-coloured graph on `n` vertices: colours are uniform and
/// every pair whose colours are adjacent in `h` becomes an edge with
/// probability `p`.
pub fn random_coloured<R: Rng>(h: &Arc<Graph>, n: usize, p: f64, rng: &mut R) -> HColouredGraph {
    assert!(h.vertex_count() > 0, "pattern has no vertices");
    let colouring: Vec<usize> = (0..n).map(|_| rng.gen_range(0..h.vertex_count())).collect();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| h.has_edge(colouring[u], colouring[v]))
        .filter(|_| rng.gen_bool(p))
        .collect();
    let g = Graph::new(n, edges).expect("pairs are distinct and in range");
    HColouredGraph::new(g, colouring, Arc::clone(h)).expect("edges follow pattern edges")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256PlusPlus;

    #[test]
    fn seeded_and_valid() {
        let mut a = Xoshiro256PlusPlus::seed_from_u64(4);
        let mut b = Xoshiro256PlusPlus::seed_from_u64(4);
        assert_eq!(random_graph(9, 0.5, &mut a), random_graph(9, 0.5, &mut b));
        let h = Arc::new(Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap());
        let g = random_coloured(&h, 10, 0.7, &mut a);
        assert_eq!(g.graph().vertex_count(), 10);
    }
}
