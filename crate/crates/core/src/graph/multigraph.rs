use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// An undirected multigraph with labelled edges; loops and parallel edges
/// are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize, usize)>,
}

impl MultiGraph {
    /// Builds a multigraph from `(id, u, v)` triples with unique ids.
    pub fn new(n: usize, edges: Vec<(usize, usize, usize)>) -> Result<Self> {
        let mut ids: Vec<usize> = edges.iter().map(|e| e.0).collect();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::parameter("duplicate edge id in multigraph"));
        }
        if let Some(&(id, u, v)) = edges.iter().find(|&&(_, u, v)| u >= n || v >= n) {
            return Err(Error::parameter(format!(
                "multigraph edge {id} = ({u}, {v}) leaves 0..{n}"
            )));
        }
        Ok(MultiGraph { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(id, u, v)` triples.
    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(_, a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    /// Components of `(V, E)`; loops never merge anything.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        let mut count = self.n;
        for &(_, u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    /// Removes the edge at position `pos` in the edge list.
    pub fn delete(&self, pos: usize) -> MultiGraph {
        let mut edges = self.edges.clone();
        edges.remove(pos);
        MultiGraph { n: self.n, edges }
    }

    /// Contracts the non-loop edge at position `pos`: its endpoints merge,
    /// parallel copies become loops, and the higher endpoint is removed with
    /// later vertices shifting down by one.
    pub fn contract(&self, pos: usize) -> MultiGraph {
        let (_, a, b) = self.edges[pos];
        debug_assert_ne!(a, b, "contracting a loop");
        let (keep, gone) = if a < b { (a, b) } else { (b, a) };
        let map = |w: usize| {
            let w = if w == gone { keep } else { w };
            if w > gone {
                w - 1
            } else {
                w
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, &(id, u, v))| (id, map(u), map(v)))
            .collect();
        MultiGraph {
            n: self.n - 1,
            edges,
        }
    }
}

impl From<&Graph> for MultiGraph {
    fn from(g: &Graph) -> Self {
        MultiGraph {
            n: g.vertex_count(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(id, &(u, v))| (id, u, v))
                .collect(),
        }
    }
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_creates_loops_from_parallel_edges() {
        let m = MultiGraph::new(2, vec![(0, 0, 1), (1, 0, 1)]).unwrap();
        let c = m.contract(0);
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edges(), &[(1, 0, 0)]);
        assert_eq!(c.component_count(), 1);
        assert_eq!(c.degree(0), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(MultiGraph::new(2, vec![(0, 0, 1), (0, 1, 1)]).is_err());
        assert!(MultiGraph::new(2, vec![(0, 0, 2)]).is_err());
    }
}
