//! Simple undirected graphs, multigraphs and the structural routines built on
//! them.

mod canon;
mod family;
mod io;
mod matching;
mod minor;
mod multigraph;

pub use canon::{
    are_isomorphic, are_isomorphic_capped, canonical_form, canonical_form_coloured,
    CanonicalForm, DEFAULT_ISO_CAP,
};
pub use family::GraphFamily;
pub use io::{parse_edge_list, to_edge_list};
pub use matching::max_matching_size;
pub use minor::{contains_subgraph, minor_contains, minor_contains_capped, DEFAULT_MINOR_HOST_CAP};
pub(crate) use minor::search_order;
pub use multigraph::MultiGraph;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Edge ids are positions in the edge list. Each edge is stored with its
/// smaller endpoint first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    // sorted neighbour lists
    adj: Vec<Vec<usize>>,
    // incident edge ids, ascending
    incident: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;
    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::new(raw.vertex_count, raw.edges)
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph {
            vertex_count: g.n,
            edges: g.edges,
        }
    }
}

/// Summary invariants of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInvariants {
    pub component_count: usize,
    pub betti_number: usize,
    pub max_degree: usize,
    pub isolated_vertex_count: usize,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.try_push_edge(u, v)?;
        }
        Ok(g)
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            incident: vec![Vec::new(); n],
        }
    }

    fn try_push_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        if u >= self.n || v >= self.n {
            return Err(Error::parameter(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::parameter(format!("self-loop at vertex {u}")));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let pos = match self.adj[a].binary_search(&b) {
            Ok(_) => return Err(Error::parameter(format!("duplicate edge ({a}, {b})"))),
            Err(p) => p,
        };
        let id = self.edges.len();
        self.edges.push((a, b));
        self.adj[a].insert(pos, b);
        let pos_b = self.adj[b].binary_search(&a).unwrap_err();
        self.adj[b].insert(pos_b, a);
        self.incident[a].push(id);
        self.incident[b].push(id);
        Ok(id)
    }

    /// Adds an edge if absent. Returns its id when it was new.
    pub(crate) fn add_edge_if_absent(&mut self, u: usize, v: usize) -> Option<usize> {
        if u == v || self.has_edge(u, v) {
            None
        } else {
            self.try_push_edge(u, v).ok()
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Ids of the edges at `v` in ascending order.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Id of the edge joining `u` and `v`.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.incident[a]
            .iter()
            .copied()
            .find(|&e| self.edges[e] == (a, b))
    }

    /// Sorted degree sequence, largest first.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn isolated_vertex_count(&self) -> usize {
        self.adj.iter().filter(|a| a.is_empty()).count()
    }

    /// Component label of every vertex, labels numbered by first appearance.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().0
    }

    /// At most one component. The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Vertex sets of the components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let (count, label) = self.component_labels();
        let mut out = vec![Vec::new(); count];
        for (v, &c) in label.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn invariants(&self) -> GraphInvariants {
        let cc = self.component_count();
        GraphInvariants {
            component_count: cc,
            betti_number: cc + self.edge_count() - self.n,
            max_degree: self.max_degree(),
            isolated_vertex_count: self.isolated_vertex_count(),
        }
    }

    /// The subgraph induced by `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for &(u, v) in &self.edges {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                g.add_edge_if_absent(pos[u], pos[v]);
            }
        }
        g
    }

    /// `G[A]`: the edges `ids` and their endpoints, vertices relabelled in
    /// ascending original order. Edge `i` of the result is `ids[i]`.
    pub fn edge_induced(&self, ids: &[usize]) -> Graph {
        let mut touched: Vec<usize> = ids
            .iter()
            .flat_map(|&e| {
                let (u, v) = self.edges[e];
                [u, v]
            })
            .collect();
        touched.sort_unstable();
        touched.dedup();
        let mut g = Graph::empty(touched.len());
        for &e in ids {
            let (u, v) = self.edges[e];
            let a = touched.binary_search(&u).unwrap();
            let b = touched.binary_search(&v).unwrap();
            g.add_edge_if_absent(a, b);
        }
        g
    }

    /// `G(A)`: all vertices kept, only the edges `ids`.
    pub fn spanning_subgraph(&self, ids: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for &e in ids {
            let (u, v) = self.edges[e];
            g.add_edge_if_absent(u, v);
        }
        g
    }

    /// Removes the edges `ids`, keeping all vertices.
    pub fn without_edges(&self, ids: &[usize]) -> Graph {
        let mut drop = vec![false; self.edge_count()];
        for &e in ids {
            drop[e] = true;
        }
        let keep: Vec<usize> = (0..self.edge_count()).filter(|&e| !drop[e]).collect();
        self.spanning_subgraph(&keep)
    }

    /// Drops isolated vertices, keeping the relative vertex order.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| !self.adj[v].is_empty()).collect();
        self.induced(&keep)
    }

    /// Disjoint union; `other`'s vertices are shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut g = self.clone();
        g.n += other.n;
        g.adj.extend(std::iter::repeat_with(Vec::new).take(other.n));
        g.incident
            .extend(std::iter::repeat_with(Vec::new).take(other.n));
        for &(u, v) in &other.edges {
            g.add_edge_if_absent(u + off, v + off);
        }
        g
    }

    /// `copies` disjoint copies of `self`.
    pub fn scaled(&self, copies: usize) -> Graph {
        let mut g = Graph::empty(0);
        for _ in 0..copies {
            g = g.disjoint_union(self);
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge_if_absent(u, v);
                }
            }
        }
        g
    }

    /// Contracts the edge `{u, v}` into `u`, dropping loops and parallel
    /// edges. The vertex `v` is removed and later vertices shift down by one.
    pub fn contract(&self, u: usize, v: usize) -> Graph {
        let map = |w: usize| {
            let w = if w == v { u } else { w };
            if w > v {
                w - 1
            } else {
                w
            }
        };
        let mut g = Graph::empty(self.n - 1);
        for &(a, b) in &self.edges {
            let (a, b) = (map(a), map(b));
            if a != b {
                g.add_edge_if_absent(a, b);
            }
        }
        g
    }

    /// Removes vertex `v`; later vertices shift down by one.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&w| w != v).collect();
        self.induced(&keep)
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for &(u, v) in &self.edges {
            g.add_edge_if_absent(perm[u], perm[v]);
        }
        g
    }

    /// True when every component is a single edge.
    pub fn is_matching(&self) -> bool {
        self.adj.iter().all(|a| a.len() <= 1)
    }

    /// True when the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        self.component_count() + self.edge_count() == self.n
    }
}

/// Number of `k`-subsets of an `n`-set, saturating at `u128::MAX`.
pub(crate) fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Advances `idx` to the next `k`-combination of `0..m` in lexicographic
/// order. Returns false after the last one.
pub(crate) fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
