use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A graph together with a homomorphism into a pattern graph `H`.
///
/// Every edge inherits the colour of the pattern edge its endpoints map to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HColouredGraph {
    graph: Graph,
    colouring: Vec<usize>,
    pattern: Arc<Graph>,
    // pattern edge id of every graph edge
    edge_colours: Vec<usize>,
}

impl HColouredGraph {
    /// Validates that `colouring` is a homomorphism from `graph` to `pattern`.
    pub fn new(graph: Graph, colouring: Vec<usize>, pattern: Arc<Graph>) -> Result<Self> {
        if colouring.len() != graph.vertex_count() {
            return Err(Error::usage(format!(
                "colouring has {} entries for {} vertices",
                colouring.len(),
                graph.vertex_count()
            )));
        }
        if let Some(&c) = colouring.iter().find(|&&c| c >= pattern.vertex_count()) {
            return Err(Error::usage(format!("colour {c} is not a pattern vertex")));
        }
        let mut edge_colours = Vec::with_capacity(graph.edge_count());
        for &(u, v) in graph.edges() {
            match pattern.edge_id(colouring[u], colouring[v]) {
                Some(e) => edge_colours.push(e),
                None => {
                    return Err(Error::usage(format!(
                        "edge ({u}, {v}) maps to non-edge ({}, {}) of the pattern",
                        colouring[u], colouring[v]
                    )))
                }
            }
        }
        Ok(HColouredGraph {
            graph,
            colouring,
            pattern,
            edge_colours,
        })
    }

    /// The pattern coloured by the identity map.
    pub fn identity(pattern: Arc<Graph>) -> Self {
        let n = pattern.vertex_count();
        HColouredGraph::new((*pattern).clone(), (0..n).collect(), pattern)
            .expect("identity is a homomorphism")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn colouring(&self) -> &[usize] {
        &self.colouring
    }

    pub fn colour(&self, v: usize) -> usize {
        self.colouring[v]
    }

    pub fn pattern(&self) -> &Arc<Graph> {
        &self.pattern
    }

    /// Pattern edge id carried by edge `e`.
    pub fn edge_colour(&self, e: usize) -> usize {
        self.edge_colours[e]
    }

    /// For every pattern edge, the ids of the graph edges of that colour.
    pub fn colour_classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.pattern.edge_count()];
        for (e, &c) in self.edge_colours.iter().enumerate() {
            out[c].push(e);
        }
        out
    }

    /// Vertices of each colour.
    pub fn vertex_classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.pattern.vertex_count()];
        for (v, &c) in self.colouring.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn same_pattern(&self, other: &HColouredGraph) -> bool {
        Arc::ptr_eq(&self.pattern, &other.pattern) || *self.pattern == *other.pattern
    }

    pub(crate) fn require_same_pattern(&self, other: &HColouredGraph) -> Result<()> {
        if self.same_pattern(other) {
            Ok(())
        } else {
            Err(Error::usage("coloured graphs refer to different patterns"))
        }
    }

    /// Drops every edge whose colour is in `colours`, keeping all vertices.
    pub fn without_colours(&self, colours: &[usize]) -> HColouredGraph {
        let drop: Vec<usize> = (0..self.graph.edge_count())
            .filter(|&e| colours.contains(&self.edge_colours[e]))
            .collect();
        HColouredGraph::new(
            self.graph.without_edges(&drop),
            self.colouring.clone(),
            Arc::clone(&self.pattern),
        )
        .expect("deleting edges keeps a homomorphism")
    }
}
