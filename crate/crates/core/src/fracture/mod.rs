//! Fractures: a partition of the incident edges at every vertex.
//!
//! The partition at `v` is stored as a restricted-growth string over the
//! edges of `incident_edges(v)`, which are in ascending id order.
//!
//! Fractures are listed in a fixed linear extension of the refinement order:
//! decreasing total block count, ties broken by the string encoding. The
//! all-singleton fracture comes first and the one-block fracture last.

pub mod partition;
mod torus;

pub use torus::{
    torus_direction_edges, torus_fixed_points, torus_shift_act, uniform_torus_fracture,
    Direction, FixedPointKind, TorusFixedPoint,
};

use std::cmp::Reverse;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::coloured::HColouredGraph;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on the number of fractures materialised by
/// [`enumerate_fractures`].
pub const DEFAULT_FRACTURE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fracture {
    parts: Vec<Vec<u8>>,
}

/// Serialised form: per vertex, blocks of incident-edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FractureBlocks(pub Vec<Vec<Vec<usize>>>);

impl Fracture {
    /// The fracture with every incident edge in its own block.
    pub fn bottom(h: &Graph) -> Self {
        Fracture {
            parts: (0..h.vertex_count())
                .map(|v| (0..h.degree(v) as u8).collect())
                .collect(),
        }
    }

    /// The fracture with one block per vertex.
    pub fn top(h: &Graph) -> Self {
        Fracture {
            parts: (0..h.vertex_count()).map(|v| vec![0; h.degree(v)]).collect(),
        }
    }

    /// Builds a fracture from per-vertex restricted-growth strings.
    pub fn from_rgs(h: &Graph, parts: Vec<Vec<u8>>) -> Result<Self> {
        let f = Fracture { parts };
        f.check_base(h)?;
        if let Some(v) = f.parts.iter().position(|s| !partition::is_rgs(s)) {
            return Err(Error::usage(format!("partition at vertex {v} is not in restricted-growth form")));
        }
        Ok(f)
    }

    /// Builds a fracture from explicit blocks of incident-edge ids.
    pub fn from_blocks(h: &Graph, blocks: &FractureBlocks) -> Result<Self> {
        if blocks.0.len() != h.vertex_count() {
            return Err(Error::usage("fracture has the wrong number of vertices"));
        }
        let mut parts = Vec::with_capacity(h.vertex_count());
        for (v, bs) in blocks.0.iter().enumerate() {
            let inc = h.incident_edges(v);
            let mut label = vec![usize::MAX; inc.len()];
            for (b, block) in bs.iter().enumerate() {
                if block.is_empty() {
                    return Err(Error::usage(format!("empty block at vertex {v}")));
                }
                for e in block {
                    let Some(pos) = inc.iter().position(|x| x == e) else {
                        return Err(Error::usage(format!("edge {e} is not incident to vertex {v}")));
                    };
                    if label[pos] != usize::MAX {
                        return Err(Error::usage(format!("edge {e} appears twice at vertex {v}")));
                    }
                    label[pos] = b;
                }
            }
            if label.contains(&usize::MAX) {
                return Err(Error::usage(format!("blocks at vertex {v} do not cover its edges")));
            }
            parts.push(partition::normalise(&label));
        }
        Ok(Fracture { parts })
    }

    /// Per vertex, the blocks as sorted lists of incident-edge ids; blocks are
    /// ordered by their smallest edge.
    pub fn to_blocks(&self, h: &Graph) -> FractureBlocks {
        FractureBlocks(
            self.parts
                .iter()
                .enumerate()
                .map(|(v, s)| {
                    let inc = h.incident_edges(v);
                    let mut bs = vec![Vec::new(); partition::block_count(s)];
                    for (pos, &b) in s.iter().enumerate() {
                        bs[b as usize].push(inc[pos]);
                    }
                    bs
                })
                .collect(),
        )
    }

    /// The restricted-growth string at `v`.
    pub fn part(&self, v: usize) -> &[u8] {
        &self.parts[v]
    }

    pub fn parts(&self) -> &[Vec<u8>] {
        &self.parts
    }

    pub fn vertex_count(&self) -> usize {
        self.parts.len()
    }

    pub fn block_count(&self, v: usize) -> usize {
        partition::block_count(&self.parts[v])
    }

    pub fn total_blocks(&self) -> usize {
        (0..self.parts.len()).map(|v| self.block_count(v)).sum()
    }

    /// Whether `self` fits the vertex degrees of `h`.
    pub fn fits(&self, h: &Graph) -> bool {
        self.parts.len() == h.vertex_count()
            && self.parts.iter().enumerate().all(|(v, s)| s.len() == h.degree(v))
    }

    fn check_base(&self, h: &Graph) -> Result<()> {
        if self.fits(h) {
            Ok(())
        } else {
            Err(Error::usage("fracture does not match the base graph"))
        }
    }

    fn same_shape(&self, other: &Fracture) -> bool {
        self.parts.len() == other.parts.len()
            && self.parts.iter().zip(&other.parts).all(|(a, b)| a.len() == b.len())
    }

    /// Position key of the linear extension.
    pub fn order_key(&self) -> (Reverse<usize>, &[Vec<u8>]) {
        (Reverse(self.total_blocks()), &self.parts)
    }

    /// Product over vertices of `(-1)^(b-1) (b-1)!`, `b` the block count.
    pub fn top_weight(&self) -> BigInt {
        let mut w = BigInt::one();
        for v in 0..self.parts.len() {
            w *= partition::merge_weight(self.block_count(v));
        }
        w
    }
}

/// Exact number of fractures of `h`: the product of `Bell(deg v)`.
pub fn count_fractures(h: &Graph) -> BigUint {
    let bells = partition::bell_numbers(h.max_degree());
    let mut c = BigUint::one();
    for v in 0..h.vertex_count() {
        c *= BigUint::from(bells[h.degree(v)]);
    }
    c
}

/// All fractures of `h` in linear-extension order.
pub fn enumerate_fractures(h: &Graph, budget: u64) -> Result<Vec<Fracture>> {
    let count = count_fractures(h);
    match count.to_u64() {
        Some(c) if c <= budget => {}
        _ => return Err(Error::capacity("fracture enumeration", count, budget)),
    }
    if h.max_degree() > 255 {
        return Err(Error::capacity("vertex degree", h.max_degree(), 255));
    }
    let per_vertex: Vec<Vec<Vec<u8>>> = (0..h.vertex_count())
        .map(|v| partition::all_rgs(h.degree(v)))
        .collect();
    let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
    let mut idx = vec![0usize; per_vertex.len()];
    loop {
        out.push(Fracture {
            parts: idx
                .iter()
                .zip(&per_vertex)
                .map(|(&i, opts)| opts[i].clone())
                .collect(),
        });
        let mut v = per_vertex.len();
        loop {
            if v == 0 {
                out.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
                return Ok(out);
            }
            v -= 1;
            idx[v] += 1;
            if idx[v] < per_vertex[v].len() {
                break;
            }
            idx[v] = 0;
        }
    }
}

/// Whether `s` refines `r`.
pub fn refines(s: &Fracture, r: &Fracture) -> Result<bool> {
    if !s.same_shape(r) {
        return Err(Error::usage("fractures of different base graphs"));
    }
    Ok(s
        .parts
        .iter()
        .zip(&r.parts)
        .all(|(a, b)| partition::refines(a, b)))
}

/// The Möbius function of the fracture lattice, a product of partition
/// lattice values.
pub fn mobius(s: &Fracture, r: &Fracture) -> Result<BigInt> {
    if !refines(s, r)? {
        return Err(Error::usage("Möbius value requested for a non-refining pair"));
    }
    let mut m = BigInt::one();
    for (a, b) in s.parts.iter().zip(&r.parts) {
        m *= partition::mobius(a, b);
    }
    Ok(m)
}

/// The graph obtained by splitting each vertex into one copy per block.
#[derive(Clone, Debug)]
pub struct FracturedGraph {
    coloured: HColouredGraph,
    origin: Vec<(usize, usize)>,
}

impl FracturedGraph {
    pub fn graph(&self) -> &Graph {
        self.coloured.graph()
    }

    /// The canonical colouring: each split vertex maps to its base vertex.
    pub fn coloured(&self) -> &HColouredGraph {
        &self.coloured
    }

    pub fn into_coloured(self) -> HColouredGraph {
        self.coloured
    }

    /// `(base vertex, block index)` of every vertex.
    pub fn origin(&self) -> &[(usize, usize)] {
        &self.origin
    }
}

/// Builds the fractured graph. Vertices are numbered base vertex by base
/// vertex, blocks in index order; edge `i` corresponds to edge `i` of `h`.
pub fn fractured_graph(h: &Arc<Graph>, r: &Fracture) -> Result<FracturedGraph> {
    r.check_base(h)?;
    let mut first = Vec::with_capacity(h.vertex_count());
    let mut origin = Vec::new();
    for v in 0..h.vertex_count() {
        first.push(origin.len());
        for b in 0..r.block_count(v) {
            origin.push((v, b));
        }
    }
    let block_of = |v: usize, e: usize| -> usize {
        let pos = h.incident_edges(v).binary_search(&e).unwrap();
        first[v] + r.parts[v][pos] as usize
    };
    let edges: Vec<(usize, usize)> = h
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| (block_of(u, e), block_of(v, e)))
        .collect();
    let graph = Graph::new(origin.len(), edges).expect("splitting keeps the graph simple");
    let colouring = origin.iter().map(|&(v, _)| v).collect();
    let coloured = HColouredGraph::new(graph, colouring, Arc::clone(h))?;
    Ok(FracturedGraph { coloured, origin })
}

/// Applies an automorphism `perm` of `h` to a fracture: the partition at
/// `perm[v]` is the image of the partition at `v`.
pub fn apply_automorphism(h: &Graph, perm: &[usize], r: &Fracture) -> Result<Fracture> {
    r.check_base(h)?;
    if perm.len() != h.vertex_count()
        || h.edges().iter().any(|&(u, v)| !h.has_edge(perm[u], perm[v]))
    {
        return Err(Error::usage("permutation is not an automorphism of the base graph"));
    }
    let mut parts = vec![Vec::new(); h.vertex_count()];
    for v in 0..h.vertex_count() {
        let w = perm[v];
        let mut labels = vec![0usize; h.degree(w)];
        for (pos, &e) in h.incident_edges(v).iter().enumerate() {
            let (a, b) = h.edge(e);
            let image = h.edge_id(perm[a], perm[b]).unwrap();
            let at = h.incident_edges(w).binary_search(&image).unwrap();
            labels[at] = r.parts[v][pos] as usize;
        }
        parts[w] = partition::normalise(&labels);
    }
    Ok(Fracture { parts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{are_isomorphic, GraphFamily};

    fn fam(s: &str) -> Arc<Graph> {
        Arc::new(s.parse::<GraphFamily>().unwrap().generate().unwrap())
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_fractures(&fam("p2"), 100).unwrap().len(), 2);
        let k3 = fam("k3");
        let all = enumerate_fractures(&k3, 100).unwrap();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], Fracture::bottom(&k3));
        assert_eq!(all[7], Fracture::top(&k3));
        let e = fam("k2");
        assert_eq!(Fracture::bottom(&e), Fracture::top(&e));
        let t3 = fam("torus:3");
        assert_eq!(count_fractures(&t3), BigUint::from(15u32).pow(9));
        assert!(matches!(enumerate_fractures(&t3, 1000), Err(Error::Capacity { .. })));
    }

    #[test]
    fn extremes_of_the_lattice() {
        for spec in ["k3", "c4", "star:3", "p3", "k4"] {
            let h = fam(spec);
            let bot = fractured_graph(&h, &Fracture::bottom(&h)).unwrap();
            let m = fam(&format!("matching:{}", h.edge_count()));
            assert!(are_isomorphic(bot.graph(), &m).unwrap());
            let top = fractured_graph(&h, &Fracture::top(&h)).unwrap();
            assert_eq!(top.graph(), &*h);
        }
    }

    #[test]
    fn refinement_on_a_triangle() {
        let k3 = fam("k3");
        let top = Fracture::top(&k3);
        let mut split = top.clone();
        split.parts[0] = vec![0, 1];
        assert!(refines(&split, &top).unwrap());
        assert!(!refines(&top, &split).unwrap());
        assert_eq!(mobius(&split, &top).unwrap(), BigInt::from(-1));
        assert!(mobius(&top, &split).is_err());
        let other = Fracture::top(&fam("p2"));
        assert!(refines(&top, &other).is_err());
    }

    #[test]
    fn block_round_trip() {
        let h = fam("k4");
        for f in enumerate_fractures(&h, 1000).unwrap().iter().step_by(17) {
            let b = f.to_blocks(&h);
            assert_eq!(&Fracture::from_blocks(&h, &b).unwrap(), f);
            let json = serde_json::to_string(&b).unwrap();
            let back: FractureBlocks = serde_json::from_str(&json).unwrap();
            assert_eq!(back, b);
        }
    }

    #[test]
    fn rotation_of_a_cycle() {
        let c4 = fam("c4");
        let rot = [1, 2, 3, 0];
        let all = enumerate_fractures(&c4, 100).unwrap();
        let fixed: Vec<_> = all
            .iter()
            .filter(|f| apply_automorphism(&c4, &rot, f).unwrap() == **f)
            .collect();
        assert_eq!(fixed.len(), 2);
    }
}
