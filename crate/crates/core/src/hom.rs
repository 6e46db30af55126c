//! Homomorphism, embedding, subgraph and colour-preserving homomorphism
//! counts; the colour-preserving tensor product; the triangular matrix over
//! the fracture lattice and the linear-system extraction built on it.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coefficient::coefficient_table;
use crate::coloured::HColouredGraph;
use crate::error::{Error, Result};
use crate::fracture::{enumerate_fractures, fractured_graph, Fracture, FractureBlocks};
use crate::graph::{search_order, Graph};
use crate::par::{self, Execution};
use crate::pattern::count_colourful;
use crate::property::PropertySpec;

/// Default limit on pattern vertices for the counting routines.
pub const DEFAULT_PATTERN_CAP: usize = 10;
/// Default limit on the matrix dimension.
pub const DEFAULT_MATRIX_BUDGET: u64 = 5000;

fn check_cap(f: &Graph, cap: usize) -> Result<()> {
    if f.vertex_count() > cap {
        Err(Error::capacity(
            "pattern for homomorphism counting",
            format!("{} vertices", f.vertex_count()),
            cap,
        ))
    } else {
        Ok(())
    }
}

/// Backtracking over maps from `f` to `g` along a connectivity-first order.
struct Mapper<'a> {
    f: &'a Graph,
    g: &'a Graph,
    order: Vec<usize>,
    // for each depth, the earlier-placed neighbours of order[depth]
    back: Vec<Vec<usize>>,
    // candidate images when nothing earlier is adjacent
    free: Vec<Vec<usize>>,
    // required colour per f-vertex and the colouring of g
    colours: Option<(Vec<usize>, &'a [usize])>,
    injective: bool,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Mapper<'a> {
    fn new(
        f: &'a Graph,
        g: &'a Graph,
        free: Vec<Vec<usize>>,
        colours: Option<(Vec<usize>, &'a [usize])>,
        injective: bool,
    ) -> Self {
        let order = search_order(f);
        let mut pos = vec![0; f.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                f.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| pos[w] < i)
                    .collect()
            })
            .collect();
        Mapper {
            f,
            g,
            order,
            back,
            free,
            colours,
            injective,
            image: vec![usize::MAX; f.vertex_count()],
            used: vec![false; g.vertex_count()],
        }
    }

    fn count(&mut self) -> u128 {
        if self.order.is_empty() {
            return 1;
        }
        self.rec(0)
    }

    fn rec(&mut self, depth: usize) -> u128 {
        let v = self.order[depth];
        let last = depth + 1 == self.order.len();
        let back = std::mem::take(&mut self.back[depth]);
        let cands: Vec<usize> = match back.first() {
            Some(&w) => self.g.neighbors(self.image[w]).to_vec(),
            None => self.free[v].clone(),
        };
        let mut total: u128 = 0;
        for x in cands {
            if self.injective && (self.used[x] || self.g.degree(x) < self.f.degree(v)) {
                continue;
            }
            if let Some((want, have)) = &self.colours {
                if want[v] != have[x] {
                    continue;
                }
            }
            if back.iter().skip(1).any(|&w| !self.g.has_edge(self.image[w], x)) {
                continue;
            }
            if last {
                total += 1;
                continue;
            }
            self.image[v] = x;
            self.used[x] = true;
            total += self.rec(depth + 1);
            self.used[x] = false;
            self.image[v] = usize::MAX;
        }
        self.back[depth] = back;
        total
    }
}

/// `|Hom(f, g)|`.
pub fn count_homs(f: &Graph, g: &Graph) -> Result<BigUint> {
    check_cap(f, DEFAULT_PATTERN_CAP)?;
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    let mut total = BigUint::from(1u32);
    for comp in f.components() {
        let sub = f.induced(&comp);
        let c = Mapper::new(&sub, g, vec![all.clone(); comp.len()], None, false).count();
        if c == 0 {
            return Ok(BigUint::zero());
        }
        total *= BigUint::from(c);
    }
    Ok(total)
}

/// Number of injective homomorphisms from `f` to `g`.
pub fn count_embs(f: &Graph, g: &Graph) -> Result<BigUint> {
    check_cap(f, DEFAULT_PATTERN_CAP)?;
    if f.vertex_count() > g.vertex_count() || f.edge_count() > g.edge_count() {
        return Ok(BigUint::zero());
    }
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    let free = vec![all; f.vertex_count()];
    Ok(BigUint::from(Mapper::new(f, g, free, None, true).count()))
}

/// `|Aut(h)|`.
pub fn count_auts(h: &Graph) -> Result<BigUint> {
    count_embs(h, h)
}

/// Number of subgraphs of `g` isomorphic to `h`.
pub fn count_subs(h: &Graph, g: &Graph) -> Result<BigUint> {
    let emb = count_embs(h, g)?;
    let aut = count_auts(h)?;
    let (q, r) = emb.div_rem(&aut);
    debug_assert!(r.is_zero());
    Ok(q)
}

/// Colour-preserving homomorphisms between two graphs coloured by the same
/// pattern.
///
/// Fractured graphs of a pattern with `m` edges have up to `2m` vertices, so
/// the size guard is the larger of the default and `2m`.
pub fn count_cp_homs(f: &HColouredGraph, g: &HColouredGraph) -> Result<BigUint> {
    f.require_same_pattern(g)?;
    check_cap(f.graph(), DEFAULT_PATTERN_CAP.max(f.pattern().edge_count() * 2))?;
    let classes = g.vertex_classes();
    let fg = f.graph();
    let mut total = BigUint::from(1u32);
    for comp in fg.components() {
        let sub = fg.induced(&comp);
        let want: Vec<usize> = comp.iter().map(|&v| f.colour(v)).collect();
        let free: Vec<Vec<usize>> = want.iter().map(|&c| classes[c].clone()).collect();
        let c = Mapper::new(&sub, g.graph(), free, Some((want, g.colouring())), false).count();
        if c == 0 {
            return Ok(BigUint::zero());
        }
        total *= BigUint::from(c);
    }
    Ok(total)
}

/// The colour-preserving tensor product. Vertices are the colour-agreeing
/// pairs `(x, y)` in lexicographic order; `(x, y)` and `(x', y')` are
/// adjacent when `x x'` and `y y'` are edges.
pub fn tensor_product(g1: &HColouredGraph, g2: &HColouredGraph) -> Result<HColouredGraph> {
    g1.require_same_pattern(g2)?;
    let (a, b) = (g1.graph(), g2.graph());
    let mut index = vec![usize::MAX; a.vertex_count() * b.vertex_count()];
    let mut colouring = Vec::new();
    for x in 0..a.vertex_count() {
        for y in 0..b.vertex_count() {
            if g1.colour(x) == g2.colour(y) {
                index[x * b.vertex_count() + y] = colouring.len();
                colouring.push(g1.colour(x));
            }
        }
    }
    let id = |x: usize, y: usize| index[x * b.vertex_count() + y];
    let mut edges = Vec::new();
    for &(x, x2) in a.edges() {
        for &(y, y2) in b.edges() {
            if g1.colour(x) == g2.colour(y) && g1.colour(x2) == g2.colour(y2) {
                edges.push((id(x, y), id(x2, y2)));
            } else if g1.colour(x) == g2.colour(y2) && g1.colour(x2) == g2.colour(y) {
                edges.push((id(x, y2), id(x2, y)));
            }
        }
    }
    let graph = Graph::new(colouring.len(), edges)?;
    HColouredGraph::new(graph, colouring, Arc::clone(g1.pattern()))
}

/// Colour-preserving homomorphism counts between all fractured graphs of a
/// pattern, rows and columns in linear-extension order.
#[derive(Clone, Debug)]
pub struct MonotonicityMatrix {
    fractures: Vec<Fracture>,
    entries: Vec<Vec<BigUint>>,
}

/// Serialised form of a [`MonotonicityMatrix`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub fractures: Vec<FractureBlocks>,
    pub matrix: Vec<Vec<u64>>,
}

impl MonotonicityMatrix {
    pub fn fractures(&self) -> &[Fracture] {
        &self.fractures
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigUint {
        &self.entries[row][col]
    }

    pub fn dimension(&self) -> usize {
        self.fractures.len()
    }

    /// Cells breaking upper triangularity or the unit diagonal.
    pub fn triangularity_violations(&self) -> Vec<(usize, usize)> {
        let one = BigUint::from(1u32);
        let mut bad = Vec::new();
        for i in 0..self.dimension() {
            for j in 0..self.dimension() {
                let e = &self.entries[i][j];
                if (i == j && *e != one) || (i > j && !e.is_zero()) {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    pub fn to_json(&self, h: &Graph) -> Result<MatrixJson> {
        let matrix = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        e.to_u64()
                            .ok_or_else(|| Error::capacity("matrix entry", e, u64::MAX))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(MatrixJson {
            fractures: self.fractures.iter().map(|f| f.to_blocks(h)).collect(),
            matrix,
        })
    }
}

/// Builds the matrix for `h`; cells are evaluated independently.
pub fn build_monotonicity_matrix(
    h: &Arc<Graph>,
    budget: u64,
    exec: Execution,
) -> Result<MonotonicityMatrix> {
    let fractures = enumerate_fractures(h, budget)?;
    let graphs: Vec<HColouredGraph> = fractures
        .iter()
        .map(|f| fractured_graph(h, f).map(|fg| fg.into_coloured()))
        .collect::<Result<_>>()?;
    let n = fractures.len();
    let rows = par::try_map_range(exec, n, |i| {
        (0..n)
            .map(|j| count_cp_homs(&graphs[i], &graphs[j]))
            .collect::<Result<Vec<_>>>()
    })?;
    let m = MonotonicityMatrix {
        fractures,
        entries: rows,
    };
    debug_assert!(m.triangularity_violations().is_empty());
    Ok(m)
}

/// One fracture's share of a solved system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractedCount {
    pub fracture: Fracture,
    pub coefficient: BigInt,
    /// Coefficient times the colour-preserving homomorphism count.
    pub weighted: BigInt,
    /// The count itself, or `None` when the coefficient is zero and the count
    /// cannot be recovered.
    pub cp_homs: Option<BigInt>,
}

impl ExtractedCount {
    pub fn status(&self) -> &'static str {
        if self.cp_homs.is_some() {
            "recovered"
        } else {
            "coefficient zero, count unrecoverable"
        }
    }
}

/// Recovers `a(rho) * cpHom(fractured(rho) -> g)` for every fracture from
/// colourful counts on the products `g x fractured(sigma)`, by forward
/// substitution against the unit upper-triangular matrix.
pub fn extract_cp_hom_counts(
    h: &Arc<Graph>,
    phi: &PropertySpec,
    g: &HColouredGraph,
    exec: Execution,
) -> Result<Vec<ExtractedCount>> {
    if **g.pattern() != **h {
        return Err(Error::usage("coloured graph refers to a different pattern"));
    }
    let matrix = build_monotonicity_matrix(h, DEFAULT_MATRIX_BUDGET, exec)?;
    let table = coefficient_table(phi, h, DEFAULT_MATRIX_BUDGET, exec)?;
    let n = matrix.dimension();
    let rhs: Vec<BigInt> = par::try_map_range(exec, n, |s| {
        let fs = fractured_graph(h, &matrix.fractures[s])?.into_coloured();
        let prod = tensor_product(g, &fs)?;
        count_colourful(phi, &prod).map(BigInt::from)
    })?;
    let mut x: Vec<BigInt> = Vec::with_capacity(n);
    for (s, b) in rhs.iter().enumerate() {
        let mut v = b.clone();
        for (r, xr) in x.iter().enumerate() {
            let m = matrix.entry(r, s);
            if !m.is_zero() {
                v -= xr * BigInt::from(m.clone());
            }
        }
        x.push(v);
    }
    let mut out = Vec::with_capacity(n);
    for (s, weighted) in x.into_iter().enumerate() {
        let coefficient = table.coefficient(&matrix.fractures[s]).clone();
        let cp_homs = if coefficient.is_zero() {
            if !weighted.is_zero() {
                return Err(Error::usage("solved system contradicts a zero coefficient"));
            }
            None
        } else {
            let (q, r) = weighted.div_rem(&coefficient);
            if !r.is_zero() {
                return Err(Error::usage("solved value is not divisible by its coefficient"));
            }
            Some(q)
        };
        out.push(ExtractedCount {
            fracture: matrix.fractures[s].clone(),
            coefficient,
            weighted,
            cp_homs,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;

    fn fam(s: &str) -> Graph {
        s.parse::<GraphFamily>().unwrap().generate().unwrap()
    }

    fn brute_homs(f: &Graph, g: &Graph) -> u64 {
        let (n, m) = (f.vertex_count() as u32, g.vertex_count() as u64);
        let mut count = 0;
        for code in 0..m.pow(n) {
            let img: Vec<usize> = (0..n).map(|i| ((code / m.pow(i)) % m) as usize).collect();
            if f.edges().iter().all(|&(u, v)| g.has_edge(img[u], img[v])) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn hom_counts() {
        let k3 = fam("k3");
        assert_eq!(count_homs(&fam("k2"), &fam("petersen")).unwrap(), BigUint::from(30u32));
        assert_eq!(count_homs(&k3, &k3).unwrap(), BigUint::from(6u32));
        // proper 3-colourings of a 4-cycle: (3-1)^4 + (3-1)
        assert_eq!(brute_homs(&fam("c4"), &k3), 18);
        assert_eq!(count_homs(&fam("c4"), &k3).unwrap(), BigUint::from(18u32));
        assert_eq!(count_homs(&fam("m2"), &k3).unwrap(), BigUint::from(36u32));
        assert!(count_homs(&fam("c11"), &k3).is_err());
    }

    #[test]
    fn sub_counts() {
        assert_eq!(count_subs(&fam("k2"), &fam("petersen")).unwrap(), BigUint::from(15u32));
        assert_eq!(count_subs(&fam("m2"), &fam("p3")).unwrap(), BigUint::from(1u32));
        assert_eq!(count_subs(&fam("c4"), &fam("k4")).unwrap(), BigUint::from(3u32));
        assert_eq!(count_auts(&fam("petersen")).unwrap(), BigUint::from(120u32));
    }

    #[test]
    fn coloured_counts() {
        let h = Arc::new(fam("k3"));
        let id = HColouredGraph::identity(Arc::clone(&h));
        let two = HColouredGraph::new(fam("2*k3"), vec![0, 1, 2, 0, 1, 2], Arc::clone(&h)).unwrap();
        assert_eq!(count_cp_homs(&id, &two).unwrap(), BigUint::from(2u32));
        assert_eq!(count_cp_homs(&id, &id).unwrap(), BigUint::from(1u32));
        let other = HColouredGraph::identity(Arc::new(fam("p2")));
        assert!(count_cp_homs(&id, &other).is_err());
    }

    #[test]
    fn small_matrices() {
        let e = Arc::new(fam("k2"));
        let m = build_monotonicity_matrix(&e, 10, Execution::Auto).unwrap();
        assert_eq!(m.dimension(), 1);
        assert_eq!(m.entry(0, 0), &BigUint::from(1u32));
        let p2 = Arc::new(fam("p2"));
        let m = build_monotonicity_matrix(&p2, 10, Execution::Auto).unwrap();
        let json = m.to_json(&p2).unwrap();
        assert_eq!(json.matrix, vec![vec![1, 1], vec![0, 1]]);
        let k3 = Arc::new(fam("k3"));
        let m = build_monotonicity_matrix(&k3, 10, Execution::Sequential).unwrap();
        assert_eq!(m.dimension(), 8);
        assert!(m.triangularity_violations().is_empty());
    }

    #[test]
    fn tensor_with_top_is_identity() {
        let h = Arc::new(fam("p2"));
        let g = HColouredGraph::new(fam("p3"), vec![0, 1, 2, 1], Arc::clone(&h)).unwrap();
        let top = HColouredGraph::identity(Arc::clone(&h));
        let prod = tensor_product(&g, &top).unwrap();
        assert_eq!(prod.graph(), g.graph());
        assert_eq!(prod.colouring(), g.colouring());
    }
}
