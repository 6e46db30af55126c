//! Canonical forms by individualization and refinement.
//!
//! Disconnected graphs are canonised component by component, and connected
//! graphs with a disconnected complement through the complement. Everything
//! else goes through an equitable-refinement search tree that keeps the
//! lexicographically least relabelled edge list, pruning siblings with the
//! automorphisms discovered so far.

use super::Graph;
use crate::error::{Error, Result};

/// Default vertex limit for [`are_isomorphic`].
pub const DEFAULT_ISO_CAP: usize = 16;

/// A relabelled copy of a (vertex-coloured) graph that is equal for two
/// inputs exactly when they are isomorphic by a colour-preserving bijection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: u32,
    colours: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The canonical representative as a graph.
    pub fn to_graph(&self) -> Graph {
        Graph::new(
            self.n as usize,
            self.edges.iter().map(|&(u, v)| (u as usize, v as usize)),
        )
        .expect("canonical forms are simple graphs")
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }
}

/// Canonical form of an uncoloured graph.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canon(g, &vec![0; g.vertex_count()])
}

/// Canonical form respecting a vertex colouring; colour values are fixed,
/// not permuted.
pub fn canonical_form_coloured(g: &Graph, colours: &[usize]) -> Result<CanonicalForm> {
    if colours.len() != g.vertex_count() {
        return Err(Error::usage(format!(
            "colouring has {} entries for {} vertices",
            colours.len(),
            g.vertex_count()
        )));
    }
    let c: Vec<u32> = colours.iter().map(|&c| c as u32).collect();
    Ok(canon(g, &c))
}

/// Isomorphism test with the default vertex limit.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    are_isomorphic_capped(g1, g2, DEFAULT_ISO_CAP)
}

/// Isomorphism test refusing graphs with more than `cap` vertices.
pub fn are_isomorphic_capped(g1: &Graph, g2: &Graph, cap: usize) -> Result<bool> {
    let n = g1.vertex_count().max(g2.vertex_count());
    if n > cap {
        return Err(Error::capacity("isomorphism test", format!("{n} vertices"), cap));
    }
    if g1.vertex_count() != g2.vertex_count()
        || g1.edge_count() != g2.edge_count()
        || g1.degree_sequence() != g2.degree_sequence()
    {
        return Ok(false);
    }
    Ok(canonical_form(g1) == canonical_form(g2))
}

fn canon(g: &Graph, colours: &[u32]) -> CanonicalForm {
    let n = g.vertex_count();
    let comps = g.components();
    if comps.len() > 1 {
        let mut parts: Vec<CanonicalForm> = comps
            .iter()
            .map(|c| {
                let sub = g.induced(c);
                let col: Vec<u32> = c.iter().map(|&v| colours[v]).collect();
                canon(&sub, &col)
            })
            .collect();
        parts.sort();
        let mut out = CanonicalForm {
            n: n as u32,
            colours: Vec::with_capacity(n),
            edges: Vec::with_capacity(g.edge_count()),
        };
        let mut off = 0u32;
        for p in parts {
            out.colours.extend_from_slice(&p.colours);
            out.edges.extend(p.edges.iter().map(|&(u, v)| (u + off, v + off)));
            off += p.n;
        }
        return out;
    }
    if n >= 2 {
        let co = g.complement();
        if !co.is_connected() {
            let f = canon(&co, colours);
            let back = f.to_graph().complement();
            let mut edges: Vec<(u32, u32)> =
                back.edges().iter().map(|&(u, v)| (u as u32, v as u32)).collect();
            edges.sort_unstable();
            return CanonicalForm {
                n: f.n,
                colours: f.colours,
                edges,
            };
        }
    }
    Search::new(g, colours).run()
}

/// Best certificate found so far with the labelling that produced it.
type Certificate = (Vec<(u32, u32)>, Vec<usize>);

struct Search<'a> {
    g: &'a Graph,
    colours: &'a [u32],
    best: Option<Certificate>,
    automorphisms: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, colours: &'a [u32]) -> Self {
        Search {
            g,
            colours,
            best: None,
            automorphisms: Vec::new(),
        }
    }

    fn run(mut self) -> CanonicalForm {
        let n = self.g.vertex_count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (self.colours[v], v));
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for v in order {
            match cells.last_mut() {
                Some(cell) if self.colours[cell[0]] == self.colours[v] => cell.push(v),
                _ => cells.push(vec![v]),
            }
        }
        let mut prefix = Vec::new();
        self.descend(cells, &mut prefix);
        let (edges, perm) = self.best.expect("search reaches at least one leaf");
        let mut colours = vec![0; n];
        for v in 0..n {
            colours[perm[v]] = self.colours[v];
        }
        CanonicalForm {
            n: n as u32,
            colours,
            edges,
        }
    }

    fn descend(&mut self, mut cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        refine(self.g, &mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let choices = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for v in choices {
            if !explored.is_empty() && self.same_orbit(v, &explored, prefix) {
                continue;
            }
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            prefix.push(v);
            self.descend(next, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let n = self.g.vertex_count();
        let mut perm = vec![0; n];
        for (pos, c) in cells.iter().enumerate() {
            perm[c[0]] = pos;
        }
        let mut cert: Vec<(u32, u32)> = self
            .g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u] as u32, perm[v] as u32);
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        cert.sort_unstable();
        match &self.best {
            None => self.best = Some((cert, perm)),
            Some((best, best_perm)) => match cert.cmp(best) {
                std::cmp::Ordering::Less => self.best = Some((cert, perm)),
                std::cmp::Ordering::Equal => {
                    let mut inv = vec![0; n];
                    for (v, &p) in best_perm.iter().enumerate() {
                        inv[p] = v;
                    }
                    let gamma: Vec<usize> = (0..n).map(|v| inv[perm[v]]).collect();
                    if gamma.iter().enumerate().any(|(v, &w)| v != w) {
                        self.automorphisms.push(gamma);
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    /// Whether `v` shares an orbit with an explored sibling under the
    /// automorphisms found so far that fix `prefix` pointwise.
    fn same_orbit(&self, v: usize, explored: &[usize], prefix: &[usize]) -> bool {
        let n = self.g.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if prefix.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            any = true;
            for (x, &gx) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, gx));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&w| find(&mut parent, w) == rv)
    }
}

/// Refines `cells` to the coarsest equitable partition below it. Split cells
/// are replaced in place by their pieces in increasing neighbour-count order.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    let n = g.vertex_count();
    let mut in_cell = vec![false; n];
    let mut count = vec![0usize; n];
    'outer: loop {
        for s in 0..cells.len() {
            for &v in &cells[s] {
                in_cell[v] = true;
            }
            for (v, c) in count.iter_mut().enumerate() {
                *c = g.neighbors(v).iter().filter(|&&w| in_cell[w]).count();
            }
            for &v in &cells[s] {
                in_cell[v] = false;
            }
            let mut split = false;
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 || cell.iter().all(|&v| count[v] == count[cell[0]]) {
                    next.push(cell.clone());
                    continue;
                }
                split = true;
                let mut sorted = cell.clone();
                sorted.sort_by_key(|&v| (count[v], v));
                let mut start = 0;
                for i in 1..=sorted.len() {
                    if i == sorted.len() || count[sorted[i]] != count[sorted[start]] {
                        next.push(sorted[start..i].to_vec());
                        start = i;
                    }
                }
            }
            if split {
                *cells = next;
                continue 'outer;
            }
        }
        break;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;

    fn fam(s: &str) -> Graph {
        s.parse::<GraphFamily>().unwrap().generate().unwrap()
    }

    #[test]
    fn spec_examples() {
        assert!(are_isomorphic(&fam("c3"), &fam("k3")).unwrap());
        assert!(!are_isomorphic(&fam("m2"), &fam("p2")).unwrap());
        // the torus drawn as a wrapped grid, numbered column-major
        let l = 3;
        let idx = |i: usize, j: usize| (j % l) * l + (i % l);
        let mut edges = Vec::new();
        for i in 0..l {
            for j in 0..l {
                edges.push((idx(i, j), idx(i + 1, j)));
                edges.push((idx(i, j), idx(i, j + 1)));
            }
        }
        let wrapped = Graph::new(9, edges).unwrap();
        assert!(are_isomorphic(&wrapped, &fam("torus:3")).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let big = fam("c17");
        assert!(matches!(are_isomorphic(&big, &big), Err(Error::Capacity { .. })));
        assert!(are_isomorphic_capped(&big, &big, 20).unwrap());
    }

    #[test]
    fn relabelling_preserves_form() {
        let p = fam("petersen");
        let perm: Vec<usize> = (0..10).map(|v| (v * 3 + 7) % 10).collect();
        assert_eq!(canonical_form(&p), canonical_form(&p.relabel(&perm)));
        assert_ne!(canonical_form(&p), canonical_form(&fam("c5+c5")));
    }

    #[test]
    fn colours_are_respected() {
        let p = fam("p2");
        let a = canonical_form_coloured(&p, &[0, 1, 0]).unwrap();
        let b = canonical_form_coloured(&p, &[1, 0, 0]).unwrap();
        assert_ne!(a, b);
        let c = canonical_form_coloured(&p.relabel(&[2, 1, 0]), &[0, 1, 0]).unwrap();
        assert_eq!(a, c);
    }
}
