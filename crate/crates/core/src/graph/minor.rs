use std::collections::HashSet;

use super::{canonical_form, CanonicalForm, Graph};
use crate::error::{Error, Result};

/// Default host-size limit for [`minor_contains`], applied after reductions.
pub const DEFAULT_MINOR_HOST_CAP: usize = 14;

/// Whether `pattern` is a minor of `host`.
pub fn minor_contains(pattern: &Graph, host: &Graph) -> Result<bool> {
    minor_contains_capped(pattern, host, DEFAULT_MINOR_HOST_CAP)
}

/// [`minor_contains`] with an explicit limit on the reduced host size.
///
/// Reductions that preserve the answer are applied first: a connected
/// pattern is searched for in each host component separately; when the
/// pattern has minimum degree at least 2 host vertices of degree at most 1
/// are deleted, and at least 3 degree-2 host vertices are suppressed.
pub fn minor_contains_capped(pattern: &Graph, host: &Graph, cap: usize) -> Result<bool> {
    if pattern.vertex_count() > host.vertex_count() || pattern.edge_count() > host.edge_count() {
        return Ok(false);
    }
    if pattern.edge_count() == 0 {
        return Ok(true);
    }
    let connected_pattern = pattern.is_connected();
    let min_deg = pattern.min_degree();
    let pieces: Vec<Graph> = if connected_pattern {
        host.components()
            .iter()
            .map(|c| host.induced(c))
            .filter(|c| c.edge_count() >= pattern.edge_count())
            .collect()
    } else {
        vec![host.clone()]
    };
    for piece in pieces {
        let reduced = reduce(piece, min_deg);
        if reduced.vertex_count() < pattern.vertex_count()
            || reduced.edge_count() < pattern.edge_count()
        {
            continue;
        }
        if reduced.vertex_count() > cap {
            return Err(Error::capacity(
                "minor test host",
                format!("{} vertices", reduced.vertex_count()),
                cap,
            ));
        }
        let mut failed = HashSet::new();
        if search(pattern, reduced, &mut failed) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn reduce(mut g: Graph, pattern_min_degree: usize) -> Graph {
    if pattern_min_degree < 2 {
        return g;
    }
    loop {
        if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) <= 1) {
            g = g.remove_vertex(v);
            continue;
        }
        if pattern_min_degree >= 3 {
            if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) == 2) {
                let a = g.neighbors(v)[0];
                g = g.contract(a, v);
                continue;
            }
        }
        return g;
    }
}

fn search(pattern: &Graph, host: Graph, failed: &mut HashSet<CanonicalForm>) -> bool {
    if host.vertex_count() < pattern.vertex_count() || host.edge_count() < pattern.edge_count() {
        return false;
    }
    if contains_subgraph(pattern, &host) {
        return true;
    }
    if host.vertex_count() == pattern.vertex_count() {
        return false;
    }
    if !failed.insert(canonical_form(&host)) {
        return false;
    }
    for &(u, v) in host.edges() {
        if search(pattern, host.contract(u, v), failed) {
            return true;
        }
    }
    false
}

/// Whether `host` has a subgraph isomorphic to `pattern` (not necessarily
/// induced).
pub fn contains_subgraph(pattern: &Graph, host: &Graph) -> bool {
    if pattern.vertex_count() > host.vertex_count() || pattern.edge_count() > host.edge_count() {
        return false;
    }
    let order = search_order(pattern);
    let mut image = vec![usize::MAX; pattern.vertex_count()];
    let mut used = vec![false; host.vertex_count()];
    extend(pattern, host, &order, 0, &mut image, &mut used)
}

/// Pattern vertices ordered so that each one has as many earlier neighbours
/// as possible; ties go to higher degree, then lower index.
pub(crate) fn search_order(p: &Graph) -> Vec<usize> {
    let n = p.vertex_count();
    let mut placed = vec![false; n];
    let mut back = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (back[v], p.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed[v] = true;
        order.push(v);
        for &w in p.neighbors(v) {
            back[w] += 1;
        }
    }
    order
}

fn extend(
    p: &Graph,
    h: &Graph,
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let anchor = p.neighbors(v).iter().copied().find(|&w| image[w] != usize::MAX);
    let candidates: Vec<usize> = match anchor {
        Some(w) => h.neighbors(image[w]).to_vec(),
        None => (0..h.vertex_count()).collect(),
    };
    for x in candidates {
        if used[x] || h.degree(x) < p.degree(v) {
            continue;
        }
        if p
            .neighbors(v)
            .iter()
            .any(|&w| image[w] != usize::MAX && !h.has_edge(image[w], x))
        {
            continue;
        }
        image[v] = x;
        used[x] = true;
        if extend(p, h, order, depth + 1, image, used) {
            return true;
        }
        image[v] = usize::MAX;
        used[x] = false;
    }
    false
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
        assert!(minor_contains(&fam("k3"), &fam("c5")).unwrap());
        assert!(!minor_contains(&fam("k5"), &fam("grid:3")).unwrap());
        assert!(!minor_contains(&fam("biclique:3,3"), &fam("k5")).unwrap());
    }

    #[test]
    fn nonplanar_witnesses() {
        assert!(minor_contains(&fam("k5"), &fam("k5")).unwrap());
        assert!(minor_contains(&fam("biclique:3,3"), &fam("petersen")).unwrap());
        assert!(minor_contains(&fam("k5"), &fam("petersen")).unwrap());
        assert!(minor_contains(&fam("biclique:3,3"), &fam("torus:3")).unwrap());
    }

    #[test]
    fn reductions_keep_large_sparse_hosts_in_range() {
        assert!(!minor_contains(&fam("k5"), &fam("matching:50")).unwrap());
        assert!(!minor_contains(&fam("biclique:3,3"), &fam("star:50")).unwrap());
        assert!(!minor_contains(&fam("k5"), &fam("5*sun:5")).unwrap());
        assert!(minor_contains(&fam("k3"), &fam("cycle:12")).unwrap());
        assert!(minor_contains(&fam("k3"), &fam("cycle:40")).is_err());
    }

    #[test]
    fn capacity_reported() {
        let err = minor_contains(&fam("k5"), &fam("torus:5")).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
    }

    #[test]
    fn disconnected_patterns() {
        assert!(minor_contains(&fam("m2"), &fam("p3")).unwrap());
        assert!(!minor_contains(&fam("m2"), &fam("k3")).unwrap());
        assert!(minor_contains(&fam("k3+k3"), &fam("c3+c4")).unwrap());
        let k2_k1 = Graph::new(3, [(0, 1)]).unwrap();
        assert!(!minor_contains(&k2_k1, &fam("k2")).unwrap());
        assert!(minor_contains(&k2_k1, &fam("p2")).unwrap());
    }
}
