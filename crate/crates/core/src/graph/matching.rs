use std::collections::VecDeque;

use super::Graph;

/// Size of a maximum matching (Edmonds' blossom algorithm).
pub fn max_matching_size(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut mate = vec![usize::MAX; n];
    // greedy start
    for &(u, v) in g.edges() {
        if mate[u] == usize::MAX && mate[v] == usize::MAX {
            mate[u] = v;
            mate[v] = u;
        }
    }
    let mut size = mate.iter().filter(|&&m| m != usize::MAX).count() / 2;
    for root in 0..n {
        if mate[root] == usize::MAX && augment_from(g, root, &mut mate) {
            size += 1;
        }
    }
    size
}

const NONE: usize = usize::MAX;

fn augment_from(g: &Graph, root: usize, mate: &mut [usize]) -> bool {
    let n = g.vertex_count();
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut queue = VecDeque::new();
    used[root] = true;
    queue.push_back(root);

    while let Some(v) = queue.pop_front() {
        for &to in g.neighbors(v) {
            if base[v] == base[to] || mate[v] == to {
                continue;
            }
            if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                let cur = lca(&base, mate, &parent, v, to);
                let mut blossom = vec![false; n];
                mark_path(&mut base, mate, &mut parent, &mut blossom, v, cur, to);
                mark_path(&mut base, mate, &mut parent, &mut blossom, to, cur, v);
                for i in 0..n {
                    if blossom[base[i]] {
                        base[i] = cur;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to] == NONE {
                parent[to] = v;
                if mate[to] == NONE {
                    let mut u = to;
                    while u != NONE {
                        let pv = parent[u];
                        let ppv = mate[pv];
                        mate[u] = pv;
                        mate[pv] = u;
                        u = ppv;
                    }
                    return true;
                }
                used[mate[to]] = true;
                queue.push_back(mate[to]);
            }
        }
    }
    false
}

fn lca(base: &[usize], mate: &[usize], parent: &[usize], mut a: usize, mut b: usize) -> usize {
    let mut seen = vec![false; base.len()];
    loop {
        a = base[a];
        seen[a] = true;
        if mate[a] == NONE {
            break;
        }
        a = parent[mate[a]];
    }
    loop {
        b = base[b];
        if seen[b] {
            return b;
        }
        b = parent[mate[b]];
    }
}

fn mark_path(
    base: &mut [usize],
    mate: &[usize],
    parent: &mut [usize],
    blossom: &mut [bool],
    mut v: usize,
    b: usize,
    mut child: usize,
) {
    while base[v] != b {
        blossom[base[v]] = true;
        blossom[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;

    fn brute(g: &Graph) -> usize {
        fn rec(g: &Graph, e: usize, used: &mut Vec<bool>) -> usize {
            if e == g.edge_count() {
                return 0;
            }
            let skip = rec(g, e + 1, used);
            let (u, v) = g.edge(e);
            if used[u] || used[v] {
                return skip;
            }
            used[u] = true;
            used[v] = true;
            let take = 1 + rec(g, e + 1, used);
            used[u] = false;
            used[v] = false;
            skip.max(take)
        }
        rec(g, 0, &mut vec![false; g.vertex_count()])
    }

    #[test]
    fn known_values() {
        let f = |s: &str| s.parse::<GraphFamily>().unwrap().generate().unwrap();
        assert_eq!(max_matching_size(&f("c5")), 2);
        assert_eq!(max_matching_size(&f("k4")), 2);
        let petersen = f("petersen");
        assert_eq!(brute(&petersen), 5);
        assert_eq!(max_matching_size(&petersen), 5);
        assert_eq!(max_matching_size(&f("sun:5")), 5);
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_xoshiro::Xoshiro256PlusPlus::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..10);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            assert_eq!(max_matching_size(&g), brute(&g));
        }
    }
}
