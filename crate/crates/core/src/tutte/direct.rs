//! Direct enumeration counterparts of the special-point counters.

use num_bigint::BigUint;

use super::components_of_subset;
use crate::error::{Error, Result};
use crate::graph::{binomial_u128, Graph};
use crate::par::Execution;
use crate::pattern::DEFAULT_SUBSET_BUDGET;
use crate::subsets::fold_k_subsets;

fn sum_over_subsets<F>(g: &Graph, k: usize, f: F) -> Result<BigUint>
where
    F: Fn(&[usize]) -> u64 + Sync + Send,
{
    let m = g.edge_count();
    if binomial_u128(m, k) > DEFAULT_SUBSET_BUDGET {
        return Err(Error::capacity("subset enumeration", format!("C({m},{k})"), DEFAULT_SUBSET_BUDGET));
    }
    let parts = fold_k_subsets(m, k, Execution::Auto, || 0u64, |acc, ids| {
        *acc += f(ids);
        Ok(())
    })?;
    Ok(BigUint::from(parts.into_iter().sum::<u64>()))
}

pub fn k_forests(g: &Graph, k: usize) -> Result<BigUint> {
    sum_over_subsets(g, k, |ids| u64::from(g.edge_induced(ids).is_forest()))
}

/// Pairs of a `k`-edge set and a proper `c`-colouring of `(V, A)`.
pub fn chromatic_pairs(g: &Graph, k: usize, c: u64) -> Result<BigUint> {
    let n = g.vertex_count() as u32;
    let total = (c as u128).checked_pow(n).filter(|&t| t <= 10_000_000);
    let Some(total) = total else {
        return Err(Error::capacity("colourings", format!("{c}^{n}"), 10_000_000));
    };
    sum_over_subsets(g, k, |ids| {
        let mut colour = vec![0u64; n as usize];
        let mut count = 0;
        for code in 0..total {
            let mut x = code;
            for slot in colour.iter_mut() {
                *slot = (x % c as u128) as u64;
                x /= c as u128;
            }
            if ids.iter().all(|&e| {
                let (u, v) = g.edge(e);
                colour[u] != colour[v]
            }) {
                count += 1;
            }
        }
        count
    })
}

fn is_acyclic_orientation(n: usize, arcs: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; n];
    for &(_, v) in arcs {
        indeg[v] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(u) = stack.pop() {
        seen += 1;
        for &(a, b) in arcs {
            if a == u {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
    }
    seen == n
}

/// Pairs of a `k`-edge set and an acyclic orientation of `(V, A)`.
pub fn acyclic_orientation_pairs(g: &Graph, k: usize) -> Result<BigUint> {
    if k > 20 {
        return Err(Error::capacity("orientations", format!("2^{k}"), "2^20"));
    }
    let n = g.vertex_count();
    sum_over_subsets(g, k, |ids| {
        (0u32..1 << ids.len())
            .filter(|mask| {
                let arcs: Vec<(usize, usize)> = ids
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| {
                        let (u, v) = g.edge(e);
                        if mask >> i & 1 == 1 {
                            (u, v)
                        } else {
                            (v, u)
                        }
                    })
                    .collect();
                is_acyclic_orientation(n, &arcs)
            })
            .count() as u64
    })
}

pub fn even_component_subsets(g: &Graph, k: usize) -> Result<BigUint> {
    sum_over_subsets(g, k, |ids| u64::from(components_of_subset(g, ids) % 2 == 0))
}

pub fn even_betti_subsets(g: &Graph, k: usize) -> Result<BigUint> {
    let n = g.vertex_count();
    sum_over_subsets(g, k, |ids| {
        u64::from((components_of_subset(g, ids) + ids.len() - n) % 2 == 0)
    })
}
