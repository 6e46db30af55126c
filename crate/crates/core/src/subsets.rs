use crate::error::Result;
use crate::graph::next_combination;
use crate::par::{self, Execution};

/// Folds `step` over every `k`-subset of `0..m` (sorted, lexicographic within
/// a branch). Work is split by smallest element; one accumulator per branch
/// is returned in branch order.
pub(crate) fn fold_k_subsets<T, I, F>(
    m: usize,
    k: usize,
    exec: Execution,
    init: I,
    step: F,
) -> Result<Vec<T>>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &[usize]) -> Result<()> + Sync + Send,
{
    if k > m {
        return Ok(Vec::new());
    }
    if k == 0 {
        let mut acc = init();
        step(&mut acc, &[])?;
        return Ok(vec![acc]);
    }
    par::try_map_range(exec, m - k + 1, |first| {
        let mut acc = init();
        // offsets into first+1..m
        let mut rest: Vec<usize> = (0..k - 1).collect();
        let mut subset = vec![first; k];
        loop {
            for (slot, &r) in subset[1..].iter_mut().zip(&rest) {
                *slot = first + 1 + r;
            }
            step(&mut acc, &subset)?;
            if k == 1 || !next_combination(&mut rest, m - first - 1) {
                break;
            }
        }
        Ok(acc)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn visits_every_subset_once() {
        for m in 0..7 {
            for k in 0..=m + 1 {
                let seen = fold_k_subsets(m, k, Execution::Auto, Vec::new, |acc, s| {
                    acc.push(s.to_vec());
                    Ok(())
                })
                .unwrap();
                let mut all: Vec<Vec<usize>> = seen.into_iter().flatten().collect();
                let n = all.len();
                all.sort();
                all.dedup();
                assert_eq!(all.len(), n);
                assert_eq!(n as u128, crate::graph::binomial_u128(m, k));
                assert!(all.iter().all(|s| s.windows(2).all(|w| w[0] < w[1]) && s.iter().all(|&x| x < m)));
            }
        }
    }
}
