//! Set partitions as restricted-growth strings.
//!
//! A string `s` over `0..n` encodes the partition in which positions `i` and
//! `j` share a block iff `s[i] == s[j]`; it satisfies `s[0] = 0` and
//! `s[i] <= 1 + max(s[..i])`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Every partition of an `n`-set, in lexicographic order of its string.
pub fn all_rgs(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; n];
    fn rec(i: usize, max: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            if i == 0 && b > 0 {
                break;
            }
            cur[i] = b;
            rec(i + 1, max.max(b), cur, out);
        }
    }
    if n == 0 {
        out.push(Vec::new());
    } else {
        rec(0, 0, &mut cur, &mut out);
    }
    out
}

/// Number of blocks of the partition `s`.
pub fn block_count(s: &[u8]) -> usize {
    s.iter().max().map_or(0, |&m| m as usize + 1)
}

/// Whether `s` is a valid restricted-growth string.
pub fn is_rgs(s: &[u8]) -> bool {
    let mut next = 0u8;
    for &b in s {
        if b > next {
            return false;
        }
        if b == next {
            next = next.saturating_add(1);
        }
    }
    true
}

/// Relabels arbitrary block labels into restricted-growth form.
pub fn normalise(labels: &[usize]) -> Vec<u8> {
    let mut map: Vec<(usize, u8)> = Vec::new();
    labels
        .iter()
        .map(|&l| match map.iter().find(|(k, _)| *k == l) {
            Some(&(_, v)) => v,
            None => {
                let v = map.len() as u8;
                map.push((l, v));
                v
            }
        })
        .collect()
}

/// Whether every block of `fine` lies inside a block of `coarse`.
pub fn refines(fine: &[u8], coarse: &[u8]) -> bool {
    let mut image = [u8::MAX; 256];
    fine.iter().zip(coarse).all(|(&f, &c)| {
        let slot = &mut image[f as usize];
        if *slot == u8::MAX {
            *slot = c;
            true
        } else {
            *slot == c
        }
    })
}

/// `(-1)^(m-1) (m-1)!`, the Möbius value from `m` blocks to one block.
pub fn merge_weight(m: usize) -> BigInt {
    if m == 0 {
        return BigInt::one();
    }
    let mut f = BigInt::one();
    for i in 1..m {
        f *= i;
    }
    if (m - 1) % 2 == 1 {
        -f
    } else {
        f
    }
}

/// Möbius value between partitions `fine <= coarse` of the same set.
pub fn mobius(fine: &[u8], coarse: &[u8]) -> BigInt {
    let nb = block_count(coarse);
    let mut inside = vec![0usize; nb];
    let mut seen = vec![false; block_count(fine)];
    for (&f, &c) in fine.iter().zip(coarse) {
        if !seen[f as usize] {
            seen[f as usize] = true;
            inside[c as usize] += 1;
        }
    }
    let mut out = BigInt::one();
    for m in inside {
        out *= merge_weight(m);
        if out.is_zero() {
            break;
        }
    }
    out
}

/// Bell numbers `B(0..=n)`.
pub fn bell_numbers(n: usize) -> Vec<u128> {
    let mut row = vec![1u128];
    let mut bells = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let y = *next.last().unwrap();
            next.push(x.saturating_add(y));
        }
        bells.push(next[0]);
        row = next;
    }
    bells.truncate(n + 1);
    bells
}
