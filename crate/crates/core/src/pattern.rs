//! Counting, approximating and deciding `k`-edge subgraph patterns.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::coefficient::coefficient_table;
use crate::coloured::HColouredGraph;
use crate::error::{Error, Result};
use crate::fracture::partition::{all_rgs, block_count, merge_weight};
use crate::fracture::{fractured_graph, DEFAULT_FRACTURE_BUDGET};
use crate::graph::{binomial_u128, contains_subgraph, max_matching_size, Graph};
use crate::hom::{count_auts, count_cp_homs, count_homs, count_subs};
use crate::par::{self, Execution};
use crate::property::{enumerate_phi_k, PropertySpec, DEFAULT_PHI_K_CAP};
use crate::subsets::fold_k_subsets;

/// Default limit on subset evaluations for exhaustive counting.
pub const DEFAULT_SUBSET_BUDGET: u128 = 100_000_000;
/// Default limit on the number of samples drawn by the estimator.
pub const DEFAULT_SAMPLE_BUDGET: u64 = 1_000_000_000;

/// Exact counting strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMode {
    /// Enumerate every `k`-edge subset.
    Brute,
    /// Sum subgraph counts over the isomorphism classes accepted by the
    /// property.
    ViaSubs,
    /// As [`CountMode::ViaSubs`], with each subgraph count obtained from
    /// homomorphism counts by Möbius inversion over vertex partitions.
    ViaBasis,
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMode::Brute => "brute",
            CountMode::ViaSubs => "via-subs",
            CountMode::ViaBasis => "via-basis",
        })
    }
}

impl FromStr for CountMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(CountMode::Brute),
            "via-subs" => Ok(CountMode::ViaSubs),
            "via-basis" => Ok(CountMode::ViaBasis),
            other => Err(Error::usage(format!(
                "unknown mode '{other}' (expected brute, via-subs or via-basis)"
            ))),
        }
    }
}

/// Count the `k`-edge subsets `A` of `host` with `phi(host[A])`.
#[derive(Clone, Debug)]
pub struct CountQuery {
    pub property: PropertySpec,
    pub k: usize,
    pub host: Graph,
    pub mode: Option<CountMode>,
}

impl CountQuery {
    pub fn new(property: PropertySpec, k: usize, host: Graph) -> Self {
        CountQuery {
            property,
            k,
            host,
            mode: None,
        }
    }

    pub fn with_mode(mut self, mode: CountMode) -> Self {
        self.mode = Some(mode);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::usage("k must be at least 1"));
        }
        Ok(())
    }
}

/// Budgets and scheduling shared by the counting routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountOptions {
    pub subset_budget: u128,
    pub phi_k_cap: usize,
    pub sample_budget: u64,
    pub exec: Execution,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            subset_budget: DEFAULT_SUBSET_BUDGET,
            phi_k_cap: DEFAULT_PHI_K_CAP,
            sample_budget: DEFAULT_SAMPLE_BUDGET,
            exec: Execution::Auto,
        }
    }
}

/// Dispatches on the query mode; without one, enumerates subsets when that
/// fits the budget and decomposes into subgraph counts otherwise.
pub fn count_exact(q: &CountQuery, opts: &CountOptions) -> Result<(CountMode, BigUint)> {
    let mode = match q.mode {
        Some(m) => m,
        None if binomial_u128(q.host.edge_count(), q.k) <= opts.subset_budget => CountMode::Brute,
        None => CountMode::ViaSubs,
    };
    let value = match mode {
        CountMode::Brute => count_exact_bruteforce(q, opts)?,
        CountMode::ViaSubs => count_exact_via_subs(q, opts)?,
        CountMode::ViaBasis => count_exact_via_basis(q, opts)?,
    };
    Ok((mode, value))
}

/// Exhaustive enumeration of `k`-edge subsets; the reference count.
pub fn count_exact_bruteforce(q: &CountQuery, opts: &CountOptions) -> Result<BigUint> {
    q.validate()?;
    let m = q.host.edge_count();
    let total = binomial_u128(m, q.k);
    if total > opts.subset_budget {
        return Err(Error::capacity(
            "subset enumeration",
            format!("C({m},{}) subsets", q.k),
            opts.subset_budget,
        ));
    }
    let hits = fold_k_subsets(m, q.k, opts.exec, || 0u64, |acc, ids| {
        *acc += u64::from(q.property.evaluate(&q.host.edge_induced(ids))?);
        Ok(())
    })?;
    Ok(BigUint::from(hits.into_iter().sum::<u64>()))
}

/// Sum of `Sub(H, host)` over the accepted `k`-edge patterns `H`.
pub fn count_exact_via_subs(q: &CountQuery, opts: &CountOptions) -> Result<BigUint> {
    q.validate()?;
    let patterns = enumerate_phi_k(&q.property, q.k, opts.phi_k_cap)?;
    let terms = par::try_map(opts.exec, &patterns, |h| count_subs(h, &q.host))?;
    Ok(terms.into_iter().sum())
}

/// `H / pi` for a vertex partition, or `None` when a block contains an edge.
fn quotient(h: &Graph, rgs: &[u8]) -> Option<Graph> {
    let mut edges = Vec::with_capacity(h.edge_count());
    for &(u, v) in h.edges() {
        let (a, b) = (rgs[u] as usize, rgs[v] as usize);
        if a == b {
            return None;
        }
        edges.push((a.min(b), a.max(b)));
    }
    edges.sort_unstable();
    edges.dedup();
    Some(Graph::new(block_count(rgs), edges).expect("quotient edges are in range"))
}

/// `Emb(h, g)` as the Möbius sum of homomorphism counts from quotients of
/// `h`.
pub fn embeddings_via_homs(h: &Graph, g: &Graph) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for rgs in all_rgs(h.vertex_count()) {
        let Some(q) = quotient(h, &rgs) else { continue };
        let mut sizes = vec![0usize; block_count(&rgs)];
        for &b in &rgs {
            sizes[b as usize] += 1;
        }
        let mu: BigInt = sizes.iter().map(|&s| merge_weight(s)).product();
        total += mu * BigInt::from(count_homs(&q, g)?);
    }
    Ok(total)
}

/// [`count_exact_via_subs`] with every subgraph count expanded in the
/// homomorphism basis.
pub fn count_exact_via_basis(q: &CountQuery, opts: &CountOptions) -> Result<BigUint> {
    q.validate()?;
    let patterns = enumerate_phi_k(&q.property, q.k, opts.phi_k_cap)?;
    let terms = par::try_map(opts.exec, &patterns, |h| {
        let emb = embeddings_via_homs(h, &q.host)?;
        let aut = BigInt::from(count_auts(h)?);
        let (quot, rem) = num_integer::Integer::div_rem(&emb, &aut);
        if !rem.is_zero() || quot.sign() == num_bigint::Sign::Minus {
            return Err(Error::usage("embedding count is not a multiple of the automorphism count"));
        }
        Ok(quot.to_biguint().expect("checked nonnegative"))
    })?;
    Ok(terms.into_iter().sum())
}

/// Edge sets with exactly one edge of every colour that satisfy `phi`,
/// enumerated directly.
pub fn count_colourful(phi: &PropertySpec, g: &HColouredGraph) -> Result<BigUint> {
    let classes = g.colour_classes();
    let product = classes
        .iter()
        .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
        .unwrap_or(u128::MAX);
    if product > DEFAULT_SUBSET_BUDGET {
        return Err(Error::capacity(
            "colourful enumeration",
            format!("{product} edge sets"),
            DEFAULT_SUBSET_BUDGET,
        ));
    }
    if product == 0 {
        return Ok(BigUint::zero());
    }
    let k = classes.len();
    let mut pick = vec![0usize; k];
    let mut ids = vec![0usize; k];
    let mut hits = 0u64;
    loop {
        for (i, c) in classes.iter().enumerate() {
            ids[i] = c[pick[i]];
        }
        if phi.evaluate(&g.graph().edge_induced(&ids))? {
            hits += 1;
        }
        let mut i = 0;
        loop {
            if i == k {
                return Ok(BigUint::from(hits));
            }
            pick[i] += 1;
            if pick[i] < classes[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// The colourful count as an alternating sum of uncoloured counts on `g`
/// with colour subsets removed.
pub fn count_colourful_inclusion_exclusion(
    phi: &PropertySpec,
    g: &HColouredGraph,
    opts: &CountOptions,
) -> Result<BigUint> {
    let k = g.pattern().edge_count();
    if k > 20 {
        return Err(Error::capacity("inclusion-exclusion terms", format!("2^{k}"), "2^20"));
    }
    if k == 0 {
        return Ok(BigUint::from(u8::from(phi.evaluate(&Graph::empty(0))?)));
    }
    let mut total = BigInt::zero();
    for mask in 0u32..(1 << k) {
        let removed: Vec<usize> = (0..k).filter(|&c| mask >> c & 1 == 1).collect();
        let q = CountQuery::new(phi.clone(), k, g.without_colours(&removed).graph().clone());
        let term = BigInt::from(count_exact_bruteforce(&q, opts)?);
        if removed.len() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
        .to_biguint()
        .ok_or_else(|| Error::usage("inclusion-exclusion produced a negative count"))
}

/// The colourful count as `sum a(rho) * cpHom(fractured(rho) -> g)`.
pub fn count_colourful_via_basis(
    phi: &PropertySpec,
    g: &HColouredGraph,
    exec: Execution,
) -> Result<BigUint> {
    let h: &Arc<Graph> = g.pattern();
    let table = coefficient_table(phi, h, DEFAULT_FRACTURE_BUDGET, exec)?;
    let support: Vec<_> = table.support().cloned().collect();
    let terms = par::try_map(exec, &support, |(f, a)| {
        let fg = fractured_graph(h, f)?;
        Ok::<_, Error>(a * BigInt::from(count_cp_homs(fg.coloured(), g)?))
    })?;
    terms
        .into_iter()
        .sum::<BigInt>()
        .to_biguint()
        .ok_or_else(|| Error::usage("basis expansion produced a negative count"))
}

/// A uniformly random `k`-subset of `0..m`, sorted; identical for equal
/// seeds.
pub fn uniform_k_subset(m: usize, k: usize, seed: u64) -> Result<Vec<usize>> {
    if k > m {
        return Err(Error::parameter(format!("cannot choose {k} of {m}")));
    }
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut s = index::sample(&mut rng, m, k).into_vec();
    s.sort_unstable();
    Ok(s)
}

/// Upper bound on the diagonal Ramsey number: `C(2k-2, k-1)`.
pub fn ramsey_surrogate(k: usize) -> u128 {
    binomial_u128(2 * k.max(1) - 2, k.max(1) - 1)
}

/// Sample count `ceil(C(r, k) * 3 ln(2/delta) / eps^2)` with `r` the Ramsey
/// surrogate.
pub fn fptras_sample_count(k: usize, epsilon: f64, delta: f64) -> f64 {
    let r = ramsey_surrogate(k) as usize;
    let c = binomial_u128(r, k) as f64;
    (c * 3.0 * (2.0 / delta).ln() / (epsilon * epsilon)).ceil()
}

/// How an estimate was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimatePath {
    /// Small instance solved by enumeration.
    Exact,
    /// Uniform sampling of `k`-edge subsets.
    Sampling,
    /// Per-pattern subgraph counts, each at confidence `1 - delta/g(k)`.
    Treewidth,
}

/// Output of [`fptras_estimate`].
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateResult {
    pub estimate: BigRational,
    pub epsilon: f64,
    pub delta: f64,
    /// Samples drawn; zero off the sampling path.
    pub samples: u64,
    /// Samples satisfying the property.
    pub hits: u64,
    pub seed: u64,
    pub path: EstimatePath,
    /// Confidence parameter handed to each pattern on the treewidth path.
    pub per_pattern_delta: Option<f64>,
}

/// The estimator's threshold constant: the larger declared criterion
/// threshold, and at least 4.
pub fn fptras_constant(phi: &PropertySpec) -> Option<usize> {
    let md = phi.metadata();
    match (md.matching_from, md.star_from) {
        (Some(a), Some(b)) => Some(a.max(b).max(4)),
        _ => None,
    }
}

fn check_accuracy(epsilon: f64, delta: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::parameter("epsilon and delta must lie in (0, 1)"));
    }
    Ok(())
}

/// Randomized approximation of the pattern count.
///
/// With both criteria declared: small `k` or small hosts are counted
/// exactly, otherwise `t` uniform `k`-subsets are sampled and
/// `(X/t) * C(m, k)` is returned. With only a treewidth bound declared, the
/// per-pattern route is taken.
pub fn fptras_estimate(
    q: &CountQuery,
    epsilon: f64,
    delta: f64,
    seed: u64,
    opts: &CountOptions,
) -> Result<EstimateResult> {
    q.validate()?;
    check_accuracy(epsilon, delta)?;
    let result = |estimate: BigRational, samples, hits, path, per_pattern_delta| EstimateResult {
        estimate,
        epsilon,
        delta,
        samples,
        hits,
        seed,
        path,
        per_pattern_delta,
    };
    let Some(c) = fptras_constant(&q.property) else {
        if q.property.metadata().treewidth_bound.is_none() {
            return Err(Error::usage(format!(
                "property '{}' declares neither both criteria nor a treewidth bound",
                q.property.name()
            )));
        }
        let patterns = enumerate_phi_k(&q.property, q.k, opts.phi_k_cap)?;
        let per = if patterns.is_empty() {
            delta
        } else {
            delta / patterns.len() as f64
        };
        let terms = par::try_map(opts.exec, &patterns, |h| count_subs(h, &q.host))?;
        let sum: BigUint = terms.into_iter().sum();
        return Ok(result(
            BigRational::from_integer(sum.into()),
            0,
            0,
            EstimatePath::Treewidth,
            Some(per),
        ));
    };
    let m = q.host.edge_count();
    let r = ramsey_surrogate(q.k);
    if q.k < c || (m as u128) <= r {
        let exact = count_exact_bruteforce(q, opts)?;
        return Ok(result(
            BigRational::from_integer(exact.into()),
            0,
            0,
            EstimatePath::Exact,
            None,
        ));
    }
    let t = fptras_sample_count(q.k, epsilon, delta);
    if t.is_nan() || t > opts.sample_budget as f64 {
        return Err(Error::capacity("samples", format!("{t}"), opts.sample_budget));
    }
    let t = t as u64;
    let hits = sample_hits(q, t, seed)?;
    let total = BigInt::from(binomial_u128(m, q.k));
    let estimate = BigRational::new(BigInt::from(hits) * total, BigInt::from(t));
    Ok(result(estimate, t, hits, EstimatePath::Sampling, None))
}

/// Draws `t` subsets from one seeded stream and counts the accepted ones.
/// Property values are memoised per edge set.
fn sample_hits(q: &CountQuery, t: u64, seed: u64) -> Result<u64> {
    let m = q.host.edge_count();
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut hits = 0u64;
    if m <= 128 {
        let mut memo: HashMap<u128, bool> = HashMap::new();
        for _ in 0..t {
            // k distinct uniform draws: uniform over k-subsets
            let mut mask = 0u128;
            while (mask.count_ones() as usize) < q.k {
                mask |= 1 << rng.gen_range(0..m);
            }
            let ok = match memo.get(&mask) {
                Some(&b) => b,
                None => {
                    let ids: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
                    let b = q.property.evaluate(&q.host.edge_induced(&ids))?;
                    memo.insert(mask, b);
                    b
                }
            };
            hits += u64::from(ok);
        }
    } else {
        let mut memo: HashMap<Vec<usize>, bool> = HashMap::new();
        for _ in 0..t {
            let mut ids = index::sample(&mut rng, m, q.k).into_vec();
            ids.sort_unstable();
            let ok = match memo.get(&ids) {
                Some(&b) => b,
                None => {
                    let b = q.property.evaluate(&q.host.edge_induced(&ids))?;
                    memo.insert(ids, b);
                    b
                }
            };
            hits += u64::from(ok);
        }
    }
    Ok(hits)
}

/// Which branch settled an existence query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecisionRoute {
    /// A matching of size `k` exists and the property holds on it.
    Matching,
    /// A vertex of degree `k` exists and the property holds on its star.
    Star,
    /// Subgraph search for every accepted pattern.
    Search,
}

/// Answer of [`decide_exists`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub exists: bool,
    pub route: DecisionRoute,
}

/// Whether some `k`-edge subset `A` of `g` has `phi(g[A])`.
pub fn decide_exists(phi: &PropertySpec, k: usize, g: &Graph, opts: &CountOptions) -> Result<Decision> {
    if k == 0 {
        return Err(Error::usage("k must be at least 1"));
    }
    let md = phi.metadata();
    if md.matching_from.is_none() && md.star_from.is_none() && md.treewidth_bound.is_none() {
        return Err(Error::usage(format!(
            "property '{}' declares no matching, star or treewidth metadata",
            phi.name()
        )));
    }
    if md.matching_from.is_some_and(|c| k >= c) && max_matching_size(g) >= k {
        return Ok(Decision {
            exists: true,
            route: DecisionRoute::Matching,
        });
    }
    if md.star_from.is_some_and(|c| k >= c) && g.max_degree() >= k {
        return Ok(Decision {
            exists: true,
            route: DecisionRoute::Star,
        });
    }
    let exists = k <= g.edge_count()
        && enumerate_phi_k(phi, k, opts.phi_k_cap)?
            .iter()
            .any(|h| contains_subgraph(h, g));
    Ok(Decision {
        exists,
        route: DecisionRoute::Search,
    })
}

/// `C(m, k)` as an exact integer.
pub fn binomial(m: usize, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k.min(m + 1) {
        acc = acc * BigUint::from(m - i) / BigUint::from(i + 1);
    }
    if k > m {
        BigUint::zero()
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;

    fn fam(s: &str) -> Graph {
        s.parse::<GraphFamily>().unwrap().generate().unwrap()
    }

    fn q(name: &str, k: usize, g: &str) -> CountQuery {
        CountQuery::new(PropertySpec::builtin(name).unwrap(), k, fam(g))
    }

    fn all_modes(query: &CountQuery) -> BigUint {
        let opts = CountOptions::default();
        let b = count_exact_bruteforce(query, &opts).unwrap();
        assert_eq!(count_exact_via_subs(query, &opts).unwrap(), b);
        assert_eq!(count_exact_via_basis(query, &opts).unwrap(), b);
        b
    }

    #[test]
    fn exact_examples() {
        assert_eq!(all_modes(&q("trivially-true", 3, "petersen")), BigUint::from(455u32));
        assert_eq!(all_modes(&q("forest", 2, "k3")), BigUint::from(3u32));
        assert_eq!(all_modes(&q("matching", 2, "path:3")), BigUint::from(1u32));
        assert_eq!(all_modes(&q("connected", 3, "k4")), BigUint::from(20u32));
        assert_eq!(all_modes(&q("trivially-false", 2, "k4")), BigUint::zero());
        assert_eq!(all_modes(&q("star", 3, "star:5")), BigUint::from(10u32));
        assert_eq!(all_modes(&q("matching", 5, "k3")), BigUint::zero());
    }

    #[test]
    fn colourful_identity_on_pattern() {
        let h = Arc::new(fam("k3"));
        let g = HColouredGraph::identity(Arc::clone(&h));
        for name in ["forest", "connected", "trivially-true"] {
            let phi = PropertySpec::builtin(name).unwrap();
            let expect = u32::from(phi.evaluate(&h).unwrap());
            assert_eq!(count_colourful(&phi, &g).unwrap(), BigUint::from(expect));
            assert_eq!(
                count_colourful_inclusion_exclusion(&phi, &g, &CountOptions::default()).unwrap(),
                BigUint::from(expect)
            );
            assert_eq!(
                count_colourful_via_basis(&phi, &g, Execution::Auto).unwrap(),
                BigUint::from(expect)
            );
        }
    }

    #[test]
    fn sampling_basics() {
        assert_eq!(uniform_k_subset(5, 5, 1).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(uniform_k_subset(30, 4, 9).unwrap(), uniform_k_subset(30, 4, 9).unwrap());
        assert!(uniform_k_subset(3, 4, 0).is_err());
        assert_eq!(ramsey_surrogate(4), 20);
        assert_eq!(fptras_sample_count(4, 0.2, 0.1), (4845.0 * 3.0 * 20f64.ln() / 0.04).ceil());
    }

    #[test]
    fn estimator_paths() {
        let opts = CountOptions::default();
        let tt = fptras_estimate(&q("trivially-true", 4, "k7"), 0.2, 0.1, 3, &opts).unwrap();
        assert_eq!(tt.path, EstimatePath::Sampling);
        assert_eq!(tt.estimate, BigRational::from_integer(5985.into()));
        let small = fptras_estimate(&q("planar", 4, "k5"), 0.2, 0.1, 3, &opts).unwrap();
        assert_eq!(small.path, EstimatePath::Exact);
        assert_eq!(small.estimate, BigRational::from_integer(210.into()));
        let two = fptras_estimate(&q("two-regular", 3, "k4"), 0.2, 0.1, 3, &opts).unwrap();
        assert_eq!(two.path, EstimatePath::Treewidth);
        assert_eq!(two.estimate, BigRational::from_integer(4.into()));
        assert!(fptras_estimate(&q("eulerian", 3, "k4"), 0.2, 0.1, 3, &opts).is_err());
        assert!(fptras_estimate(&q("forest", 3, "k4"), 1.5, 0.1, 3, &opts).is_err());
    }

    #[test]
    fn decision_routes() {
        let opts = CountOptions::default();
        let phi = |n: &str| PropertySpec::builtin(n).unwrap();
        let d = decide_exists(&phi("matching"), 3, &fam("path:6"), &opts).unwrap();
        assert_eq!((d.exists, d.route), (true, DecisionRoute::Matching));
        let d = decide_exists(&phi("star"), 7, &fam("star:10"), &opts).unwrap();
        assert_eq!((d.exists, d.route), (true, DecisionRoute::Star));
        let d = decide_exists(&phi("connected"), 3, &fam("matching:5"), &opts).unwrap();
        assert!(!d.exists);
        assert!(decide_exists(&phi("hamiltonian"), 3, &fam("k4"), &opts).is_err());
    }

    #[test]
    fn exact_binomial() {
        assert_eq!(binomial(28, 4), BigUint::from(20475u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
    }
}
