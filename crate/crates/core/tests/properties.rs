use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

use edgesub::coefficient::coefficient_table;
use edgesub::fracture::{enumerate_fractures, fractured_graph, DEFAULT_FRACTURE_BUDGET};
use edgesub::graph::canonical_form;
use edgesub::hom::{count_auts, count_cp_homs, count_embs, count_subs};
use edgesub::pattern::{
    count_colourful, count_exact_bruteforce, count_exact_via_subs, uniform_k_subset, CountOptions, CountQuery,
};
use edgesub::property::{all_k_edge_graphs, enumerate_phi_k};
use edgesub::random::{random_coloured, random_graph};
use edgesub::tutte::{tutte_k_bruteforce, tutte_tilde_k_bruteforce, RationalPoint};
use edgesub::{Execution, Graph, GraphFamily, PropertySpec};

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..=7, any::<u64>()).prop_map(|(n, seed)| {
        let mut r = Xoshiro256PlusPlus::seed_from_u64(seed);
        random_graph(n, 0.5, &mut r)
    })
}

fn fam(s: &str) -> Graph {
    s.parse::<GraphFamily>().unwrap().generate().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labels(g in small_graph(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        let mut r = Xoshiro256PlusPlus::seed_from_u64(seed);
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut r);
        prop_assert_eq!(canonical_form(&g), canonical_form(&g.relabel(&perm)));
    }

    #[test]
    fn subgraphs_times_automorphisms_are_embeddings(g in small_graph(), idx in 0usize..6) {
        let h = fam(["k2", "path:2", "path:3", "k3", "c4", "star:3"][idx]);
        let subs = count_subs(&h, &g).unwrap();
        prop_assert_eq!(subs * count_auts(&h).unwrap(), count_embs(&h, &g).unwrap());
    }

    #[test]
    fn exact_modes_agree(g in small_graph(), k in 1usize..=3, idx in 0usize..8) {
        let builtins = PropertySpec::builtins();
        let phi = builtins[idx % builtins.len()].clone();
        let opts = CountOptions::default();
        let q = CountQuery::new(phi, k, g);
        prop_assert_eq!(count_exact_bruteforce(&q, &opts).unwrap(), count_exact_via_subs(&q, &opts).unwrap());
    }

    #[test]
    fn colourful_count_matches_basis(seed in any::<u64>(), idx in 0usize..4) {
        let h = Arc::new(fam(["path:2", "k3", "c4", "star:3"][idx]));
        let mut r = Xoshiro256PlusPlus::seed_from_u64(seed);
        let g = random_coloured(&h, 8, 0.5, &mut r);
        let phi = PropertySpec::builtin("connected").unwrap();
        let table = coefficient_table(&phi, &h, DEFAULT_FRACTURE_BUDGET, Execution::Sequential).unwrap();
        let via: BigInt = table
            .support()
            .map(|(f, a)| {
                let fg = fractured_graph(&h, f).unwrap();
                a * BigInt::from(count_cp_homs(fg.coloured(), &g).unwrap())
            })
            .sum();
        prop_assert_eq!(BigInt::from(count_colourful(&phi, &g).unwrap()), via);
    }

    #[test]
    fn tilde_factorises_through_rescaling(g in small_graph(), k in 0usize..=3, a in -3i64..=3, b in -3i64..=3) {
        // T^k = (x-1)^{-k(E)} (y-1)^{-|V|} T~^k away from the singular lines
        prop_assume!(a != 1 && b != 1);
        let p = RationalPoint::int(a, b);
        let t = tutte_k_bruteforce(&g, k, &p).unwrap().value;
        let tilde = tutte_tilde_k_bruteforce(&g, k, &p).unwrap();
        let one = num_rational::BigRational::from_integer(1.into());
        let scale = num_traits::pow(&p.x - &one, g.component_count())
            * num_traits::pow(&p.y - &one, g.vertex_count());
        prop_assert_eq!(t * scale, tilde);
    }

    #[test]
    fn bottom_and_top_fractures_are_present(idx in 0usize..5) {
        let h = fam(["k2", "path:2", "k3", "c4", "star:3"][idx]);
        let fs = enumerate_fractures(&h, 10_000).unwrap();
        let bottom = edgesub::Fracture::bottom(&h);
        let top = edgesub::Fracture::top(&h);
        prop_assert!(fs.contains(&bottom) && fs.contains(&top));
    }
}

#[test]
fn phi_k_matches_exhaustive_enumeration() {
    for phi in PropertySpec::builtins() {
        for k in 1..=4 {
            let Ok(listed) = enumerate_phi_k(&phi, k, 1000) else { continue };
            let mut listed: Vec<_> = listed.iter().map(canonical_form).collect();
            let mut expected: Vec<_> = all_k_edge_graphs(k)
                .into_iter()
                .filter(|g| phi.evaluate(g).unwrap())
                .map(|g| canonical_form(&g))
                .collect();
            listed.sort();
            expected.sort();
            assert_eq!(listed, expected, "{} at k={k}", phi.name());
        }
    }
}

#[test]
fn uniform_subsets_are_uniform() {
    const DRAWS: u64 = 100_000;
    let mut hits: HashMap<Vec<usize>, u64> = HashMap::new();
    for seed in 0..DRAWS {
        *hits.entry(uniform_k_subset(5, 2, seed).unwrap()).or_default() += 1;
    }
    assert_eq!(hits.len(), 10);
    let expected = DRAWS as f64 / 10.0;
    let sigma = (DRAWS as f64 * 0.1 * 0.9).sqrt();
    for (s, c) in hits {
        assert!((c as f64 - expected).abs() <= 4.0 * sigma, "{s:?} drawn {c} times");
    }
}

#[test]
fn exhaustive_counts_sum_to_binomial() {
    let g = fam("petersen");
    let opts = CountOptions::default();
    let phi = PropertySpec::builtin("trivially-true").unwrap();
    let total = count_exact_bruteforce(&CountQuery::new(phi, 3, g), &opts).unwrap();
    assert_eq!(total, BigUint::from(455u32));
}
