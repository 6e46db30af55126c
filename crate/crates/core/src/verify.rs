//! Self-check suites comparing independent computations of the same
//! quantity on seeded random instances.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::Serialize;

use crate::coefficient::coefficient_table;
use crate::error::{Error, Result};
use crate::fracture::{fractured_graph, torus_fixed_points, torus_shift_act, FixedPointKind, DEFAULT_FRACTURE_BUDGET};
use crate::graph::{Graph, GraphFamily, MultiGraph};
use crate::hom::{build_monotonicity_matrix, count_cp_homs, DEFAULT_MATRIX_BUDGET};
use crate::par::Execution;
use crate::pattern::{count_colourful, count_colourful_inclusion_exclusion, CountOptions};
use crate::property::PropertySpec;
use crate::random::{random_coloured, random_graph};
use crate::tutte::{
    aggregation_identity_check, direct, special_point_counters, tutte_classical_bruteforce,
    tutte_k_bruteforce, tutte_k_delcon, RationalPoint,
};

/// Patterns used by the colourful suites.
pub const SMALL_PATTERNS: [&str; 6] = ["k2", "path:2", "path:3", "k3", "c4", "star:3"];

/// Available suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    FixedPoints { ell: usize },
    BasisIdentity,
    Triangularity,
    InclusionExclusion,
    TutteIdentities,
    SpecialPoints,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = [
        "fixed-points",
        "basis-identity",
        "triangularity",
        "inclusion-exclusion",
        "tutte-identities",
        "special-points",
    ];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "fixed-points" => Suite::FixedPoints { ell: 3 },
            "basis-identity" => Suite::BasisIdentity,
            "triangularity" => Suite::Triangularity,
            "inclusion-exclusion" => Suite::InclusionExclusion,
            "tutte-identities" => Suite::TutteIdentities,
            "special-points" => Suite::SpecialPoints,
            other => {
                return Err(Error::usage(format!(
                    "unknown suite '{other}' (expected one of {})",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Suite::FixedPoints { ell } => write!(f, "fixed-points (l={ell})"),
            Suite::BasisIdentity => f.write_str("basis-identity"),
            Suite::Triangularity => f.write_str("triangularity"),
            Suite::InclusionExclusion => f.write_str("inclusion-exclusion"),
            Suite::TutteIdentities => f.write_str("tutte-identities"),
            Suite::SpecialPoints => f.write_str("special-points"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Size knobs for the randomized suites.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub instances: usize,
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            instances: 10,
            exec: Execution::Auto,
        }
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn family(s: &str) -> Graph {
    s.parse::<GraphFamily>()
        .and_then(|f| f.generate())
        .expect("built-in pattern names are valid")
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::FixedPoints { ell } => fixed_points(ell)?,
        Suite::BasisIdentity => basis_identity(opts)?,
        Suite::Triangularity => triangularity(opts)?,
        Suite::InclusionExclusion => inclusion_exclusion(opts)?,
        Suite::TutteIdentities => tutte_identities(opts)?,
        Suite::SpecialPoints => special_points(opts)?,
    };
    Ok(SuiteReport {
        suite: suite.to_string(),
        checks,
    })
}

fn fixed_points(ell: usize) -> Result<Vec<Check>> {
    let fps = torus_fixed_points(ell)?;
    let h = GraphFamily::Torus(ell).generate()?;
    let mut out = vec![check("count", fps.len() == 15, format!("{} fixed points", fps.len()))];
    for kind in FixedPointKind::ALL {
        let of_kind: Vec<_> = fps.iter().filter(|f| f.kind == kind).collect();
        let verified = of_kind.iter().all(|f| f.verified);
        out.push(check(
            kind.name(),
            of_kind.len() == kind.multiplicity() && verified,
            format!(
                "multiplicity {} (expected {}), isomorphic to {}: {verified}",
                of_kind.len(),
                kind.multiplicity(),
                kind.family(ell)
            ),
        ));
    }
    let mut invariant = true;
    for fp in &fps {
        for a in 0..ell {
            for b in 0..ell {
                invariant &= torus_shift_act(&h, (a, b), &fp.fracture)? == fp.fracture;
            }
        }
    }
    out.push(check("shift-invariance", invariant, "every shift fixes every point"));
    Ok(out)
}

fn basis_identity(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(opts.seed);
    let mut out = Vec::new();
    for name in SMALL_PATTERNS {
        let h = Arc::new(family(name));
        let hosts: Vec<_> = (0..opts.instances)
            .map(|_| {
                let n = rng.gen_range(1..=10);
                random_coloured(&h, n, 0.6, &mut rng)
            })
            .collect();
        let mut mismatches = 0;
        let mut total = 0;
        for phi in PropertySpec::builtins() {
            let table = coefficient_table(&phi, &h, DEFAULT_FRACTURE_BUDGET, opts.exec)?;
            let support: Vec<_> = table
                .support()
                .map(|(f, a)| Ok((fractured_graph(&h, f)?.into_coloured(), a.clone())))
                .collect::<Result<_>>()?;
            for g in &hosts {
                let direct = BigInt::from(count_colourful(&phi, g)?);
                let mut basis = BigInt::from(0);
                for (fg, a) in &support {
                    basis += a * BigInt::from(count_cp_homs(fg, g)?);
                }
                total += 1;
                mismatches += usize::from(direct != basis);
            }
        }
        out.push(check(
            format!("H = {name}"),
            mismatches == 0,
            format!("{mismatches} mismatches in {total} comparisons"),
        ));
    }
    Ok(out)
}

fn triangularity(opts: &VerifyOptions) -> Result<Vec<Check>> {
    SMALL_PATTERNS
        .iter()
        .map(|name| {
            let h = Arc::new(family(name));
            let m = build_monotonicity_matrix(&h, DEFAULT_MATRIX_BUDGET, opts.exec)?;
            let bad = m.triangularity_violations();
            Ok(check(
                format!("H = {name}"),
                bad.is_empty(),
                format!("{}x{} matrix, {} violations", m.dimension(), m.dimension(), bad.len()),
            ))
        })
        .collect()
}

fn inclusion_exclusion(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(opts.seed);
    let count_opts = CountOptions {
        exec: opts.exec,
        ..CountOptions::default()
    };
    let mut out = Vec::new();
    for name in SMALL_PATTERNS {
        let h = Arc::new(family(name));
        let mut mismatches = 0;
        let mut total = 0;
        for _ in 0..opts.instances {
            let n = rng.gen_range(1..=9);
            let g = random_coloured(&h, n, 0.6, &mut rng);
            for phi in PropertySpec::builtins() {
                total += 1;
                let a = count_colourful(&phi, &g)?;
                let b = count_colourful_inclusion_exclusion(&phi, &g, &count_opts)?;
                mismatches += usize::from(a != b);
            }
        }
        out.push(check(
            format!("H = {name}"),
            mismatches == 0,
            format!("{mismatches} mismatches in {total} comparisons"),
        ));
    }
    Ok(out)
}

/// Evaluation points for the polynomial suites.
pub fn tutte_points() -> Vec<RationalPoint> {
    [("3", "-2"), ("1/2", "3"), ("-1", "0"), ("0", "2"), ("5/3", "-1/2")]
        .iter()
        .map(|(x, y)| RationalPoint::parse(x, y).expect("literal points parse"))
        .collect()
}

fn tutte_identities(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(opts.seed);
    let points = tutte_points();
    let (mut delcon_bad, mut agg_bad, mut sum_bad, mut total) = (0, 0, 0, 0);
    for _ in 0..opts.instances {
        let n = rng.gen_range(1..=7);
        let g = random_graph(n, 0.5, &mut rng);
        let k = rng.gen_range(0..=3);
        let mg = MultiGraph::from(&g);
        for p in &points {
            total += 1;
            let b = tutte_k_bruteforce(&g, k, p)?.value;
            delcon_bad += usize::from(b != tutte_k_delcon(&mg, k, p)?.value);
            agg_bad += usize::from(!aggregation_identity_check(&g, k, p)?.holds());
            let mut sum = BigRational::from_integer(0.into());
            for j in 0..=g.edge_count() {
                sum += tutte_k_bruteforce(&g, j, p)?.value;
            }
            sum_bad += usize::from(sum != tutte_classical_bruteforce(&g, p)?);
        }
    }
    Ok(vec![
        check("deletion-contraction", delcon_bad == 0, format!("{delcon_bad}/{total} mismatches")),
        check("aggregation identity", agg_bad == 0, format!("{agg_bad}/{total} failures")),
        check("sum over k", sum_bad == 0, format!("{sum_bad}/{total} mismatches")),
    ])
}

fn special_points(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(opts.seed);
    let mut bad = [0usize; 5];
    let mut total = 0;
    for _ in 0..opts.instances {
        let n = rng.gen_range(1..=7);
        let g = random_graph(n, 0.5, &mut rng);
        let k = rng.gen_range(0..=4);
        let c = rng.gen_range(2..=3);
        let s = special_point_counters(&g, k, Some(c))?;
        total += 1;
        bad[0] += usize::from(s.k_forests != direct::k_forests(&g, k)?);
        bad[1] += usize::from(s.chromatic_pairs.map(|x| x.1) != Some(direct::chromatic_pairs(&g, k, c)?));
        bad[2] += usize::from(s.acyclic_orientation_pairs != direct::acyclic_orientation_pairs(&g, k)?);
        bad[3] += usize::from(s.even_component_subsets != direct::even_component_subsets(&g, k)?);
        bad[4] += usize::from(s.even_betti_subsets != direct::even_betti_subsets(&g, k)?);
    }
    let names = ["k-forests", "chromatic pairs", "acyclic orientations", "even components", "even cycle rank"];
    Ok(names
        .iter()
        .zip(bad)
        .map(|(name, b)| check(*name, b == 0, format!("{b}/{total} mismatches")))
        .collect())
}
