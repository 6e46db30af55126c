//! The coefficient function over the fracture lattice, its torus residue,
//! the hardness criterion built on it, and the minor-closed classifier.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fracture::{
    enumerate_fractures, fractured_graph, mobius, refines, FixedPointKind, Fracture,
};
use crate::graph::Graph;
use crate::par::{self, Execution};
use crate::property::PropertySpec;
use crate::verdict::{bigint_json, Facet, Tag, Verdict};

/// Coefficients of every fracture of a base graph for one property.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    base: Arc<Graph>,
    property: String,
    entries: Vec<(Fracture, BigInt)>,
    index: HashMap<Fracture, usize>,
}

impl CoefficientTable {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn property(&self) -> &str {
        &self.property
    }

    /// `(fracture, coefficient)` pairs in linear-extension order.
    pub fn entries(&self) -> &[(Fracture, BigInt)] {
        &self.entries
    }

    /// The coefficient of `f`.
    ///
    /// # Panics
    /// If `f` is not a fracture of the base graph.
    pub fn coefficient(&self, f: &Fracture) -> &BigInt {
        &self.entries[self.index[f]].1
    }

    pub fn top(&self) -> &BigInt {
        &self.entries.last().expect("every graph has a fracture").1
    }

    pub fn bottom(&self) -> &BigInt {
        &self.entries[0].1
    }

    /// Fractures with a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = &(Fracture, BigInt)> {
        self.entries.iter().filter(|(_, c)| !c.is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "base": &*self.base,
            "property": self.property,
            "entries": self.entries.iter().map(|(f, c)| serde_json::json!({
                "fracture": f.to_blocks(&self.base),
                "coefficient": bigint_json(c),
            })).collect::<Vec<_>>(),
            "top": bigint_json(self.top()),
        })
    }
}

/// Evaluates `phi` on every fractured graph.
fn accepted(
    phi: &PropertySpec,
    h: &Arc<Graph>,
    fractures: &[Fracture],
    exec: Execution,
) -> Result<Vec<bool>> {
    par::try_map_range(exec, fractures.len(), |i| {
        let fg = fractured_graph(h, &fractures[i])?;
        phi.evaluate(fg.graph())
    })
}

/// `a(rho)`: the sum of `mu(sigma, rho)` over accepted `sigma <= rho`.
pub fn coefficient_table(
    phi: &PropertySpec,
    h: &Arc<Graph>,
    budget: u64,
    exec: Execution,
) -> Result<CoefficientTable> {
    let fractures = enumerate_fractures(h, budget)?;
    let ok = accepted(phi, h, &fractures, exec)?;
    let lattice: Vec<&Fracture> = fractures
        .iter()
        .zip(&ok)
        .filter(|(_, &b)| b)
        .map(|(f, _)| f)
        .collect();
    let coeffs = par::try_map_range(exec, fractures.len(), |r| {
        let rho = &fractures[r];
        let mut a = BigInt::zero();
        for sigma in &lattice {
            if refines(sigma, rho)? {
                a += mobius(sigma, rho)?;
            }
        }
        Ok::<_, Error>(a)
    })?;
    let index = fractures.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    Ok(CoefficientTable {
        base: Arc::clone(h),
        property: phi.name().to_string(),
        entries: fractures.into_iter().zip(coeffs).collect(),
        index,
    })
}

/// The top coefficient through the closed product formula: the sum over
/// accepted fractures of the per-vertex weights `(-1)^(b-1) (b-1)!`.
pub fn top_coefficient(
    phi: &PropertySpec,
    h: &Arc<Graph>,
    budget: u64,
    exec: Execution,
) -> Result<BigInt> {
    let fractures = enumerate_fractures(h, budget)?;
    let ok = accepted(phi, h, &fractures, exec)?;
    Ok(fractures
        .iter()
        .zip(ok)
        .filter(|(_, b)| *b)
        .map(|(f, _)| f.top_weight())
        .sum())
}

/// The torus top coefficient modulo a prime, with the property value on
/// each fixed-point type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusResidue {
    pub ell: usize,
    pub residue: u64,
    pub terms: Vec<(FixedPointKind, bool)>,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `a(top)` of the torus modulo a prime `l >= 3`, from the property values
/// on the seven fixed-point graphs.
pub fn torus_top_coefficient_mod(phi: &PropertySpec, ell: usize) -> Result<TorusResidue> {
    if ell < 3 || !is_prime(ell) {
        return Err(Error::usage(format!("modulus {ell} is not a prime at least 3")));
    }
    let mut sum: i64 = 0;
    let mut terms = Vec::with_capacity(7);
    for kind in FixedPointKind::ALL {
        let g = kind.family(ell).generate()?;
        let holds = phi.evaluate(&g)?;
        if holds {
            sum += kind.residue_coefficient();
        }
        terms.push((kind, holds));
    }
    Ok(TorusResidue {
        ell,
        residue: sum.rem_euclid(ell as i64) as u64,
        terms,
    })
}

pub const CITE_TORUS: &str =
    "torus fixed-point criterion (hardness follows when the residue is nonzero for infinitely many primes)";
pub const CAVEAT_FINITE: &str =
    "evidence from finitely many primes; no finite computation certifies the infinitely-many-primes hypothesis";

/// Evaluates the torus residue at each prime.
pub fn hardness_criterion(phi: &PropertySpec, primes: &[usize]) -> Result<(Verdict, Vec<TorusResidue>)> {
    if primes.is_empty() {
        return Err(Error::usage("no primes given"));
    }
    let residues = primes
        .iter()
        .map(|&p| torus_top_coefficient_mod(phi, p))
        .collect::<Result<Vec<_>>>()?;
    let hits: Vec<String> = residues
        .iter()
        .filter(|r| r.residue != 0)
        .map(|r| r.ell.to_string())
        .collect();
    let citation = format!("{CITE_TORUS}; {CAVEAT_FINITE}");
    let verdict = if hits.is_empty() {
        Verdict::new(Facet::ExactCount, Tag::Inconclusive, citation)
            .with_note("all residues vanish")
    } else {
        Verdict::new(Facet::ExactCount, Tag::W1Hard, citation)
            .with_note(format!("criterion met at l={}", hits.join(",")))
    };
    Ok((verdict, residues))
}

/// Verdicts for a minor-closed property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorClosedVerdicts {
    pub exact: Verdict,
    pub approx: Verdict,
    pub decision: Verdict,
}

pub const CITE_MINOR_EXACT: &str = "minor-closed classification, exact counting";
pub const CITE_MINOR_APPROX: &str = "minor-closed classification, approximate counting";
pub const CITE_MINOR_DECISION: &str = "minor-closed classification, decision";

/// Classifies the property excluding `forbidden_minors` (an empty list means
/// the trivially true property).
///
/// Exact counting is FPT iff the matching number is bounded, which happens
/// iff some forbidden minor is a matching once isolated vertices are
/// removed; otherwise it is #W[1]-hard, with the ETH lower bound when every
/// forbidden minor has a vertex of degree at least 3.
pub fn classify_minor_closed(forbidden_minors: &[Graph]) -> MinorClosedVerdicts {
    let bounded = forbidden_minors.is_empty()
        || forbidden_minors
            .iter()
            .any(|f| f.without_isolated().is_matching());
    let exact = if bounded {
        let why = if forbidden_minors.is_empty() {
            "trivially true"
        } else {
            "bounded matching number"
        };
        Verdict::new(Facet::ExactCount, Tag::Fpt, CITE_MINOR_EXACT).with_note(why)
    } else {
        let mut v = Verdict::new(Facet::ExactCount, Tag::W1Hard, CITE_MINOR_EXACT);
        v.eth_tight = forbidden_minors.iter().all(|f| f.invariants().max_degree >= 3);
        v
    };
    MinorClosedVerdicts {
        exact,
        approx: Verdict::new(Facet::ApproxCount, Tag::Fptras, CITE_MINOR_APPROX),
        decision: Verdict::new(Facet::Decision, Tag::Fpt, CITE_MINOR_DECISION),
    }
}
