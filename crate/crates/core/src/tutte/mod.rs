//! The parameterized Tutte polynomial
//! `T^k_G(x, y) = sum over k-edge sets A of (x-1)^(k(A)-k(E)) (y-1)^(k(A)+k-|V|)`
//! and its modified form `~T^k_G = sum (x-1)^k(A) (y-1)^(k(A)+|A|)`.
//!
//! `0^0 = 1` throughout. Both exponents of `T^k` are nonnegative for every
//! edge set, so no evaluation point is singular.

mod classify;
pub mod direct;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{binomial_u128, Graph, MultiGraph};
use crate::par::Execution;
use crate::pattern::{binomial, DEFAULT_SUBSET_BUDGET};
use crate::subsets::fold_k_subsets;

pub use classify::{
    classification_grid, classification_svg, classify_point, GridCell, TuttePointVerdicts, CITE_TUTTE_APPROX,
    CITE_TUTTE_EXACT,
};

/// Limit on deletion-contraction calls.
pub const DEFAULT_DELCON_BUDGET: u64 = 50_000_000;

/// An exact rational evaluation point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        RationalPoint { x, y }
    }

    /// Point with integer coordinates.
    pub fn int(x: i64, y: i64) -> Self {
        RationalPoint::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    /// Parses two fractions such as `3/2` and `-1`.
    pub fn parse(x: &str, y: &str) -> Result<Self> {
        Ok(RationalPoint::new(parse_rational(x)?, parse_rational(y)?))
    }

    /// `(x - 1)(y - 1)`.
    pub fn z(&self) -> BigRational {
        self.xm1() * self.ym1()
    }

    fn xm1(&self) -> BigRational {
        &self.x - BigRational::one()
    }

    fn ym1(&self) -> BigRational {
        &self.y - BigRational::one()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Parses an integer or a fraction `p/q` with `q != 0`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::usage(format!("'{s}' is not a rational number"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Renders `p/q`, always with a denominator.
pub fn fraction_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// How a value was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Brute,
    Delcon,
    ClosedForm,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Brute => "brute",
            Provenance::Delcon => "delcon",
            Provenance::ClosedForm => "closed-form",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TutteValue {
    pub value: BigRational,
    pub provenance: Provenance,
}

fn pow(base: &BigRational, e: usize) -> BigRational {
    num_traits::pow(base.clone(), e)
}

/// `b^e` for a possibly negative exponent; `None` when `b = 0` and `e < 0`.
fn ipow(base: &BigRational, e: i64) -> Option<BigRational> {
    if e >= 0 {
        Some(pow(base, e as usize))
    } else if base.is_zero() {
        None
    } else {
        Some(pow(&base.recip(), e.unsigned_abs() as usize))
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a] = b;
        }
        a != b
    }
}

/// `k(A)`: components of `(V(g), A)`, isolated vertices included.
pub fn components_of_subset(g: &Graph, ids: &[usize]) -> usize {
    let mut dsu = Dsu::new(g.vertex_count());
    let merged = ids
        .iter()
        .filter(|&&e| {
            let (u, v) = g.edge(e);
            dsu.union(u, v)
        })
        .count();
    g.vertex_count() - merged
}

/// `hist[c]` = number of `k`-edge sets with `k(A) = c`.
pub fn component_histogram(g: &Graph, k: usize, budget: u128, exec: Execution) -> Result<Vec<u64>> {
    let m = g.edge_count();
    if binomial_u128(m, k) > budget {
        return Err(Error::capacity("subset enumeration", format!("C({m},{k}) subsets"), budget));
    }
    let n = g.vertex_count();
    let parts = fold_k_subsets(m, k, exec, || vec![0u64; n + 1], |hist, ids| {
        hist[components_of_subset(g, ids)] += 1;
        Ok(())
    })?;
    let mut hist = vec![0u64; n + 1];
    for p in parts {
        for (h, c) in hist.iter_mut().zip(p) {
            *h += c;
        }
    }
    Ok(hist)
}

/// `T^k_G(p)` by enumerating all `k`-edge sets.
pub fn tutte_k_bruteforce(g: &Graph, k: usize, p: &RationalPoint) -> Result<TutteValue> {
    tutte_k_bruteforce_with(g, k, p, DEFAULT_SUBSET_BUDGET, Execution::Auto)
}

pub fn tutte_k_bruteforce_with(
    g: &Graph,
    k: usize,
    p: &RationalPoint,
    budget: u128,
    exec: Execution,
) -> Result<TutteValue> {
    let hist = component_histogram(g, k, budget, exec)?;
    let (n, ke) = (g.vertex_count(), g.component_count());
    let (xm1, ym1) = (p.xm1(), p.ym1());
    let mut value = BigRational::zero();
    for (c, &count) in hist.iter().enumerate() {
        if count == 0 {
            continue;
        }
        assert!(c >= ke && c + k >= n, "negative exponent at k(A) = {c}");
        value += pow(&xm1, c - ke) * pow(&ym1, c + k - n) * BigRational::from_integer(count.into());
    }
    Ok(TutteValue {
        value,
        provenance: Provenance::Brute,
    })
}

/// `~T^k_G(p)` by enumeration.
pub fn tutte_tilde_k_bruteforce(g: &Graph, k: usize, p: &RationalPoint) -> Result<BigRational> {
    let hist = component_histogram(g, k, DEFAULT_SUBSET_BUDGET, Execution::Auto)?;
    let (xm1, ym1) = (p.xm1(), p.ym1());
    Ok(hist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(c, &count)| pow(&xm1, c) * pow(&ym1, c + k) * BigRational::from_integer(count.into()))
        .sum())
}

/// The classical `T_G(p)` by enumerating all edge sets.
pub fn tutte_classical_bruteforce(g: &Graph, p: &RationalPoint) -> Result<BigRational> {
    let m = g.edge_count();
    if m > 26 {
        return Err(Error::capacity("edge sets", format!("2^{m}"), "2^26"));
    }
    let (n, ke) = (g.vertex_count(), g.component_count());
    // hist[c][a]: edge sets with c components and a edges
    let mut hist = vec![vec![0u64; m + 1]; n + 1];
    let mut ids = Vec::with_capacity(m);
    for mask in 0u32..(1u32 << m) {
        ids.clear();
        ids.extend((0..m).filter(|&e| mask >> e & 1 == 1));
        hist[components_of_subset(g, &ids)][ids.len()] += 1;
    }
    let (xm1, ym1) = (p.xm1(), p.ym1());
    let mut value = BigRational::zero();
    for (c, row) in hist.iter().enumerate() {
        for (a, &count) in row.iter().enumerate().filter(|(_, &x)| x > 0) {
            value += pow(&xm1, c - ke) * pow(&ym1, c + a - n) * BigRational::from_integer(count.into());
        }
    }
    Ok(value)
}

/// The classical modified polynomial `~T_G(p)` of `(V(g), ids)`.
fn tutte_tilde_classical_of(g: &Graph, ids: &[usize], p: &RationalPoint) -> BigRational {
    let (xm1, ym1) = (p.xm1(), p.ym1());
    let mut value = BigRational::zero();
    let mut sub = Vec::with_capacity(ids.len());
    for mask in 0u64..(1u64 << ids.len()) {
        sub.clear();
        sub.extend(ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e));
        let c = components_of_subset(g, &sub);
        value += pow(&xm1, c) * pow(&ym1, c + sub.len());
    }
    value
}

struct Delcon<'a> {
    xm1: &'a BigRational,
    ym1: &'a BigRational,
    calls: u64,
    budget: u64,
}

impl Delcon<'_> {
    fn run(&mut self, g: &MultiGraph, k: usize) -> Result<BigRational> {
        self.calls += 1;
        if self.calls > self.budget {
            return Err(Error::capacity("deletion-contraction calls", self.calls.to_string(), self.budget));
        }
        let m = g.edge_count();
        if k > m {
            return Ok(BigRational::zero());
        }
        if k == 0 {
            let n = g.vertex_count();
            return Ok(pow(self.xm1, n) * pow(self.ym1, n));
        }
        if k == m {
            let c = g.component_count();
            return Ok(pow(self.xm1, c) * pow(self.ym1, c + m));
        }
        let pos = match g.edges().iter().position(|&(_, u, v)| u == v) {
            Some(loop_pos) => loop_pos,
            None => (0..m)
                .max_by_key(|&i| {
                    let (_, u, v) = g.edges()[i];
                    (g.degree(u) + g.degree(v), std::cmp::Reverse(i))
                })
                .expect("m > k > 0"),
        };
        let (_, u, v) = g.edges()[pos];
        let deleted = g.delete(pos);
        let keep = self.run(&deleted, k)?;
        // contracting a loop is deleting it
        let shrunk = if u == v { deleted } else { g.contract(pos) };
        let take = self.run(&shrunk, k - 1)?;
        Ok(keep + self.ym1 * take)
    }
}

/// `~T^k` of a multigraph by deletion-contraction.
pub fn tutte_tilde_k_delcon(g: &MultiGraph, k: usize, p: &RationalPoint) -> Result<BigRational> {
    tutte_tilde_k_delcon_with(g, k, p, DEFAULT_DELCON_BUDGET)
}

pub fn tutte_tilde_k_delcon_with(
    g: &MultiGraph,
    k: usize,
    p: &RationalPoint,
    budget: u64,
) -> Result<BigRational> {
    let (xm1, ym1) = (p.xm1(), p.ym1());
    Delcon {
        xm1: &xm1,
        ym1: &ym1,
        calls: 0,
        budget,
    }
    .run(g, k)
}

/// `T^k` of a multigraph by deletion-contraction and rescaling. At `x = 1`
/// or `y = 1` the rescaling is singular and the value is computed by
/// enumeration instead; this needs a simple graph.
pub fn tutte_k_delcon(g: &MultiGraph, k: usize, p: &RationalPoint) -> Result<TutteValue> {
    tutte_k_delcon_with(g, k, p, DEFAULT_DELCON_BUDGET)
}

pub fn tutte_k_delcon_with(g: &MultiGraph, k: usize, p: &RationalPoint, budget: u64) -> Result<TutteValue> {
    let (xm1, ym1) = (p.xm1(), p.ym1());
    if xm1.is_zero() || ym1.is_zero() {
        let simple = Graph::new(g.vertex_count(), g.edges().iter().map(|&(_, u, v)| (u, v)))
            .map_err(|_| Error::usage("evaluation at x = 1 or y = 1 needs a simple graph"))?;
        return tutte_k_bruteforce(&simple, k, p);
    }
    let tilde = tutte_tilde_k_delcon_with(g, k, p, budget)?;
    let scale = pow(&xm1, g.component_count()) * pow(&ym1, g.vertex_count());
    Ok(TutteValue {
        value: tilde / scale,
        provenance: Provenance::Delcon,
    })
}

/// Both sides of
/// `sum_{l<=k} C(|E|-l, k-l) ~T^l_G = sum over k-edge sets A of ~T_{G(A)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AggregationCheck {
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl AggregationCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates both sides of the aggregation identity: the left from
/// deletion-contraction, the right by enumeration.
pub fn aggregation_identity_check(g: &Graph, k: usize, p: &RationalPoint) -> Result<AggregationCheck> {
    let m = g.edge_count();
    let mg = MultiGraph::from(g);
    let mut lhs = BigRational::zero();
    for l in 0..=k.min(m) {
        let c = BigRational::from_integer(binomial(m - l, k - l).into());
        lhs += c * tutte_tilde_k_delcon(&mg, l, p)?;
    }
    if binomial_u128(m, k) > DEFAULT_SUBSET_BUDGET / (1u128 << k.min(20)) {
        return Err(Error::capacity("aggregation subsets", format!("C({m},{k})"), DEFAULT_SUBSET_BUDGET));
    }
    let parts = fold_k_subsets(m, k, Execution::Auto, BigRational::zero, |acc, ids| {
        *acc += tutte_tilde_classical_of(g, ids, p);
        Ok(())
    })?;
    Ok(AggregationCheck {
        lhs,
        rhs: parts.into_iter().sum(),
    })
}

/// Quantities read off the polynomial at special points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialPoints {
    pub k: usize,
    /// `k`-edge forests.
    pub k_forests: BigUint,
    /// `(c, pairs (A, proper c-colouring of (V, A)))`.
    pub chromatic_pairs: Option<(u64, BigUint)>,
    /// Pairs `(A, acyclic orientation of (V, A))`.
    pub acyclic_orientation_pairs: BigUint,
    /// `k`-edge sets whose spanning subgraph has an even number of
    /// components.
    pub even_component_subsets: BigUint,
    /// `k`-edge sets whose spanning subgraph has even cycle rank.
    pub even_betti_subsets: BigUint,
}

fn to_count(r: BigRational, what: &str) -> Result<BigUint> {
    if !r.is_integer() || r.is_negative() {
        return Err(Error::usage(format!("{what} evaluated to the non-count {r}")));
    }
    Ok(r.to_integer().to_biguint().expect("checked nonnegative"))
}

/// Reads the counting interpretations off Tutte evaluations.
pub fn special_point_counters(g: &Graph, k: usize, colours: Option<u64>) -> Result<SpecialPoints> {
    if colours.is_some_and(|c| c < 2) {
        return Err(Error::parameter("the number of colours must be at least 2"));
    }
    let m = g.edge_count();
    let t = |l: usize, p: &RationalPoint| tutte_k_bruteforce(g, l, p).map(|v| v.value);
    let weighted = |f: &dyn Fn(usize) -> Result<BigRational>| -> Result<BigRational> {
        let mut s = BigRational::zero();
        for l in 0..=k.min(m) {
            s += BigRational::from_integer(binomial(m - l, k - l).into()) * f(l)?;
        }
        Ok(s)
    };
    let all = BigRational::from_integer(binomial(m, k).into());
    let two = BigRational::from_integer(2.into());

    let k_forests = to_count(t(k, &RationalPoint::int(2, 1))?, "forest count")?;
    let chromatic_pairs = match colours {
        Some(c) => {
            let p = RationalPoint::int(1 - c as i64, 0);
            let mg = MultiGraph::from(g);
            let v = weighted(&|l| tutte_tilde_k_delcon(&mg, l, &p))?;
            Some((c, to_count(v, "chromatic pair count")?))
        }
        None => None,
    };
    let p20 = RationalPoint::int(2, 0);
    let acyclic = weighted(&|l| t(l, &p20))?;
    let sign = if g.component_count() % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    let even_comp = (&all + sign * t(k, &RationalPoint::int(0, 2))?) / &two;
    let even_betti = (&all + t(k, &p20)?) / &two;
    Ok(SpecialPoints {
        k,
        k_forests,
        chromatic_pairs,
        acyclic_orientation_pairs: to_count(acyclic, "acyclic orientation count")?,
        even_component_subsets: to_count(even_comp, "even-component count")?,
        even_betti_subsets: to_count(even_betti, "even-Betti count")?,
    })
}

/// `T^k_G(1, y)`. Only edge sets spanning every component contribute, which
/// needs at most `2k` non-isolated vertices; otherwise the value is `0`
/// without enumeration.
pub fn tutte_x1_line(g: &Graph, k: usize, y: &BigRational) -> Result<TutteValue> {
    let covered = g.vertex_count() - g.isolated_vertex_count();
    if covered > 2 * k {
        return Ok(TutteValue {
            value: BigRational::zero(),
            provenance: Provenance::ClosedForm,
        });
    }
    tutte_k_bruteforce(g, k, &RationalPoint::new(BigRational::one(), y.clone()))
}

/// The closed form away from `x = 1` and `y = 1`:
/// `(x-1)^(-k(E)) (y-1)^(k-|V|) sum_c hist[c] z^c`.
pub fn tutte_k_via_z(g: &Graph, k: usize, p: &RationalPoint) -> Result<TutteValue> {
    let (xm1, ym1) = (p.xm1(), p.ym1());
    let n = g.vertex_count() as i64;
    let pre = ipow(&xm1, -(g.component_count() as i64))
        .zip(ipow(&ym1, k as i64 - n))
        .map(|(a, b)| a * b)
        .ok_or_else(|| Error::usage("the z-form is singular at x = 1 or y = 1"))?;
    let hist = component_histogram(g, k, DEFAULT_SUBSET_BUDGET, Execution::Auto)?;
    let z = p.z();
    let sum: BigRational = hist
        .iter()
        .enumerate()
        .map(|(c, &cnt)| pow(&z, c) * BigRational::from_integer(cnt.into()))
        .sum();
    Ok(TutteValue {
        value: pre * sum,
        provenance: Provenance::ClosedForm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;

    fn fam(s: &str) -> Graph {
        s.parse::<GraphFamily>().unwrap().generate().unwrap()
    }

    fn r(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(r("3/2"), BigRational::new(3.into(), 2.into()));
        assert_eq!(r("-4"), BigRational::from_integer((-4).into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fraction_string(&r("6/2")), "3/1");
    }

    #[test]
    fn triangle_values() {
        let k3 = fam("k3");
        assert_eq!(components_of_subset(&k3, &[]), 3);
        assert_eq!(components_of_subset(&k3, &[1]), 2);
        assert_eq!(tutte_k_bruteforce(&k3, 2, &RationalPoint::int(2, 1)).unwrap().value, r("3"));
        assert_eq!(tutte_k_bruteforce(&k3, 1, &RationalPoint::int(2, 2)).unwrap().value, r("3"));
        // empty set only: (x-1)^(|V|-k(E))
        let p = RationalPoint::int(5, -3);
        let v = tutte_k_bruteforce(&fam("path:2").disjoint_union(&fam("k3")), 0, &p).unwrap();
        assert_eq!(v.value, pow(&r("4"), 4));
    }

    #[test]
    fn delcon_matches_brute_on_multigraph_regression() {
        // a 2-cycle: two parallel edges
        let mg = MultiGraph::new(2, vec![(0, 0, 1), (1, 0, 1)]).unwrap();
        let p = RationalPoint::new(r("3"), r("-2"));
        let (xm1, ym1) = (r("2"), r("-3"));
        // k=1: each single edge connects: (x-1)^1 (y-1)^2, twice
        assert_eq!(tutte_tilde_k_delcon(&mg, 1, &p).unwrap(), r("2") * &xm1 * &ym1 * &ym1);
        // k=2: both edges: (x-1)(y-1)^3
        assert_eq!(tutte_tilde_k_delcon(&mg, 2, &p).unwrap(), xm1 * pow(&ym1, 3));
        let g = fam("petersen");
        for k in 0..=4 {
            let b = tutte_k_bruteforce(&g, k, &p).unwrap();
            let d = tutte_k_delcon(&MultiGraph::from(&g), k, &p).unwrap();
            assert_eq!(b.value, d.value, "k={k}");
            assert_eq!(d.provenance, Provenance::Delcon);
            assert_eq!(tutte_k_via_z(&g, k, &p).unwrap().value, b.value);
        }
    }

    #[test]
    fn aggregation_on_triangle() {
        assert!(aggregation_identity_check(&fam("k3"), 2, &RationalPoint::int(0, 3)).unwrap().holds());
        assert!(aggregation_identity_check(&fam("k4"), 0, &RationalPoint::int(7, 2)).unwrap().holds());
    }

    #[test]
    fn triangle_special_points() {
        let s = special_point_counters(&fam("k3"), 2, Some(3)).unwrap();
        assert_eq!(s.k_forests, BigUint::from(3u32));
        assert_eq!(s.even_component_subsets, BigUint::zero());
        let s3 = special_point_counters(&fam("k3"), 3, None).unwrap();
        assert_eq!(s3.acyclic_orientation_pairs, BigUint::from(6u32));
    }

    #[test]
    fn x_equals_one() {
        let big = fam("matching:50");
        assert_eq!(tutte_x1_line(&big, 3, &r("2")).unwrap().value, r("0"));
        assert_eq!(tutte_x1_line(&fam("k3"), 2, &r("4")).unwrap().value, r("3"));
        assert_eq!(tutte_x1_line(&Graph::empty(1), 0, &r("4")).unwrap().value, r("1"));
        assert_eq!(tutte_x1_line(&fam("path:2"), 0, &r("4")).unwrap().value, r("0"));
    }
}
