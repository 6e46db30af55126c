//! Graph properties with declared metadata, the enumeration of the
//! isomorphism classes they accept, and empirical criteria probing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    canonical_form, minor_contains_capped, CanonicalForm, Graph, GraphFamily,
    DEFAULT_MINOR_HOST_CAP,
};

/// Default largest `k` accepted by [`enumerate_phi_k`].
pub const DEFAULT_PHI_K_CAP: usize = 5;
/// Largest vertex count for the Hamiltonian-cycle dynamic programme.
pub const DEFAULT_HAMILTONIAN_CAP: usize = 20;
/// Largest probe bound for [`criteria_probe`].
pub const MAX_PROBE_BOUND: usize = 50;

/// The decision procedure behind a property.
#[derive(Clone)]
pub enum Predicate {
    TriviallyTrue,
    TriviallyFalse,
    Connected,
    Forest,
    Matching,
    Star,
    /// Connected with all degrees even, or with `every_component` set, all
    /// degrees even.
    Eulerian { every_component: bool },
    Hamiltonian,
    ClawFree,
    Bipartite,
    TwoRegular,
    MinorFree(Vec<Graph>),
    /// True on `grid(k) + star(k^2 + 2k)` and on matchings with `3k^2`
    /// edges when the edge count is `3k^2`, and on matchings otherwise.
    Psi,
    Custom(Arc<dyn Fn(&Graph) -> bool + Send + Sync>),
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::MinorFree(list) => write!(f, "MinorFree({} graphs)", list.len()),
            Predicate::Custom(_) => write!(f, "Custom"),
            Predicate::Eulerian { every_component } => {
                write!(f, "Eulerian {{ every_component: {every_component} }}")
            }
            other => {
                let s = match other {
                    Predicate::TriviallyTrue => "TriviallyTrue",
                    Predicate::TriviallyFalse => "TriviallyFalse",
                    Predicate::Connected => "Connected",
                    Predicate::Forest => "Forest",
                    Predicate::Matching => "Matching",
                    Predicate::Star => "Star",
                    Predicate::Hamiltonian => "Hamiltonian",
                    Predicate::ClawFree => "ClawFree",
                    Predicate::Bipartite => "Bipartite",
                    Predicate::TwoRegular => "TwoRegular",
                    _ => "Psi",
                };
                f.write_str(s)
            }
        }
    }
}

/// Declared facts about a property.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyMetadata {
    /// Smallest `c` with the property true on every matching with at least
    /// `c` edges.
    pub matching_from: Option<usize>,
    /// Smallest `c` with the property true on every star with at least `c`
    /// edges.
    pub star_from: Option<usize>,
    /// Every graph with the property has treewidth at most this.
    pub treewidth_bound: Option<usize>,
    /// Present when the property is minor-closed.
    pub forbidden_minors: Option<Vec<Graph>>,
}

/// Size guards applied during evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalLimits {
    pub hamiltonian_max_vertices: usize,
    pub minor_host_cap: usize,
}

impl Default for EvalLimits {
    fn default() -> Self {
        EvalLimits {
            hamiltonian_max_vertices: DEFAULT_HAMILTONIAN_CAP,
            minor_host_cap: DEFAULT_MINOR_HOST_CAP,
        }
    }
}

/// A named decidable graph property.
#[derive(Clone, Debug)]
pub struct PropertySpec {
    name: String,
    predicate: Predicate,
    metadata: PropertyMetadata,
    limits: EvalLimits,
}

/// Names accepted by [`PropertySpec::builtin`].
pub const BUILTIN_NAMES: [&str; 13] = [
    "trivially-true",
    "trivially-false",
    "connected",
    "forest",
    "matching",
    "star",
    "eulerian",
    "hamiltonian",
    "claw-free",
    "bipartite",
    "planar",
    "two-regular",
    "psi",
];

impl PropertySpec {
    pub fn new(name: impl Into<String>, predicate: Predicate, metadata: PropertyMetadata) -> Self {
        PropertySpec {
            name: name.into(),
            predicate,
            metadata,
            limits: EvalLimits::default(),
        }
    }

    /// A property from a closure, with no declared metadata.
    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(&Graph) -> bool + Send + Sync + 'static,
    ) -> Self {
        PropertySpec::new(name, Predicate::Custom(Arc::new(f)), PropertyMetadata::default())
    }

    /// The minor-closed property excluding `minors`, with criteria derived
    /// from the list: matchings are all accepted unless some minor is a
    /// matching plus isolated vertices, and stars unless some minor is a star
    /// plus isolated vertices.
    pub fn minor_free(name: impl Into<String>, minors: Vec<Graph>) -> Self {
        let stripped: Vec<Graph> = minors.iter().map(Graph::without_isolated).collect();
        let matching_like = stripped.iter().any(Graph::is_matching);
        let star_like = stripped
            .iter()
            .any(|f| f.edge_count() == 0 || is_star(f));
        let metadata = PropertyMetadata {
            matching_from: (!matching_like).then_some(1),
            star_from: (!star_like).then_some(1),
            treewidth_bound: None,
            forbidden_minors: Some(minors.clone()),
        };
        PropertySpec::new(name, Predicate::MinorFree(minors), metadata)
    }

    /// Looks up a builtin property by name.
    pub fn builtin(name: &str) -> Result<Self> {
        use Predicate as P;
        let md = |m: Option<usize>, s: Option<usize>, tw: Option<usize>| PropertyMetadata {
            matching_from: m,
            star_from: s,
            treewidth_bound: tw,
            forbidden_minors: None,
        };
        let spec = match name {
            "trivially-true" => {
                let mut m = md(Some(1), Some(1), None);
                m.forbidden_minors = Some(Vec::new());
                PropertySpec::new(name, P::TriviallyTrue, m)
            }
            "trivially-false" => PropertySpec::new(name, P::TriviallyFalse, md(None, None, Some(0))),
            "connected" => PropertySpec::new(name, P::Connected, md(None, Some(1), None)),
            "forest" => {
                let mut m = md(Some(1), Some(1), Some(1));
                m.forbidden_minors = Some(vec![family("k3")]);
                PropertySpec::new(name, P::Forest, m)
            }
            "matching" => {
                let mut m = md(Some(1), None, Some(1));
                m.forbidden_minors = Some(vec![family("p2")]);
                PropertySpec::new(name, P::Matching, m)
            }
            "star" => PropertySpec::new(name, P::Star, md(None, Some(1), Some(1))),
            "eulerian" => PropertySpec::new(
                name,
                P::Eulerian {
                    every_component: false,
                },
                md(None, None, None),
            ),
            "hamiltonian" => PropertySpec::new(name, P::Hamiltonian, md(None, None, None)),
            "claw-free" => PropertySpec::new(name, P::ClawFree, md(Some(1), None, None)),
            "bipartite" => PropertySpec::new(name, P::Bipartite, md(Some(1), Some(1), None)),
            "planar" => {
                let mut p = PropertySpec::minor_free(name, vec![family("k5"), family("biclique:3,3")]);
                p.metadata.matching_from = Some(1);
                p.metadata.star_from = Some(1);
                p
            }
            "two-regular" => PropertySpec::new(name, P::TwoRegular, md(None, None, Some(2))),
            "psi" => PropertySpec::new(name, P::Psi, md(Some(1), None, None)),
            _ => return Err(Error::usage(format!("unknown property `{name}`"))),
        };
        Ok(spec)
    }

    /// Every builtin property.
    pub fn builtins() -> Vec<PropertySpec> {
        BUILTIN_NAMES
            .iter()
            .map(|n| PropertySpec::builtin(n).expect("builtin names resolve"))
            .collect()
    }

    /// Switches the Eulerian convention to "every component Eulerian".
    pub fn with_eulerian_every_component(mut self) -> Self {
        if let Predicate::Eulerian { every_component } = &mut self.predicate {
            *every_component = true;
        }
        self
    }

    pub fn with_limits(mut self, limits: EvalLimits) -> Self {
        self.limits = limits;
        self
    }

    pub fn with_metadata(mut self, metadata: PropertyMetadata) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn predicate(&self) -> &Predicate {
        &self.predicate
    }

    pub fn metadata(&self) -> &PropertyMetadata {
        &self.metadata
    }

    /// Decides the property on `g`.
    pub fn evaluate(&self, g: &Graph) -> Result<bool> {
        use Predicate as P;
        Ok(match &self.predicate {
            P::TriviallyTrue => true,
            P::TriviallyFalse => false,
            P::Connected => g.is_connected(),
            P::Forest => g.is_forest(),
            P::Matching => g.is_matching(),
            P::Star => is_star(&g.without_isolated()) && g.isolated_vertex_count() == 0,
            P::Eulerian { every_component } => {
                let even = (0..g.vertex_count()).all(|v| g.degree(v) % 2 == 0);
                even && (*every_component || g.is_connected())
            }
            P::Hamiltonian => is_hamiltonian(g, self.limits.hamiltonian_max_vertices)?,
            P::ClawFree => is_claw_free(g),
            P::Bipartite => is_bipartite(g),
            P::TwoRegular => (0..g.vertex_count()).all(|v| g.degree(v) == 2),
            P::MinorFree(list) => {
                for f in list {
                    if minor_contains_capped(f, g, self.limits.minor_host_cap)? {
                        return Ok(false);
                    }
                }
                true
            }
            P::Psi => is_psi(g),
            P::Custom(f) => f(g),
        })
    }
}

fn family(s: &str) -> Graph {
    s.parse::<GraphFamily>()
        .and_then(|f| f.generate())
        .expect("fixed family spec")
}

/// `K_{1,k}` with `k >= 1`, no isolated vertices.
fn is_star(g: &Graph) -> bool {
    let m = g.edge_count();
    m >= 1 && g.vertex_count() == m + 1 && g.max_degree() == m
}

fn is_bipartite(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut side = vec![u8::MAX; n];
    let mut stack = Vec::new();
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    stack.push(w);
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}

fn is_claw_free(g: &Graph) -> bool {
    for v in 0..g.vertex_count() {
        let nb = g.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                if g.has_edge(a, b) {
                    continue;
                }
                if nb[j + 1..]
                    .iter()
                    .any(|&c| !g.has_edge(a, c) && !g.has_edge(b, c))
                {
                    return false;
                }
            }
        }
    }
    true
}

fn is_hamiltonian(g: &Graph, cap: usize) -> Result<bool> {
    let n = g.vertex_count();
    if n < 3 || !g.is_connected() || g.min_degree() < 2 {
        return Ok(false);
    }
    if n > cap {
        return Err(Error::capacity("Hamiltonian-cycle test", format!("{n} vertices"), cap));
    }
    // reach[mask] bit v: a path from vertex 0 covering mask ends at v
    let full = (1usize << n) - 1;
    let mut reach = vec![0u32; 1 << n];
    reach[1] = 1;
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    for mask in 1..=full {
        if mask & 1 == 0 || reach[mask] == 0 {
            continue;
        }
        let ends = reach[mask];
        for (v, &nv) in nbr.iter().enumerate().take(n) {
            if ends >> v & 1 == 1 {
                let mut next = nv & !(mask as u32);
                while next != 0 {
                    let w = next.trailing_zeros() as usize;
                    next &= next - 1;
                    reach[mask | 1 << w] |= 1 << w;
                }
            }
        }
    }
    Ok(reach[full] & nbr[0] != 0)
}

fn is_psi(g: &Graph) -> bool {
    let e = g.edge_count();
    if g.is_matching() && g.isolated_vertex_count() == 0 {
        return true;
    }
    let k = (((e / 3) as f64).sqrt().round()) as usize;
    if k == 0 || 3 * k * k != e {
        return false;
    }
    let target = GraphFamily::union(GraphFamily::Grid(k), GraphFamily::Star(k * k + 2 * k))
        .generate()
        .expect("valid family");
    g.vertex_count() == target.vertex_count()
        && g.degree_sequence() == target.degree_sequence()
        && canonical_form(g) == canonical_form(&target)
}

/// Canonical representatives of every graph with `k` edges and no isolated
/// vertices, grown one edge at a time.
pub fn all_k_edge_graphs(k: usize) -> Vec<Graph> {
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::new();
    level.insert(canonical_form(&Graph::empty(0)));
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for form in &level {
            let g = form.to_graph();
            let n = g.vertex_count();
            let mut push = |h: Graph| {
                next.insert(canonical_form(&h));
            };
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        let mut h = g.clone();
                        h.add_edge_if_absent(u, v);
                        push(h);
                    }
                }
            }
            let grown = g.disjoint_union(&Graph::empty(1));
            for u in 0..n {
                let mut h = grown.clone();
                h.add_edge_if_absent(u, n);
                push(h);
            }
            let mut h = g.disjoint_union(&Graph::empty(2));
            h.add_edge_if_absent(n, n + 1);
            push(h);
        }
        level = next;
    }
    level.iter().map(CanonicalForm::to_graph).collect()
}

/// Isomorphism classes of `k`-edge graphs without isolated vertices that
/// satisfy `phi`, in canonical-form order.
pub fn enumerate_phi_k(phi: &PropertySpec, k: usize, cap: usize) -> Result<Vec<Graph>> {
    if k > cap {
        return Err(Error::capacity("pattern enumeration", format!("k = {k}"), cap));
    }
    let mut out = Vec::new();
    for g in all_k_edge_graphs(k) {
        if phi.evaluate(&g)? {
            out.push(g);
        }
    }
    Ok(out)
}

/// Empirical criteria thresholds up to a bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaProbe {
    pub bound: usize,
    /// Smallest `c` such that the property holds on matchings of every size
    /// in `c..=bound`.
    pub matching_holds_from: Option<usize>,
    /// Same for stars.
    pub star_holds_from: Option<usize>,
    /// Largest treewidth among accepted probe graphs; matchings and stars
    /// have treewidth 1.
    pub observed_tw_max: Option<usize>,
}

/// Probes matchings and stars with `1..=bound` edges and cross-checks the
/// declared metadata.
pub fn criteria_probe(phi: &PropertySpec, bound: usize) -> Result<CriteriaProbe> {
    if bound == 0 || bound > MAX_PROBE_BOUND {
        return Err(Error::usage(format!("probe bound must be in 1..={MAX_PROBE_BOUND}")));
    }
    let mut matching = Vec::with_capacity(bound);
    let mut star = Vec::with_capacity(bound);
    for k in 1..=bound {
        matching.push(phi.evaluate(&GraphFamily::Matching(k).generate()?)?);
        star.push(phi.evaluate(&GraphFamily::Star(k).generate()?)?);
    }
    let holds_from = |v: &[bool]| -> Option<usize> {
        let tail = v.iter().rev().take_while(|&&b| b).count();
        (tail > 0).then(|| bound - tail + 1)
    };
    let probe = CriteriaProbe {
        bound,
        matching_holds_from: holds_from(&matching),
        star_holds_from: holds_from(&star),
        observed_tw_max: (matching.iter().chain(&star).any(|&b| b)).then_some(1),
    };
    let md = phi.metadata();
    let check = |declared: Option<usize>, observed: Option<usize>, what: &str| -> Result<()> {
        if let Some(c) = declared {
            if c <= bound && observed.map_or(true, |o| o > c) {
                return Err(Error::Metadata {
                    property: phi.name().to_string(),
                    message: format!(
                        "declared {what} criterion from {c}, observed {}",
                        observed.map_or("none".to_string(), |o| format!("from {o}"))
                    ),
                });
            }
        }
        Ok(())
    };
    check(md.matching_from, probe.matching_holds_from, "matching")?;
    check(md.star_from, probe.star_holds_from, "star")?;
    if let (Some(b), Some(o)) = (md.treewidth_bound, probe.observed_tw_max) {
        if o > b {
            return Err(Error::Metadata {
                property: phi.name().to_string(),
                message: format!("declared treewidth bound {b}, accepted a graph of treewidth {o}"),
            });
        }
    }
    Ok(probe)
}

/// A property definition as written in a configuration file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyDefinition {
    pub name: String,
    /// Each minor is an edge list; its vertex count is one more than the
    /// largest endpoint.
    pub forbidden_minors: Vec<Vec<(usize, usize)>>,
    #[serde(default)]
    pub matching_from: Option<usize>,
    #[serde(default)]
    pub star_from: Option<usize>,
    #[serde(default)]
    pub treewidth_bound: Option<usize>,
}

impl PropertyDefinition {
    pub fn build(&self) -> Result<PropertySpec> {
        let minors = self
            .forbidden_minors
            .iter()
            .map(|edges| {
                let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1);
                Graph::new(n, edges.iter().copied())
            })
            .collect::<Result<Vec<_>>>()?;
        let mut spec = PropertySpec::minor_free(self.name.clone(), minors);
        if self.matching_from.is_some() {
            spec.metadata.matching_from = self.matching_from;
        }
        if self.star_from.is_some() {
            spec.metadata.star_from = self.star_from;
        }
        spec.metadata.treewidth_bound = self.treewidth_bound;
        Ok(spec)
    }
}

/// Builtins plus user-defined properties, looked up by name.
#[derive(Clone, Debug)]
pub struct PropertyRegistry {
    entries: BTreeMap<String, PropertySpec>,
    eulerian_every_component: bool,
}

impl Default for PropertyRegistry {
    fn default() -> Self {
        PropertyRegistry::with_builtins()
    }
}

impl PropertyRegistry {
    pub fn with_builtins() -> Self {
        PropertyRegistry {
            entries: PropertySpec::builtins()
                .into_iter()
                .map(|p| (p.name().to_string(), p))
                .collect(),
            eulerian_every_component: false,
        }
    }

    pub fn register(&mut self, spec: PropertySpec) {
        self.entries.insert(spec.name().to_string(), spec);
    }

    pub fn load_definitions(&mut self, defs: &[PropertyDefinition]) -> Result<()> {
        for d in defs {
            self.register(d.build()?);
        }
        Ok(())
    }

    pub fn set_eulerian_every_component(&mut self, on: bool) {
        self.eulerian_every_component = on;
    }

    pub fn get(&self, name: &str) -> Result<PropertySpec> {
        let spec = self
            .entries
            .get(name)
            .cloned()
            .ok_or_else(|| Error::usage(format!("unknown property `{name}`")))?;
        Ok(if self.eulerian_every_component {
            spec.with_eulerian_every_component()
        } else {
            spec
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(name: &str) -> PropertySpec {
        PropertySpec::builtin(name).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert!(p("eulerian").evaluate(&family("torus:5")).unwrap());
        assert!(p("psi").evaluate(&family("matching:12")).unwrap());
        assert!(!p("claw-free").evaluate(&family("star:3")).unwrap());
        let grid_star = family("grid:2+star:8");
        assert!(p("psi").evaluate(&grid_star).unwrap());
        assert!(!p("psi").evaluate(&family("grid:2+star:7")).unwrap());
        assert!(!p("psi").evaluate(&family("p2")).unwrap());
        assert!(!p("psi").evaluate(&family("star:3")).unwrap());
        assert!(p("psi").evaluate(&family("grid:1+star:3")).unwrap());
    }

    #[test]
    fn hamiltonian_cycles() {
        assert!(p("hamiltonian").evaluate(&family("k4")).unwrap());
        assert!(p("hamiltonian").evaluate(&family("torus:4")).unwrap());
        assert!(!p("hamiltonian").evaluate(&family("petersen")).unwrap());
        assert!(!p("hamiltonian").evaluate(&family("biclique:2,3")).unwrap());
        assert!(!p("hamiltonian").evaluate(&family("k2")).unwrap());
        assert!(p("hamiltonian").evaluate(&family("torus:5")).is_err());
    }

    #[test]
    fn eulerian_conventions() {
        let two = family("2*c3");
        assert!(!p("eulerian").evaluate(&two).unwrap());
        assert!(p("eulerian").with_eulerian_every_component().evaluate(&two).unwrap());
    }

    #[test]
    fn phi_k_examples() {
        assert_eq!(all_k_edge_graphs(2).len(), 2);
        assert_eq!(all_k_edge_graphs(3).len(), 5);
        let m = enumerate_phi_k(&p("matching"), 3, 5).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m[0].is_matching());
        assert_eq!(enumerate_phi_k(&p("forest"), 2, 5).unwrap().len(), 2);
        let c = enumerate_phi_k(&p("connected"), 3, 5).unwrap();
        let mut shapes: Vec<(usize, usize)> =
            c.iter().map(|g| (g.vertex_count(), g.max_degree())).collect();
        shapes.sort();
        assert_eq!(shapes, vec![(3, 2), (4, 2), (4, 3)]);
        assert!(enumerate_phi_k(&p("forest"), 6, 5).is_err());
    }

    #[test]
    fn probes() {
        let planar = criteria_probe(&p("planar"), 50).unwrap();
        assert_eq!(planar.matching_holds_from, Some(1));
        assert_eq!(planar.star_holds_from, Some(1));
        let two = criteria_probe(&p("two-regular"), 50).unwrap();
        assert_eq!((two.matching_holds_from, two.star_holds_from), (None, None));
        let psi = criteria_probe(&p("psi"), 50).unwrap();
        assert_eq!(psi.matching_holds_from, Some(1));
        assert_eq!(psi.star_holds_from, None);
        for spec in PropertySpec::builtins() {
            criteria_probe(&spec, 20).unwrap();
        }
        let liar = p("connected").with_metadata(PropertyMetadata {
            matching_from: Some(3),
            ..Default::default()
        });
        assert!(matches!(criteria_probe(&liar, 10), Err(Error::Metadata { .. })));
    }

    #[test]
    fn config_definitions() {
        let json = r#"[{"name": "outerplanar", "forbidden_minors": [[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]], [[0,2],[0,3],[0,4],[1,2],[1,3],[1,4]]]}]"#;
        let defs: Vec<PropertyDefinition> = serde_json::from_str(json).unwrap();
        let mut reg = PropertyRegistry::with_builtins();
        reg.load_definitions(&defs).unwrap();
        let op = reg.get("outerplanar").unwrap();
        assert!(op.evaluate(&family("c6")).unwrap());
        assert!(!op.evaluate(&family("k4")).unwrap());
        assert_eq!(op.metadata().matching_from, Some(1));
        assert!(reg.get("nonsense").is_err());
    }
}
