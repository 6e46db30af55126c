//! `edgesub` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse error,
//! 3 capacity exceeded, 4 usage error.

mod config;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use edgesub::coefficient::{classify_minor_closed, coefficient_table, hardness_criterion, torus_top_coefficient_mod};
use edgesub::graph::parse_edge_list;
use edgesub::pattern::{count_exact, decide_exists, fptras_estimate, CountQuery, EstimatePath};
use edgesub::tutte::{
    classification_grid, classification_svg, classify_point, fraction_string, parse_rational,
    special_point_counters, tutte_k_bruteforce_with, tutte_k_delcon_with, tutte_k_via_z, tutte_x1_line,
    RationalPoint, TuttePointVerdicts,
};
use edgesub::verdict::bigint_json;
use edgesub::verify::{run_suite, Suite, VerifyOptions};
use edgesub::{CountMode, Execution, Graph, GraphFamily, MultiGraph, Verdict};

use config::{Format, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Capacity(String),
    #[error("{0}")]
    Usage(String),
}

impl From<edgesub::Error> for CliError {
    fn from(e: edgesub::Error) -> Self {
        match e {
            edgesub::Error::Parse { .. } => CliError::Parse(e.to_string()),
            edgesub::Error::Capacity { .. } => CliError::Capacity(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Usage(_) => 4,
        }
    }
}

#[derive(Parser)]
#[command(name = "edgesub", version, about = "Count, estimate and classify k-edge subgraph patterns")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// JSON configuration file (defaults to $EDGESUB_CONFIG).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    budget_fracture: Option<u64>,
    #[arg(long, global = true)]
    budget_subset: Option<u128>,
    #[arg(long, global = true)]
    budget_samples: Option<u64>,
    #[arg(long, global = true)]
    budget_phi_k: Option<usize>,
    #[arg(long, global = true)]
    budget_delcon: Option<u64>,
    /// Run every kernel on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Count (or estimate, or decide) k-edge subsets whose induced graph has a property.
    Count {
        property: String,
        k: usize,
        /// Edge-list file, or a family spec such as `k4` or `grid:3`.
        graph: String,
        #[arg(long, value_enum)]
        mode: Option<CountModeArg>,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
    },
    /// Fracture coefficients of a property over a base graph.
    Coeff {
        property: String,
        /// Family spec such as `k3` or `torus:5`.
        family: String,
        /// Top coefficient of `torus:l` modulo the prime `l`.
        #[arg(long = "mod")]
        modulus: Option<usize>,
        /// Add minor-closed verdicts and the torus criterion.
        #[arg(long)]
        classify: bool,
        /// Primes for the torus criterion under `--classify`.
        #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
        primes: Vec<usize>,
    },
    /// Evaluate the parameterized Tutte polynomial at a rational point.
    Tutte {
        graph: String,
        k: usize,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, value_enum, default_value_t = TutteModeArg::Auto)]
        mode: TutteModeArg,
        /// Add the complexity classification of the point.
        #[arg(long)]
        classify: bool,
        /// Add the counting interpretations read off special points.
        #[arg(long)]
        special: bool,
        /// Colours for the chromatic interpretation under `--special`.
        #[arg(long)]
        colours: Option<u64>,
    },
    /// Classification map over a grid of rational points.
    Map {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-1,0,1,3/2,2")]
        xs: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-1,0,1,3/2,2")]
        ys: Vec<String>,
        /// Emit an SVG picture instead of a JSON grid.
        #[arg(long)]
        svg: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = Suite::NAMES)]
        suite: String,
        #[arg(long, default_value_t = 3)]
        ell: usize,
        #[arg(long, default_value_t = 10)]
        instances: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CountModeArg {
    Brute,
    ViaSubs,
    ViaBasis,
    Fptras,
    Decide,
}

#[derive(Clone, Copy, ValueEnum)]
enum TutteModeArg {
    Auto,
    Brute,
    Delcon,
    ViaZ,
}

impl TutteModeArg {
    fn name(self) -> &'static str {
        match self {
            TutteModeArg::Auto => "auto",
            TutteModeArg::Brute => "brute",
            TutteModeArg::Delcon => "delcon",
            TutteModeArg::ViaZ => "via-z",
        }
    }
}

struct Ctx {
    config: RunConfig,
    exec: Execution,
    started: Instant,
}

impl Ctx {
    fn new(g: &GlobalArgs) -> Result<Self, CliError> {
        let mut config = RunConfig::load(g.config.as_deref())?;
        if let Some(f) = g.format {
            config.format = f;
        }
        if let Some(s) = g.seed {
            config.seed = s;
        }
        if let Some(b) = g.budget_fracture {
            config.fracture_budget = b;
        }
        if let Some(b) = g.budget_subset {
            config.subset_budget = b;
        }
        if let Some(b) = g.budget_samples {
            config.sample_budget = b;
        }
        if let Some(b) = g.budget_phi_k {
            config.phi_k_cap = b;
        }
        if let Some(b) = g.budget_delcon {
            config.delcon_budget = b;
        }
        config.validate()?;
        let exec = if g.sequential { Execution::Sequential } else { Execution::Auto };
        Ok(Ctx {
            config,
            exec,
            started: Instant::now(),
        })
    }

    fn count_options(&self) -> edgesub::CountOptions {
        edgesub::CountOptions {
            exec: self.exec,
            ..self.config.count_options()
        }
    }

    /// Adds the fields every record carries.
    fn finish(&self, mut body: Map<String, Value>, citations: Vec<String>) -> Value {
        body.insert("seed".into(), json!(self.config.seed));
        body.insert("config_hash".into(), json!(self.config.hash()));
        body.insert("elapsed_ms".into(), json!(self.started.elapsed().as_millis() as u64));
        body.insert("citations".into(), json!(citations));
        Value::Object(body)
    }
}

fn load_graph(spec: &str) -> Result<Graph, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        return Ok(parse_edge_list(&text)?);
    }
    match spec.parse::<GraphFamily>() {
        Ok(f) => Ok(f.generate()?),
        Err(_) => Err(CliError::Usage(format!(
            "`{spec}` is neither a readable file nor a graph family"
        ))),
    }
}

fn graph_summary(g: &Graph) -> Value {
    json!({"vertices": g.vertex_count(), "edges": g.edge_count()})
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "tag": v.tag,
        "eth_tight": v.eth_tight,
        "note": v.note,
        "summary": v.summary(),
    })
}

const CITE_BRUTE: &str = "definition: enumeration of k-edge subsets";
const CITE_SUBS: &str = "sum of subgraph counts over accepted k-edge patterns";
const CITE_BASIS: &str = "subgraph counts recovered from homomorphism counts over vertex partitions";
const CITE_SAMPLING: &str =
    "uniform k-subset sampling; sample size from the diagonal Ramsey surrogate C(2k-2, k-1)";
const CITE_TREEWIDTH: &str = "bounded-treewidth route: per-pattern counts with the confidence split across patterns";
const CITE_DECIDE: &str = "existence via large matchings, large stars or pattern search";
const CITE_COEFF: &str = "colourful counts expand over fractures with Moebius coefficients";

fn cmd_count(
    ctx: &Ctx,
    property: &str,
    k: usize,
    graph: &str,
    mode: Option<CountModeArg>,
    eps: f64,
    delta: f64,
) -> Result<Value, CliError> {
    let phi = ctx.config.registry()?.get(property)?;
    let host = load_graph(graph)?;
    let opts = ctx.count_options();
    let mut body = Map::new();
    body.insert(
        "query".into(),
        json!({"command": "count", "property": property, "k": k, "graph": graph_summary(&host)}),
    );
    let cite = match mode {
        Some(CountModeArg::Fptras) => {
            let q = CountQuery::new(phi, k, host);
            let e = fptras_estimate(&q, eps, delta, ctx.config.seed, &opts)?;
            body.insert("mode".into(), json!("fptras"));
            body.insert(
                "estimate".into(),
                json!({
                    "fraction": fraction_string(&e.estimate),
                    "rounded": e.estimate.to_f64(),
                    "epsilon": e.epsilon,
                    "delta": e.delta,
                    "path": e.path,
                    "hits": e.hits,
                    "per_pattern_delta": e.per_pattern_delta,
                }),
            );
            body.insert("samples".into(), json!(e.samples));
            match e.path {
                EstimatePath::Exact => CITE_BRUTE,
                EstimatePath::Sampling => CITE_SAMPLING,
                EstimatePath::Treewidth => CITE_TREEWIDTH,
            }
        }
        Some(CountModeArg::Decide) => {
            let d = decide_exists(&phi, k, &host, &opts)?;
            body.insert("mode".into(), json!("decide"));
            body.insert("exists".into(), json!(d.exists));
            body.insert("route".into(), json!(d.route));
            CITE_DECIDE
        }
        other => {
            let mut q = CountQuery::new(phi, k, host);
            q.mode = match other {
                Some(CountModeArg::Brute) => Some(CountMode::Brute),
                Some(CountModeArg::ViaSubs) => Some(CountMode::ViaSubs),
                Some(CountModeArg::ViaBasis) => Some(CountMode::ViaBasis),
                _ => None,
            };
            let (used, value) = count_exact(&q, &opts)?;
            body.insert("mode".into(), json!(used.to_string()));
            body.insert("value".into(), bigint_json(&value.into()));
            body.insert("samples".into(), json!(0));
            match used {
                CountMode::Brute => CITE_BRUTE,
                CountMode::ViaSubs => CITE_SUBS,
                CountMode::ViaBasis => CITE_BASIS,
            }
        }
    };
    Ok(ctx.finish(body, vec![cite.to_string()]))
}

fn cmd_coeff(
    ctx: &Ctx,
    property: &str,
    family: &str,
    modulus: Option<usize>,
    classify: bool,
    primes: &[usize],
) -> Result<Value, CliError> {
    let phi = ctx.config.registry()?.get(property)?;
    let fam: GraphFamily = family.parse()?;
    let mut body = Map::new();
    body.insert(
        "query".into(),
        json!({"command": "coeff", "property": property, "family": fam.to_string()}),
    );
    let mut citations = vec![CITE_COEFF.to_string()];
    if let Some(p) = modulus {
        if !matches!(fam, GraphFamily::Torus(l) if l == p) {
            return Err(CliError::Usage(format!("--mod {p} needs the family torus:{p}, got {fam}")));
        }
        let r = torus_top_coefficient_mod(&phi, p)?;
        body.insert("mode".into(), json!("torus-residue"));
        body.insert("residue".into(), json!(r.residue));
        body.insert(
            "verdict".into(),
            json!(if r.residue != 0 {
                "#W[1]-hard criterion met"
            } else {
                "criterion inconclusive"
            }),
        );
        body.insert(
            "fixed_points".into(),
            r.terms
                .iter()
                .map(|(kind, holds)| json!({"type": kind.name(), "holds": holds}))
                .collect(),
        );
        citations.push(format!(
            "{}; {}",
            edgesub::coefficient::CITE_TORUS,
            edgesub::coefficient::CAVEAT_FINITE
        ));
    } else {
        let h = Arc::new(fam.generate()?);
        let table = coefficient_table(&phi, &h, ctx.config.fracture_budget, ctx.exec)?;
        body.insert("mode".into(), json!("table"));
        body.insert("bottom".into(), bigint_json(table.bottom()));
        body.insert("top".into(), bigint_json(table.top()));
        body.insert("support".into(), json!(table.support().count()));
        body.insert("table".into(), table.to_json());
    }
    if classify {
        let mut verdicts = Map::new();
        if let Some(minors) = &phi.metadata().forbidden_minors {
            let v = classify_minor_closed(minors);
            verdicts.insert("exact".into(), verdict_json(&v.exact));
            verdicts.insert("approx".into(), verdict_json(&v.approx));
            verdicts.insert("decision".into(), verdict_json(&v.decision));
            citations.push(v.exact.citation.clone());
        }
        let (crit, residues) = hardness_criterion(&phi, primes)?;
        verdicts.insert("torus_criterion".into(), verdict_json(&crit));
        verdicts.insert(
            "residues".into(),
            residues.iter().map(|r| json!({"ell": r.ell, "residue": r.residue})).collect(),
        );
        citations.push(crit.citation.clone());
        body.insert("classification".into(), Value::Object(verdicts));
    }
    citations.dedup();
    Ok(ctx.finish(body, citations))
}

fn point_json(v: &TuttePointVerdicts) -> Value {
    let show = |v: &Verdict| match &v.note {
        Some(n) => format!("{} ({n})", v.tag),
        None => v.tag.to_string(),
    };
    json!({"exact": show(&v.exact), "approx": show(&v.approx)})
}

#[allow(clippy::too_many_arguments)]
fn cmd_tutte(
    ctx: &Ctx,
    graph: &str,
    k: usize,
    x: &str,
    y: &str,
    mode: TutteModeArg,
    classify: bool,
    special: bool,
    colours: Option<u64>,
) -> Result<Value, CliError> {
    let p = RationalPoint::parse(x, y)?;
    let mut body = Map::new();
    let mut citations = Vec::new();
    let loaded = load_graph(graph);
    // classification does not depend on the graph
    let g = match loaded {
        Ok(g) => Some(g),
        Err(e) if classify && !special => {
            body.insert("graph_error".into(), json!(e.to_string()));
            None
        }
        Err(e) => return Err(e),
    };
    body.insert(
        "query".into(),
        json!({
            "command": "tutte",
            "k": k,
            "x": fraction_string(&p.x),
            "y": fraction_string(&p.y),
            "graph": g.as_ref().map(graph_summary),
        }),
    );
    body.insert("mode".into(), json!(mode.name()));
    match &g {
        Some(g) => {
            let one = BigRational::from_integer(1.into());
            let v = match mode {
                TutteModeArg::Brute => tutte_k_bruteforce_with(g, k, &p, ctx.config.subset_budget, ctx.exec)?,
                TutteModeArg::Delcon => tutte_k_delcon_with(&MultiGraph::from(g), k, &p, ctx.config.delcon_budget)?,
                TutteModeArg::ViaZ => tutte_k_via_z(g, k, &p)?,
                TutteModeArg::Auto if p.x == one => tutte_x1_line(g, k, &p.y)?,
                TutteModeArg::Auto if p.y == one => {
                    tutte_k_bruteforce_with(g, k, &p, ctx.config.subset_budget, ctx.exec)?
                }
                TutteModeArg::Auto => tutte_k_delcon_with(&MultiGraph::from(g), k, &p, ctx.config.delcon_budget)?,
            };
            body.insert("value".into(), json!(fraction_string(&v.value)));
            body.insert("provenance".into(), json!(v.provenance.to_string()));
            if p.x == BigRational::from_integer(2.into()) && p.y == one {
                body.insert("interpretation".into(), json!("k-forests"));
            }
            citations.push("parameterized Tutte polynomial, subset expansion".to_string());
            if special {
                let s = special_point_counters(g, k, colours)?;
                let n = |x: &num_bigint::BigUint| bigint_json(&x.clone().into());
                body.insert(
                    "special".into(),
                    json!({
                        "k_forests": n(&s.k_forests),
                        "chromatic_pairs": s.chromatic_pairs.as_ref().map(|(c, v)| json!({"colours": c, "pairs": n(v)})),
                        "acyclic_orientation_pairs": n(&s.acyclic_orientation_pairs),
                        "even_component_subsets": n(&s.even_component_subsets),
                        "even_betti_subsets": n(&s.even_betti_subsets),
                    }),
                );
            }
        }
        None => {
            body.insert("value".into(), Value::Null);
        }
    }
    if classify {
        let v = classify_point(&p);
        body.insert("classification".into(), point_json(&v));
        citations.push(v.exact.citation.clone());
        citations.push(v.approx.citation.clone());
    }
    Ok(ctx.finish(body, citations))
}

fn cmd_map(ctx: &Ctx, xs: &[String], ys: &[String], svg: bool) -> Result<Output, CliError> {
    let parse = |v: &[String]| v.iter().map(|s| parse_rational(s)).collect::<edgesub::Result<Vec<_>>>();
    let cells = classification_grid(&parse(xs)?, &parse(ys)?);
    if svg {
        return Ok(Output::Raw(classification_svg(&cells)));
    }
    let mut body = Map::new();
    body.insert("query".into(), json!({"command": "map", "xs": xs, "ys": ys}));
    body.insert("grid".into(), serde_json::to_value(&cells).expect("serializes"));
    Ok(Output::Record(ctx.finish(
        body,
        vec![
            edgesub::tutte::CITE_TUTTE_EXACT.to_string(),
            edgesub::tutte::CITE_TUTTE_APPROX.to_string(),
        ],
    )))
}

fn cmd_verify(ctx: &Ctx, suite: &str, ell: usize, instances: usize) -> Result<(Value, bool), CliError> {
    let mut s: Suite = suite.parse()?;
    if let Suite::FixedPoints { ell: l } = &mut s {
        *l = ell;
    }
    let report = run_suite(
        s,
        &VerifyOptions {
            seed: ctx.config.seed,
            instances,
            exec: ctx.exec,
        },
    )?;
    let passed = report.passed();
    let mut body = Map::new();
    body.insert("query".into(), json!({"command": "verify", "suite": suite}));
    body.insert("suite".into(), json!(report.suite));
    body.insert("passed".into(), json!(passed));
    body.insert("checks".into(), serde_json::to_value(&report.checks).expect("serializes"));
    Ok((ctx.finish(body, vec![format!("verification suite {}", report.suite)]), passed))
}

enum Output {
    Record(Value),
    Raw(String),
}

fn render_table(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, x)| format!("{k:<width$}  {x}\n"))
        .collect()
}

fn run(cli: Cli) -> Result<(Output, bool), CliError> {
    let ctx = Ctx::new(&cli.global)?;
    let record = |v: Value| Ok((Output::Record(v), true));
    match cli.command {
        Command::Count {
            property,
            k,
            graph,
            mode,
            eps,
            delta,
        } => record(cmd_count(&ctx, &property, k, &graph, mode, eps, delta)?),
        Command::Coeff {
            property,
            family,
            modulus,
            classify,
            primes,
        } => record(cmd_coeff(&ctx, &property, &family, modulus, classify, &primes)?),
        Command::Tutte {
            graph,
            k,
            x,
            y,
            mode,
            classify,
            special,
            colours,
        } => record(cmd_tutte(&ctx, &graph, k, &x, &y, mode, classify, special, colours)?),
        Command::Map { xs, ys, svg } => Ok((cmd_map(&ctx, &xs, &ys, svg)?, true)),
        Command::Verify { suite, ell, instances } => {
            let (v, passed) = cmd_verify(&ctx, &suite, ell, instances)?;
            Ok((Output::Record(v), passed))
        }
    }
    .map(|(o, ok)| (o, ok, ctx.config.format))
    .map(|(o, ok, format)| match (o, format) {
        (Output::Record(v), Format::Table) => (Output::Raw(render_table(&v)), ok),
        (o, _) => (o, ok),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    match run(cli) {
        Ok((out, passed)) => {
            let text = match out {
                Output::Record(v) => serde_json::to_string_pretty(&v).expect("serializes") + "\n",
                Output::Raw(s) => s,
            };
            // a closed pipe downstream is not an error of ours
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush());
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
