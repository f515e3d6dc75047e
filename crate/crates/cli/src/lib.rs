//! Command-line front end: graph ingestion, analysis, products, claim
//! verification and the conjecture hunt. `main` only parses arguments and
//! maps errors to exit codes; everything else lives here so tests can drive
//! it in-process.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use dpgraph::catalog::{connected_graphs, named};
use dpgraph::format::{parse_edge_list, parse_graph6_lines, to_dot, to_edge_list, to_graph6};
use dpgraph::hunt::{hunt_pairs, DEFAULT_CAP};
use dpgraph::verify::{default_catalogs, run_claim, Claim, SampleConfig, Scope, VerificationReport, DEFAULT_SEED};
use dpgraph::{
    cart_product, dp_spectrum, is_connected, lex_product, non_dp_interval_pairs, removal_set_family,
    sdp_sequence, Graph, HuntReport, NonDpIntervalPair, SdpSequence,
};

pub const TOOL: &str = "dpgraph";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Removal-set families are only tabulated up to this order.
const REMOVAL_FAMILY_MAX_ORDER: usize = 16;

pub const ENCODING_NOTE: &str = "product vertex (u,x) is index u*n+x, n = order of the right factor";

/// Outcome of a successful run, mapped to the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A claim failed or the hunt found a counterexample.
    Violated,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violated => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "dpgraph", version, about = "Distance-preserving graphs and their products")]
pub struct Cli {
    /// Input format for graph files.
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for sampled verification.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Edge-list vertices are numbered from 1.
    #[arg(long, global = true)]
    pub one_indexed: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Graph6,
    Edgelist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Graph6,
    Edgelist,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum, dp and sdp verdicts for each input graph.
    Analyze {
        /// File, graph name (K4, P3, C7+pendant) or graph6 literal; `-` reads stdin.
        graph: String,
    },
    /// Builds a lexicographic or Cartesian product.
    Product(ProductArgs),
    /// Checks one claim over graph catalogs.
    Verify(VerifyArgs),
    /// Looks for Cartesian products of dp graphs that are not dp.
    Hunt(HuntArgs),
}

#[derive(Debug, Args)]
pub struct ProductArgs {
    #[arg(long, conflicts_with = "lex", required_unless_present = "lex")]
    pub cart: bool,
    #[arg(long)]
    pub lex: bool,
    pub left: String,
    pub right: String,
    /// Output format for the product graph.
    #[arg(long, value_enum, default_value_t = OutputFormat::Edgelist)]
    pub to: OutputFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of eq1, cor-fiber, thm1, lem-cart-iso, lem-removal, thm2.
    pub claim: String,
    /// Left catalog file; defaults to the built-in catalog.
    #[arg(long)]
    pub left: Option<PathBuf>,
    /// Right catalog file; defaults to the built-in catalog.
    #[arg(long)]
    pub right: Option<PathBuf>,
    #[arg(long)]
    pub max_left: Option<usize>,
    #[arg(long)]
    pub max_right: Option<usize>,
    /// Largest product order checked.
    #[arg(long)]
    pub max_product: Option<usize>,
    /// Write the JSON report here as well.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HuntArgs {
    /// Largest left and right factor orders.
    #[arg(long, num_args = 2, value_names = ["LEFT", "RIGHT"])]
    pub max: Option<Vec<usize>>,
    #[arg(long, conflicts_with = "max")]
    pub max_left: Option<usize>,
    #[arg(long, conflicts_with = "max")]
    pub max_right: Option<usize>,
    /// Refuse products with more vertices than this.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Write the JSON report (with any counterexamples) here.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Applies `--jobs`. Only the first call can size the global pool.
pub fn configure_jobs(jobs: Option<usize>) -> Result<()> {
    match jobs {
        None => {}
        Some(0) => bail!("--jobs must be at least 1"),
        Some(1) => dpgraph::par::set_parallel(false),
        Some(n) => {
            dpgraph::par::set_parallel(true);
            // A second configuration in the same process keeps the first pool.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    Ok(())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status> {
    configure_jobs(cli.jobs)?;
    match &cli.command {
        Command::Analyze { graph } => analyze(cli, graph, out),
        Command::Product(args) => product(cli, args, out),
        Command::Verify(args) => verify(cli, args, out),
        Command::Hunt(args) => hunt(cli, args, out),
    }
}

#[derive(Debug, Serialize)]
struct Tool {
    name: &'static str,
    version: &'static str,
}

const TOOL_INFO: Tool = Tool {
    name: TOOL,
    version: VERSION,
};

fn read_source(source: &str) -> Result<Option<String>> {
    if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(Some(s));
    }
    let path = Path::new(source);
    if path.is_file() {
        return std::fs::read_to_string(path)
            .map(Some)
            .with_context(|| format!("reading {}", path.display()));
    }
    Ok(None)
}

fn looks_like_edge_list(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("n ") || l == "n")
}

/// Parses document text in the requested format.
pub fn parse_text(text: &str, format: InputFormat, one_indexed: bool) -> Result<Vec<Graph>> {
    let edge_list = match format {
        InputFormat::Edgelist => true,
        InputFormat::Graph6 => false,
        InputFormat::Auto => looks_like_edge_list(text),
    };
    if edge_list {
        Ok(vec![parse_edge_list(text, one_indexed)?])
    } else {
        let graphs = parse_graph6_lines(text)?;
        if graphs.is_empty() {
            bail!("no graphs in input");
        }
        Ok(graphs)
    }
}

/// Resolves a graph argument: a file (or `-`), then a built-in name, then a
/// graph6 literal.
pub fn load_graphs(source: &str, format: InputFormat, one_indexed: bool) -> Result<Vec<Graph>> {
    if let Some(text) = read_source(source)? {
        return parse_text(&text, format, one_indexed).with_context(|| format!("parsing {source}"));
    }
    if format != InputFormat::Edgelist {
        if let Ok(g) = named(source) {
            return Ok(vec![g]);
        }
        if let Ok(gs) = parse_graph6_lines(source) {
            if !gs.is_empty() {
                return Ok(gs);
            }
        }
    }
    Err(anyhow!("`{source}` is not a file, a known graph name, or a graph6 string"))
}

fn load_one(source: &str, cli: &Cli) -> Result<Graph> {
    let mut gs = load_graphs(source, cli.format, cli.one_indexed)?;
    if gs.len() != 1 {
        bail!("`{source}` holds {} graphs, expected one", gs.len());
    }
    Ok(gs.remove(0))
}

#[derive(Debug, Serialize)]
pub struct GraphAnalysis {
    pub graph: Graph,
    pub spectrum: Vec<usize>,
    pub missing_orders: Vec<usize>,
    pub gap_pairs: Vec<NonDpIntervalPair>,
    pub dp: bool,
    pub sdp: bool,
    pub sdp_sequence: Option<Vec<usize>>,
    /// Number of removal sets of each size; absent above the order limit.
    pub removal_set_sizes: Option<BTreeMap<usize, usize>>,
}

pub fn analyze_graph(g: &Graph) -> Result<GraphAnalysis> {
    if !is_connected(g) {
        bail!("input graph is disconnected; spectra are only defined for connected graphs");
    }
    let spec = dp_spectrum(g)?;
    let seq = sdp_sequence(g)?;
    let removal_set_sizes = if g.order() <= REMOVAL_FAMILY_MAX_ORDER {
        let fam = removal_set_family(g, g.order())?;
        let mut counts = BTreeMap::new();
        for s in &fam.sets {
            *counts.entry(s.len()).or_insert(0) += 1;
        }
        Some(counts)
    } else {
        None
    };
    Ok(GraphAnalysis {
        graph: g.clone(),
        spectrum: spec.achievable.iter().copied().collect(),
        missing_orders: spec.missing(),
        gap_pairs: non_dp_interval_pairs(&spec),
        dp: spec.is_dp(),
        sdp: seq.exists(),
        sdp_sequence: match seq {
            SdpSequence::Found(v) => Some(v),
            SdpSequence::NoneExists => None,
        },
        removal_set_sizes,
    })
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// One-line verdict such as `not dp; missing order 6; not sdp`.
pub fn verdict_line(a: &GraphAnalysis) -> String {
    let dp = if a.dp {
        "dp".to_string()
    } else {
        let plural = if a.missing_orders.len() == 1 { "order" } else { "orders" };
        let list = a.missing_orders.iter().map(usize::to_string).collect::<Vec<_>>().join(", ");
        format!("not dp; missing {plural} {list}")
    };
    let sdp = if a.sdp { "sdp" } else { "not sdp" };
    format!("{dp}; {sdp}")
}

#[derive(Debug, Serialize)]
struct AnalyzeReport {
    tool: Tool,
    graphs: Vec<GraphAnalysis>,
}

fn analyze(cli: &Cli, source: &str, out: &mut dyn Write) -> Result<Status> {
    let graphs = load_graphs(source, cli.format, cli.one_indexed)?;
    let analyses = graphs.iter().map(analyze_graph).collect::<Result<Vec<_>>>()?;
    if cli.json {
        let report = AnalyzeReport {
            tool: TOOL_INFO,
            graphs: analyses,
        };
        serde_json::to_writer_pretty(&mut *out, &report)?;
        writeln!(out)?;
        return Ok(Status::Ok);
    }
    for (i, a) in analyses.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        let g = &a.graph;
        let name = g.label().map(str::to_string).unwrap_or_else(|| format!("graph {}", i + 1));
        let code = to_graph6(g).unwrap_or_else(|_| "-".into());
        writeln!(out, "{name}: order {}, size {}, graph6 {code}", g.order(), g.size())?;
        writeln!(out, "spectrum: {}", join(&a.spectrum))?;
        writeln!(out, "{}", verdict_line(a))?;
        for p in &a.gap_pairs {
            writeln!(out, "gap pair: ({}, {})", p.a, p.b)?;
        }
        if let Some(seq) = &a.sdp_sequence {
            writeln!(out, "sdp sequence: {}", join(seq))?;
        }
        if let Some(sizes) = &a.removal_set_sizes {
            let parts: Vec<String> = sizes.iter().map(|(k, c)| format!("{k}:{c}")).collect();
            writeln!(out, "removal sets by size: {}", parts.join(" "))?;
        }
    }
    Ok(Status::Ok)
}

#[derive(Debug, Serialize)]
struct ProductReport<'a> {
    tool: Tool,
    kind: dpgraph::ProductKind,
    encoding: &'static str,
    left: &'a Graph,
    right: &'a Graph,
    product: &'a Graph,
}

fn product(cli: &Cli, args: &ProductArgs, out: &mut dyn Write) -> Result<Status> {
    let left = load_one(&args.left, cli)?;
    let right = load_one(&args.right, cli)?;
    let p = if args.lex {
        lex_product(&left, &right)?
    } else {
        cart_product(&left, &right)?
    };
    let (op, kind) = if args.lex { ("lex", "[]") } else { ("cart", "x") };
    let name = |g: &Graph| g.label().map(str::to_string).unwrap_or_else(|| to_graph6(g).unwrap_or_default());
    let g = p
        .graph
        .clone()
        .with_label(if args.lex {
            format!("{}[{}]", name(&left), name(&right))
        } else {
            format!("{} {kind} {}", name(&left), name(&right))
        });
    if cli.json {
        let report = ProductReport {
            tool: TOOL_INFO,
            kind: p.kind,
            encoding: ENCODING_NOTE,
            left: &left,
            right: &right,
            product: &g,
        };
        serde_json::to_writer_pretty(&mut *out, &report)?;
        writeln!(out)?;
        return Ok(Status::Ok);
    }
    let comments = vec![
        format!("{TOOL} {VERSION} product --{op}"),
        ENCODING_NOTE.to_string(),
        format!("left order {}, right order {}", p.left_order, p.right_order),
    ];
    match args.to {
        OutputFormat::Graph6 => writeln!(out, "{}", to_graph6(&g)?)?,
        OutputFormat::Edgelist => out.write_all(to_edge_list(&g, &comments).as_bytes())?,
        OutputFormat::Dot => out.write_all(to_dot(&g, &comments).as_bytes())?,
    }
    Ok(Status::Ok)
}

/// Where a catalog came from and a checksum of its graph6 listing.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogInfo {
    pub source: String,
    pub graphs: usize,
    pub sha256: String,
}

/// SHA-256 over the graph6 lines of `graphs`, one per line.
pub fn catalog_checksum(graphs: &[Graph]) -> String {
    let mut h = Sha256::new();
    for g in graphs {
        h.update(to_graph6(g).unwrap_or_default().as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

fn catalog_info(source: String, graphs: &[Graph]) -> CatalogInfo {
    CatalogInfo {
        source,
        graphs: graphs.len(),
        sha256: catalog_checksum(graphs),
    }
}

#[derive(Debug, Serialize)]
struct ScopeJson {
    max_left: usize,
    max_right: usize,
    max_product: usize,
}

#[derive(Debug, Serialize)]
struct VerifyReport<'a> {
    tool: Tool,
    claim: &'static str,
    seed: u64,
    scope: ScopeJson,
    catalogs: BTreeMap<&'static str, CatalogInfo>,
    holds: bool,
    report: &'a VerificationReport,
}

fn load_catalog(path: &Path, cli: &Cli) -> Result<Vec<Graph>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_text(&text, cli.format, cli.one_indexed).with_context(|| format!("parsing {}", path.display()))
}

fn verify(cli: &Cli, args: &VerifyArgs, out: &mut dyn Write) -> Result<Status> {
    let claim: Claim = args.claim.parse()?;
    let d = claim.default_scope();
    let scope = Scope {
        max_left: args.max_left.unwrap_or(d.max_left),
        max_right: args.max_right.unwrap_or(d.max_right),
        max_product: args.max_product.unwrap_or(d.max_product),
    };
    let need_builtin = args.left.is_none() || args.right.is_none();
    let (builtin_l, builtin_r) = if need_builtin {
        default_catalogs(claim, &scope)?
    } else {
        (Vec::new(), Vec::new())
    };
    let (lefts, left_src) = match &args.left {
        Some(p) => (load_catalog(p, cli)?, p.display().to_string()),
        None => (builtin_l, format!("built-in, orders up to {}", scope.max_left)),
    };
    let (rights, right_src) = match &args.right {
        Some(p) => (load_catalog(p, cli)?, p.display().to_string()),
        None => (builtin_r, format!("built-in, orders up to {}", scope.max_right)),
    };
    let report = run_claim(claim, &lefts, &rights, &scope, &SampleConfig { seed: cli.seed })?;
    let status = if report.holds() { Status::Ok } else { Status::Violated };
    let full = VerifyReport {
        tool: TOOL_INFO,
        claim: claim.id(),
        seed: cli.seed,
        scope: ScopeJson {
            max_left: scope.max_left,
            max_right: scope.max_right,
            max_product: scope.max_product,
        },
        catalogs: BTreeMap::from([
            ("left", catalog_info(left_src, &lefts)),
            ("right", catalog_info(right_src, &rights)),
        ]),
        holds: report.holds(),
        report: &report,
    };
    let json = serde_json::to_string_pretty(&full)?;
    if let Some(path) = &args.output {
        std::fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    if cli.json {
        writeln!(out, "{json}")?;
    } else {
        writeln!(out, "{report}")?;
        for (side, info) in &full.catalogs {
            writeln!(out, "{side} catalog: {} graphs from {}, sha256 {}", info.graphs, info.source, info.sha256)?;
        }
        for f in &report.failures {
            writeln!(out, "failure: {} (expected {}, got {})", f.input, f.expected, f.got)?;
        }
    }
    Ok(status)
}

#[derive(Debug, Serialize)]
struct HuntJson<'a> {
    tool: Tool,
    catalogs: BTreeMap<&'static str, CatalogInfo>,
    consistent: bool,
    report: &'a HuntReport,
}

fn hunt(cli: &Cli, args: &HuntArgs, out: &mut dyn Write) -> Result<Status> {
    let (max_left, max_right) = match (&args.max, args.max_left, args.max_right) {
        (Some(m), _, _) => (m[0], m[1]),
        (None, Some(l), Some(r)) => (l, r),
        (None, Some(l), None) => (l, l),
        (None, None, Some(r)) => (r, r),
        (None, None, None) => bail!("give --max LEFT RIGHT or --max-left/--max-right"),
    };
    let largest = max_left * max_right;
    if largest > args.cap {
        return Err(dpgraph::Error::ScaleExceeded {
            order: largest,
            cap: args.cap,
        }
        .into());
    }
    let catalog = |max: usize| -> Result<Vec<Graph>> {
        let mut gs = Vec::new();
        for n in 1..=max {
            gs.extend(connected_graphs(n)?);
        }
        Ok(gs)
    };
    let (lefts, rights) = (catalog(max_left)?, catalog(max_right)?);
    let report = hunt_pairs(&lefts, &rights, max_left, max_right, args.cap)?;
    let full = HuntJson {
        tool: TOOL_INFO,
        catalogs: BTreeMap::from([
            ("left", catalog_info(format!("connected, orders 1..={max_left}"), &lefts)),
            ("right", catalog_info(format!("connected, orders 1..={max_right}"), &rights)),
        ]),
        consistent: report.consistent(),
        report: &report,
    };
    let json = serde_json::to_string_pretty(&full)?;
    if let Some(path) = &args.output {
        std::fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    if cli.json {
        writeln!(out, "{json}")?;
    } else {
        writeln!(
            out,
            "checked {} pairs ({} x {} dp factors), products up to {} vertices, {:.3}s total pair time",
            report.pairs_checked,
            report.left_candidates,
            report.right_candidates,
            largest,
            report.pair_time_total.as_secs_f64()
        )?;
        if report.consistent() {
            writeln!(out, "no counterexamples")?;
        }
        for c in &report.counterexamples {
            writeln!(
                out,
                "COUNTEREXAMPLE {} x {}: missing orders {:?}",
                to_graph6(&c.left)?,
                to_graph6(&c.right)?,
                c.missing_orders
            )?;
        }
    }
    Ok(if report.consistent() { Status::Ok } else { Status::Violated })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sniffs_edge_lists() {
        assert!(looks_like_edge_list("# comment\n\nn 3\n0 1\n"));
        assert!(!looks_like_edge_list("Bw\n"));
        assert!(!looks_like_edge_list(""));
    }

    #[test]
    fn graph_arguments_resolve_in_order() {
        assert_eq!(load_graphs("K3", InputFormat::Auto, false).unwrap()[0].size(), 3);
        assert_eq!(load_graphs("Bw", InputFormat::Auto, false).unwrap()[0].size(), 3);
        assert!(load_graphs("K3", InputFormat::Edgelist, false).is_err());
        assert!(parse_text("\n\n", InputFormat::Graph6, false).is_err());
    }

    #[test]
    fn checksum_depends_on_order_of_catalog() {
        let a = named("P3").unwrap();
        let b = named("K3").unwrap();
        assert_ne!(catalog_checksum(&[a.clone(), b.clone()]), catalog_checksum(&[b, a]));
        assert_eq!(catalog_checksum(&[]).len(), 64);
    }
}
