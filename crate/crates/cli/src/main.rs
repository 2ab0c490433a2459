mod input;

use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use umrg::bounds::{union_lower_bound, BoundContext, BoundMode, BoundReport};
use umrg::census::{connectivity_census, structural_census};
use umrg::enumeration::{enumerate_by_augmentation, enumerate_class, stratify_graphs, ClassFilter, DegreeSequence};
use umrg::graph6::to_graph6;
use umrg::spectrum::{compare, cutset_spectrum, is_superconnected, monte_carlo_unreliability, tree_number};
use umrg::verify::{self, AggregateReport, Universe, VerificationReport};
use umrg::{Graph, NodeSet};

use input::{graph_from_text, parse_list, GraphInput};

#[derive(Parser, Debug)]
#[command(name = "umrg", version, about = "Cutset spectra, reliability bounds and exhaustive checks for small graphs")]
struct Cli {
    /// Worker threads for parallel work.
    #[arg(long, global = true, env = "UMRG_JOBS")]
    jobs: Option<usize>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    out: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Degrees,
    Refined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Backend {
    Rows,
    Augment,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Claim {
    K44,
    Regular,
    Lemma2,
    Lemma3,
    Biconnected,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cutset spectrum (m_0, ..., m_e) of each input graph; CSV by default.
    Spectrum {
        #[command(flatten)]
        input: GraphInput,
        /// Evaluate the unreliability polynomial at these failure probabilities.
        #[arg(long, value_delimiter = ',')]
        rho: Vec<f64>,
    },
    /// Inclusion-exclusion lower bound on m_k; JSON by default.
    Bounds {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        k: usize,
        /// Comma-separated node set A.
        #[arg(long, conflicts_with = "prefix")]
        nodes: Option<String>,
        /// Use the `h` lowest-degree nodes as A.
        #[arg(long)]
        prefix: Option<usize>,
        /// Degrees of A; skips the graph and implies degrees-only reasoning.
        #[arg(long, requires = "edges")]
        degrees: Option<String>,
        /// Edge count for --degrees.
        #[arg(long)]
        edges: Option<usize>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        /// Deepest inclusion-exclusion level.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Connected (n, e)-graphs up to isomorphism; graph6 lines by default.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        /// Keep disconnected graphs too.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        biconnected: bool,
        #[arg(long)]
        regular: bool,
        #[arg(long)]
        min_degree: Option<usize>,
        /// Comma-separated degree sequence.
        #[arg(long)]
        sequence: Option<String>,
        #[arg(long, value_enum, default_value = "rows")]
        backend: Backend,
        /// Maximum number of search nodes.
        #[arg(long)]
        budget: Option<u64>,
        /// Print class sizes by minimum degree instead of the graphs.
        #[arg(long)]
        stratify: bool,
    },
    /// Degrees, girth, short cycles and cut structure; JSON by default.
    Census {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Coefficient dominance between two graphs with equal edge counts.
    Compare {
        /// graph6 string or builder spec.
        #[arg(long)]
        a: String,
        /// graph6 string or builder spec.
        #[arg(long)]
        b: String,
        #[arg(long, value_delimiter = ',')]
        rho: Vec<f64>,
    },
    /// Exhaustive checks over the connected (8,16)-graphs; exit 1 when a claim fails.
    Verify {
        #[arg(value_enum)]
        claim: Claim,
        #[arg(long)]
        budget: Option<u64>,
        /// Omit wall-clock fields so repeated runs are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// Monte Carlo estimate of the unreliability at one failure probability.
    Mc {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a command printed and whether the checked claim held.
struct Output {
    text: String,
    falsified: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, falsified: false }
    }
}

fn pretty(value: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn spectrum_json(g: &Graph, rho: &[f64]) -> Result<Value> {
    let s = cutset_spectrum(g)?;
    let poly = s.polynomial();
    let values = rho
        .iter()
        .map(|&r| Ok(json!({ "rho": r, "unreliability": poly.eval(r)? })))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "graph6": to_graph6(g),
        "nodes": g.node_count(),
        "edges": g.edge_count(),
        "spectrum": s.counts,
        "edge_connectivity": s.edge_connectivity(),
        "tree_number": tree_number(g).to_string(),
        "superconnected": is_superconnected(g)?,
        "unreliability": values,
    }))
}

fn run_spectrum(input: &GraphInput, rho: &[f64], format: Format) -> Result<Output> {
    let graphs = input.graphs()?;
    match format {
        Format::Json => {
            let items = graphs.iter().map(|g| spectrum_json(g, rho)).collect::<Result<Vec<_>>>()?;
            Ok(Output::ok(pretty(&if items.len() == 1 { items[0].clone() } else { Value::Array(items) })?))
        }
        Format::Csv if graphs.len() == 1 => Ok(Output::ok(cutset_spectrum(&graphs[0])?.to_csv())),
        Format::Csv => {
            let mut text = String::from("graph6,k,m_k,C(e,k)\n");
            for g in &graphs {
                let csv = cutset_spectrum(g)?.to_csv();
                let g6 = csv_field(&to_graph6(g));
                for line in csv.lines().skip(1) {
                    writeln!(text, "{g6},{line}")?;
                }
            }
            Ok(Output::ok(text))
        }
    }
}

fn bound_context(
    input: &GraphInput,
    k: usize,
    nodes: Option<&str>,
    prefix: Option<usize>,
    degrees: Option<&str>,
    edges: Option<usize>,
) -> Result<BoundContext> {
    if let Some(degrees) = degrees {
        let e = edges.context("--degrees needs --edges")?;
        return Ok(BoundContext::degrees_only(e, k, parse_list(degrees)?)?);
    }
    let g = input.single()?;
    let ctx = match (nodes, prefix) {
        (Some(list), _) => {
            let nodes = parse_list(list)?;
            if let Some(&v) = nodes.iter().find(|&&v| v >= g.node_count()) {
                bail!("node {v} is outside the graph");
            }
            BoundContext::from_graph(&g, NodeSet::from_nodes(nodes), k)?
        }
        (None, Some(h)) => BoundContext::degree_prefix(&g, h, k)?,
        (None, None) => BoundContext::from_graph(&g, g.nodes(), k)?,
    };
    Ok(ctx)
}

fn bounds_csv(report: &BoundReport) -> Result<String> {
    let mut text = String::from("level,sign,multiplicity,argument,value,description\n");
    for t in &report.ledger {
        writeln!(text, "{},{},{},{},{},{}", t.level, t.sign, t.multiplicity, t.argument, t.value, csv_field(&t.description))?;
    }
    writeln!(text, "total,,,,{},bound", report.bound_value)?;
    Ok(text)
}

fn census_json(g: &Graph) -> Value {
    let cut = connectivity_census(g);
    json!({
        "graph6": to_graph6(g),
        "structure": structural_census(g),
        "connected": cut.connected,
        "biconnected": cut.biconnected,
        "bridges": cut.bridges.iter().map(|i| g.edge(i)).collect::<Vec<_>>(),
        "cut_points": cut.cut_points.iter().collect::<Vec<_>>(),
    })
}

fn run_census(input: &GraphInput, format: Format) -> Result<Output> {
    let graphs = input.graphs()?;
    match format {
        Format::Json => {
            let items: Vec<Value> = graphs.iter().map(census_json).collect();
            Ok(Output::ok(pretty(&if items.len() == 1 { items[0].clone() } else { Value::Array(items) })?))
        }
        Format::Csv => {
            let mut text = String::from("graph6,nodes,edges,min_degree,regular,girth,triangles,squares,connected,biconnected,bridges,cut_points\n");
            for g in &graphs {
                let s = structural_census(g);
                let c = connectivity_census(g);
                let girth = serde_json::to_value(s.girth)?;
                let girth = girth.as_u64().map(|x| x.to_string()).unwrap_or_else(|| "acyclic".into());
                writeln!(
                    text,
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    csv_field(&to_graph6(g)),
                    g.node_count(),
                    g.edge_count(),
                    s.min_degree,
                    s.is_regular,
                    girth,
                    s.triangle_count,
                    s.square_count,
                    c.connected,
                    c.biconnected,
                    c.bridges.len(),
                    c.cut_points.len()
                )?;
            }
            Ok(Output::ok(text))
        }
    }
}

fn run_compare(a: &str, b: &str, rho: &[f64], format: Format) -> Result<Output> {
    let (ga, gb) = (graph_from_text(a)?, graph_from_text(b)?);
    let (sa, sb) = (cutset_spectrum(&ga)?, cutset_spectrum(&gb)?);
    let cmp = compare(&sa, &sb)?;
    let rows = rho
        .iter()
        .map(|&r| Ok((r, sa.polynomial().eval(r)?, sb.polynomial().eval(r)?)))
        .collect::<Result<Vec<_>>>()?;
    let text = match format {
        Format::Json => pretty(&json!({
            "a": { "graph6": to_graph6(&ga), "spectrum": sa.counts },
            "b": { "graph6": to_graph6(&gb), "spectrum": sb.counts },
            "comparison": cmp,
            "unreliability": rows.iter().map(|(r, ua, ub)| json!({ "rho": r, "a": ua, "b": ub })).collect::<Vec<_>>(),
        }))?,
        Format::Csv => {
            let mut text = String::from("k,m_k(a),m_k(b)\n");
            for k in 0..=sa.edges {
                writeln!(text, "{k},{},{}", sa.m(k), sb.m(k))?;
            }
            writeln!(text, "dominates,{},", cmp.dominates)?;
            text
        }
    };
    Ok(Output::ok(text))
}

fn report_csv<'a>(reports: impl Iterator<Item = &'a VerificationReport>) -> Result<String> {
    let mut text = String::from("claim_id,kind,name,pass,detail\n");
    for r in reports {
        writeln!(text, "{},report,{},{},{}", r.claim_id, csv_field(&r.class_description), r.pass, r.graphs_checked)?;
        for c in &r.checks {
            writeln!(text, "{},check,{},{},{}", r.claim_id, csv_field(&c.name), c.pass, csv_field(&c.detail))?;
        }
        for w in &r.witnesses {
            let k = w.k.map(|k| format!("k={k} ")).unwrap_or_default();
            writeln!(text, "{},witness,{},false,{}", r.claim_id, csv_field(&w.graph6), csv_field(&format!("{k}{:?} {}", w.values, w.note)))?;
        }
        for d in &r.discrepancies {
            writeln!(
                text,
                "{},discrepancy,{},false,{}",
                d.claim_id,
                csv_field(&d.location),
                csv_field(&format!("printed {} recomputed {}: {}", d.printed_value, d.recomputed_value, d.note))
            )?;
        }
    }
    Ok(text)
}

fn run_verify(claim: Claim, budget: Option<u64>, no_timing: bool, format: Format) -> Result<Output> {
    let universe = Universe::build(budget)?;
    let strip = |r: VerificationReport| if no_timing { r.without_timing() } else { r };
    let single = |r: VerificationReport| -> Result<Output> {
        let r = strip(r);
        let text = match format {
            Format::Json => pretty(&r)?,
            Format::Csv => report_csv(std::iter::once(&r))?,
        };
        Ok(Output { text, falsified: !r.pass })
    };
    match claim {
        Claim::K44 => single(verify::verify_k44(&universe)),
        Claim::Regular => single(verify::verify_regular(&universe)),
        Claim::Lemma2 => single(verify::verify_lemma(&universe, 2)),
        Claim::Lemma3 => single(verify::verify_lemma(&universe, 3)),
        Claim::Biconnected => single(verify::verify_biconnected_reduction(&universe)),
        Claim::All => {
            let all: AggregateReport = verify::verify_all(&universe);
            let all = if no_timing { all.without_timing() } else { all };
            let text = match format {
                Format::Json => pretty(&all)?,
                Format::Csv => {
                    let mut text = report_csv(all.reports.iter())?;
                    for c in &all.consistency {
                        writeln!(text, "all,consistency,{},{},{}", c.name, c.pass, csv_field(&c.detail))?;
                    }
                    text
                }
            };
            Ok(Output { text, falsified: !all.pass })
        }
    }
}

fn run_mc(input: &GraphInput, rho: f64, trials: u64, seed: u64, format: Format) -> Result<Output> {
    let g = input.single()?;
    let est = monte_carlo_unreliability(&g, rho, trials, seed)?;
    let exact = if g.edge_count() <= umrg::spectrum::MAX_SPECTRUM_EDGES {
        Some(cutset_spectrum(&g)?.polynomial().eval(rho)?)
    } else {
        None
    };
    let text = match format {
        Format::Json => pretty(&json!({
            "graph6": to_graph6(&g),
            "rho": rho,
            "seed": seed,
            "estimate": est,
            "exact": exact,
        }))?,
        Format::Csv => format!(
            "rho,trials,seed,estimate,std_error,exact\n{rho},{trials},{seed},{},{},{}\n",
            est.estimate,
            est.std_error,
            exact.map(|x| x.to_string()).unwrap_or_default()
        ),
    };
    Ok(Output::ok(text))
}

#[allow(clippy::too_many_arguments)]
fn run_enumerate(
    n: usize,
    e: usize,
    all: bool,
    biconnected: bool,
    regular: bool,
    min_degree: Option<usize>,
    sequence: Option<&str>,
    backend: Backend,
    budget: Option<u64>,
    stratify: bool,
    format: Option<Format>,
) -> Result<Output> {
    let mut filter = ClassFilter::new(n, e);
    if !all {
        filter = filter.connected();
    }
    if biconnected {
        filter = filter.biconnected();
    }
    if regular {
        filter = filter.regular();
    }
    if let Some(d) = min_degree {
        filter = filter.min_degree(d);
    }
    if let Some(seq) = sequence {
        filter = filter.degree_sequence(DegreeSequence::new(parse_list(seq)?));
    }
    let graphs = match backend {
        Backend::Rows => enumerate_class(&filter, budget)?,
        Backend::Augment => enumerate_by_augmentation(&filter, budget)?,
    };
    if stratify {
        return Ok(Output::ok(pretty(&stratify_graphs(&graphs))?));
    }
    let text = match format {
        None => graphs.iter().map(|g| to_graph6(g) + "\n").collect(),
        Some(Format::Json) => pretty(&json!({
            "nodes": n,
            "edges": e,
            "count": graphs.len(),
            "graphs": graphs.iter().map(to_graph6).collect::<Vec<_>>(),
        }))?,
        Some(Format::Csv) => {
            let mut text = String::from("graph6,degree_sequence\n");
            for g in &graphs {
                writeln!(text, "{},\"{}\"", csv_field(&to_graph6(g)), DegreeSequence::of(g))?;
            }
            text
        }
    };
    Ok(Output::ok(text))
}

fn run(cli: Cli) -> Result<Output> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    let out = cli.out;
    match cli.command {
        Command::Spectrum { input, rho } => run_spectrum(&input, &rho, out.unwrap_or(Format::Csv)),
        Command::Bounds { input, k, nodes, prefix, degrees, edges, mode, depth } => {
            let ctx = bound_context(&input, k, nodes.as_deref(), prefix, degrees.as_deref(), edges)?;
            let mode = match (mode, ctx.adjacency.is_some()) {
                (Mode::Exact, true) => BoundMode::ExactGraph,
                (Mode::Exact | Mode::Degrees, false) | (Mode::Degrees, true) => BoundMode::DegreesOnly,
                (Mode::Refined, _) => BoundMode::Refined,
            };
            let report = union_lower_bound(&ctx, mode, depth)?;
            let text = match out.unwrap_or(Format::Json) {
                Format::Json => pretty(&json!({ "context": ctx, "report": report }))?,
                Format::Csv => bounds_csv(&report)?,
            };
            Ok(Output::ok(text))
        }
        Command::Enumerate { n, e, all, biconnected, regular, min_degree, sequence, backend, budget, stratify } => {
            run_enumerate(n, e, all, biconnected, regular, min_degree, sequence.as_deref(), backend, budget, stratify, out)
        }
        Command::Census { input } => run_census(&input, out.unwrap_or(Format::Json)),
        Command::Compare { a, b, rho } => run_compare(&a, &b, &rho, out.unwrap_or(Format::Json)),
        Command::Verify { claim, budget, no_timing } => run_verify(claim, budget, no_timing, out.unwrap_or(Format::Json)),
        Command::Mc { input, rho, trials, seed } => run_mc(&input, rho, trials, seed, out.unwrap_or(Format::Json)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{}", output.text);
            if output.falsified {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
