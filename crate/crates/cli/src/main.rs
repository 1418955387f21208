//! `xg`: build Kneser, Schrijver and almost-interlacing graphs, compute exact
//! chromatic numbers, and check alternators, homomorphisms and criticality.
//!
//! Exit status: 0 success, 1 a verification failed (or the pair is not an
//! edge), 2 the solver budget ran out, 3 bad input or I/O error.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use xg_core::alternator::{find_standard_alternator, Certificate};
use xg_core::coloring::certify::{verify_edge_critical_on, CriticalOptions, ExactCheck, Verdict, DEFAULT_SAMPLE};
use xg_core::coloring::exact::{DEFAULT_NODE_LIMIT, DEFAULT_SAT_TIMEOUT};
use xg_core::coloring::{chromatic_number, ChromaticOutcome, OutsidePick, SolverConfig};
use xg_core::graphs::{interlacing_subgraph, kneser_graph, schrijver_graph, xg_graph, LabeledGraph, VertexLabel};
use xg_core::mycielski::{homomorphism_f, mycielski_tower, verify_homomorphism, HomReport};
use xg_core::{ElemSet, GroundSet};

const OK: u8 = 0;
const FAILED: u8 = 1;
const UNKNOWN: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "xg", version, about = "Kneser-type graphs, alternators and criticality certificates")]
struct Cli {
    /// Worker threads for per-edge checks [default: all cores]
    #[arg(long, global = true, env = "XG_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a graph and write it as DIMACS or JSON.
    Generate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = Format::Dimacs)]
        format: Format,
        /// Output file [default: standard output]
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Exact chromatic number with a witness coloring.
    Chi {
        #[command(flatten)]
        graph: GraphArgs,
        /// Read the graph from a file instead (DIMACS, or JSON for `.json`)
        #[arg(long, conflicts_with_all = ["n", "k", "t", "radii"])]
        input: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
        /// Write the outcome and witness as JSON
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Standard alternator of a pair of vertices of XG(n, k).
    Alternator {
        #[command(flatten)]
        ground: GroundArgs,
        /// First vertex, e.g. 4,9,12,15
        #[arg(short = 'a', long = "set-a", value_delimiter = ',', required = true)]
        a: Vec<u32>,
        /// Second vertex, e.g. 6,8,13,16
        #[arg(short = 'b', long = "set-b", value_delimiter = ',', required = true)]
        b: Vec<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Color XG(n, k) - AB by rules R1-R7 for every edge AB and check it.
    VerifyCritical {
        #[command(flatten)]
        ground: GroundArgs,
        /// Which edges also get an exact chi(XG - AB) computation
        #[arg(long, value_enum, default_value_t = ExactMode::Auto)]
        exact: ExactMode,
        /// Edges sampled for the exact check (modes `sample` and `auto`)
        #[arg(long, default_value_t = DEFAULT_SAMPLE)]
        sample: usize,
        /// Seed for the edge sample
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Element of X \ W that names the color of an inessential vertex
        #[arg(long, value_enum, default_value_t = R1Pick::Largest)]
        r1: R1Pick,
        /// Write the full certificate (JSON) here
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Negative control: merge color 0 into another color
        #[arg(long)]
        corrupt_palette: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Check the homomorphism f: M_k(XG(n-1, k)) -> XG(n, k) edge by edge.
    VerifyHom {
        #[command(flatten)]
        ground: GroundArgs,
        /// Check the identity map XG(n, k) -> XG(n, k) instead
        #[arg(long)]
        identity: bool,
        /// Negative control: send vertex 1 to the image of one of its neighbors
        #[arg(long)]
        perturb: bool,
        /// Write the report (JSON) here
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct GroundArgs {
    #[arg(short)]
    n: u32,
    #[arg(short)]
    k: u32,
}

impl GroundArgs {
    fn ground(&self) -> anyhow::Result<GroundSet> {
        check_nk(self.n, self.k)
    }
}

#[derive(Args, Debug)]
struct GraphArgs {
    #[arg(long, value_enum, default_value_t = Family::Xg)]
    family: Family,
    #[arg(short)]
    n: Option<u32>,
    #[arg(short)]
    k: Option<u32>,
    /// Target chromatic number of a Mycielski tower
    #[arg(short)]
    t: Option<u32>,
    /// Radii of the tower levels, t - 2 of them
    #[arg(long, value_delimiter = ',')]
    radii: Vec<u32>,
}

#[derive(Args, Debug)]
struct SolverArgs {
    /// Branch-and-bound node budget
    #[arg(long, env = "XG_NODE_BUDGET", default_value_t = DEFAULT_NODE_LIMIT,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Stop at the node budget instead of handing over to the SAT solver
    #[arg(long)]
    no_sat: bool,
    /// Seconds allowed per SAT decision
    #[arg(long, default_value_t = DEFAULT_SAT_TIMEOUT)]
    sat_timeout: f64,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            node_limit: self.budget,
            sat_fallback: !self.no_sat,
            sat_timeout: self.sat_timeout,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Kneser,
    Schrijver,
    Xg,
    Interlacing,
    MycielskiTower,
    Complete,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Dimacs,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExactMode {
    None,
    All,
    Sample,
    /// every edge up to 60 vertices, otherwise a sample
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum R1Pick {
    Largest,
    Least,
}

fn check_nk(n: u32, k: u32) -> anyhow::Result<GroundSet> {
    if k < 1 || n < 2 * k {
        bail!("need n >= 2k >= 2, got n = {n}, k = {k}");
    }
    Ok(GroundSet::new(n, k)?)
}

fn build_graph(args: &GraphArgs) -> anyhow::Result<LabeledGraph> {
    if args.family == Family::MycielskiTower {
        let t = args.t.context("--family mycielski-tower needs -t")?;
        return Ok(mycielski_tower(t, &args.radii)?);
    }
    if args.family == Family::Complete {
        let n = args.n.context("--family complete needs -n")?;
        return Ok(LabeledGraph::complete(n as usize));
    }
    let (Some(n), Some(k)) = (args.n, args.k) else {
        bail!("--family {:?} needs -n and -k", args.family);
    };
    let g = check_nk(n, k)?;
    Ok(match args.family {
        Family::Kneser => kneser_graph(&g),
        Family::Schrijver => schrijver_graph(&g),
        Family::Xg => xg_graph(&g),
        Family::Interlacing => interlacing_subgraph(&g),
        Family::MycielskiTower | Family::Complete => unreachable!(),
    })
}

fn read_graph(path: &Path) -> anyhow::Result<LabeledGraph> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let reader = BufReader::new(file);
    let graph = if path.extension().is_some_and(|e| e == "json") {
        LabeledGraph::read_json(reader)?
    } else {
        LabeledGraph::read_dimacs(reader)?
    };
    Ok(graph)
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn write_json(path: &Path, value: &serde_json::Value) -> anyhow::Result<()> {
    let mut sink = create(path)?;
    serde_json::to_writer_pretty(&mut sink, value)?;
    writeln!(sink)?;
    sink.flush()?;
    Ok(())
}

fn describe(g: &LabeledGraph) -> String {
    let ground = g.ground().map_or(String::new(), |gs| format!(" n={} k={}", gs.n(), gs.k()));
    format!("family={:?}{ground} vertices={} edges={}", g.family(), g.len(), g.edge_count())
}

fn to_set(elems: &[u32], g: &GroundSet) -> anyhow::Result<ElemSet> {
    let set = ElemSet::try_from_elems(elems.iter().copied(), g.n())?;
    if set.len() as usize != elems.len() {
        bail!("repeated element in {elems:?}");
    }
    g.check_vertex(set)?;
    Ok(set)
}

fn label_text(g: &LabeledGraph, u: usize) -> String {
    match g.label(u) {
        VertexLabel::Subset(s) => s.to_string(),
        VertexLabel::Layer { base, level } => match g.subset(u) {
            Some(s) => format!("({s},{level})"),
            None => format!("({},{level})", base + 1),
        },
        VertexLabel::Apex => "z".to_string(),
        VertexLabel::Plain(i) => (i + 1).to_string(),
    }
}

fn generate(graph: &GraphArgs, format: Format, output: Option<&Path>) -> anyhow::Result<u8> {
    let g = build_graph(graph)?;
    let write = |sink: &mut dyn Write| -> anyhow::Result<()> {
        match format {
            Format::Dimacs => g.write_dimacs(&mut *sink)?,
            Format::Json => {
                g.write_json(&mut *sink)?;
                writeln!(sink)?;
            }
        }
        Ok(())
    };
    match output {
        Some(path) => {
            let mut sink = create(path)?;
            write(&mut sink)?;
            sink.flush()?;
            println!("{}", describe(&g));
        }
        None => {
            let stdout = io::stdout();
            let mut sink = stdout.lock();
            write(&mut sink)?;
            eprintln!("{}", describe(&g));
        }
    }
    Ok(OK)
}

fn chi(graph: &GraphArgs, input: Option<&Path>, solver: &SolverArgs, output: Option<&Path>) -> anyhow::Result<u8> {
    let g = match input {
        Some(path) => read_graph(path)?,
        None => build_graph(graph)?,
    };
    println!("{}", describe(&g));
    let outcome = chromatic_number(&g, solver.config())?;
    let (status, code) = match &outcome {
        ChromaticOutcome::Exact { chi, nodes, sat_calls, .. } => {
            println!("chi={chi} status=exact nodes={nodes} sat_calls={sat_calls}");
            ("exact", OK)
        }
        ChromaticOutcome::Unknown { lower, upper, nodes, sat_calls, .. } => {
            println!("chi=unknown lower={lower} upper={upper} nodes={nodes} sat_calls={sat_calls}");
            ("unknown", UNKNOWN)
        }
    };
    if let Some(path) = output {
        let (chi, lower, upper, witness) = match &outcome {
            ChromaticOutcome::Exact { chi, coloring, .. } => (Some(*chi), *chi, *chi, coloring),
            ChromaticOutcome::Unknown { lower, upper, best, .. } => (None, *lower, *upper, best),
        };
        let value = json!({
            "format": "xgraph-chi",
            "version": 1,
            "graph": g.to_json_value(),
            "status": status,
            "chi": chi,
            "lower": lower,
            "upper": upper,
            "nodes": outcome.nodes(),
            // entry i is the color (1-based) of vertex i + 1
            "coloring": witness.iter().map(|c| c + 1).collect::<Vec<_>>(),
        });
        write_json(path, &value)?;
    }
    Ok(code)
}

fn alternator(ground: &GroundArgs, a: &[u32], b: &[u32], as_json: bool) -> anyhow::Result<u8> {
    let g = ground.ground()?;
    let (a, b) = (to_set(a, &g)?, to_set(b, &g)?);
    match find_standard_alternator(a, b, &g)? {
        Some(alt) => {
            let cert = Certificate::new(&g, a, b, &alt);
            if as_json {
                println!("{}", serde_json::to_string_pretty(&cert)?);
            } else {
                print!("{cert}");
            }
            Ok(OK)
        }
        None => {
            println!("not an edge: {a} {b} is not almost-interlacing in XG({}, {})", g.n(), g.k());
            Ok(FAILED)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn verify_critical(
    ground: &GroundArgs,
    exact: ExactMode,
    sample: usize,
    seed: u64,
    r1: R1Pick,
    certificate: Option<&Path>,
    corrupt_palette: bool,
    solver: &SolverArgs,
) -> anyhow::Result<u8> {
    let g = ground.ground()?;
    let opts = CriticalOptions {
        outside_pick: match r1 {
            R1Pick::Largest => OutsidePick::Largest,
            R1Pick::Least => OutsidePick::Least,
        },
        exact: match exact {
            ExactMode::None => ExactCheck::None,
            ExactMode::All => ExactCheck::All,
            ExactMode::Sample => ExactCheck::Sample { size: sample, seed },
            ExactMode::Auto => ExactCheck::Auto { size: sample, seed },
        },
        solver: solver.config(),
        tables: certificate.is_some(),
        corrupt_palette,
    };
    let xg = xg_graph(&g);
    let report = verify_edge_critical_on(&xg, &opts)?;
    println!(
        "XG({},{}) vertices={} edges={} palette={} seed={}",
        report.n, report.k, report.vertices, report.edge_count, report.target, seed
    );
    for edge in report.edges.iter().filter(|e| !e.violations.is_empty()).take(10) {
        let first = &edge.violations[0];
        println!(
            "edge {} {}: {} monochromatic edge(s), e.g. {} {} color {} rules {}/{}",
            edge.a,
            edge.b,
            edge.violations.len(),
            first.x,
            first.y,
            first.color,
            first.rules.0,
            first.rules.1
        );
    }
    println!(
        "failed_edges={} violations={} exact_checked={} exact_unknown={} verdict={}",
        report.failed_edges,
        report.violations,
        report.exact_checked,
        report.exact_unknown,
        serde_json::to_value(report.verdict)?.as_str().unwrap_or("?")
    );
    if let Some(path) = certificate {
        let value = json!({
            "format": "xgraph-critical",
            "version": 1,
            "seed": seed,
            "report": report,
        });
        write_json(path, &value)?;
    }
    Ok(match report.verdict {
        Verdict::Pass => OK,
        Verdict::Fail => FAILED,
        Verdict::Unknown => UNKNOWN,
    })
}

fn verify_hom(ground: &GroundArgs, identity: bool, perturb: bool, output: Option<&Path>) -> anyhow::Result<u8> {
    let g = ground.ground()?;
    let (source, target, mut map) = if identity {
        let xg = xg_graph(&g);
        let map = (0..xg.len()).collect();
        (xg.clone(), xg, map)
    } else {
        if g.n() < 2 * g.k() + 1 {
            bail!("the homomorphism needs n >= 2k + 1");
        }
        let inst = homomorphism_f(&g)?;
        (inst.source, inst.target, inst.map)
    };
    if perturb {
        match source.neighbors(0).first() {
            Some(&w) => map[0] = map[w],
            None => bail!("vertex 1 has no neighbor to collide with"),
        }
    }
    let report: HomReport = verify_homomorphism(&source, &target, &map)?;
    let what = if identity { "identity" } else { "f" };
    println!(
        "{what}: source vertices={} edges={} target vertices={} edges={}",
        source.len(),
        source.edge_count(),
        target.len(),
        target.edge_count()
    );
    for v in report.violations.iter().take(10) {
        let (u, w) = v.source_edge;
        let kind = v.kind.map_or(String::new(), |k| format!(" [{k}]"));
        println!(
            "violation{kind}: {} -- {} maps to {} {}",
            label_text(&source, u),
            label_text(&source, w),
            label_text(&target, v.image.0),
            label_text(&target, v.image.1)
        );
    }
    println!("edges_checked={} violations={}", report.edges_checked, report.violations.len());
    if let Some(path) = output {
        let violations: Vec<_> = report
            .violations
            .iter()
            .map(|v| {
                json!({
                    "source": [label_text(&source, v.source_edge.0), label_text(&source, v.source_edge.1)],
                    "image": [label_text(&target, v.image.0), label_text(&target, v.image.1)],
                    "kind": v.kind,
                })
            })
            .collect();
        let value = json!({
            "format": "xgraph-hom",
            "version": 1,
            "n": g.n(),
            "k": g.k(),
            "map": what,
            "perturbed": perturb,
            "edges_checked": report.edges_checked,
            "violations": violations,
        });
        write_json(path, &value)?;
    }
    Ok(if report.is_homomorphism() { OK } else { FAILED })
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    match &cli.command {
        Command::Generate { graph, format, output } => generate(graph, *format, output.as_deref()),
        Command::Chi {
            graph,
            input,
            solver,
            output,
        } => chi(graph, input.as_deref(), solver, output.as_deref()),
        Command::Alternator { ground, a, b, json } => alternator(ground, a, b, *json),
        Command::VerifyCritical {
            ground,
            exact,
            sample,
            seed,
            r1,
            certificate,
            corrupt_palette,
            solver,
        } => verify_critical(ground, *exact, *sample, *seed, *r1, certificate.as_deref(), *corrupt_palette, solver),
        Command::VerifyHom {
            ground,
            identity,
            perturb,
            output,
        } => verify_hom(ground, *identity, *perturb, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { USAGE } else { OK };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(USAGE)
        }
    }
}
