use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rainbow_core::analysis::{analyze, DEFAULT_MAX_K};
use rainbow_core::characterize::{find_rainbow_spanning_turan, is_in_gk, is_in_hk};
use rainbow_core::constructions::{
    build_case2_figure, build_gk, build_hnk, recolored_g1, turan_graph, LabeledConstruction,
};
use rainbow_core::io::{parse_digraph, parse_graph, write_digraph, write_dot, write_edgelist, write_json};
use rainbow_core::transform::{associated_colored_graph, orient_by_p3_rule};
use rainbow_core::verify::{revalidate, verify_theorem, Grid, TheoremId};
use rainbow_core::{EdgeColoredGraph, Error};

const EXIT_USAGE: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;

/// Rainbow triangles and cliques in edge-colored graphs.
#[derive(Parser, Debug)]
#[command(name = "rainbow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an extremal construction.
    Generate(GenerateArgs),
    /// Print a JSON report of statistics, rainbow structures and thresholds.
    Analyze {
        /// Graph file (edge list or JSON); `-` reads stdin.
        input: PathBuf,
        /// Largest clique size probed.
        #[arg(long, default_value_t = DEFAULT_MAX_K)]
        max_k: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Test membership in a characterized class.
    Check {
        #[arg(value_enum)]
        class: CheckClass,
        input: PathBuf,
        /// `k` for gk and hk.
        #[arg(long)]
        k: Option<usize>,
        /// Number of parts for turan.
        #[arg(long)]
        parts: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Convert between oriented graphs and colored graphs.
    Transform {
        #[command(subcommand)]
        op: TransformOp,
    },
    /// Check a theorem or lemma over exhaustive and sampled instances.
    Verify(VerifyArgs),
    /// Rewrite a graph in another format.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: ConvertFormat,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    /// Number of parts for turan.
    #[arg(long)]
    parts: Option<usize>,
    /// Distinct colors on every Turán edge.
    #[arg(long)]
    rainbow: bool,
    #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
    format: GraphFormat,
    /// Graph file; the metadata goes to `<out>.meta.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// T1-T6, L1-L5 or P1.
    theorem: String,
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    k: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    ell: Option<Vec<usize>>,
    /// Comma-separated `n:k` pairs for T6 and L3-L5.
    #[arg(long, value_delimiter = ',')]
    pairs: Option<Vec<String>>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    exhaustive_max_n: Option<usize>,
    /// Skip non-complete graphs in exhaustive sweeps.
    #[arg(long)]
    complete_only: bool,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Subcommand, Debug)]
enum TransformOp {
    /// Digraph file to its associated colored graph.
    Associate {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
        format: GraphFormat,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Colored graph to an oriented graph by the 2-path rule.
    Orient {
        input: PathBuf,
        /// Print arcs with their provenance as JSON.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Gk,
    Hnk,
    Turan,
    Case2,
    RecoloredG1,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CheckClass {
    Gk,
    Hk,
    Turan,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GraphFormat {
    Edgelist,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ConvertFormat {
    Edgelist,
    Json,
    Dot,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::VertexOutOfRange { .. }
            | Error::SelfLoop(_)
            | Error::DuplicateEdge(..)
            | Error::DuplicateArc(..)
            | Error::Digon(..) => Failure::Usage(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<EdgeColoredGraph, Failure> {
    Ok(parse_graph(&read_input(path)?)?)
}

fn emit(out: &OutArgs, text: &str) -> Result<(), Failure> {
    match &out.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn format_graph(g: &EdgeColoredGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Edgelist => write_edgelist(g),
        GraphFormat::Json => write_json(g),
    }
}

fn need(value: Option<usize>, flag: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required")))
}

fn generate(a: &GenerateArgs) -> Outcome {
    let built: LabeledConstruction = match a.kind {
        Kind::Gk => build_gk(a.n, need(a.k, "k")?)?,
        Kind::Hnk => build_hnk(a.n, need(a.k, "k")?)?,
        Kind::Turan => turan_graph(a.n, need(a.parts, "parts")?, a.rainbow)?,
        Kind::Case2 => build_case2_figure(a.n, need(a.k, "k")?)?,
        Kind::RecoloredG1 => recolored_g1(a.n)?,
    };
    let text = format_graph(&built.graph, a.format);
    match &a.out {
        Some(path) => {
            fs::write(path, text)?;
            let mut meta = path.clone().into_os_string();
            meta.push(".meta.json");
            fs::write(meta, json(&built.metadata))?;
        }
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(0)
}

#[derive(Serialize)]
struct Membership<T: Serialize> {
    member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<T>,
}

fn check(class: CheckClass, input: &Path, k: Option<usize>, parts: Option<usize>, out: &OutArgs) -> Outcome {
    let g = read_graph(input)?;
    let text = match class {
        CheckClass::Gk => {
            let cert = is_in_gk(&g, need(k, "k")?);
            json(&Membership { member: cert.is_some(), certificate: cert })
        }
        CheckClass::Hk => {
            let cert = is_in_hk(&g, need(k, "k")?)?;
            json(&Membership { member: cert.is_some(), certificate: cert })
        }
        CheckClass::Turan => {
            let found = find_rainbow_spanning_turan(&g, need(parts, "parts")?)?;
            json(&Membership { member: found.is_some(), certificate: found })
        }
    };
    emit(out, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct OrientedArc {
    tail: usize,
    head: usize,
    provenance: rainbow_core::transform::Provenance,
}

#[derive(Serialize)]
struct OrientationJson {
    n: usize,
    arcs: Vec<OrientedArc>,
}

fn transform(op: &TransformOp) -> Outcome {
    match op {
        TransformOp::Associate { input, format, out } => {
            let d = parse_digraph(&read_input(input)?)?;
            emit(out, &format_graph(&associated_colored_graph(&d).graph, *format))?;
        }
        TransformOp::Orient { input, json: as_json, out } => {
            let report = orient_by_p3_rule(&read_graph(input)?)?;
            let text = if *as_json {
                json(&OrientationJson {
                    n: report.digraph.n(),
                    arcs: report
                        .provenance
                        .iter()
                        .map(|&(tail, head, provenance)| OrientedArc { tail, head, provenance })
                        .collect(),
                })
            } else {
                write_digraph(&report.digraph)
            };
            emit(out, &text)?;
        }
    }
    Ok(0)
}

fn verify(a: &VerifyArgs) -> Outcome {
    let id: TheoremId = a.theorem.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let mut grid = Grid::default_for(id);
    if let Some(n) = &a.n {
        grid.n = n.clone();
    }
    if let Some(k) = &a.k {
        grid.k = k.clone();
    }
    if let Some(ell) = &a.ell {
        grid.ell = ell.clone();
    }
    if let Some(pairs) = &a.pairs {
        grid.pairs = pairs
            .iter()
            .map(|p| {
                let (n, k) = p.split_once(':').ok_or_else(|| Failure::Usage(format!("pair {p:?} is not n:k")))?;
                let parse = |s: &str| s.trim().parse().map_err(|_| Failure::Usage(format!("pair {p:?} is not n:k")));
                Ok((parse(n)?, parse(k)?))
            })
            .collect::<Result<_, Failure>>()?;
    } else if a.n.is_some() || a.k.is_some() {
        grid.pairs.clear();
    }
    if let Some(samples) = a.samples {
        grid.samples = samples;
    }
    if let Some(max) = a.exhaustive_max_n {
        grid.exhaustive_max_n = max;
    }
    if a.complete_only {
        grid.noncomplete = false;
    }
    if let Some(budget) = a.budget {
        grid.budget = budget;
    }
    grid.seed = a.seed;
    grid.jobs = a.jobs;
    let report = verify_theorem(id, &grid)?;
    if !revalidate(&report)? {
        return Err(Failure::Precondition("a reported counterexample passes on recheck".into()));
    }
    emit(&a.out, &if a.json { json(&report) } else { report.table() })?;
    Ok(if report.passed() { 0 } else { EXIT_COUNTEREXAMPLE })
}

fn convert(input: &Path, to: ConvertFormat, out: &OutArgs) -> Outcome {
    let g = read_graph(input)?;
    let text = match to {
        ConvertFormat::Edgelist => write_edgelist(&g),
        ConvertFormat::Json => write_json(&g),
        ConvertFormat::Dot => write_dot(&g),
    };
    emit(out, &text)?;
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Analyze { input, max_k, out } => {
            emit(out, &json(&analyze(&read_graph(input)?, *max_k)))?;
            Ok(0)
        }
        Command::Check { class, input, k, parts, out } => check(*class, input, *k, *parts, out),
        Command::Transform { op } => transform(op),
        Command::Verify(a) => verify(a),
        Command::Convert { input, to, out } => convert(input, *to, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PRECONDITION)
        }
    }
}
