use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gdspread::bounds::{BoundContext, BoundId, BoundReport, DEFAULT_TOL};
use gdspread::corpus::{self, shipped_bipartite_corpus, CorpusError};
use gdspread::matrix::check_alpha;
use gdspread::report::{fmt_sig, sig12, sig12_vec};
use gdspread::{FamilySpec, Graph};

const SCHEMA_VERSION: u32 = 1;
const DEFAULT_GRID: &str = "0,0.1,0.25,0.5,0.75,0.9,1";

const EXIT_INPUT: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(name = "gdspread", version, about = "Generalized distance spectra and spectral spread bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum, spread and distance invariants of one graph
    Analyze {
        /// graph6 string, family spec (kbip:2,3) or file path
        input: String,
        #[arg(long, conflicts_with = "alpha_grid")]
        alpha: Option<f64>,
        /// Comma-separated list of alpha values
        #[arg(long)]
        alpha_grid: Option<String>,
        /// Also report clique and independence numbers
        #[arg(long)]
        invariants: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evaluate every registered bound; exits 4 on a violated proven bound
    Bounds {
        input: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evaluate all bounds over a corpus; exits 4 on violations
    Sweep {
        /// graph6 corpus file, repeatable; defaults to the shipped bipartite corpora
        #[arg(long)]
        corpus: Vec<PathBuf>,
        #[arg(long, default_value = DEFAULT_GRID)]
        alphas: String,
        /// Random connected graphs as n,count,p (seeds seed..seed+count)
        #[arg(long)]
        seed_random: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Compare the minimum spread among bipartite graphs of order n with K_{⌊n/2⌋,⌈n/2⌉}
    Conjecture {
        #[arg(long)]
        n: usize,
        /// Comma-separated list of alpha values
        #[arg(long, default_value = "0")]
        alpha: String,
        /// Exhaustive corpus of connected bipartite graphs; shipped for n = 3..6
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }

    fn precondition(message: impl ToString) -> Self {
        Failure {
            code: EXIT_PRECONDITION,
            message: message.to_string(),
        }
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::Bound(_) => Failure::precondition(e),
            _ => Failure::input(e),
        }
    }
}

#[derive(Serialize)]
struct InputDescriptor {
    kind: &'static str,
    value: String,
    graph6: String,
}

struct LoadedGraph {
    descriptor: InputDescriptor,
    graph: Graph,
}

fn load_input(input: &str) -> Result<LoadedGraph, Failure> {
    let is_family = input
        .split_once(':')
        .is_some_and(|(kind, _)| kind.chars().all(|c| c.is_ascii_lowercase()) && !kind.is_empty());
    let (kind, graph) = if is_family {
        let spec: FamilySpec = input.parse().map_err(Failure::input)?;
        ("family", spec.generate().map_err(Failure::input)?)
    } else if Path::new(input).is_file() {
        let text = std::fs::read_to_string(input).map_err(|e| Failure::input(format!("{input}: {e}")))?;
        let starts_numeric = text
            .lines()
            .find(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .is_some_and(|l| l.trim_start().starts_with(|c: char| c.is_ascii_digit()));
        if starts_numeric {
            ("edge_list", gdspread::parse_edge_list(&text).map_err(Failure::input)?)
        } else {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .ok_or_else(|| Failure::input(format!("{input}: no graph found")))?;
            ("graph6_file", Graph::from_graph6(line).map_err(Failure::input)?)
        }
    } else {
        ("graph6", Graph::from_graph6(input).map_err(Failure::input)?)
    };
    if !graph.is_connected() {
        return Err(Failure::precondition("requires connected graph"));
    }
    Ok(LoadedGraph {
        descriptor: InputDescriptor {
            kind,
            value: input.to_string(),
            graph6: graph.to_graph6(),
        },
        graph,
    })
}

fn parse_alphas(list: &str) -> Result<Vec<f64>, Failure> {
    let alphas = list
        .split(',')
        .map(|a| a.trim().parse::<f64>().map_err(|_| Failure::input(format!("invalid alpha {a:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    for &a in &alphas {
        check_alpha(a).map_err(Failure::precondition)?;
    }
    Ok(alphas)
}

fn tolerance(flag: Option<f64>) -> Result<f64, Failure> {
    let tol = match (flag, std::env::var("SPREAD_TOL")) {
        (Some(t), _) => t,
        (None, Ok(v)) => v
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("SPREAD_TOL={v:?} is not a number")))?,
        (None, Err(_)) => DEFAULT_TOL,
    };
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Failure::input(format!("tolerance {tol} must be finite and non-negative")));
    }
    Ok(tol)
}

#[derive(Serialize)]
struct DiscrepancyNote {
    bound_id: BoundId,
    note: String,
}

#[derive(Serialize)]
struct ReportDocument {
    schema_version: u32,
    input: InputDescriptor,
    n: usize,
    #[serde(serialize_with = "sig12")]
    alpha: f64,
    #[serde(serialize_with = "sig12_vec")]
    spectrum: Vec<f64>,
    #[serde(serialize_with = "sig12")]
    spread: f64,
    wiener: u64,
    tr_min: u64,
    tr_max: u64,
    diameter: u32,
    transmissions: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    clique_number: Option<Option<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    independence_number: Option<Option<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<Vec<BoundReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancies: Option<Vec<DiscrepancyNote>>,
}

fn document(loaded: &LoadedGraph, ctx: &BoundContext<'_>, invariants: bool) -> ReportDocument {
    let p = &ctx.profile;
    ReportDocument {
        schema_version: SCHEMA_VERSION,
        input: InputDescriptor {
            kind: loaded.descriptor.kind,
            value: loaded.descriptor.value.clone(),
            graph6: loaded.descriptor.graph6.clone(),
        },
        n: ctx.order(),
        alpha: ctx.alpha,
        spectrum: ctx.spectrum.values().to_vec(),
        spread: ctx.spread(),
        wiener: p.wiener,
        tr_min: p.tr_min(),
        tr_max: p.tr_max(),
        diameter: p.diameter,
        transmissions: p.transmissions.clone(),
        clique_number: invariants.then(|| ctx.max_cliques().ok().map(|c| c.0)),
        independence_number: invariants.then(|| ctx.independence_number().ok()),
        bounds: None,
        discrepancies: None,
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn join_sig(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_sig(x)).collect::<Vec<_>>().join(",")
}

fn analyze_tsv(docs: &[ReportDocument]) -> String {
    let mut out = String::from("input\tn\talpha\tspread\twiener\ttr_min\ttr_max\tdiameter\tspectrum\n");
    for d in docs {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            d.input.value,
            d.n,
            fmt_sig(d.alpha),
            fmt_sig(d.spread),
            d.wiener,
            d.tr_min,
            d.tr_max,
            d.diameter,
            join_sig(&d.spectrum)
        ));
    }
    out
}

fn bounds_tsv(reports: &[BoundReport]) -> String {
    let mut out = String::from("bound_id\tdirection\tstatus\tapplicable\tbound\tactual\tgap\tholds\tequality\treason\n");
    for r in reports {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.bound_id,
            label(&r.direction),
            label(&r.status),
            r.applicable,
            fmt_sig(r.bound),
            fmt_sig(r.actual),
            fmt_sig(r.gap),
            r.holds,
            r.equality,
            r.reason.as_deref().unwrap_or("")
        ));
    }
    out
}

fn label<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn context<'g>(g: &'g Graph, alpha: f64) -> Result<BoundContext<'g>, Failure> {
    BoundContext::new(g, alpha).map_err(Failure::precondition)
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    match cli.command {
        Command::Analyze {
            input,
            alpha,
            alpha_grid,
            invariants,
            format,
        } => {
            let loaded = load_input(&input)?;
            let alphas = match (alpha, alpha_grid) {
                (Some(a), _) => parse_alphas(&a.to_string())?,
                (None, Some(grid)) => parse_alphas(&grid)?,
                (None, None) => vec![0.0],
            };
            let docs = alphas
                .iter()
                .map(|&a| context(&loaded.graph, a).map(|ctx| document(&loaded, &ctx, invariants)))
                .collect::<Result<Vec<_>, _>>()?;
            let out = match format {
                Format::Json => json(&docs),
                Format::Tsv => analyze_tsv(&docs),
            };
            Ok((out, 0))
        }
        Command::Bounds {
            input,
            alpha,
            tol,
            format,
        } => {
            let loaded = load_input(&input)?;
            let tol = tolerance(tol)?;
            check_alpha(alpha).map_err(Failure::precondition)?;
            let ctx = context(&loaded.graph, alpha)?;
            let reports: Vec<BoundReport> = BoundId::ALL.iter().map(|&id| ctx.evaluate(id, tol)).collect();
            let violated = reports.iter().any(BoundReport::is_violation);
            let discrepancies = reports
                .iter()
                .filter_map(|r| r.discrepancy(tol).map(|note| DiscrepancyNote { bound_id: r.bound_id, note }))
                .collect();
            let out = match format {
                Format::Json => {
                    let mut doc = document(&loaded, &ctx, true);
                    doc.bounds = Some(reports);
                    doc.discrepancies = Some(discrepancies);
                    json(&doc)
                }
                Format::Tsv => bounds_tsv(&reports),
            };
            Ok((out, if violated { EXIT_VIOLATION } else { 0 }))
        }
        Command::Sweep {
            corpus: files,
            alphas,
            seed_random,
            seed,
            tol,
        } => {
            let tol = tolerance(tol)?;
            let alphas = parse_alphas(&alphas)?;
            let mut graphs = Vec::new();
            for f in &files {
                graphs.extend(corpus::read_corpus(f)?);
            }
            if let Some(spec) = &seed_random {
                graphs.extend(random_graphs(spec, seed)?);
            }
            if files.is_empty() && seed_random.is_none() {
                for n in 3..=6 {
                    graphs.extend(corpus::parse_corpus(shipped_bipartite_corpus(n).unwrap())?);
                }
            }
            let summary = corpus::sweep(&graphs, &alphas, tol)?;
            let code = if summary.is_clean() { 0 } else { EXIT_VIOLATION };
            Ok((json(&summary), code))
        }
        Command::Conjecture { n, alpha, corpus: file } => {
            let alphas = parse_alphas(&alpha)?;
            let graphs = match (&file, shipped_bipartite_corpus(n)) {
                (Some(f), _) => corpus::read_corpus(f)?,
                (None, Some(text)) => corpus::parse_corpus(text)?,
                (None, None) => {
                    return Err(Failure::input(format!("no shipped corpus for n = {n}; pass --corpus")));
                }
            };
            let results = alphas
                .iter()
                .map(|&a| corpus::check_problem_39(&graphs, n, a))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((json(&results), 0))
        }
    }
}

fn random_graphs(spec: &str, seed: u64) -> Result<Vec<Graph>, Failure> {
    let bad = || Failure::input(format!("--seed-random expects n,count,p; got {spec:?}"));
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [n, count, p] = parts.as_slice() else {
        return Err(bad());
    };
    let n: usize = n.parse().map_err(|_| bad())?;
    let count: u64 = count.parse().map_err(|_| bad())?;
    let p: f64 = p.parse().map_err(|_| bad())?;
    (seed..seed + count)
        .map(|s| corpus::random_connected_graph(n, p, s).map_err(Failure::input))
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
