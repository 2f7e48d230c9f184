use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use skyrank::classic::{k_skyband, skyline, top_k};
use skyrank::epsilon::epsilon_skyline;
use skyrank::flexible::{nd, po};
use skyrank::oss::{ord, oru};
use skyrank::report::{compare, CompareParams};
use skyrank::representative::{distance_representative, dominance_representative, Mode};
use skyrank::utk::{utk2_with, CellKind, Labeling, PartitionCell};
use skyrank::{generate, Dataset, Distribution, Error, WeightRegion};

const EXIT_DATA: u8 = 3;
const EXIT_CONTAINMENT: u8 = 4;

#[derive(Parser)]
#[command(name = "skyrank", version, about = "Skyline, top-k and flexible preference queries over CSV data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one operator and print its result.
    Query(QueryArgs),
    /// Run every operator on one dataset and print the property report.
    Compare(CompareArgs),
    /// Write a synthetic dataset.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    Skyline,
    Skyband,
    Topk,
    Nd,
    Po,
    Ord,
    Oru,
    Utk1,
    Utk2,
    Eskyline,
    Repdom,
    Repdist,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Greedy,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Greedy => Mode::Greedy,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DistArg {
    Independent,
    Correlated,
    Anticorrelated,
}

impl From<DistArg> for Distribution {
    fn from(d: DistArg) -> Self {
        match d {
            DistArg::Independent => Distribution::Independent,
            DistArg::Correlated => Distribution::Correlated,
            DistArg::Anticorrelated => Distribution::Anticorrelated,
        }
    }
}

#[derive(Clone, Debug)]
struct Weights(Vec<f64>);

fn parse_weights(s: &str) -> Result<Weights, String> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| format!("bad weight {:?}", x)))
        .collect::<Result<Vec<_>, _>>()
        .map(Weights)
}

#[derive(Args)]
struct QueryArgs {
    #[arg(value_enum)]
    op: Op,
    /// Input CSV.
    #[arg(long)]
    data: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    m: Option<u64>,
    /// Comma-separated weight vector on the simplex.
    #[arg(long, value_parser = parse_weights, allow_negative_numbers = true)]
    weights: Option<Weights>,
    /// Ball radius around --weights (nd/po without --region).
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eps: Option<f64>,
    /// Region file.
    #[arg(long)]
    region: Option<PathBuf>,
    /// Min-max normalize attributes before running.
    #[arg(long)]
    normalize: bool,
    #[arg(long, value_enum, default_value = "greedy")]
    mode: ModeArg,
    /// Dominance / rank depth for ord and oru.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    k_depth: u64,
    /// utk2: tell cells apart by ranked top-k instead of the top-k set.
    #[arg(long)]
    ordered: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    data: PathBuf,
    /// Defaults to uniform weights.
    #[arg(long, value_parser = parse_weights)]
    weights: Option<Weights>,
    /// Region file; defaults to the whole simplex.
    #[arg(long)]
    region: Option<PathBuf>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    m: u64,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    eps: f64,
    #[arg(long, value_enum, default_value = "greedy")]
    mode: ModeArg,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    dist: DistArg,
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    d: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct QueryOutput {
    operator: String,
    params: Map<String, Value>,
    ids: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scores: Option<Vec<f64>>,
    #[serde(rename = "rhoStar", skip_serializing_if = "Option::is_none")]
    rho_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cells: Option<Vec<PartitionCell>>,
}

impl QueryOutput {
    fn new(operator: &str, params: Map<String, Value>, ids: Vec<String>) -> Self {
        Self {
            operator: operator.to_string(),
            params,
            ids,
            scores: None,
            rho_star: None,
            cells: None,
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Some(cells) = &self.cells {
            out.push_str("lo,hi,samples,exact,label\n");
            for c in cells {
                let (lo, hi) = match c.kind {
                    CellKind::ExactInterval { lo, hi } => (lo.to_string(), hi.to_string()),
                    CellKind::SampleCloud { .. } => (String::new(), String::new()),
                };
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    lo,
                    hi,
                    c.samples(),
                    c.exact,
                    c.label.join(" ")
                ));
            }
            return out;
        }
        out.push_str(&self.ids.join(","));
        out.push('\n');
        if let Some(scores) = &self.scores {
            let s: Vec<String> = scores.iter().map(f64::to_string).collect();
            out.push_str(&format!("scores,{}\n", s.join(",")));
        }
        if let Some(r) = self.rho_star {
            out.push_str(&format!("rhoStar,{}\n", r));
        }
        out
    }
}

/// Aborts with a usage error (exit 2) naming the missing flag.
fn require<T: Clone>(value: &Option<T>, flag: &str, op: &str) -> T {
    match value {
        Some(v) => v.clone(),
        None => Cli::command()
            .error(
                ErrorKind::MissingRequiredArgument,
                format!("query {} requires --{}", op, flag),
            )
            .exit(),
    }
}

fn load(path: &Path, normalize: bool) -> skyrank::Result<Dataset> {
    let ds = Dataset::load_csv(path)?;
    if normalize {
        ds.normalize()
    } else {
        Ok(ds)
    }
}

fn load_region(path: &Path, dim: usize) -> skyrank::Result<WeightRegion> {
    WeightRegion::parse(&fs::read_to_string(path)?, dim)
}

fn op_name(op: Op) -> String {
    op.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn query_region(a: &QueryArgs, dim: usize, op: &str) -> skyrank::Result<WeightRegion> {
    match (&a.region, a.rho) {
        (Some(_), Some(_)) => Cli::command()
            .error(ErrorKind::ArgumentConflict, "--region and --rho are exclusive")
            .exit(),
        (Some(path), None) => load_region(path, dim),
        (None, Some(rho)) => {
            let w = require(&a.weights, "weights", op);
            WeightRegion::ball(w.0, rho)
        }
        (None, None) => Cli::command()
            .error(
                ErrorKind::MissingRequiredArgument,
                format!("query {} requires --region, or --weights with --rho", op),
            )
            .exit(),
    }
}

fn run_query(a: &QueryArgs) -> skyrank::Result<QueryOutput> {
    let name = op_name(a.op);
    let op = name.as_str();
    let ds = load(&a.data, a.normalize)?;
    let mut params = Map::new();
    if a.normalize {
        params.insert("normalize".into(), json!(true));
    }
    let k = |params: &mut Map<String, Value>| {
        let k = require(&a.k, "k", op);
        params.insert("k".into(), json!(k));
        k as usize
    };
    let weights = |params: &mut Map<String, Value>| {
        let w = require(&a.weights, "weights", op).0;
        params.insert("weights".into(), json!(w));
        w
    };
    let region = |params: &mut Map<String, Value>| -> skyrank::Result<WeightRegion> {
        let r = query_region(a, ds.dim(), op)?;
        if let Some(path) = &a.region {
            params.insert("region".into(), json!(path.display().to_string()));
        } else {
            params.insert("weights".into(), json!(a.weights.as_ref().map(|w| w.0.clone())));
            params.insert("rho".into(), json!(a.rho));
        }
        Ok(r)
    };
    let sorted = |ids: skyrank::IdSet| ids.into_iter().collect::<Vec<_>>();

    let out = match a.op {
        Op::Skyline => QueryOutput::new(op, params, sorted(skyline(&ds))),
        Op::Skyband => {
            let k = k(&mut params);
            QueryOutput::new(op, params, sorted(k_skyband(&ds, k)?))
        }
        Op::Topk => {
            let w = weights(&mut params);
            let k = k(&mut params);
            let r = top_k(&ds, &w, k)?;
            let mut out = QueryOutput::new(op, params, r.ids().iter().map(|s| s.to_string()).collect());
            out.scores = Some(r.scores());
            out
        }
        Op::Nd | Op::Po => {
            let reg = region(&mut params)?;
            let ids = if a.op == Op::Nd { nd(&ds, &reg)? } else { po(&ds, &reg)? };
            QueryOutput::new(op, params, sorted(ids))
        }
        Op::Ord | Op::Oru => {
            let w = weights(&mut params);
            let m = require(&a.m, "m", op) as usize;
            params.insert("m".into(), json!(m));
            params.insert("kDepth".into(), json!(a.k_depth));
            let depth = a.k_depth as usize;
            let r = if a.op == Op::Ord {
                ord(&ds, &w, m, depth)?
            } else {
                oru(&ds, &w, m, depth)?
            };
            let mut out = QueryOutput::new(op, params, r.ids);
            out.rho_star = Some(r.rho_star);
            out
        }
        Op::Utk1 | Op::Utk2 => {
            let k = k(&mut params);
            let path = require(&a.region, "region", op);
            let reg = load_region(&path, ds.dim())?;
            params.insert("region".into(), json!(path.display().to_string()));
            let labeling = if a.ordered && a.op == Op::Utk2 {
                params.insert("ordered".into(), json!(true));
                Labeling::Ordered
            } else {
                Labeling::Set
            };
            let cells = utk2_with(&ds, k, &reg, labeling)?;
            let union: skyrank::IdSet = cells.iter().flat_map(|c| c.label.iter().cloned()).collect();
            let mut out = QueryOutput::new(op, params, sorted(union));
            if a.op == Op::Utk2 {
                out.cells = Some(cells);
            }
            out
        }
        Op::Eskyline => {
            let w = weights(&mut params);
            let eps = require(&a.eps, "eps", op);
            params.insert("eps".into(), json!(eps));
            QueryOutput::new(op, params, sorted(epsilon_skyline(&ds, &w, eps)?))
        }
        Op::Repdom | Op::Repdist => {
            let k = k(&mut params);
            let mode = Mode::from(a.mode);
            params.insert("mode".into(), json!(mode.to_string()));
            let sel = if a.op == Op::Repdom {
                dominance_representative(&ds, k, mode)?
            } else {
                distance_representative(&ds, k, mode)?
            };
            QueryOutput::new(op, params, sel.ids)
        }
    };
    Ok(out)
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {}", e);
    ExitCode::from(EXIT_DATA)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut stdout = stdout.lock();
    match cli.command {
        Command::Query(a) => match run_query(&a) {
            Ok(out) => {
                let text = match a.format {
                    Format::Csv => out.to_csv(),
                    Format::Json => {
                        serde_json::to_string(&out).expect("serializable output") + "\n"
                    }
                };
                let _ = stdout.write_all(text.as_bytes());
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Compare(a) => {
            let run = || -> skyrank::Result<skyrank::report::CompareReport> {
                let ds = Dataset::load_csv(&a.data)?;
                let mut p = CompareParams::defaults(ds.dim());
                if let Some(w) = &a.weights {
                    p.weights = w.0.clone();
                }
                if let Some(path) = &a.region {
                    p.region = load_region(path, ds.dim())?;
                }
                p.k = a.k as usize;
                p.m = a.m as usize;
                p.eps = a.eps;
                p.mode = a.mode.into();
                compare(&ds, &p)
            };
            match run() {
                Ok(report) => {
                    let _ = write!(stdout, "{}", report);
                    if report.containment.holds() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_CONTAINMENT)
                    }
                }
                Err(e) => fail(e),
            }
        }
        Command::Generate(a) => {
            let ds = match generate(a.dist.into(), a.n, a.d as usize, a.seed) {
                Ok(ds) => ds,
                Err(e) => return fail(e),
            };
            let written = match &a.out {
                Some(path) => ds.save_csv(path),
                None => ds.write_csv(&mut stdout),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(e),
            }
        }
    }
}
