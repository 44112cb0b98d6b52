//! `geodetic`: generate, solve, verify and reduce strong geodetic instances.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success (optimal result, valid witness, identity holds) |
//! | 1 | `verify`: the witness is invalid |
//! | 2 | usage, parse, parameter or connectivity error |
//! | 3 | resource error (level too large, I/O failure while writing) |
//! | 4 | `solve`: limits exhausted, result indeterminate |
//! | 5 | `reduce --check`: identity violated (`THEOREM_VIOLATION`) |

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use geodetic::apollonian::apollonian;
use geodetic::domination::{dominating_number, DominatingWitness};
use geodetic::io::{graph_from_json, graph_to_json, to_dot, to_json_string};
use geodetic::reduction::{build_gadget, check_equivalence};
use geodetic::sierpinski::sierpinski;
use geodetic::{
    generators, geodetic_number, strong_geodetic_number, verify_witness, CoverWitness, Graph,
    SolveLimits, Status,
};

#[derive(Parser)]
#[command(
    name = "geodetic",
    version,
    about = "Strong geodetic sets on small graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as JSON.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Solve sg, the geodetic number, or the domination number exactly.
    Solve {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Sg)]
        mode: Mode,
        #[command(flatten)]
        limits: LimitArgs,
        /// Write the result here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a strong geodetic witness against a graph.
    Verify { graph: PathBuf, witness: PathBuf },
    /// Build the three-layer gadget for a connected graph.
    Reduce {
        graph: PathBuf,
        /// Solve both sides and check sg(gadget) = γ(G) + n.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Complete Apollonian network A(r).
    Apollonian { r: usize },
    /// Sierpiński triangle graph S(n).
    Sierpinski { n: usize },
    /// Erdős–Rényi G(n, p). The seed is required, positionally or via --seed.
    Random {
        n: usize,
        p: f64,
        seed: Option<u64>,
        #[arg(long = "seed", conflicts_with = "seed")]
        seed_flag: Option<u64>,
        /// Resample until the graph is connected.
        #[arg(long)]
        connected: bool,
    },
    /// The gadget of the graph in FILE.
    Gadget { file: PathBuf },
}

#[derive(Args)]
struct OutputArgs {
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write a DOT rendering.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct LimitArgs {
    /// Geodesics enumerated per pair before the pair counts as capped.
    #[arg(long = "limits-cap")]
    cap: Option<usize>,
    /// Search nodes allowed per cover search.
    #[arg(long)]
    budget: Option<u64>,
    /// Wall-clock limit in seconds. Results under a time limit may vary between runs.
    #[arg(long)]
    time_limit: Option<f64>,
}

impl LimitArgs {
    fn limits(&self) -> Result<SolveLimits, CliError> {
        let mut limits = SolveLimits::default();
        if let Some(cap) = self.cap {
            limits.geodesic_cap = cap;
        }
        if let Some(budget) = self.budget {
            limits.node_budget = budget;
        }
        if let Some(secs) = self.time_limit {
            limits.time_budget = Some(
                Duration::try_from_secs_f64(secs)
                    .map_err(|e| CliError::usage(format!("--time-limit: {e}")))?,
            );
        }
        limits.validate()?;
        Ok(limits)
    }
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Sg,
    Geodetic,
    Dominating,
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    inputs: Vec<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    limits: Option<ManifestLimits>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    outputs: Vec<PathBuf>,
}

#[derive(Serialize)]
struct ManifestLimits {
    geodesic_cap: usize,
    node_budget: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    time_limit_s: Option<f64>,
}

impl From<&SolveLimits> for ManifestLimits {
    fn from(l: &SolveLimits) -> Self {
        Self {
            geodesic_cap: l.geodesic_cap,
            node_budget: l.node_budget,
            time_limit_s: l.time_budget.map(|d| d.as_secs_f64()),
        }
    }
}

#[derive(Serialize)]
struct SolveReport<W, S> {
    manifest: RunManifest,
    mode: Mode,
    status: Status,
    value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lower_bound: Option<usize>,
    witness: Option<W>,
    stats: S,
}

#[derive(Serialize)]
struct GeodeticWitness {
    set: Vec<usize>,
}

#[derive(Serialize)]
struct DominationStats {
    nodes_expanded: u64,
}

#[derive(Serialize)]
struct Verdict {
    valid: bool,
    violation: Option<String>,
}

#[derive(Serialize)]
struct ReduceReport {
    manifest: RunManifest,
    #[serde(flatten)]
    report: geodetic::reduction::EquivalenceReport,
}

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<geodetic::Error> for CliError {
    fn from(e: geodetic::Error) -> Self {
        let code = match e {
            geodetic::Error::LevelTooLarge { .. } => 3,
            geodetic::Error::Indeterminate => 4,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Files to write once the command has fully succeeded, plus what goes to stdout.
#[derive(Default)]
struct Outputs {
    files: Vec<(PathBuf, String)>,
    stdout: Option<String>,
}

impl Outputs {
    fn emit(&mut self, path: Option<&Path>, contents: String) {
        match path {
            Some(p) => self.files.push((p.to_path_buf(), contents)),
            None => self.stdout = Some(contents),
        }
    }

    fn paths(&self) -> Vec<PathBuf> {
        self.files.iter().map(|(p, _)| p.clone()).collect()
    }

    fn commit(self) -> Result<(), CliError> {
        for (path, contents) in &self.files {
            write_atomic(path, contents).map_err(|e| CliError {
                code: 3,
                message: format!("writing {}: {e}", path.display()),
            })?;
        }
        if let Some(s) = self.stdout {
            print!("{s}");
        }
        Ok(())
    }
}

fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("reading {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    graph_from_json(&read_file(path)?)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

/// Accepts a bare witness or any JSON object with a `witness` field, such as
/// the output of `solve`.
fn read_witness(path: &Path) -> Result<CoverWitness, CliError> {
    let bad = |e: &dyn fmt::Display| CliError::usage(format!("{}: {e}", path.display()));
    let mut value: Value = serde_json::from_str(&read_file(path)?).map_err(|e| bad(&e))?;
    if let Some(inner) = value.get_mut("witness") {
        value = inner.take();
    }
    serde_json::from_value(value).map_err(|e| bad(&e))
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(to_json_string(value)?)
}

fn gen(kind: GenKind, out: OutputArgs) -> Result<u8, CliError> {
    let (graph, body) = match kind {
        GenKind::Apollonian { r } => {
            let net = apollonian(r)?;
            let body = json(&net.to_json())?;
            (net.graph, body)
        }
        GenKind::Sierpinski { n } => {
            let s = sierpinski(n)?;
            let body = json(&s.to_json()?)?;
            (s.graph, body)
        }
        GenKind::Random {
            n,
            p,
            seed,
            seed_flag,
            connected,
        } => {
            let seed = seed
                .or(seed_flag)
                .ok_or_else(|| CliError::usage("random graphs need a seed"))?;
            let g = if connected {
                generators::gnp_connected_seeded(n, p, seed)?
            } else {
                generators::gnp(n, p, seed)?
            };
            let body = graph_to_json(&g);
            (g, body)
        }
        GenKind::Gadget { file } => {
            let gadget = build_gadget(&read_graph(&file)?)?;
            let body = json(&gadget.to_json())?;
            (gadget.graph, body)
        }
    };
    let mut outputs = Outputs::default();
    outputs.emit(out.out.as_deref(), body);
    if let Some(dot) = &out.dot {
        outputs.files.push((dot.clone(), to_dot(&graph)));
    }
    outputs.commit()?;
    Ok(0)
}

fn solve(
    path: PathBuf,
    mode: Mode,
    limits: &LimitArgs,
    out: Option<PathBuf>,
) -> Result<u8, CliError> {
    let g = read_graph(&path)?;
    let limits = limits.limits()?;
    let manifest = RunManifest {
        command: "solve".into(),
        inputs: vec![path],
        limits: Some((&limits).into()),
        seed: None,
        outputs: out.iter().cloned().collect(),
    };
    let (status, body) = match mode {
        Mode::Sg => {
            let s = strong_geodetic_number(&g, &limits)?;
            if let Some(w) = &s.witness {
                verify_witness(&g, w).map_err(geodetic::Error::from)?;
            }
            let report = SolveReport {
                manifest,
                mode,
                status: s.status,
                value: s.value,
                lower_bound: Some(s.lower_bound),
                witness: s.witness,
                stats: s.stats,
            };
            (s.status, json(&report)?)
        }
        Mode::Geodetic => {
            let s = geodetic_number(&g)?;
            let report = SolveReport {
                manifest,
                mode,
                status: Status::Optimal,
                value: Some(s.value),
                lower_bound: None,
                witness: Some(GeodeticWitness { set: s.set }),
                stats: (),
            };
            (Status::Optimal, json(&report)?)
        }
        Mode::Dominating => {
            g.require_connected()?;
            let s = dominating_number(&g, &limits)?;
            let report = SolveReport::<DominatingWitness, _> {
                manifest,
                mode,
                status: s.status,
                value: s.value,
                lower_bound: None,
                witness: s.witness,
                stats: DominationStats {
                    nodes_expanded: s.nodes_expanded,
                },
            };
            (s.status, json(&report)?)
        }
    };
    let mut outputs = Outputs::default();
    outputs.emit(out.as_deref(), body);
    outputs.commit()?;
    Ok(match status {
        Status::Optimal => 0,
        _ => 4,
    })
}

fn verify(graph: PathBuf, witness: PathBuf) -> Result<u8, CliError> {
    let g = read_graph(&graph)?;
    let w = read_witness(&witness)?;
    let verdict = match verify_witness(&g, &w) {
        Ok(()) => Verdict {
            valid: true,
            violation: None,
        },
        Err(v) => Verdict {
            valid: false,
            violation: Some(v.to_string()),
        },
    };
    print!("{}", json(&verdict)?);
    Ok(if verdict.valid { 0 } else { 1 })
}

fn reduce(path: PathBuf, check: bool, limits: &LimitArgs, out: OutputArgs) -> Result<u8, CliError> {
    let g = read_graph(&path)?;
    let limits = limits.limits()?;
    let gadget = build_gadget(&g)?;

    let mut outputs = Outputs::default();
    if !check || out.out.is_some() {
        outputs.emit(out.out.as_deref(), json(&gadget.to_json())?);
    }
    if let Some(dot) = &out.dot {
        outputs.files.push((dot.clone(), to_dot(&gadget.graph)));
    }
    if !check {
        outputs.commit()?;
        return Ok(0);
    }

    let report = ReduceReport {
        manifest: RunManifest {
            command: "reduce".into(),
            inputs: vec![path],
            limits: Some((&limits).into()),
            seed: None,
            outputs: outputs.paths(),
        },
        report: check_equivalence(&g, &limits)?,
    };
    let body = json(&report)?;
    if !report.report.holds() {
        print!("{body}");
        eprintln!(
            "THEOREM_VIOLATION: sg(gadget) = {}, gamma + n = {}",
            report.report.sg_gadget,
            report.report.gamma + report.report.n
        );
        return Ok(5);
    }
    outputs.stdout = Some(body);
    outputs.commit()?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Gen { kind, out } => gen(kind, out),
        Command::Solve {
            graph,
            mode,
            limits,
            out,
        } => solve(graph, mode, &limits, out),
        Command::Verify { graph, witness } => verify(graph, witness),
        Command::Reduce {
            graph,
            check,
            limits,
            out,
        } => reduce(graph, check, &limits, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
