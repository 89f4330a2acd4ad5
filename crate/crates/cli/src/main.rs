//! Command-line front end: arrowing checks, minimum-size searches, explicit
//! constructions, chorded-cycle witness hunts, isomorph-free enumeration,
//! and the full reproduction suite.
//!
//! Exit codes: 0 computed, 1 a verify-paper check failed, 2 usage or input
//! error, 3 budget refusal.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sizeramsey::arrowing::{
    arrows, arrows_generic_with_budget, ArrowError, ArrowVerdict, CertificateFile, DeletionTrace,
    MethodChoice, DEFAULT_GENERIC_EDGE_BUDGET,
};
use sizeramsey::constructions::{
    build_family, parse_family_spec, witness_search, ChordedRange, WitnessOutcome, WitnessReport,
};
use sizeramsey::enumeration::{enumerate_graphs, EnumBudget, EnumConstraints, EnumError};
use sizeramsey::graph::Graph;
use sizeramsey::graph6::{decode_graph6, encode_graph6};
use sizeramsey::patterns::Pattern;
use sizeramsey::ramsey::{size_ramsey_exact, RamseyError, TOOL_VERSION};
use sizeramsey::verify::{run_paper_checks, CheckResult};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sizeramsey",
    version,
    about = "Exact size Ramsey computations for matchings versus paths, cycles, and path unions"
)]
struct Cli {
    /// Worker threads (overrides the ARROW_THREADS environment variable;
    /// default: machine parallelism). Changes wall time only, never results.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a host arrows (tK2, H), with an optional certificate.
    Check {
        /// Host graph: inline graph6, or @path to a file of graph6 lines.
        #[arg(long)]
        graph: String,
        /// Red target, e.g. M2.
        #[arg(long)]
        left: String,
        /// Blue target pattern: `M<t>`, `P<m>`, `C<n>`, or `<n>P<m>`.
        #[arg(long)]
        right: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Write the verdicts (with colorings for negative ones) as JSON.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Edge budget for the generic search.
        #[arg(long, default_value_t = DEFAULT_GENERIC_EDGE_BUDGET)]
        budget: usize,
    },
    /// Exact minimum size of an arrowing host, by exhaustive refutation plus
    /// a verified witness.
    SearchMin {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Restrict to connected hosts.
        #[arg(long)]
        connected: bool,
        /// Largest edge count to refute exhaustively.
        #[arg(long)]
        max_edges: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build an explicit construction and emit its graph6 line.
    Construct {
        /// Family spec, e.g. fig1a:2,3 | cycle:7 | chorded:15+{(0,5),(1,10)}
        /// | compose43:t=5,m=9,base=@file.g6 | bridged43:t=5,m=9,base=@file.g6
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hunt the chorded-cycle family for an arrowing witness of a given size.
    FindWitness {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Edge count of every candidate (cycle length plus chords).
        #[arg(long)]
        size: usize,
        /// Candidate family (only chorded cycles are implemented).
        #[arg(long, default_value = "chorded")]
        family: String,
        /// Chord-count range, e.g. 1..3.
        #[arg(long)]
        chords: String,
        /// Discard candidates with a cycle shorter than this.
        #[arg(long)]
        min_girth: Option<usize>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run the reproduction suite and print one line per check.
    VerifyPaper {
        /// Sub-minute subset.
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Enumerate graphs with an exact edge count, one per isomorphism class.
    Enum {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        min_degree: Option<usize>,
        #[arg(long)]
        girth_at_least: Option<usize>,
        /// Allow edge counts past the default budget (up to the hard cap).
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Generic,
    Lemma,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> MethodChoice {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Generic => MethodChoice::Generic,
            MethodArg::Lemma => MethodChoice::Lemma,
        }
    }
}


/// Prints to stdout, exiting quietly if the consumer closed the pipe.
fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_fmt(args).and_then(|()| out.write_all(b"\n")).is_err() {
        std::process::exit(0);
    }
}

macro_rules! outln {
    ($($arg:tt)*) => { emit(format_args!($($arg)*)) };
}

enum CliError {
    Usage(String),
    Budget(String),
    ChecksFailed,
}

impl From<ArrowError> for CliError {
    fn from(e: ArrowError) -> CliError {
        match e {
            ArrowError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> CliError {
        CliError::Budget(e.to_string())
    }
}

impl From<RamseyError> for CliError {
    fn from(e: RamseyError) -> CliError {
        match e {
            RamseyError::Enum(inner) => CliError::Budget(inner.to_string()),
            RamseyError::Arrow(ArrowError::BudgetExceeded { .. }) => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .or_else(|| std::env::var("ARROW_THREADS").ok().and_then(|v| v.parse().ok()));
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::ChecksFailed) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("budget refusal: {msg}");
            ExitCode::from(3)
        }
    }
}

/// Left side of a query: `M<t>`.
fn parse_left(s: &str) -> Result<usize, CliError> {
    s.strip_prefix('M')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .ok_or_else(|| CliError::Usage(format!("left target must be M<t> with t >= 1, got {s:?}")))
}

fn parse_right(s: &str) -> Result<Pattern, CliError> {
    s.parse().map_err(|e: sizeramsey::patterns::PatternError| CliError::Usage(e.to_string()))
}

/// A graph argument: inline graph6 or `@path` to a file of graph6 lines.
fn load_graphs(arg: &str) -> Result<Vec<Graph>, CliError> {
    let texts: Vec<String> = if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::to_string)
            .collect()
    } else {
        vec![arg.to_string()]
    };
    if texts.is_empty() {
        return Err(CliError::Usage("no graphs in input".to_string()));
    }
    texts
        .iter()
        .map(|t| decode_graph6(t).map_err(|e| CliError::Usage(format!("{t:?}: {e}"))))
        .collect()
}

fn resolve_graph_ref(s: &str) -> Result<Graph, String> {
    if let Some(path) = s.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
        let line = text.lines().map(str::trim).find(|l| !l.is_empty()).ok_or("empty graph file")?;
        decode_graph6(line).map_err(|e| e.to_string())
    } else {
        decode_graph6(s).map_err(|e| e.to_string())
    }
}

fn write_json<T: Serialize>(path: &PathBuf, value: &T) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Usage(format!("serialization failed: {e}")))?;
    std::fs::write(path, json + "\n")
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn write_lines(out: Option<&PathBuf>, lines: &[String]) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, lines.join("\n") + "\n")
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            for line in lines {
                let _ = writeln!(handle, "{line}");
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct CheckOutput {
    host: String,
    t: usize,
    pattern: String,
    arrows: bool,
    method: sizeramsey::arrowing::Method,
    trace: Option<DeletionTrace>,
    certificate: Option<CertificateFile>,
}

#[derive(Serialize)]
struct CheckReport {
    tool_version: String,
    results: Vec<CheckOutput>,
}

#[derive(Serialize)]
struct FindWitnessReport {
    tool_version: String,
    t: usize,
    pattern: String,
    min_girth: Option<usize>,
    report: WitnessReport,
}

#[derive(Serialize)]
struct VerifyReport {
    tool_version: String,
    quick: bool,
    all_passed: bool,
    checks: Vec<CheckResult>,
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Check { graph, left, right, method, certificate, budget } => {
            let t = parse_left(&left)?;
            let h = parse_right(&right)?;
            let hosts = load_graphs(&graph)?;
            let mut outputs = Vec::with_capacity(hosts.len());
            for f in &hosts {
                let verdict: ArrowVerdict = match MethodChoice::from(method) {
                    MethodChoice::Generic => arrows_generic_with_budget(f, t, &h, budget)?,
                    choice => arrows(f, t, &h, choice)?,
                };
                outln!(
                    "{} arrows ({}K2,{}): {} method={:?}{}",
                    encode_graph6(f),
                    t,
                    h,
                    verdict.arrows,
                    verdict.method,
                    match &verdict.trace {
                        Some(tr) => format!(" trace={tr:?}"),
                        None => String::new(),
                    }
                );
                outputs.push(CheckOutput {
                    host: encode_graph6(f),
                    t,
                    pattern: h.to_string(),
                    arrows: verdict.arrows,
                    method: verdict.method,
                    trace: verdict.trace,
                    certificate: verdict.certificate.as_ref().map(|c| CertificateFile::new(t, &h, c)),
                });
            }
            if let Some(path) = certificate {
                write_json(
                    &path,
                    &CheckReport { tool_version: TOOL_VERSION.to_string(), results: outputs },
                )?;
            }
            Ok(())
        }
        Command::SearchMin { left, right, connected, max_edges, report } => {
            let t = parse_left(&left)?;
            let h = parse_right(&right)?;
            let result = size_ramsey_exact(t, &h, connected, max_edges)?;
            match &result.conclusion {
                sizeramsey::ramsey::Conclusion::Exact { value } => {
                    let witness = result.witness.as_ref().expect("exact implies witness");
                    outln!("exact {value}: witness {} ({})", witness.graph6, witness.source);
                }
                sizeramsey::ramsey::Conclusion::Bounded { lower, upper, .. } => match upper {
                    Some(u) => outln!("bounded: {lower} <= value <= {u} (budget exhausted)"),
                    None => outln!("bounded: value >= {lower} (budget exhausted, no witness)"),
                },
            }
            for scan in &result.per_size {
                outln!(
                    "  size {}: {} graphs, all admit colorings ({} certificates)",
                    scan.edges, scan.scanned, scan.certificates_issued
                );
            }
            if let Some(path) = report {
                write_json(&path, &result)?;
            }
            Ok(())
        }
        Command::Construct { family, out } => {
            let spec = parse_family_spec(&family, &resolve_graph_ref)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let g = build_family(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
            eprintln!("built {}: {} vertices, {} edges", family, g.order(), g.edge_count());
            write_lines(out.as_ref(), &[encode_graph6(&g)])
        }
        Command::FindWitness { left, right, size, family, chords, min_girth, report } => {
            if family != "chorded" {
                return Err(CliError::Usage(format!(
                    "unknown witness family {family:?} (available: chorded)"
                )));
            }
            let t = parse_left(&left)?;
            let h = parse_right(&right)?;
            let (lo, hi) = chords
                .split_once("..")
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .ok_or_else(|| {
                    CliError::Usage(format!("chords must be a range like 1..3, got {chords:?}"))
                })?;
            let checker = move |g: &Graph| {
                if let Some(girth) = min_girth {
                    if !g.girth().at_least(girth) {
                        return None;
                    }
                }
                match arrows(g, t, &h, MethodChoice::Auto) {
                    Ok(v) if v.arrows => Some(v),
                    _ => None,
                }
            };
            let result: WitnessReport =
                witness_search(ChordedRange { size, min_chords: lo, max_chords: hi }, &checker)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
            match &result.outcome {
                WitnessOutcome::Found { graph, verdict } => {
                    outln!(
                        "witness {} ({} edges, method {:?})",
                        encode_graph6(graph),
                        graph.edge_count(),
                        verdict.method
                    );
                }
                WitnessOutcome::FamilyExhausted => {
                    let scanned: usize = result.scans.iter().map(|s| s.placements).sum();
                    outln!("family exhausted: no witness among {scanned} placements");
                }
            }
            for scan in &result.scans {
                outln!(
                    "  cycle {} + {} chords: {}/{} placements scanned, witness={}",
                    scan.cycle_len, scan.chord_count, scan.scanned, scan.placements, scan.witness_found
                );
            }
            if let Some(path) = report {
                write_json(
                    &path,
                    &FindWitnessReport {
                        tool_version: TOOL_VERSION.to_string(),
                        t,
                        pattern: h.to_string(),
                        min_girth,
                        report: result,
                    },
                )?;
            }
            Ok(())
        }
        Command::VerifyPaper { quick, report } => {
            let checks = run_paper_checks(quick);
            let all_passed = checks.iter().all(|c| c.passed);
            for check in &checks {
                outln!("{}", check.line());
            }
            outln!(
                "{}: {}/{} checks passed",
                if all_passed { "OK" } else { "FAILURE" },
                checks.iter().filter(|c| c.passed).count(),
                checks.len()
            );
            if let Some(path) = report {
                write_json(
                    &path,
                    &VerifyReport {
                        tool_version: TOOL_VERSION.to_string(),
                        quick,
                        all_passed,
                        checks,
                    },
                )?;
            }
            if all_passed {
                Ok(())
            } else {
                Err(CliError::ChecksFailed)
            }
        }
        Command::Enum { edges, connected, min_degree, girth_at_least, extended, out } => {
            let mut constraints = EnumConstraints::exact_edges(edges).connected(connected);
            if let Some(d) = min_degree {
                constraints = constraints.min_degree(d);
            }
            if let Some(g) = girth_at_least {
                constraints = constraints.girth_at_least(g);
            }
            let budget = if extended { EnumBudget::Extended } else { EnumBudget::Default };
            let graphs = enumerate_graphs(&constraints, budget)?;
            eprintln!("{} graphs with constraints {constraints:?}", graphs.len());
            let lines: Vec<String> = graphs.iter().map(encode_graph6).collect();
            write_lines(out.as_ref(), &lines)
        }
    }
}
