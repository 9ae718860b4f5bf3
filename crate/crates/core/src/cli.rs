//! Command-line interface.
//!
//! Exit codes: `decide` returns 0 when every input arrows and 1 when some
//! input does not; `verify-fixtures` returns 1 when a check fails; `search`
//! returns 3 when its time budget or chunk limit stops it early. Errors
//! return 2 everywhere. Results go to standard output and diagnostics to
//! standard error.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arrowing::{self, Mode};
use crate::canon::canonical_form;
use crate::fixtures;
use crate::generator::{AnyGraph, C4Free, GenSpec, Generator, Hereditary};
use crate::graph::Graph;
use crate::graph6::{self, OnError};
use crate::search::{self, SearchError, SearchOptions, Source};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_ERROR: u8 = 2;
pub const EXIT_INTERRUPTED: u8 = 3;

/// Orders above this need `--ingest` or `--force-gen` for `search`.
pub const GENERATOR_DEFAULT_MAX_ORDER: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "p3cn", version, about = "Decide and search for graphs F with F -> (P3, C_n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide F -> (P3, C_n) for graph6 input; prints a red matching when it fails.
    Decide(DecideArgs),
    /// Compute r*(P3, C_n) and its witnesses.
    Search(SearchArgs),
    /// Generate non-isomorphic graphs as graph6.
    Gen(GenArgs),
    /// Check the built-in fixtures and known results.
    VerifyFixtures(VerifyArgs),
    /// ex(n, C4) and its extremal graphs.
    Turan(TuranArgs),
    /// Canonical graph6 form of each input graph.
    Canon(CanonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Complete,
    Window,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Complete => Mode::Complete,
            ModeArg::Window => Mode::Window,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Cycle,
    Path,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    /// A graph6 string. Omit to read `--input` or standard input.
    pub graph6: Option<String>,
    /// File of graph6 lines.
    #[arg(long, conflicts_with = "graph6")]
    pub input: Option<PathBuf>,
    /// Cycle length; defaults to the order of each graph.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value = "complete")]
    pub mode: ModeArg,
    /// Blue target: Hamiltonian cycle or path (path always uses complete mode).
    #[arg(long, value_enum, default_value = "cycle")]
    pub target: TargetArg,
    /// Print the first failing maximal matching without shrinking it.
    #[arg(long)]
    pub no_minimize: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "complete")]
    pub mode: ModeArg,
    /// graph6 candidates; `{m}` in the path is replaced by the edge count.
    #[arg(long)]
    pub ingest: Option<String>,
    /// Use the built-in generator even for large orders.
    #[arg(long, conflicts_with = "ingest")]
    pub force_gen: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Wall-clock budget such as `90s`, `30m` or `4h`.
    #[arg(long, value_parser = humantime::parse_duration)]
    pub budget: Option<Duration>,
    /// Append finished chunks here and skip them on the next run.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Stop after dispatching this many chunks.
    #[arg(long)]
    pub max_chunks: Option<usize>,
    /// Highest edge count to try.
    #[arg(long)]
    pub max_edges: Option<usize>,
    /// Decide every candidate in both modes and report disagreements.
    #[arg(long)]
    pub cross_check: bool,
    /// Report file (JSON lines); standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the witnesses as graph6.
    #[arg(long)]
    pub witnesses: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub min_deg: usize,
    #[arg(long)]
    pub biconnected: bool,
    /// Only C4-free graphs.
    #[arg(long)]
    pub c4_free: bool,
    /// Print the number of graphs instead of the graphs.
    #[arg(long)]
    pub count: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// Every named graph against its expectations.
    Fixtures,
    /// ex(7, C4) = 9 with the five drawn extremal graphs.
    Turan,
    /// The independent-set certificate on every 12-edge graph of order 7
    /// whose complement has a C4.
    IndependentSet,
    /// No candidate of order 7 with 12 edges arrows.
    SmallScan,
    /// F_n and its path variant over `--n`.
    Construction,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only these checks.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub only: Vec<Check>,
    /// Orders for the construction check, as `a..b` or `a..=b` (inclusive either way).
    #[arg(long, default_value = "12..20", value_parser = parse_range)]
    pub n: RangeInclusive<usize>,
    /// Write the fixture graphs as graph6 here.
    #[arg(long, requires = "export_manifest")]
    pub export_graphs: Option<PathBuf>,
    /// Write the fixture manifest (JSON lines) here.
    #[arg(long, requires = "export_graphs")]
    pub export_manifest: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TuranArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct CanonArgs {
    /// graph6 strings; standard input when none are given.
    pub graph6: Vec<String>,
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected a..b, got {s:?}");
    if let Ok(v) = s.parse::<usize>() {
        return Ok(v..=v);
    }
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a = a.parse().map_err(|_| bad())?;
    let b = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

/// Runs a parsed command and returns its exit code.
pub fn run(cli: Cli) -> u8 {
    let result = match cli.command {
        Command::Decide(a) => decide(a),
        Command::Search(a) => search_cmd(a),
        Command::Gen(a) => gen(a),
        Command::VerifyFixtures(a) => verify(a),
        Command::Turan(a) => turan(a),
        Command::Canon(a) => canon(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn parse_one(text: &str) -> Result<Graph> {
    graph6::parse_graph6(text.trim().as_bytes())
        .map_err(|e| anyhow!("malformed graph6 at byte offset {}: {e}", e.offset()))
}

/// Graphs from an explicit list, a file, or standard input.
fn read_graphs(items: &[String], input: Option<&PathBuf>) -> Result<Vec<Graph>> {
    if !items.is_empty() {
        return items.iter().map(|s| parse_one(s)).collect();
    }
    let reader: Box<dyn BufRead> = match input {
        Some(p) => Box::new(BufReader::new(File::open(p).with_context(|| format!("opening {}", p.display()))?)),
        None => Box::new(io::stdin().lock()),
    };
    graph6::stream_graphs(reader, OnError::Abort)
        .map(|r| {
            r.map_err(|e| match e {
                graph6::StreamError::Parse { line, source } => {
                    anyhow!("malformed graph6 on line {line} at byte offset {}: {source}", source.offset())
                }
                other => anyhow!(other),
            })
        })
        .collect()
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn decide(a: DecideArgs) -> Result<u8> {
    let graphs = read_graphs(a.graph6.as_slice(), a.input.as_ref())?;
    if graphs.is_empty() {
        bail!("no input graphs");
    }
    let mut out = output(None)?;
    let mut all_arrow = true;
    for g in &graphs {
        let n = a.n.unwrap_or(g.order());
        let verdict = match a.target {
            TargetArg::Cycle => arrowing::decide_arrowing_cycle(g, n, a.mode.into())?,
            TargetArg::Path => arrowing::decide_arrowing_path(g, n)?,
        };
        if graphs.len() > 1 {
            write!(out, "{} ", graph6::write_graph6(g))?;
        }
        if verdict.arrows {
            writeln!(out, "arrows")?;
            continue;
        }
        all_arrow = false;
        writeln!(out, "does not arrow")?;
        let mut cert = verdict.certificate.expect("a failing decision carries a certificate");
        if !a.no_minimize && a.target == TargetArg::Cycle {
            cert = arrowing::minimize_certificate(g, &cert);
        }
        writeln!(out, "certificate {}", cert.to_line(g))?;
    }
    out.flush()?;
    Ok(if all_arrow { EXIT_OK } else { EXIT_NEGATIVE })
}

fn search_cmd(a: SearchArgs) -> Result<u8> {
    let source = match (&a.ingest, a.force_gen) {
        (Some(p), _) => Source::Ingest(p.clone()),
        (None, true) => Source::Generator,
        (None, false) if a.n > GENERATOR_DEFAULT_MAX_ORDER => bail!(
            "order {} needs --ingest <graph6 file> (or --force-gen to run the built-in generator)",
            a.n
        ),
        (None, false) => Source::Generator,
    };
    let workers = match a.workers {
        Some(0) => bail!("--workers must be at least 1"),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |p| p.get()),
    };
    let opts = SearchOptions {
        mode: a.mode.into(),
        source,
        workers,
        budget: a.budget,
        checkpoint: a.checkpoint,
        max_chunks: a.max_chunks,
        cross_check: a.cross_check,
        max_edges: a.max_edges,
        progress: true,
    };
    let report = match search::compute_r_star(a.n, &opts) {
        Ok(r) => r,
        Err(e @ SearchError::BudgetExhausted { .. }) => {
            eprintln!("stopped: {e}");
            return Ok(EXIT_INTERRUPTED);
        }
        Err(e) => return Err(e.into()),
    };
    eprintln!("r*(P3, C{}) = {} with {} witness classes", report.n, report.r_star, report.witness_count);
    for s in &report.per_m {
        for g in &s.mode_disagreements {
            eprintln!("modes disagree at m={}: {g}", s.m);
        }
    }
    let mut out = output(a.out.as_ref())?;
    search::write_report(&report, &mut out)?;
    out.flush()?;
    if let Some(p) = &a.witnesses {
        let mut w = output(Some(p))?;
        search::write_witnesses(&report, &mut w)?;
        w.flush()?;
    }
    Ok(EXIT_OK)
}

fn gen(a: GenArgs) -> Result<u8> {
    let spec = GenSpec { order: a.n, edges: a.m, min_degree: a.min_deg, require_biconnected: a.biconnected };
    if let Some(why) = spec.diagnose() {
        eprintln!("no graphs: {why}");
        return Ok(EXIT_OK);
    }
    if a.c4_free {
        emit(Generator::with_filter(spec, C4Free), &a)
    } else {
        emit(Generator::with_filter(spec, AnyGraph), &a)
    }
}

fn emit<H: Hereditary>(gen: Generator<H>, a: &GenArgs) -> Result<u8> {
    let mut out = output(a.out.as_ref())?;
    let mut count = 0u64;
    let mut failure = None;
    gen.for_each(|g| {
        count += 1;
        if !a.count && failure.is_none() {
            failure = writeln!(out, "{}", graph6::write_graph6(g)).err();
        }
    });
    if let Some(e) = failure {
        return Err(e.into());
    }
    if a.count {
        writeln!(out, "{count}")?;
    }
    out.flush()?;
    eprintln!("{count} graphs");
    Ok(EXIT_OK)
}

fn verify(a: VerifyArgs) -> Result<u8> {
    let all = [Check::Fixtures, Check::Turan, Check::IndependentSet, Check::SmallScan, Check::Construction];
    let checks: Vec<Check> = if a.only.is_empty() { all.to_vec() } else { a.only.clone() };
    let mut failed = 0;
    let mut report = |ok: bool, line: String| {
        println!("{} {line}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed += 1;
        }
    };
    for check in checks {
        match check {
            Check::Fixtures => {
                for o in fixtures::all_fixtures().iter().flat_map(|f| f.check()) {
                    let detail = o.failure.as_ref().map(|w| format!(" ({w})")).unwrap_or_default();
                    report(o.passed(), format!("{}: {}{detail}", o.fixture, o.expectation));
                }
            }
            Check::Turan => {
                let (ex, graphs) = fixtures::turan_ex(7)?;
                let drawn: Vec<Graph> =
                    ["G1", "G2", "G3", "G4", "G5"].iter().map(|n| fixtures::build_named(n)).collect::<Result<_, _>>()?;
                let same = fixtures::same_classes(&graphs, &drawn);
                report(
                    ex == 9 && graphs.len() == 5 && same,
                    format!("ex(7,C4)={ex}, {} extremal, match G1..G5: {same}", graphs.len()),
                );
            }
            Check::IndependentSet => {
                let mut checked = 0;
                let mut bad = Vec::new();
                for g in crate::generator::generate(GenSpec::all(7, 12)) {
                    if g.complement().contains_c4() {
                        checked += 1;
                        if let Err(e) = fixtures::verify_lemma1(&g) {
                            bad.push(e.to_string());
                        }
                    }
                }
                report(
                    bad.is_empty() && checked > 0,
                    format!("independent-set certificate on {checked} graphs of order 7 with 12 edges {bad:?}"),
                );
            }
            Check::SmallScan => {
                let candidates = crate::generator::generate(GenSpec::candidates(7, 12));
                let arrows = candidates.iter().filter(|g| arrowing::arrows_cycle(g, Mode::Complete)).count();
                report(arrows == 0, format!("{} candidates of order 7 with 12 edges, {arrows} arrow", candidates.len()));
            }
            Check::Construction => {
                for n in a.n.clone().filter(|n| n % 2 == 0) {
                    let g = fixtures::build_fn_even(n)?;
                    let cycle = arrowing::decide_arrowing_cycle(&g, n, Mode::Complete)?.arrows;
                    report(
                        g.edge_count() == 2 * n - 2 && cycle,
                        format!("F_{n}: {} edges, arrows (P3, C{n}): {cycle}", g.edge_count()),
                    );
                    let p = fixtures::build_fn_even_path(n)?;
                    let path = arrowing::decide_arrowing_path(&p, n)?.arrows;
                    report(
                        p.edge_count() == 2 * n - 3 && path,
                        format!("F_{n} - xu3: {} edges, arrows (P3, P{n}): {path}", p.edge_count()),
                    );
                }
            }
        }
    }
    if let (Some(g), Some(m)) = (&a.export_graphs, &a.export_manifest) {
        let mut gw = output(Some(g))?;
        let mut mw = output(Some(m))?;
        fixtures::export(&fixtures::all_fixtures(), &mut gw, &mut mw)?;
        gw.flush()?;
        mw.flush()?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_NEGATIVE })
}

fn turan(a: TuranArgs) -> Result<u8> {
    let (ex, graphs) = fixtures::turan_ex(a.n)?;
    eprintln!("ex({}, C4) = {ex} with {} extremal classes", a.n, graphs.len());
    let mut out = output(None)?;
    for g in &graphs {
        writeln!(out, "{}", graph6::write_graph6(g))?;
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn canon(a: CanonArgs) -> Result<u8> {
    let graphs = read_graphs(&a.graph6, None)?;
    let mut out = output(None)?;
    for g in &graphs {
        writeln!(out, "{}", canonical_form(g))?;
    }
    out.flush()?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("12..20"), Ok(12..=20));
        assert_eq!(parse_range("12..=14"), Ok(12..=14));
        assert_eq!(parse_range("16"), Ok(16..=16));
        assert!(parse_range("20..12").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from(["p3cn", "search", "--n", "12", "--ingest", "c{m}.g6", "--budget", "4h"]).unwrap();
        match cli.command {
            Command::Search(s) => {
                assert_eq!(s.budget, Some(Duration::from_secs(4 * 3600)));
                assert_eq!(s.ingest.as_deref(), Some("c{m}.g6"));
            }
            other => panic!("{other:?}"),
        }
        assert!(Cli::try_parse_from(["p3cn", "search", "--n", "12", "--ingest", "x", "--force-gen"]).is_err());
        let v = Cli::try_parse_from(["p3cn", "verify-fixtures", "--only", "construction,turan", "--n", "12..14"]).unwrap();
        match v.command {
            Command::VerifyFixtures(v) => {
                assert_eq!(v.only, vec![Check::Construction, Check::Turan]);
                assert_eq!(v.n, 12..=14);
            }
            other => panic!("{other:?}"),
        }
    }
}
