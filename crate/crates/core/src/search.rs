//! Exhaustive computation of `r*(P3, C_n)`.
//!
//! Edge counts are scanned upward from [`lower_bound`]. At each count every
//! biconnected graph with minimum degree 3 is decided, and the scan stops at
//! the first count with a witness after finishing that count, so the report
//! carries every witness class. Graphs outside that candidate set cannot
//! arrow (see [`arrowing::necessary_conditions`]).
//!
//! Work at one edge count is cut into chunks with stable indices: subtrees
//! of the generator below a fixed split, or fixed-size blocks of an
//! ingested graph6 file. Chunk results are merged in index order, so the
//! report does not depend on the worker count. With a checkpoint file every
//! finished chunk is appended as one JSON line and skipped on resume.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrowing::{self, Mode};
use crate::canon::{canonical_form, CanonicalForm};
use crate::generator::{GenSpec, Generator};
use crate::graph::Graph;
use crate::graph6::{self, OnError};

pub const MIN_ORDER: usize = 4;
pub const MAX_ORDER: usize = 13;
/// Generator subtrees per edge count, before rounding up to a full level.
pub const SPLIT_TARGET: usize = 256;
/// Ingested graphs per chunk.
pub const INGEST_BLOCK: usize = 16_384;

const REPORT_FORMAT: &str = "p3cn-search-report";
const CHECKPOINT_FORMAT: &str = "p3cn-search-checkpoint";
const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("order {0} is outside the supported range {MIN_ORDER}..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("no witness with at most {max_edges} edges")]
    CapExceeded { max_edges: usize },
    #[error("time budget exhausted at m = {m} after {done} of {total} chunks; resume from the checkpoint")]
    BudgetExhausted { m: usize, done: usize, total: usize },
    #[error("candidate file {path}: {source}")]
    Ingest { path: PathBuf, source: io::Error },
    #[error("candidate file {path} line {line}: {message}")]
    BadCandidate { path: PathBuf, line: usize, message: String },
    #[error("checkpoint {path}: {message}")]
    Checkpoint { path: PathBuf, message: String },
    #[error("report: {0}")]
    Report(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Where candidates come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    /// The in-process isomorph-free generator.
    Generator,
    /// graph6 files. A `{m}` in the path is replaced by the edge count;
    /// otherwise the one file is read at every edge count and filtered.
    Ingest(String),
}

impl Source {
    pub fn name(&self) -> &'static str {
        match self {
            Source::Generator => "generator",
            Source::Ingest(_) => "ingest",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub mode: Mode,
    pub source: Source,
    pub workers: usize,
    /// Stop dispatching chunks once this much wall time has passed.
    pub budget: Option<Duration>,
    pub checkpoint: Option<PathBuf>,
    /// Stop dispatching after this many chunks in this run. Makes an
    /// interrupted run reproducible.
    pub max_chunks: Option<usize>,
    /// Also decide each candidate in the other mode and record disagreements.
    pub cross_check: bool,
    /// Highest edge count to try.
    pub max_edges: Option<usize>,
    /// Per-edge-count progress lines on standard error.
    pub progress: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: Mode::Complete,
            source: Source::Generator,
            workers: 1,
            budget: None,
            checkpoint: None,
            max_chunks: None,
            cross_check: false,
            max_edges: None,
            progress: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanStats {
    pub m: usize,
    pub candidates: u64,
    pub arrows: u64,
    pub seconds: f64,
    /// Chunks taken from the checkpoint rather than recomputed.
    pub resumed_chunks: usize,
    /// graph6 of candidates where the two modes disagree (cross-check only).
    pub mode_disagreements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub n: usize,
    pub r_star: usize,
    pub witness_count: usize,
    /// Canonical graph6 forms, sorted.
    pub witnesses: Vec<String>,
    pub per_m: Vec<ScanStats>,
    pub mode: Mode,
    pub source: String,
    pub cross_checked: bool,
}

impl SearchReport {
    /// Copy with timing fields zeroed, for comparing runs.
    pub fn without_timings(&self) -> SearchReport {
        let mut r = self.clone();
        for s in &mut r.per_m {
            s.seconds = 0.0;
            s.resumed_chunks = 0;
        }
        r
    }
}

/// Start of the scan: at least `ceil(3n/2)` edges for minimum degree 3,
/// and `3n/2 + 2` for even `n >= 8`.
pub fn lower_bound(n: usize) -> usize {
    let degree_bound = (3 * n).div_ceil(2);
    if n.is_multiple_of(2) && n >= 8 {
        degree_bound.max(3 * n / 2 + 2)
    } else {
        degree_bound
    }
}

#[derive(Debug, Default, Clone, Serialize, Deserialize)]
struct ChunkResult {
    candidates: u64,
    witnesses: Vec<String>,
    disagreements: Vec<String>,
}

fn decide_candidate(g: &Graph, opts: &SearchOptions, out: &mut ChunkResult) {
    out.candidates += 1;
    let arrows = arrowing::arrows_cycle(g, opts.mode);
    if opts.cross_check {
        let other = match opts.mode {
            Mode::Complete => Mode::Window,
            Mode::Window => Mode::Complete,
        };
        if arrowing::arrows_cycle(g, other) != arrows {
            out.disagreements.push(graph6::write_graph6(g));
        }
    }
    if arrows {
        out.witnesses.push(canonical_form(g).as_str().to_string());
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum CheckpointRecord {
    Header { format: String, version: u32, n: usize, mode: String, source: String, chunk_size: usize, cross_check: bool },
    Chunk { m: usize, chunk: usize, result: ChunkResult },
}

struct Checkpoint {
    path: PathBuf,
    done: BTreeMap<(usize, usize), ChunkResult>,
    writer: Mutex<BufWriter<File>>,
}

impl Checkpoint {
    fn open(path: &Path, n: usize, opts: &SearchOptions) -> Result<Checkpoint, SearchError> {
        let header = CheckpointRecord::Header {
            format: CHECKPOINT_FORMAT.into(),
            version: FORMAT_VERSION,
            n,
            mode: opts.mode.name().into(),
            source: opts.source.name().into(),
            chunk_size: match opts.source {
                Source::Generator => SPLIT_TARGET,
                Source::Ingest(_) => INGEST_BLOCK,
            },
            cross_check: opts.cross_check,
        };
        let bad = |message: String| SearchError::Checkpoint { path: path.to_path_buf(), message };
        let mut done = BTreeMap::new();
        let fresh = !path.exists() || fs::metadata(path)?.len() == 0;
        if !fresh {
            let expected = serde_json::to_string(&header).expect("serializable");
            let mut lines = BufReader::new(File::open(path)?).lines();
            let first = lines.next().transpose()?.unwrap_or_default();
            if first != expected {
                return Err(bad(format!("header {first} does not match this run ({expected})")));
            }
            for line in lines {
                let line = line?;
                // A torn final line from a killed run is dropped; that chunk reruns.
                match serde_json::from_str(&line) {
                    Ok(CheckpointRecord::Chunk { m, chunk, result }) => {
                        done.insert((m, chunk), result);
                    }
                    Ok(CheckpointRecord::Header { .. }) => return Err(bad("repeated header".into())),
                    Err(_) => {}
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        let mut writer = BufWriter::new(file);
        if fresh {
            serde_json::to_writer(&mut writer, &header).map_err(io::Error::from)?;
            writeln!(writer)?;
            writer.flush()?;
        } else {
            // Start on a fresh line in case the last one was torn.
            writeln!(writer)?;
        }
        Ok(Checkpoint { path: path.to_path_buf(), done, writer: Mutex::new(writer) })
    }

    fn record(&self, m: usize, chunk: usize, result: &ChunkResult) -> Result<(), SearchError> {
        let rec = CheckpointRecord::Chunk { m, chunk, result: result.clone() };
        let mut w = self.writer.lock().expect("checkpoint writer poisoned");
        let io = |e: io::Error| SearchError::Checkpoint { path: self.path.clone(), message: e.to_string() };
        serde_json::to_writer(&mut *w, &rec).map_err(|e| io(e.into()))?;
        writeln!(w).map_err(io)?;
        w.flush().map_err(io)
    }
}

/// Shared per-run state consulted before each chunk is started.
struct Dispatch {
    deadline: Option<Instant>,
    max_chunks: Option<usize>,
    started: AtomicUsize,
}

impl Dispatch {
    fn may_start(&self) -> bool {
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            return false;
        }
        match self.max_chunks {
            Some(limit) => self.started.fetch_add(1, Ordering::SeqCst) < limit,
            None => true,
        }
    }
}

/// Outcome of one chunk: recomputed, reused from the checkpoint, or skipped.
enum Slot {
    Fresh(ChunkResult),
    Resumed(ChunkResult),
    Skipped,
}

struct Run<'a> {
    n: usize,
    opts: &'a SearchOptions,
    checkpoint: Option<Checkpoint>,
    dispatch: Dispatch,
}

impl Run<'_> {
    fn run_chunk(&self, m: usize, index: usize, work: impl FnOnce(&mut ChunkResult)) -> Result<Slot, SearchError> {
        if let Some(prev) = self.checkpoint.as_ref().and_then(|c| c.done.get(&(m, index))) {
            return Ok(Slot::Resumed(prev.clone()));
        }
        if !self.dispatch.may_start() {
            return Ok(Slot::Skipped);
        }
        let mut result = ChunkResult::default();
        work(&mut result);
        if let Some(c) = &self.checkpoint {
            c.record(m, index, &result)?;
        }
        Ok(Slot::Fresh(result))
    }

    fn scan_generator(&self, m: usize) -> Result<Vec<Slot>, SearchError> {
        let gen = Generator::new(GenSpec::candidates(self.n, m));
        let (level, nodes) = gen.split(SPLIT_TARGET);
        nodes
            .into_par_iter()
            .enumerate()
            .map(|(i, node)| {
                self.run_chunk(m, i, |out| gen.for_each_below(node, level, |g| decide_candidate(g, self.opts, out)))
            })
            .collect()
    }

    fn scan_ingest(&self, m: usize, pattern: &str) -> Result<Vec<Slot>, SearchError> {
        let path = PathBuf::from(pattern.replace("{m}", &m.to_string()));
        let file = File::open(&path).map_err(|source| SearchError::Ingest { path: path.clone(), source })?;
        let mut reader = graph6::stream_graphs(BufReader::new(file), OnError::Abort);
        let mut slots = Vec::new();
        let batch_blocks = self.opts.workers.max(1) * 4;
        loop {
            let mut blocks: Vec<Vec<Graph>> = Vec::new();
            while blocks.len() < batch_blocks {
                let mut block = Vec::with_capacity(INGEST_BLOCK);
                while block.len() < INGEST_BLOCK {
                    let Some(item) = reader.next() else { break };
                    let g = item.map_err(|e| match e {
                        graph6::StreamError::Io { source, .. } => SearchError::Ingest { path: path.clone(), source },
                        graph6::StreamError::Parse { line, source } => {
                            SearchError::BadCandidate { path: path.clone(), line, message: source.to_string() }
                        }
                    })?;
                    if g.order() != self.n {
                        return Err(SearchError::BadCandidate {
                            path: path.clone(),
                            line: reader.line_number(),
                            message: format!("graph has order {}, expected {}", g.order(), self.n),
                        });
                    }
                    block.push(g);
                }
                if block.is_empty() {
                    break;
                }
                blocks.push(block);
            }
            if blocks.is_empty() {
                return Ok(slots);
            }
            let base = slots.len();
            let batch: Vec<Slot> = blocks
                .into_par_iter()
                .enumerate()
                .map(|(i, block)| {
                    self.run_chunk(m, base + i, |out| {
                        for g in block.iter().filter(|g| g.edge_count() == m && arrowing::necessary_conditions(g)) {
                            decide_candidate(g, self.opts, out);
                        }
                    })
                })
                .collect::<Result<_, _>>()?;
            slots.extend(batch);
        }
    }

    fn scan(&self, m: usize) -> Result<(ScanStats, BTreeSet<String>), SearchError> {
        let start = Instant::now();
        let slots = match &self.opts.source {
            Source::Generator => self.scan_generator(m)?,
            Source::Ingest(pattern) => self.scan_ingest(m, pattern)?,
        };
        let total = slots.len();
        let mut stats = ScanStats {
            m,
            candidates: 0,
            arrows: 0,
            seconds: 0.0,
            resumed_chunks: 0,
            mode_disagreements: Vec::new(),
        };
        let mut witnesses = BTreeSet::new();
        let mut done = 0;
        for slot in slots {
            let result = match slot {
                Slot::Fresh(r) => r,
                Slot::Resumed(r) => {
                    stats.resumed_chunks += 1;
                    r
                }
                Slot::Skipped => continue,
            };
            done += 1;
            stats.candidates += result.candidates;
            stats.arrows += result.witnesses.len() as u64;
            witnesses.extend(result.witnesses);
            stats.mode_disagreements.extend(result.disagreements);
        }
        if done < total {
            return Err(SearchError::BudgetExhausted { m, done, total });
        }
        stats.seconds = start.elapsed().as_secs_f64();
        Ok((stats, witnesses))
    }
}

/// Scans edge counts upward from [`lower_bound`] until one has a witness.
pub fn compute_r_star(n: usize, opts: &SearchOptions) -> Result<SearchReport, SearchError> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&n) {
        return Err(SearchError::OrderOutOfRange(n));
    }
    let checkpoint = opts.checkpoint.as_deref().map(|p| Checkpoint::open(p, n, opts)).transpose()?;
    let run = Run {
        n,
        opts,
        checkpoint,
        dispatch: Dispatch {
            deadline: opts.budget.map(|b| Instant::now() + b),
            max_chunks: opts.max_chunks,
            started: AtomicUsize::new(0),
        },
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| io::Error::other(e.to_string()))?;
    let max_edges = opts.max_edges.unwrap_or(n * (n - 1) / 2).min(n * (n - 1) / 2);
    let mut per_m = Vec::new();
    for m in lower_bound(n)..=max_edges {
        let (stats, witnesses) = pool.install(|| run.scan(m))?;
        if opts.progress {
            eprintln!(
                "n={n} m={m} candidates={} arrows={} resumed_chunks={} {:.2}s",
                stats.candidates, stats.arrows, stats.resumed_chunks, stats.seconds
            );
        }
        per_m.push(stats);
        if !witnesses.is_empty() {
            return Ok(SearchReport {
                n,
                r_star: m,
                witness_count: witnesses.len(),
                witnesses: witnesses.into_iter().collect(),
                per_m,
                mode: opts.mode,
                source: opts.source.name().into(),
                cross_checked: opts.cross_check,
            });
        }
    }
    Err(SearchError::CapExceeded { max_edges })
}

/// A way in which a report fails to re-verify.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Discrepancy {
    #[error("witness {0:?} is not valid graph6")]
    Unparsable(String),
    #[error("witness {graph6} has order {order}, expected {n}")]
    WrongOrder { graph6: String, order: usize, n: usize },
    #[error("witness {graph6} has {edges} edges, expected {r_star}")]
    WrongSize { graph6: String, edges: usize, r_star: usize },
    #[error("duplicate class: {0} repeats an earlier witness")]
    DuplicateClass(String),
    #[error("witness {0} does not arrow")]
    NotArrowing(String),
    #[error("witness_count is {claimed} but {found} distinct classes are listed")]
    CountMismatch { claimed: usize, found: usize },
    #[error("scan statistics are inconsistent: {0}")]
    Stats(String),
}

/// Re-decides every witness in complete mode, re-deduplicates by canonical
/// form and checks the counts. An empty result means the report holds up.
pub fn verify_report(report: &SearchReport) -> Vec<Discrepancy> {
    let mut found = Vec::new();
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    for w in &report.witnesses {
        let g = match graph6::parse_graph6(w.as_bytes()) {
            Ok(g) => g,
            Err(_) => {
                found.push(Discrepancy::Unparsable(w.clone()));
                continue;
            }
        };
        if g.order() != report.n {
            found.push(Discrepancy::WrongOrder { graph6: w.clone(), order: g.order(), n: report.n });
            continue;
        }
        if g.edge_count() != report.r_star {
            found.push(Discrepancy::WrongSize { graph6: w.clone(), edges: g.edge_count(), r_star: report.r_star });
        }
        if !seen.insert(canonical_form(&g)) {
            found.push(Discrepancy::DuplicateClass(w.clone()));
        }
        if !arrowing::arrows_cycle(&g, Mode::Complete) {
            found.push(Discrepancy::NotArrowing(w.clone()));
        }
    }
    if report.witness_count != seen.len() || report.witness_count != report.witnesses.len() {
        found.push(Discrepancy::CountMismatch { claimed: report.witness_count, found: seen.len() });
    }
    match report.per_m.split_last() {
        None => found.push(Discrepancy::Stats("no scanned edge counts".into())),
        Some((last, earlier)) => {
            if last.m != report.r_star || last.arrows as usize != report.witness_count {
                found.push(Discrepancy::Stats(format!("last scan m={} arrows={}", last.m, last.arrows)));
            }
            if let Some(s) = earlier.iter().find(|s| s.arrows > 0) {
                found.push(Discrepancy::Stats(format!("m={} below r* has {} witnesses", s.m, s.arrows)));
            }
        }
    }
    found
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum ReportRecord {
    Header { format: String, version: u32 },
    Summary { n: usize, r_star: usize, witness_count: usize, mode: String, source: String, cross_checked: bool },
    Scan(ScanStats),
    Witness { graph6: String },
}

/// Writes the report as JSON lines: a versioned header, the summary, one
/// line per scanned edge count and one per witness.
pub fn write_report(report: &SearchReport, mut out: impl Write) -> io::Result<()> {
    let records = [
        ReportRecord::Header { format: REPORT_FORMAT.into(), version: FORMAT_VERSION },
        ReportRecord::Summary {
            n: report.n,
            r_star: report.r_star,
            witness_count: report.witness_count,
            mode: report.mode.name().into(),
            source: report.source.clone(),
            cross_checked: report.cross_checked,
        },
    ]
    .into_iter()
    .chain(report.per_m.iter().cloned().map(ReportRecord::Scan))
    .chain(report.witnesses.iter().map(|w| ReportRecord::Witness { graph6: w.clone() }));
    for r in records {
        serde_json::to_writer(&mut out, &r)?;
        writeln!(out)?;
    }
    Ok(())
}

pub fn read_report(input: impl BufRead) -> Result<SearchReport, SearchError> {
    let bad = |m: String| SearchError::Report(m);
    let mut report: Option<SearchReport> = None;
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: ReportRecord = serde_json::from_str(&line).map_err(|e| bad(format!("line {}: {e}", i + 1)))?;
        match (rec, report.as_mut()) {
            (ReportRecord::Header { format, version }, None) if i == 0 => {
                if format != REPORT_FORMAT || version != FORMAT_VERSION {
                    return Err(bad(format!("unsupported format {format} v{version}")));
                }
            }
            (ReportRecord::Summary { n, r_star, witness_count, mode, source, cross_checked }, None) if i == 1 => {
                let mode = match mode.as_str() {
                    "complete" => Mode::Complete,
                    "window" => Mode::Window,
                    other => return Err(bad(format!("unknown mode {other}"))),
                };
                report = Some(SearchReport {
                    n,
                    r_star,
                    witness_count,
                    witnesses: Vec::new(),
                    per_m: Vec::new(),
                    mode,
                    source,
                    cross_checked,
                });
            }
            (ReportRecord::Scan(s), Some(r)) => r.per_m.push(s),
            (ReportRecord::Witness { graph6 }, Some(r)) => r.witnesses.push(graph6),
            _ => return Err(bad(format!("line {}: record out of place", i + 1))),
        }
    }
    report.ok_or_else(|| bad("missing header or summary".into()))
}

/// Witnesses as plain graph6, one per line.
pub fn write_witnesses(report: &SearchReport, mut out: impl Write) -> io::Result<()> {
    for w in &report.witnesses {
        writeln!(out, "{w}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound(8), 14);
        assert_eq!(lower_bound(7), 11);
        assert_eq!(lower_bound(12), 20);
        assert_eq!(lower_bound(4), 6);
        assert_eq!(lower_bound(6), 9);
        assert_eq!(lower_bound(9), 14);
    }

    #[test]
    fn small_orders() {
        for (n, r) in [(4, 6), (5, 9), (6, 9), (7, 13)] {
            let report = compute_r_star(n, &opts()).unwrap();
            assert_eq!(report.r_star, r, "n={n}");
            assert!(verify_report(&report).is_empty());
        }
        let k4 = compute_r_star(4, &opts()).unwrap();
        assert_eq!(k4.witnesses, vec![canonical_form(&Graph::complete(4).unwrap()).as_str().to_string()]);
    }

    #[test]
    fn order_range_is_enforced() {
        assert!(matches!(compute_r_star(3, &opts()), Err(SearchError::OrderOutOfRange(3))));
        assert!(matches!(compute_r_star(14, &opts()), Err(SearchError::OrderOutOfRange(14))));
        let capped = SearchOptions { max_edges: Some(12), ..opts() };
        assert!(matches!(compute_r_star(7, &capped), Err(SearchError::CapExceeded { max_edges: 12 })));
    }

    #[test]
    fn seven_contains_f7() {
        let report = compute_r_star(7, &opts()).unwrap();
        let f7 = canonical_form(&fixtures::build_f7());
        assert!(report.witnesses.iter().any(|w| w == f7.as_str()));
        assert_eq!(report.per_m.iter().find(|s| s.m == 12).unwrap().arrows, 0);
    }

    #[test]
    fn worker_count_does_not_change_the_report() {
        let one = compute_r_star(8, &opts()).unwrap();
        let three = compute_r_star(8, &SearchOptions { workers: 3, ..opts() }).unwrap();
        assert_eq!(one.without_timings(), three.without_timings());
        assert_eq!((one.r_star, one.witness_count), (15, 10));
    }

    #[test]
    fn verify_report_catches_tampering() {
        let good = compute_r_star(8, &opts()).unwrap();
        assert!(verify_report(&good).is_empty());

        let mut dup = good.clone();
        let relabeled = graph6::parse_graph6(dup.witnesses[0].as_bytes())
            .unwrap()
            .apply_permutation(&[7, 6, 5, 4, 3, 2, 1, 0])
            .unwrap();
        dup.witnesses[1] = graph6::write_graph6(&relabeled);
        let issues = verify_report(&dup);
        assert!(issues.iter().any(|d| d.to_string().starts_with("duplicate class")), "{issues:?}");

        let mut fake = good.clone();
        let c8 = Graph::cycle(8).unwrap();
        let mut padded = c8;
        for (a, b) in [(0, 2), (1, 3), (4, 6), (5, 7), (0, 4), (2, 6), (1, 5)] {
            padded.insert_edge(a, b).unwrap();
        }
        assert_eq!(padded.edge_count(), 15);
        assert!(!arrowing::arrows_cycle(&padded, Mode::Complete));
        fake.witnesses[0] = graph6::write_graph6(&padded);
        assert!(verify_report(&fake).iter().any(|d| matches!(d, Discrepancy::NotArrowing(_))));

        let mut miscounted = good;
        miscounted.witness_count = 11;
        assert!(!verify_report(&miscounted).is_empty());
    }

    #[test]
    fn report_round_trip() {
        let report = compute_r_star(6, &SearchOptions { cross_check: true, ..opts() }).unwrap();
        let mut buf = Vec::new();
        write_report(&report, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.lines().next().unwrap().contains("\"version\":1"));
        assert_eq!(read_report(&buf[..]).unwrap(), report);
        assert!(read_report(&b"{\"record\":\"witness\",\"graph6\":\"C~\"}\n"[..]).is_err());
        let mut w = Vec::new();
        write_witnesses(&report, &mut w).unwrap();
        assert_eq!(String::from_utf8(w).unwrap().lines().count(), report.witness_count);
    }

    #[test]
    fn checkpoint_resume() {
        let dir = tempfile::tempdir().unwrap();
        let ck = dir.path().join("ck.jsonl");
        let base = SearchOptions { checkpoint: Some(ck.clone()), ..opts() };
        let interrupted = compute_r_star(8, &SearchOptions { max_chunks: Some(40), ..base.clone() });
        assert!(matches!(interrupted, Err(SearchError::BudgetExhausted { .. })), "{interrupted:?}");
        let resumed = compute_r_star(8, &base).unwrap();
        assert!(resumed.per_m.iter().map(|s| s.resumed_chunks).sum::<usize>() >= 40);
        let fresh = compute_r_star(8, &opts()).unwrap();
        assert_eq!(resumed.without_timings(), fresh.without_timings());

        let other_mode = SearchOptions { mode: Mode::Window, ..base };
        assert!(matches!(compute_r_star(8, &other_mode), Err(SearchError::Checkpoint { .. })));
    }

    #[test]
    fn torn_checkpoint_line_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let ck = dir.path().join("ck.jsonl");
        let base = SearchOptions { checkpoint: Some(ck.clone()), ..opts() };
        let _ = compute_r_star(7, &SearchOptions { max_chunks: Some(5), ..base.clone() });
        let mut text = fs::read_to_string(&ck).unwrap();
        text.push_str("{\"record\":\"chunk\",\"m\":");
        fs::write(&ck, text).unwrap();
        let resumed = compute_r_star(7, &base).unwrap();
        assert_eq!(resumed.without_timings(), compute_r_star(7, &opts()).unwrap().without_timings());
    }

    #[test]
    fn zero_budget_stops_before_any_work() {
        let r = compute_r_star(7, &SearchOptions { budget: Some(Duration::ZERO), ..opts() });
        assert!(matches!(r, Err(SearchError::BudgetExhausted { done: 0, .. })));
    }

    #[test]
    fn ingest_matches_generator() {
        let dir = tempfile::tempdir().unwrap();
        for m in lower_bound(8)..=15 {
            let mut f = File::create(dir.path().join(format!("c{m}.g6"))).unwrap();
            crate::graph6::write_all(&mut f, crate::generator::generate(GenSpec::candidates(8, m)).iter()).unwrap();
        }
        let pattern = dir.path().join("c{m}.g6").to_string_lossy().into_owned();
        let ingest = compute_r_star(8, &SearchOptions { source: Source::Ingest(pattern), ..opts() }).unwrap();
        let gen = compute_r_star(8, &opts()).unwrap();
        assert_eq!(ingest.witnesses, gen.witnesses);
        assert_eq!(ingest.per_m.iter().map(|s| s.candidates).collect::<Vec<_>>(), gen.per_m.iter().map(|s| s.candidates).collect::<Vec<_>>());

        let missing = SearchOptions { source: Source::Ingest(dir.path().join("none{m}.g6").to_string_lossy().into()), ..opts() };
        assert!(matches!(compute_r_star(8, &missing), Err(SearchError::Ingest { .. })));
    }

    #[test]
    fn ingest_single_file_filters_by_size() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("all.g6");
        let mut f = File::create(&path).unwrap();
        for m in 6..=20 {
            crate::graph6::write_all(&mut f, crate::generator::generate(GenSpec::all(7, m)).iter()).unwrap();
        }
        drop(f);
        let ingest =
            compute_r_star(7, &SearchOptions { source: Source::Ingest(path.to_string_lossy().into()), ..opts() }).unwrap();
        let gen = compute_r_star(7, &opts()).unwrap();
        assert_eq!(ingest.without_timings().witnesses, gen.witnesses);
        assert_eq!(ingest.r_star, 13);
    }
}
