//! Text formats, JSON reports and the batch runner.
//!
//! * graph6: the standard 6-bits-per-byte encoding of simple graphs.
//! * trigraph text: `p tgf <n>` then `e <u> <v> <b|r>` lines, `c` comments.
//! * sequence text: `p seq <n>` then one `m <u> <v>` line per merge.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{degeneracy, lb1};
use crate::families::{
    complete, cycle, cyclic_latin, johnson, kneser, latin_square_graph, paley, path, petersen, quadratic_residues,
    random_degenerate, rook, AbelianGroupSpec, ConnectionSet,
};
use crate::permutation::Permutation;
use crate::schemes::{
    asym_reduce, circulant_scheme, degenerate_scheme, girth_reduce, johnson_scheme, latin_grid_scheme,
    selfcomp_pairs, SchemeCertificate, SchemeError,
};
use crate::solver::{enumerate_graphs, tww_exact, tww_greedy, Budget, GraphClass, SolveStatus};
use crate::trigraph::{ContractionSequence, EdgeColor, Trigraph, TrigraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("graph6 byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}, step {step}: {message}")]
    Sequence { line: usize, step: usize, message: String },
    #[error(transparent)]
    Trigraph(#[from] TrigraphError),
    #[error("unknown generator {0:?}")]
    UnknownFamily(String),
    #[error("{0}")]
    Generator(String),
}

fn g6_err(offset: usize, message: impl Into<String>) -> IoError {
    IoError::Graph6 { offset, message: message.into() }
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes one graph6 record. A leading `>>graph6<<` header and trailing
/// whitespace are ignored; offsets in errors count from the record start.
pub fn parse_graph6(line: &str) -> Result<Trigraph, IoError> {
    let record = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line).trim_end();
    let bytes = record.as_bytes();
    if let Some(i) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(g6_err(i, format!("byte {} outside 63..=126", bytes[i])));
    }
    let value = |range: std::ops::Range<usize>| -> Result<usize, IoError> {
        if range.end > bytes.len() {
            return Err(g6_err(bytes.len(), "truncated size field"));
        }
        Ok(bytes[range].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    let (n, body_start) = match bytes {
        [] => return Err(g6_err(0, "empty record")),
        [126, 126, ..] => (value(2..8)?, 8),
        [126, ..] => (value(1..4)?, 4),
        [b, ..] => ((b - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let body = &bytes[body_start..];
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(g6_err(
            body_start + body.len().min(expected),
            format!("expected {expected} body bytes for n = {n}, found {}", body.len()),
        ));
    }
    if bits % 6 != 0 {
        let last = body[expected - 1] - 63;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(g6_err(body_start + expected - 1, "nonzero padding bits"));
        }
    }
    let mut g = Trigraph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                g.set_edge(i, j, EdgeColor::Black);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encodes a red-free trigraph as graph6 (no header, no newline).
pub fn write_graph6(g: &Trigraph) -> Result<String, IoError> {
    g.require_red_free()?;
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    let push_wide = |out: &mut Vec<u8>, chars: usize| {
        for s in (0..chars).rev() {
            out.push(63 + ((n >> (6 * s)) & 63) as u8);
        }
    };
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        push_wide(&mut out, 3);
    } else {
        out.extend([126, 126]);
        push_wide(&mut out, 6);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.is_adjacent(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

/// Meaningful lines with their 1-based numbers: comments and blanks dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty() && t[0] != "c")
}

fn header(text: &str, kind: &str) -> Result<(usize, usize), IoError> {
    let Some((line, t)) = content_lines(text).next() else {
        return Err(IoError::Parse { line: 1, message: format!("missing \"p {kind} <n>\" header") });
    };
    match t.as_slice() {
        ["p", k, n] if *k == kind => n
            .parse()
            .map(|n| (line, n))
            .map_err(|_| IoError::Parse { line, message: format!("bad vertex count {n:?}") }),
        _ => Err(IoError::Parse { line, message: format!("expected \"p {kind} <n>\"") }),
    }
}

fn parse_id(tok: &str, line: usize) -> Result<usize, IoError> {
    tok.parse().map_err(|_| IoError::Parse { line, message: format!("bad vertex id {tok:?}") })
}

pub fn parse_trigraph(text: &str) -> Result<Trigraph, IoError> {
    let (head, n) = header(text, "tgf")?;
    let mut g = Trigraph::empty(n);
    for (line, t) in content_lines(text).filter(|(l, _)| *l > head) {
        let err = |message: String| IoError::Parse { line, message };
        let ["e", u, v, c] = t.as_slice() else {
            return Err(err("expected \"e <u> <v> <b|r>\"".into()));
        };
        let (u, v) = (parse_id(u, line)?, parse_id(v, line)?);
        let color = match *c {
            "b" => EdgeColor::Black,
            "r" => EdgeColor::Red,
            other => return Err(err(format!("unknown color {other:?}"))),
        };
        if u >= n || v >= n {
            return Err(err(TrigraphError::VertexOutOfRange { vertex: u.max(v), n }.to_string()));
        }
        if u == v {
            return Err(err(TrigraphError::SelfLoop(u).to_string()));
        }
        if g.is_adjacent(u, v) {
            return Err(err(TrigraphError::DuplicateEdge(u.min(v), u.max(v)).to_string()));
        }
        g.set_edge(u, v, color);
    }
    Ok(g)
}

pub fn write_trigraph(g: &Trigraph) -> String {
    let mut out = format!("p tgf {}\n", g.order());
    for (u, v, c) in g.edges() {
        out.push_str(&format!("e {u} {v} {}\n", if c.is_red() { 'r' } else { 'b' }));
    }
    out
}

/// Parses a sequence file. Steps may name blocks by any member; a step that
/// names two members of one block is rejected.
pub fn parse_sequence(text: &str) -> Result<ContractionSequence, IoError> {
    let (head, n) = header(text, "seq")?;
    let mut seq = ContractionSequence::new(n);
    let mut lines = Vec::new();
    for (line, t) in content_lines(text).filter(|(l, _)| *l > head) {
        let ["m", u, v] = t.as_slice() else {
            return Err(IoError::Parse { line, message: "expected \"m <u> <v>\"".into() });
        };
        seq.push(parse_id(u, line)?, parse_id(v, line)?);
        lines.push(line);
    }
    seq.final_partition().map_err(|e| {
        let step = match &e {
            TrigraphError::SameBlock { step, .. } | TrigraphError::Replay { step, .. } => *step,
            _ => 0,
        };
        IoError::Sequence { line: lines.get(step).copied().unwrap_or(head), step, message: e.to_string() }
    })?;
    Ok(seq)
}

/// Writes a sequence with each block named by its minimum member, `u < v`.
pub fn write_sequence(seq: &ContractionSequence) -> Result<String, IoError> {
    let canon = seq.canonical()?;
    let mut out = format!("p seq {}\n", canon.n);
    for s in &canon.steps {
        out.push_str(&format!("m {} {}\n", s.u, s.v));
    }
    Ok(out)
}

/// Reads either trigraph text (recognized by its `p tgf` header) or a single
/// graph6 record.
pub fn parse_graph_auto(text: &str) -> Result<Trigraph, IoError> {
    let first = content_lines(text).next();
    match first {
        Some((_, t)) if t.first() == Some(&"p") => parse_trigraph(text),
        Some((_, t)) => parse_graph6(t[0]),
        None => Err(IoError::Parse { line: 1, message: "no graph found".into() }),
    }
}

// ---------------------------------------------------------------------------
// generators

fn gen_err(e: impl std::fmt::Display) -> IoError {
    IoError::Generator(e.to_string())
}

fn need(params: &[usize], k: usize, family: &str) -> Result<(), IoError> {
    if params.len() == k {
        Ok(())
    } else {
        Err(IoError::Generator(format!("{family} takes {k} parameter(s), got {}", params.len())))
    }
}

/// Builds named graphs. Most families yield one graph; `cubic` yields every
/// cubic graph of the given order and `labeled` every labeled graph.
pub fn generate(family: &str, params: &[usize], seed: u64) -> Result<Vec<(String, Trigraph)>, IoError> {
    let one = |g: Trigraph| {
        let args: Vec<String> = params.iter().map(usize::to_string).collect();
        Ok(vec![(format!("{family}({})", args.join(",")), g)])
    };
    match family {
        "johnson" | "kneser" | "paley" | "rook" | "cycle" | "path" | "complete" | "latin" | "empty" => {
            need(params, 1, family)?;
            let n = params[0];
            let g = match family {
                "johnson" => johnson(n).map_err(gen_err)?,
                "kneser" => kneser(n).map_err(gen_err)?,
                "paley" => paley(n).map_err(gen_err)?,
                "rook" => rook(n).map_err(gen_err)?,
                "cycle" => cycle(n),
                "path" => path(n),
                "complete" => complete(n),
                "empty" => Trigraph::empty(n),
                _ => {
                    if n == 0 {
                        return Err(IoError::Generator("latin requires n >= 1".into()));
                    }
                    latin_square_graph(&cyclic_latin(n))
                }
            };
            one(g)
        }
        "petersen" => {
            need(params, 0, family)?;
            one(petersen())
        }
        "circulant" => {
            if params.is_empty() {
                return Err(IoError::Generator("circulant takes n followed by offsets".into()));
            }
            one(crate::families::circulant(params[0], &params[1..]).map_err(gen_err)?)
        }
        "degenerate" => {
            need(params, 2, family)?;
            one(random_degenerate(params[0], params[1], seed).0)
        }
        "cubic" | "labeled" => {
            need(params, 1, family)?;
            let class = if family == "cubic" { GraphClass::Cubic(params[0]) } else { GraphClass::Labeled(params[0]) };
            Ok(enumerate_graphs(class)
                .map_err(gen_err)?
                .enumerate()
                .map(|(i, g)| (format!("{family}({})#{i}", params[0]), g))
                .collect())
        }
        other => Err(IoError::UnknownFamily(other.to_string())),
    }
}

/// Expands `family:a..b` (inclusive), `family:a` or `family:a,b,…` into
/// generated graphs.
pub fn parse_gen_spec(spec: &str, seed: u64) -> Result<Vec<(String, Trigraph)>, IoError> {
    let (family, args) = spec.split_once(':').unwrap_or((spec, ""));
    let bad = || IoError::Generator(format!("bad generator spec {spec:?}"));
    if let Some((a, b)) = args.split_once("..") {
        let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
        let mut out = Vec::new();
        for n in a..=b {
            out.extend(generate(family, &[n], seed)?);
        }
        return Ok(out);
    }
    let params: Vec<usize> = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    generate(family, &params, seed)
}

// ---------------------------------------------------------------------------
// schemes on arbitrary input

/// Runs the named scheme on `g`. Family schemes (`johnson`, `latin`,
/// `selfcomp`) require `g` to be exactly the family member in its standard
/// labeling.
pub fn run_scheme(name: &str, g: &Trigraph) -> Result<SchemeCertificate, String> {
    let n = g.order();
    let s = |e: SchemeError| e.to_string();
    match name {
        "johnson" => {
            let m = (2..=n + 2).find(|m| m * (m - 1) / 2 >= n).unwrap_or(2);
            if m * (m - 1) / 2 != n || johnson(m).map_or(true, |j| j != *g) {
                return Err("input is not a Johnson graph J(m,2) in its standard labeling".into());
            }
            johnson_scheme(m).map_err(s)
        }
        "latin" => {
            let m = (1..=n).find(|m| m * m >= n).unwrap_or(0);
            if m == 0 || m * m != n || latin_square_graph(&cyclic_latin(m)) != *g {
                return Err("input is not the cyclic Latin square graph in row-major labeling".into());
            }
            latin_grid_scheme(m).map_err(s)
        }
        "selfcomp" => {
            if paley(n).map_or(true, |p| p != *g) {
                return Err("input is not a Paley graph in its standard labeling".into());
            }
            let grp = AbelianGroupSpec::cyclic(n).map_err(|e| e.to_string())?;
            let conn = ConnectionSet::new(&grp, quadratic_residues(n)).map_err(|e| e.to_string())?;
            selfcomp_pairs(&grp, &conn).map_err(s)
        }
        "circulant" => circulant_scheme(g, &Permutation::rotation(n)).map_err(s),
        "degenerate" => {
            let elim = degeneracy(g).map_err(|e| e.to_string())?;
            degenerate_scheme(g, &elim).map_err(s)
        }
        "girth" => girth_reduce(g).map_err(s),
        "asym" => asym_reduce(g, None).map_err(s),
        other => Err(format!("unknown scheme {other:?}")),
    }
}

// ---------------------------------------------------------------------------
// reports and batch

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverSummary {
    pub value: usize,
    pub status: SolveStatus,
}

/// One line of batch output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub v: u32,
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lb1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scheme: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub claimed_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verified_width: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub solver: Option<SolverSummary>,
    /// Bound asserted by the task, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound: Option<usize>,
    pub violation: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    /// Milliseconds per phase; only filled when requested, since it breaks
    /// byte-identical output.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<BTreeMap<String, u64>>,
}

impl Report {
    fn new(graph_id: String, g: Option<&Trigraph>) -> Self {
        Report {
            v: REPORT_VERSION,
            graph_id,
            n: g.map_or(0, Trigraph::order),
            m: g.map_or(0, Trigraph::edge_count),
            lb1: None,
            scheme: None,
            claimed_bound: None,
            verified_width: None,
            solver: None,
            bound: None,
            violation: false,
            error: None,
            timings: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Task {
    Lb1,
    Greedy,
    /// Exact search asserting `tww <= k`.
    ExactAtMost { k: usize, budget: Budget },
    /// Run a scheme and check its certificate.
    Scheme(String),
}

impl Task {
    /// Parses `lb1`, `greedy`, `exact:<k>` or `scheme:<name>`.
    pub fn parse(s: &str, budget: Budget) -> Result<Task, String> {
        match s.split_once(':') {
            None if s == "lb1" => Ok(Task::Lb1),
            None if s == "greedy" => Ok(Task::Greedy),
            Some(("exact", k)) => {
                k.parse().map(|k| Task::ExactAtMost { k, budget }).map_err(|_| format!("bad bound in {s:?}"))
            }
            Some(("scheme", name)) => Ok(Task::Scheme(name.to_string())),
            _ => Err(format!("unknown task {s:?}; expected lb1, greedy, exact:<k> or scheme:<name>")),
        }
    }
}

/// A batch input record: an id and either a graph or the reason it could
/// not be read.
pub type Record = (String, Result<Trigraph, String>);

/// Splits a graph6 file into records, one per non-empty line.
pub fn graph6_records(text: &str, source: &str) -> Vec<Record> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && l.trim() != GRAPH6_HEADER)
        .map(|(i, l)| (format!("{source}:{}", i + 1), parse_graph6(l.trim()).map_err(|e| e.to_string())))
        .collect()
}

fn run_one(id: &str, input: &Result<Trigraph, String>, task: &Task, timings: bool) -> Report {
    let g = match input {
        Ok(g) => g,
        Err(e) => {
            let mut r = Report::new(id.to_string(), None);
            r.error = Some(e.clone());
            return r;
        }
    };
    let mut r = Report::new(id.to_string(), Some(g));
    let mut times = BTreeMap::new();
    let mut clock = |name: &str, start: Instant| {
        times.insert(name.to_string(), start.elapsed().as_millis() as u64);
    };
    let start = Instant::now();
    r.lb1 = lb1(g).ok();
    clock("lb1", start);
    let start = Instant::now();
    match task {
        Task::Lb1 => {}
        Task::Greedy => {
            let s = tww_greedy(g);
            r.solver = Some(SolverSummary { value: s.value, status: s.status });
            clock("greedy", start);
        }
        Task::ExactAtMost { k, budget } => {
            r.bound = Some(*k);
            match tww_exact(g, *budget) {
                Ok(s) => {
                    r.violation = s.value > *k || s.status == SolveStatus::Timeout;
                    r.solver = Some(SolverSummary { value: s.value, status: s.status });
                }
                Err(e) => r.error = Some(e.to_string()),
            }
            clock("exact", start);
        }
        Task::Scheme(name) => {
            r.scheme = Some(name.clone());
            match run_scheme(name, g) {
                Ok(cert) => {
                    r.claimed_bound = Some(cert.claimed_bound);
                    r.verified_width = Some(cert.verified_width);
                    r.violation = !cert.holds();
                }
                Err(e) => r.error = Some(e),
            }
            clock("scheme", start);
        }
    }
    if timings {
        r.timings = Some(times);
    }
    r
}

/// Processes every record on `workers` threads (0 means the rayon default)
/// and returns the reports in input order.
pub fn batch_run(records: &[Record], task: &Task, workers: usize, timings: bool) -> Vec<Report> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool");
    pool.install(|| records.par_iter().map(|(id, g)| run_one(id, g, task, timings)).collect())
}

/// Exit status for a set of reports: 1 if any bound is violated, otherwise
/// 2 if any record failed, otherwise 0.
pub fn batch_exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(|r| r.violation) {
        1
    } else if reports.iter().any(|r| r.error.is_some()) {
        2
    } else {
        0
    }
}
