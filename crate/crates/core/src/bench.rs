//! Benchmark tables and the commands behind the `lamlab` binary.
//!
//! Each `cmd_*` function does the work of one subcommand and returns what
//! should be printed together with the process exit code, so the binary is a
//! thin argument parser and the commands can be tested in-process.
//!
//! Exit codes: 0 when the requested evaluation finished, 2 when it ran out
//! of fuel, 1 on any error (bad syntax, untypable term, unreadable file).

use std::fmt::{self, Write as _};
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus;
use crate::levy::{count_families, FamilyStrategy, LevyError};
use crate::net::{self, NetStats, Schedule};
use crate::strategies::{self, ReductionStats, Status, WeakMode};
use crate::syntax::{parse, pretty, DefinitionEnv, ParseError};
use crate::term::Term;
use crate::typing::{self, parallel_step};

/// Fuel used when none is given: steps for tree reducers, transitions for
/// the weak machine, interactions for the net, parallel steps.
pub const DEFAULT_FUEL: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown {what} `{given}` (expected one of: {})", .expected.trim_end())]
pub struct UnknownChoice {
    what: &'static str,
    given: String,
    expected: &'static str,
}

macro_rules! choice_enum {
    ($(#[$meta:meta])* $name:ident, $what:literal { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn name(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $name {
            type Err = UnknownChoice;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($text => Ok($name::$variant),)+
                    _ => Err(UnknownChoice {
                        what: $what,
                        given: s.to_string(),
                        expected: concat!($($text, " "),+),
                    }),
                }
            }
        }
    };
}

choice_enum!(
    /// Every engine the laboratory can run.
    Strategy, "strategy" {
        Normal => "normal",
        Applicative => "applicative",
        Cbname => "cbname",
        Cbneed => "cbneed",
        Optimal => "optimal",
        Parallel => "parallel",
    }
);

choice_enum!(
    /// Output format.
    Emit, "output format" { Text => "text", Json => "json", Csv => "csv" }
);

choice_enum!(
    /// Parameterized benchmark families. `Corpus` indexes into
    /// [`corpus::bench_corpus`].
    Family, "family" { Term1 => "term1", Term2 => "term2", Corpus => "corpus" }
);

choice_enum!(
    /// Which net `dot` prints.
    Stage, "stage" { Initial => "initial", Normal => "normal" }
);

choice_enum!(
    /// Redex choice for family counting.
    Order, "order" { Leftmost => "leftmost", Rightmost => "rightmost" }
);

impl Serialize for Strategy {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Strategy {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowStatus {
    #[serde(rename = "normalized")]
    Normalized,
    #[serde(rename = "fuel_exhausted")]
    FuelExhausted,
    /// The parallel engine only runs on simply typable terms.
    #[serde(rename = "untypable-skip")]
    UntypableSkip,
}

impl From<Status> for RowStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Normalized => RowStatus::Normalized,
            Status::FuelExhausted => RowStatus::FuelExhausted,
        }
    }
}

impl RowStatus {
    pub fn name(self) -> &'static str {
        match self {
            RowStatus::Normalized => "normalized",
            RowStatus::FuelExhausted => "fuel_exhausted",
            RowStatus::UntypableSkip => "untypable-skip",
        }
    }
}

/// One (term, engine) measurement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchmarkRow {
    pub term_id: String,
    pub n: u32,
    pub strategy: Strategy,
    /// Beta steps for tree engines and the weak machine, beta interactions
    /// for the net, parallel steps for the parallel engine.
    pub beta_or_interaction_count: u64,
    pub bookkeeping: u64,
    pub duplications: u64,
    /// Largest term (tree engines) or net (optimal) seen.
    pub peak_size: u64,
    /// Microseconds. Always 0 unless timing was asked for, which keeps the
    /// default output reproducible byte for byte.
    pub wall_time: u64,
    pub status: RowStatus,
    pub identity_firings: u64,
}

/// Engine-specific counters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum EngineStats {
    Tree(ReductionStats),
    Net {
        #[serde(flatten)]
        stats: NetStats,
        readback_steps: u64,
    },
    Parallel {
        parallel_steps: u64,
        degree: u32,
        peak_term_size: u64,
    },
    Skipped,
}

/// What one engine did with one term.
#[derive(Debug, Clone)]
pub struct EngineRun {
    pub strategy: Strategy,
    pub status: RowStatus,
    /// Normal form (weak normal form for `cbname`/`cbneed`); the partial
    /// term when a tree engine runs out of fuel; `None` when the net runs
    /// out or the term was skipped.
    pub result: Option<Term>,
    pub stats: EngineStats,
    pub wall_time: Duration,
}

impl EngineRun {
    pub fn row(&self, term_id: &str, n: u32, timing: bool) -> BenchmarkRow {
        let (count, bookkeeping, duplications, peak, ids) = match &self.stats {
            EngineStats::Tree(s) => (s.beta_steps, 0, 0, s.peak_term_size, s.identity_firings),
            EngineStats::Net { stats, .. } => {
                (stats.beta_interactions, stats.bookkeeping_interactions, stats.duplications, stats.peak_nodes, 0)
            }
            EngineStats::Parallel { parallel_steps, peak_term_size, .. } => (*parallel_steps, 0, 0, *peak_term_size, 0),
            EngineStats::Skipped => (0, 0, 0, 0, 0),
        };
        BenchmarkRow {
            term_id: term_id.to_string(),
            n,
            strategy: self.strategy,
            beta_or_interaction_count: count,
            bookkeeping,
            duplications,
            peak_size: peak,
            wall_time: if timing { self.wall_time.as_micros() as u64 } else { 0 },
            status: self.status,
            identity_firings: ids,
        }
    }
}

/// Runs one engine. Tree reducers also treat a term growing past `fuel`
/// nodes as running out of fuel.
pub fn run_engine(t: &Term, strategy: Strategy, fuel: u64) -> Result<EngineRun, net::NetError> {
    let start = Instant::now();
    let cap = usize::try_from(fuel).unwrap_or(usize::MAX);
    let tree = |o: strategies::Outcome| (o.status.into(), Some(o.result), EngineStats::Tree(o.stats));
    let (status, result, stats) = match strategy {
        Strategy::Normal => tree(strategies::reduce_normal_order_bounded(t, fuel, cap)),
        Strategy::Applicative => tree(strategies::reduce_applicative_bounded(t, fuel, cap)),
        Strategy::Cbname => tree(strategies::evaluate_weak(t, WeakMode::ByName, fuel)),
        Strategy::Cbneed => tree(strategies::evaluate_weak(t, WeakMode::ByNeed, fuel)),
        Strategy::Optimal => {
            let o = net::reduce_optimal(t, fuel, Schedule::Fifo)?;
            (o.status.into(), o.result, EngineStats::Net { stats: o.stats, readback_steps: o.readback_steps })
        }
        Strategy::Parallel => match typing::degree_of_term(t) {
            Err(_) => (RowStatus::UntypableSkip, None, EngineStats::Skipped),
            Ok(report) => {
                let mut cur = t.clone();
                let mut steps = 0;
                let mut peak = cur.size();
                let mut status = RowStatus::Normalized;
                while !cur.is_normal() {
                    if steps >= fuel || peak > cap {
                        status = RowStatus::FuelExhausted;
                        break;
                    }
                    cur = parallel_step(&cur);
                    steps += 1;
                    peak = peak.max(cur.size());
                }
                let stats = EngineStats::Parallel { parallel_steps: steps, degree: report.degree, peak_term_size: peak as u64 };
                (status, Some(cur), stats)
            }
        },
    };
    Ok(EngineRun { strategy, status, result, stats, wall_time: start.elapsed() })
}

// ---------------------------------------------------------------------------
// Tables.

pub fn rows_to_csv(rows: &[BenchmarkRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        // The header is mandatory even for an empty table.
        w.write_record([
            "term_id",
            "n",
            "strategy",
            "beta_or_interaction_count",
            "bookkeeping",
            "duplications",
            "peak_size",
            "wall_time",
            "status",
            "identity_firings",
        ])
        .expect("writing to memory");
    }
    for r in rows {
        w.serialize(r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is utf-8")
}

pub fn rows_from_csv(text: &str) -> Result<Vec<BenchmarkRow>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes()).deserialize().collect()
}

pub fn rows_to_json(rows: &[BenchmarkRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

pub fn rows_from_json(text: &str) -> Result<Vec<BenchmarkRow>, serde_json::Error> {
    serde_json::from_str(text)
}

fn rows_to_text(rows: &[BenchmarkRow]) -> String {
    let header = ["term", "n", "strategy", "count", "bookkeeping", "dups", "peak", "id_fired", "status"];
    let cells: Vec<[String; 9]> = rows
        .iter()
        .map(|r| {
            [
                r.term_id.clone(),
                r.n.to_string(),
                r.strategy.to_string(),
                r.beta_or_interaction_count.to_string(),
                r.bookkeeping.to_string(),
                r.duplications.to_string(),
                r.peak_size.to_string(),
                r.identity_firings.to_string(),
                r.status.name().to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let mut line = |row: &[&str]| {
        let parts: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(&header);
    for row in &cells {
        line(&row.iter().map(String::as_str).collect::<Vec<_>>());
    }
    out
}

// ---------------------------------------------------------------------------
// Fits.

/// Least-squares polynomial fit.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFit {
    /// Lowest degree first.
    pub coefficients: Vec<f64>,
    /// `|y - fit(x)| / |y|` in the Euclidean norm.
    pub relative_residual: f64,
}

impl PolyFit {
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

/// Fits a polynomial of the given degree to the points.
///
/// # Panics
///
/// If the slices differ in length or there are fewer points than
/// coefficients.
pub fn poly_fit(xs: &[f64], ys: &[f64], degree: usize) -> PolyFit {
    assert_eq!(xs.len(), ys.len(), "one y per x");
    assert!(xs.len() > degree, "need more points than the degree");
    let a = DMatrix::from_fn(xs.len(), degree + 1, |i, j| xs[i].powi(j as i32));
    let b = DVector::from_column_slice(ys);
    let c = a.clone().svd(true, true).solve(&b, 1e-12).expect("both factors were computed");
    let residual = (&a * &c - &b).norm();
    let scale = b.norm();
    let relative_residual = if scale == 0.0 { residual } else { residual / scale };
    PolyFit { coefficients: c.iter().copied().collect(), relative_residual }
}

// ---------------------------------------------------------------------------
// Commands.

/// What a command printed and how it wants the process to exit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CommandOutput {
    fn ok(stdout: String, code: i32) -> Self {
        CommandOutput { stdout, stderr: String::new(), code }
    }

    fn error(msg: impl fmt::Display) -> Self {
        CommandOutput { stdout: String::new(), stderr: format!("error: {msg}\n"), code: 1 }
    }
}

fn exit_code(status: RowStatus) -> i32 {
    match status {
        RowStatus::Normalized => 0,
        RowStatus::FuelExhausted => 2,
        RowStatus::UntypableSkip => 1,
    }
}

/// The prelude plus the definitions in `defs`, if any.
pub fn load_env(defs: Option<&str>) -> Result<DefinitionEnv, ParseError> {
    let mut env = DefinitionEnv::prelude();
    if let Some(text) = defs {
        env.load_definitions(text)?;
    }
    Ok(env)
}

#[derive(Serialize)]
struct ReduceReport<'a> {
    #[serde(flatten)]
    row: &'a BenchmarkRow,
    result: Option<String>,
    stats: &'a EngineStats,
}

pub fn cmd_reduce(src: &str, env: &DefinitionEnv, strategy: Strategy, fuel: u64, emit: Emit, timing: bool) -> CommandOutput {
    let t = match parse(src, env) {
        Ok(t) => t,
        Err(e) => return CommandOutput::error(e),
    };
    let run = match run_engine(&t, strategy, fuel) {
        Ok(r) => r,
        Err(e) => return CommandOutput::error(e),
    };
    if run.status == RowStatus::UntypableSkip {
        return CommandOutput::error("the parallel engine needs a simply typable term");
    }
    let row = run.row(src.trim(), 0, timing);
    let code = exit_code(run.status);
    let stdout = match emit {
        Emit::Csv => rows_to_csv(std::slice::from_ref(&row)),
        Emit::Json => {
            let report = ReduceReport { row: &row, result: run.result.as_ref().map(pretty), stats: &run.stats };
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Emit::Text => {
            let mut s = String::new();
            match &run.result {
                Some(r) => writeln!(s, "result: {}", pretty(r)).unwrap(),
                None => writeln!(s, "result: none").unwrap(),
            }
            writeln!(s, "status: {}", run.status.name()).unwrap();
            writeln!(s, "strategy: {strategy}").unwrap();
            if let serde_json::Value::Object(fields) = serde_json::to_value(&run.stats).expect("stats serialize") {
                for (k, v) in fields {
                    writeln!(s, "{k}: {v}").unwrap();
                }
            }
            if timing {
                writeln!(s, "wall_time_us: {}", row.wall_time).unwrap();
            }
            s
        }
    };
    CommandOutput::ok(stdout, code)
}

/// The term a family member stands for, named as in benchmark rows.
pub fn family_term(family: Family, n: u32, corpus: &[Term]) -> Option<Term> {
    match family {
        Family::Term1 => Some(corpus::term1(n as usize)),
        Family::Term2 => Some(corpus::term2(n as usize)),
        Family::Corpus => corpus.get(n as usize).cloned(),
    }
}

/// Parses `5`, `2..8` or `2..=8` (both inclusive).
pub fn parse_n_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("`{t}` is not a number"));
    match s.split_once("..") {
        None => num(s).map(|n| n..=n),
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(a..=b)
        }
    }
}

/// One row per `(n, strategy)` pair, `n` outermost.
pub fn bench_rows(
    family: Family,
    ns: RangeInclusive<u32>,
    strategies: &[Strategy],
    fuel: u64,
    timing: bool,
) -> Result<Vec<BenchmarkRow>, String> {
    let corpus = if family == Family::Corpus { corpus::bench_corpus() } else { Vec::new() };
    let mut rows = Vec::new();
    for n in ns {
        let t = family_term(family, n, &corpus)
            .ok_or_else(|| format!("the corpus family has {} terms, {n} is out of range", corpus.len()))?;
        for &s in strategies {
            let run = run_engine(&t, s, fuel).map_err(|e| e.to_string())?;
            rows.push(run.row(family.name(), n, timing));
        }
    }
    Ok(rows)
}

pub fn cmd_bench(
    family: Family,
    ns: RangeInclusive<u32>,
    strategies: &[Strategy],
    fuel: u64,
    emit: Emit,
    timing: bool,
) -> CommandOutput {
    if ns.is_empty() {
        return CommandOutput::error("empty range of n");
    }
    if strategies.is_empty() {
        return CommandOutput::error("no strategy selected");
    }
    match bench_rows(family, ns, strategies, fuel, timing) {
        Err(e) => CommandOutput::error(e),
        Ok(rows) => {
            let out = match emit {
                Emit::Csv => rows_to_csv(&rows),
                Emit::Json => rows_to_json(&rows),
                Emit::Text => rows_to_text(&rows),
            };
            CommandOutput::ok(out, 0)
        }
    }
}

#[derive(Serialize)]
struct FamiliesReport {
    status: RowStatus,
    distinct_families: usize,
    beta_firings: u64,
    fired_redex_names: Vec<String>,
    normal_form: String,
}

pub fn cmd_families(src: &str, env: &DefinitionEnv, order: Order, fuel: u64, emit: Emit) -> CommandOutput {
    let t = match parse(src, env) {
        Ok(t) => t,
        Err(e) => return CommandOutput::error(e),
    };
    let strategy = match order {
        Order::Leftmost => FamilyStrategy::Leftmost,
        Order::Rightmost => FamilyStrategy::Rightmost,
    };
    let (report, status) = match count_families(&t, strategy, fuel) {
        Ok(r) => (r, RowStatus::Normalized),
        Err(LevyError::FuelExhausted { partial }) => (partial, RowStatus::FuelExhausted),
        Err(e) => return CommandOutput::error(e),
    };
    let names: Vec<String> = report.fired_redex_names.iter().map(ToString::to_string).collect();
    let stdout = match emit {
        Emit::Json => {
            let r = FamiliesReport {
                status,
                distinct_families: report.distinct_families,
                beta_firings: report.beta_firings,
                fired_redex_names: names,
                normal_form: pretty(&report.normal_form),
            };
            let mut s = serde_json::to_string_pretty(&r).expect("report serializes");
            s.push('\n');
            s
        }
        Emit::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["step", "family"]).expect("writing to memory");
            for (i, name) in names.iter().enumerate() {
                w.write_record([(i + 1).to_string(), name.clone()]).expect("writing to memory");
            }
            String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is utf-8")
        }
        Emit::Text => {
            let mut s = String::new();
            writeln!(s, "distinct_families: {}", report.distinct_families).unwrap();
            writeln!(s, "beta_firings: {}", report.beta_firings).unwrap();
            writeln!(s, "normal_form: {}", pretty(&report.normal_form)).unwrap();
            writeln!(s, "status: {}", status.name()).unwrap();
            for (i, name) in names.iter().enumerate() {
                writeln!(s, "{:>4}  {name}", i + 1).unwrap();
            }
            s
        }
    };
    CommandOutput::ok(stdout, exit_code(status))
}

#[derive(Serialize)]
struct RedexDegree {
    position: String,
    redex_type: String,
    degree: u32,
}

#[derive(Serialize)]
struct DegreeOutput {
    term_type: String,
    degree: u32,
    redexes: Vec<RedexDegree>,
    status: RowStatus,
    parallel_steps: u64,
    bound_holds: bool,
}

pub fn cmd_degree(src: &str, env: &DefinitionEnv, fuel: u64, emit: Emit) -> CommandOutput {
    let t = match parse(src, env) {
        Ok(t) => t,
        Err(e) => return CommandOutput::error(e),
    };
    let report = match typing::degree_of_term(&t) {
        Ok(r) => r,
        Err(e) => return CommandOutput::error(e),
    };
    let run = run_engine(&t, Strategy::Parallel, fuel).expect("the parallel engine does not use the net");
    let EngineStats::Parallel { parallel_steps, .. } = run.stats else {
        unreachable!("typable terms are not skipped")
    };
    let out = DegreeOutput {
        term_type: report.term_type.to_string(),
        degree: report.degree,
        redexes: report
            .redexes
            .iter()
            .map(|r| RedexDegree { position: r.position.to_string(), redex_type: r.redex_type.to_string(), degree: r.degree })
            .collect(),
        status: run.status,
        parallel_steps,
        bound_holds: parallel_steps <= u64::from(report.degree),
    };
    let stdout = match emit {
        Emit::Json => {
            let mut s = serde_json::to_string_pretty(&out).expect("report serializes");
            s.push('\n');
            s
        }
        Emit::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["position", "redex_type", "degree"]).expect("writing to memory");
            for r in &out.redexes {
                w.write_record([r.position.as_str(), r.redex_type.as_str(), &r.degree.to_string()]).expect("writing to memory");
            }
            String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is utf-8")
        }
        Emit::Text => {
            let mut s = String::new();
            writeln!(s, "type: {}", out.term_type).unwrap();
            writeln!(s, "degree: {}", out.degree).unwrap();
            for r in &out.redexes {
                writeln!(s, "redex at {}: {} (degree {})", r.position, r.redex_type, r.degree).unwrap();
            }
            let verdict = if out.bound_holds { "within" } else { "ABOVE" };
            writeln!(s, "parallel_steps: {} ({verdict} the degree bound)", out.parallel_steps).unwrap();
            s
        }
    };
    CommandOutput::ok(stdout, exit_code(run.status))
}

pub fn cmd_dot(src: &str, env: &DefinitionEnv, stage: Stage, fuel: u64) -> CommandOutput {
    let t = match parse(src, env) {
        Ok(t) => t,
        Err(e) => return CommandOutput::error(e),
    };
    let mut g = net::translate(&t);
    if stage == Stage::Normal {
        match net::normalize(&mut g, fuel, Schedule::Fifo) {
            Err(e) => return CommandOutput::error(e),
            Ok(o) if o.status == Status::FuelExhausted => {
                return CommandOutput {
                    stdout: net::to_dot(&g),
                    stderr: format!("fuel exhausted after {} interactions\n", o.stats.total_interactions),
                    code: 2,
                };
            }
            Ok(_) => {}
        }
    }
    CommandOutput::ok(net::to_dot(&g), 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> DefinitionEnv {
        DefinitionEnv::prelude()
    }

    #[test]
    fn choices_parse_and_print() {
        for &s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert!("lazy".parse::<Strategy>().is_err());
        assert_eq!("csv".parse::<Emit>().unwrap(), Emit::Csv);
    }

    #[test]
    fn rows_round_trip() {
        let rows = bench_rows(Family::Term1, 1..=3, Strategy::ALL, DEFAULT_FUEL, false).unwrap();
        assert_eq!(rows.len(), 18);
        assert_eq!(rows_from_csv(&rows_to_csv(&rows)).unwrap(), rows);
        assert_eq!(rows_from_json(&rows_to_json(&rows)).unwrap(), rows);
        assert!(rows_to_csv(&[]).starts_with("term_id,n,strategy"));
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_n_range("2..8").unwrap(), 2..=8);
        assert_eq!(parse_n_range("2..=8").unwrap(), 2..=8);
        assert_eq!(parse_n_range("4").unwrap(), 4..=4);
        assert!(parse_n_range("8..2").is_err());
        assert!(parse_n_range("x").is_err());
    }

    #[test]
    fn fits_recover_polynomials() {
        let xs: Vec<f64> = (1..=8).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x * x - 3.0 * x + 1.0).collect();
        let fit = poly_fit(&xs, &ys, 2);
        assert!(fit.relative_residual < 1e-9);
        assert!((fit.eval(10.0) - 171.0).abs() < 1e-6);
    }

    #[test]
    fn reduce_exit_codes() {
        let ok = cmd_reduce("(\\x.x) I", &env(), Strategy::Normal, DEFAULT_FUEL, Emit::Text, false);
        assert_eq!(ok.code, 0);
        assert!(ok.stdout.starts_with("result: \\x.x\n"));
        assert!(ok.stdout.contains("beta_steps: 1\n"));
        let out = cmd_reduce("(\\x.x x)(\\x.x x)", &env(), Strategy::Normal, 50, Emit::Text, false);
        assert_eq!(out.code, 2);
        assert_eq!(cmd_reduce("(\\x.", &env(), Strategy::Normal, 10, Emit::Text, false).code, 1);
        assert_eq!(cmd_reduce("\\x.x x", &env(), Strategy::Parallel, 10, Emit::Text, false).code, 1);
    }

    #[test]
    fn optimal_reduce_reports_net_stats() {
        let out = cmd_reduce("church 3 two I I", &env(), Strategy::Optimal, DEFAULT_FUEL, Emit::Json, false);
        assert_eq!(out.code, 0);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["result"], "\\x.x");
        assert_eq!(v["strategy"], "optimal");
        assert!(v["stats"]["bookkeeping_interactions"].as_u64().unwrap() > 0);
    }

    #[test]
    fn cbneed_fires_identities() {
        let out = cmd_reduce("church 3 two I I", &env(), Strategy::Cbneed, DEFAULT_FUEL, Emit::Json, false);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert!(v["identity_firings"].as_u64().unwrap() >= 8);
    }

    #[test]
    fn families_command() {
        let out = cmd_families("(\\x.x x) ((\\z.z y) I)", &env(), Order::Leftmost, 1000, Emit::Text);
        assert!(out.stdout.starts_with("distinct_families: 3\n"), "{}", out.stdout);
        let out = cmd_families("\\x.x", &env(), Order::Leftmost, 1000, Emit::Text);
        assert!(out.stdout.starts_with("distinct_families: 0\n"));
    }

    #[test]
    fn degree_command() {
        let out = cmd_degree("I", &env(), 100, Emit::Text);
        assert!(out.stdout.starts_with("type: a -> a\ndegree: 0\n"), "{}", out.stdout);
        let out = cmd_degree("two", &env(), 100, Emit::Json);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["term_type"], "(a -> a) -> a -> a");
        let bad = cmd_degree("\\x.x x", &env(), 100, Emit::Text);
        assert_eq!(bad.code, 1);
        assert!(bad.stderr.contains("not simply typable"));
    }

    #[test]
    fn dot_command() {
        let out = cmd_dot("\\x.x", &env(), Stage::Initial, 100);
        assert_eq!(out.stdout.matches("label=\"lambda\"").count(), 1);
        let normal = cmd_dot("church 2 two I I", &env(), Stage::Normal, DEFAULT_FUEL);
        assert_eq!(normal.code, 0);
        assert_eq!(normal.stdout.matches("label=\"lambda\"").count(), 1);
    }
}
