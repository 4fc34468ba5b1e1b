//! Micro-benchmark harness.
//!
//! Each benchmark loads its program into a fresh engine, runs the goal a
//! few times unmeasured, then times every goal execution separately with
//! a monotonic clock. Times are reported in milliseconds per operation.

mod programs;
pub mod stats;

use std::fmt::Write;
use std::time::Instant;

pub use programs::{find, suite, BenchSpec, Collect, NAMES};
pub use stats::Summary;

use crate::engine::{Engine, Stats};
use crate::error::{Error, Result};

pub const DEFAULT_ITERATIONS: usize = 30;
pub const DEFAULT_WARMUP: usize = 5;

pub const CSV_HEADER: &str = "benchmark,min,ave,max,error,stdev";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub iterations: usize,
    pub warmup: usize,
    /// First-argument indexing in the benchmark engine.
    pub indexing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            iterations: DEFAULT_ITERATIONS,
            warmup: DEFAULT_WARMUP,
            indexing: true,
        }
    }
}

/// Timing summary of one benchmark, in ms per operation.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub name: String,
    pub iterations: usize,
    pub min: f64,
    pub avg: f64,
    pub max: f64,
    pub error: f64,
    pub stdev: f64,
}

fn failure(spec: &BenchSpec, what: impl std::fmt::Display) -> Error {
    Error::prolog(format!("benchmark {}: {what}", spec.name))
}

fn engine_for(spec: &BenchSpec, indexing: bool) -> Result<Engine> {
    let mut engine = Engine::new();
    engine.set_indexing(indexing);
    engine
        .consult_str(&spec.program)
        .map_err(|e| failure(spec, e))?;
    Ok(engine)
}

/// Runs the goal once; returns the resolution counters.
fn execute(spec: &BenchSpec, engine: &Engine) -> Result<Stats> {
    let mut query = engine.query(spec.goal).map_err(|e| failure(spec, e))?;
    let found = match spec.collect {
        Collect::One => query.has_more_solutions().inspect(|&found| {
            if found {
                let _ = query.next_solution();
            }
        }),
        Collect::All => query.all_solutions().map(|rows| !rows.is_empty()),
    }
    .map_err(|e| failure(spec, e))?;
    if !found {
        return Err(failure(spec, "goal failed"));
    }
    Ok(query.stats())
}

/// Resolution counters of one execution of `spec`'s goal.
pub fn probe(spec: &BenchSpec) -> Result<Stats> {
    let engine = engine_for(spec, true)?;
    execute(spec, &engine)
}

/// Per-iteration times in milliseconds.
pub fn samples(spec: &BenchSpec, config: &BenchConfig) -> Result<Vec<f64>> {
    if config.iterations == 0 {
        return Err(failure(spec, "iterations must be positive"));
    }
    let engine = engine_for(spec, config.indexing)?;
    for _ in 0..config.warmup {
        execute(spec, &engine)?;
    }
    let mut times = Vec::with_capacity(config.iterations);
    for _ in 0..config.iterations {
        let start = Instant::now();
        execute(spec, &engine)?;
        times.push(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(times)
}

pub fn run_benchmark(spec: &BenchSpec, config: &BenchConfig) -> Result<BenchResult> {
    let times = samples(spec, config)?;
    let s = stats::summarize(&times);
    Ok(BenchResult {
        name: spec.name.to_string(),
        iterations: times.len(),
        min: s.min,
        avg: s.avg,
        max: s.max,
        error: s.error,
        stdev: s.stdev,
    })
}

/// Looks up benchmark names; unknown names are an error.
pub fn select(names: &[String]) -> Result<Vec<BenchSpec>> {
    let all = suite();
    names
        .iter()
        .map(|n| {
            all.iter()
                .find(|s| s.name == n.as_str())
                .cloned()
                .ok_or_else(|| {
                    Error::prolog(format!(
                        "unknown benchmark `{n}`; known: {}",
                        NAMES.join(", ")
                    ))
                })
        })
        .collect()
}

/// Runs the named benchmarks, or the whole suite when `names` is empty.
pub fn run_suite(names: &[String], config: &BenchConfig) -> Result<Vec<BenchResult>> {
    let specs = if names.is_empty() {
        suite()
    } else {
        select(names)?
    };
    specs.iter().map(|s| run_benchmark(s, config)).collect()
}

pub fn format_csv(results: &[BenchResult]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in results {
        writeln!(
            out,
            "{},{:.6},{:.6},{:.6},{:.6},{:.6}",
            r.name, r.min, r.avg, r.max, r.error, r.stdev
        )
        .unwrap();
    }
    out
}

pub fn format_table(results: &[BenchResult]) -> String {
    let width = results
        .iter()
        .map(|r| r.name.len())
        .chain(["Benchmark".len()])
        .max()
        .unwrap();
    let mut out = String::new();
    writeln!(
        out,
        "{:<width$}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}",
        "Benchmark", "Min", "Ave", "Max", "Error", "Stdev"
    )
    .unwrap();
    for r in results {
        writeln!(
            out,
            "{:<width$}  {:>10.4}  {:>10.4}  {:>10.4}  {:>10.4}  {:>10.4}",
            r.name, r.min, r.avg, r.max, r.error, r.stdev
        )
        .unwrap();
    }
    out.push_str("(ms per operation)\n");
    out
}
