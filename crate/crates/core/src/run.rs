//! Algorithm dispatch, run reports and the benchmark harness.

use std::fmt::Write as _;
use std::str::FromStr;
use crate::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BVector, Graph};
use crate::matching::{greedy, lazy_greedy, local_lazy_greedy, MatchOutcome};
use crate::objective::{evaluate_matching, Objective};
use crate::report::RunReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Greedy,
    Lazy,
    Llg,
    Pllg,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Lazy => "lazy",
            Algorithm::Llg => "llg",
            Algorithm::Pllg => "pllg",
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(Algorithm::Greedy),
            "lazy" | "lg" => Ok(Algorithm::Lazy),
            "llg" => Ok(Algorithm::Llg),
            "pllg" => Ok(Algorithm::Pllg),
            _ => Err(Error::domain(format!("unknown algorithm {s:?}"))),
        }
    }
}

/// A finished run: outcome plus main-loop wall time (heap construction is
/// in `outcome.stats.init_ms`, not here).
pub struct TimedRun {
    pub outcome: MatchOutcome,
    pub time_ms: f64,
}

pub fn run_algorithm(
    alg: Algorithm,
    graph: &Graph,
    b: &BVector,
    obj: &dyn Objective,
    threads: usize,
) -> Result<TimedRun> {
    let start = Instant::now();
    let outcome = match alg {
        Algorithm::Greedy => greedy(graph, b, obj)?,
        Algorithm::Lazy => lazy_greedy(graph, b, obj)?,
        Algorithm::Llg => local_lazy_greedy(graph, b, obj)?,
        Algorithm::Pllg => run_parallel(graph, b, obj, threads)?,
    };
    let total = start.elapsed().as_secs_f64() * 1e3;
    let time_ms = (total - outcome.stats.init_ms).max(0.0);
    Ok(TimedRun { outcome, time_ms })
}

#[cfg(feature = "parallel")]
fn run_parallel(graph: &Graph, b: &BVector, obj: &dyn Objective, threads: usize) -> Result<MatchOutcome> {
    crate::parallel::parallel_local_lazy_greedy(graph, b, obj, &crate::parallel::ParallelConfig::new(threads))
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(_: &Graph, _: &BVector, _: &dyn Objective, _: usize) -> Result<MatchOutcome> {
    Err(Error::domain("built without the `parallel` feature"))
}

/// Context recorded alongside a run.
#[derive(Debug, Clone, Default)]
pub struct RunContext {
    pub threads: usize,
    pub seed: u64,
    pub input: String,
}

/// Builds the report for a run. The objective is recomputed from the
/// matching and must agree with the sum of the traced gains.
pub fn build_report(
    alg: Algorithm,
    graph: &Graph,
    obj: &dyn Objective,
    run: &TimedRun,
    ctx: &RunContext,
) -> Result<RunReport> {
    let edges = run.outcome.matching.edges();
    let objective = evaluate_matching(edges, graph, obj)?;
    let traced: f64 = run.outcome.trace.entries().iter().map(|t| t.gain).sum();
    if (traced - objective).abs() > 1e-9 * objective.abs().max(1.0) {
        return Err(Error::domain(format!(
            "traced gains sum to {traced} but the matching evaluates to {objective}"
        )));
    }
    let stats = &run.outcome.stats;
    Ok(RunReport {
        algorithm: alg.name().to_string(),
        objective,
        cardinality: edges.len(),
        rounds: stats.rounds,
        pushes: stats.pushes,
        pops: stats.pops,
        time_ms: run.time_ms,
        init_ms: stats.init_ms,
        threads: if alg == Algorithm::Pllg { ctx.threads } else { 1 },
        seed: ctx.seed,
        input: ctx.input.clone(),
        per_round_matches: stats.per_round_matches.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub algorithm: String,
    pub threads: usize,
    /// objective value
    pub weight: f64,
    pub cardinality: usize,
    pub rounds: u32,
    pub median_ms: f64,
    /// median time of lazy greedy divided by this row's median time
    pub rel_perf: Option<f64>,
    /// T(1) / T(p) for the parallel rows
    pub speedup: Option<f64>,
    /// edge set equal to the reference run (serial LLG when present,
    /// otherwise the first row)
    pub identical: bool,
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Times every algorithm `repeat` times (parallel runs once per thread
/// count in the sweep) and reports medians.
pub fn bench(
    graph: &Graph,
    b: &BVector,
    obj: &dyn Objective,
    algorithms: &[Algorithm],
    repeat: usize,
    threads_sweep: &[usize],
) -> Result<Vec<BenchRow>> {
    if repeat == 0 {
        return Err(Error::domain("repeat must be at least 1"));
    }
    let mut configs = Vec::new();
    for &alg in algorithms {
        if alg == Algorithm::Pllg {
            let sweep = if threads_sweep.is_empty() { &[1][..] } else { threads_sweep };
            configs.extend(sweep.iter().map(|&t| (alg, t)));
        } else {
            configs.push((alg, 1));
        }
    }
    let mut rows = Vec::new();
    let mut edge_sets = Vec::new();
    for &(alg, threads) in &configs {
        let mut times = Vec::with_capacity(repeat);
        let mut last = None;
        for _ in 0..repeat {
            let run = run_algorithm(alg, graph, b, obj, threads)?;
            times.push(run.time_ms);
            last = Some(run);
        }
        let run = last.expect("repeat >= 1");
        let report = build_report(alg, graph, obj, &run, &RunContext::default())?;
        edge_sets.push(run.outcome.matching.sorted());
        rows.push(BenchRow {
            algorithm: alg.name().to_string(),
            threads,
            weight: report.objective,
            cardinality: report.cardinality,
            rounds: report.rounds,
            median_ms: median(&mut times),
            rel_perf: None,
            speedup: None,
            identical: true,
        });
    }
    let reference = configs
        .iter()
        .position(|&(a, _)| a == Algorithm::Llg)
        .unwrap_or(0);
    let lazy_ms = rows
        .iter()
        .find(|r| r.algorithm == Algorithm::Lazy.name())
        .map(|r| r.median_ms);
    let pllg_t1 = rows
        .iter()
        .find(|r| r.algorithm == Algorithm::Pllg.name() && r.threads == 1)
        .map(|r| r.median_ms);
    for (i, row) in rows.iter_mut().enumerate() {
        if !edge_sets.is_empty() {
            row.identical = edge_sets[i] == edge_sets[reference];
        }
        row.rel_perf = lazy_ms.map(|t| t / row.median_ms);
        if row.algorithm == Algorithm::Pllg.name() {
            row.speedup = pllg_t1.map(|t| t / row.median_ms);
        }
    }
    Ok(rows)
}

pub fn bench_tsv(rows: &[BenchRow]) -> String {
    let fmt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.3}"));
    let mut out = String::from("algorithm\tthreads\tweight\tcardinality\trounds\ttime_ms\trel_perf\tspeedup\tidentical\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{:.6}\t{}\t{}\t{:.3}\t{}\t{}\t{}",
            r.algorithm,
            r.threads,
            r.weight,
            r.cardinality,
            r.rounds,
            r.median_ms,
            fmt(r.rel_perf),
            fmt(r.speedup),
            r.identical
        );
    }
    out
}
