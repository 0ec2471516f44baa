//! Browser bindings. Each exported function takes plain values and returns
//! a JSON string; the `*_json` twins are the same operations for native
//! callers and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sbmatch::graph::{make_b_vector, BSpec, Graph};
use sbmatch::loadbalance::{assign, baseline_assign, load_stats, BaselinePolicy, Capacity, LoadStats, TaskSet};
use sbmatch::matching::{greedy, lazy_greedy, local_lazy_greedy, verify_matching};
use sbmatch::objective::{evaluate_matching, ConcavePolynomial};
use serde::Serialize;
use wasm_bindgen::prelude::*;

type Result<T> = std::result::Result<T, String>;

fn parse_loads(text: &str) -> Result<TaskSet> {
    let loads = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| format!("not a number: {t:?}")))
        .collect::<Result<Vec<_>>>()?;
    TaskSet::new(loads).map_err(|e| e.to_string())
}

fn parse_capacity(s: &str) -> Result<Capacity> {
    match s.trim() {
        "auto" | "" => Ok(Capacity::Auto),
        "inf" => Ok(Capacity::Unbounded),
        t => t
            .parse()
            .map(Capacity::Fixed)
            .map_err(|_| format!("capacity must be auto, inf or an integer, got {t:?}")),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Policy {
    machine_of: Vec<usize>,
    machine_loads: Vec<f64>,
    stats: LoadStats,
}

#[derive(Serialize)]
struct AssignResult {
    submodular: Policy,
    round_robin: Policy,
}

pub fn assign_json(loads: &str, machines: usize, alpha: f64, capacity: &str) -> Result<String> {
    let tasks = parse_loads(loads)?;
    let cap = parse_capacity(capacity)?;
    let err = |e: sbmatch::Error| e.to_string();
    let sub = assign(&tasks, machines, alpha, cap).map_err(err)?;
    let rr = baseline_assign(&tasks, machines, BaselinePolicy::RoundRobin).map_err(err)?;
    to_json(&AssignResult {
        submodular: Policy {
            stats: load_stats(&sub).map_err(err)?,
            machine_of: sub.machine_of,
            machine_loads: sub.machine_loads,
        },
        round_robin: Policy {
            stats: load_stats(&rr).map_err(err)?,
            machine_of: rr.machine_of,
            machine_loads: rr.machine_loads,
        },
    })
}

#[derive(Serialize)]
struct SweepPoint {
    alpha: f64,
    cv: f64,
    max_load: f64,
}

#[derive(Serialize)]
struct SweepResult {
    points: Vec<SweepPoint>,
    round_robin_cv: f64,
}

pub fn alpha_sweep_json(loads: &str, machines: usize, capacity: &str, steps: usize) -> Result<String> {
    let tasks = parse_loads(loads)?;
    let cap = parse_capacity(capacity)?;
    let steps = steps.max(2);
    let err = |e: sbmatch::Error| e.to_string();
    let mut points = Vec::with_capacity(steps);
    for i in 0..steps {
        let alpha = i as f64 / (steps - 1) as f64;
        let stats = load_stats(&assign(&tasks, machines, alpha, cap).map_err(err)?).map_err(err)?;
        points.push(SweepPoint { alpha, cv: stats.cv, max_load: stats.max });
    }
    let rr = baseline_assign(&tasks, machines, BaselinePolicy::RoundRobin).map_err(err)?;
    to_json(&SweepResult {
        points,
        round_robin_cv: load_stats(&rr).map_err(err)?.cv,
    })
}

#[derive(Serialize)]
struct Run {
    algorithm: &'static str,
    edges: Vec<u32>,
    objective: f64,
    rounds: u32,
    pushes: u64,
    maximal: bool,
}

#[derive(Serialize)]
struct MatchResult {
    vertices: usize,
    edges: Vec<(u32, u32, f64)>,
    b: Vec<u32>,
    runs: Vec<Run>,
}

/// Random graph on `n` vertices with up to `m` edges and integer weights
/// 1..=9, matched by greedy, lazy greedy and local lazy greedy.
pub fn random_match_json(n: usize, m: usize, b: i64, alpha: f64, seed: u64) -> Result<String> {
    if !(2..=200).contains(&n) || m > 2000 {
        return Err("use 2..=200 vertices and at most 2000 edges".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<(usize, usize, f64)> = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(1..=9) as f64))
        .collect();
    let err = |e: sbmatch::Error| e.to_string();
    let graph = Graph::from_edges(n, triples).map_err(err)?;
    let bv = make_b_vector(&graph, &BSpec::Uniform(b)).map_err(err)?;
    let obj = ConcavePolynomial::new(alpha).map_err(err)?;
    let mut runs = Vec::new();
    for (name, f) in [
        ("greedy", greedy as fn(_, _, _) -> _),
        ("lazy", lazy_greedy),
        ("llg", local_lazy_greedy),
    ] {
        let out = f(&graph, &bv, &obj).map_err(err)?;
        let edges = out.matching.sorted();
        runs.push(Run {
            algorithm: name,
            objective: evaluate_matching(&edges, &graph, &obj).map_err(err)?,
            maximal: verify_matching(&graph, &bv, &edges).map_err(err)?.maximal,
            edges,
            rounds: out.stats.rounds,
            pushes: out.stats.pushes,
        });
    }
    to_json(&MatchResult {
        vertices: n,
        edges: graph.edges().map(|(_, u, v, w)| (u, v, w)).collect(),
        b: bv.as_slice().to_vec(),
        runs,
    })
}

#[wasm_bindgen]
pub fn assign_tasks(loads: &str, machines: usize, alpha: f64, capacity: &str) -> std::result::Result<String, JsError> {
    assign_json(loads, machines, alpha, capacity).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn alpha_sweep(loads: &str, machines: usize, capacity: &str, steps: usize) -> std::result::Result<String, JsError> {
    alpha_sweep_json(loads, machines, capacity, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn random_match(n: usize, m: usize, b: i32, alpha: f64, seed: u32) -> std::result::Result<String, JsError> {
    random_match_json(n, m, b.into(), alpha, seed.into()).map_err(|e| JsError::new(&e))
}
