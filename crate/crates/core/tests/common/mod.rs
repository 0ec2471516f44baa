#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sbmatch::graph::{make_b_vector, BSpec, BVector, Graph};

pub struct Instance {
    pub graph: Graph,
    pub b: BVector,
    pub alpha: f64,
}

/// Random simple graph with at most `max_n` vertices and `max_m` edges,
/// real weights in [1, 5), b drawn from `b_choices` per vertex.
pub fn random_instance(seed: u64, max_n: usize, max_m: usize, b_choices: &[i64], alphas: &[f64]) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    // Fisher-Yates prefix
    let m = rng.gen_range(1..=max_m.min(pairs.len()));
    for i in 0..m {
        let j = rng.gen_range(i..pairs.len());
        pairs.swap(i, j);
    }
    let edges: Vec<_> = pairs[..m]
        .iter()
        .map(|&(u, v)| (u, v, rng.gen_range(1.0..5.0)))
        .collect();
    let graph = Graph::from_edges(n, edges).unwrap();
    let b: Vec<i64> = (0..n).map(|_| b_choices[rng.gen_range(0..b_choices.len())]).collect();
    let b = make_b_vector(&graph, &BSpec::PerVertex(b)).unwrap();
    let alpha = alphas[rng.gen_range(0..alphas.len())];
    Instance { graph, b, alpha }
}

/// Random graph with integer weights in 1..=5, so gains tie often.
pub fn random_tied_instance(seed: u64, n: usize, m: usize, b: i64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(1..=5) as f64))
        .collect();
    let graph = Graph::from_edges(n, edges).unwrap();
    let b = make_b_vector(&graph, &BSpec::Uniform(b)).unwrap();
    Instance { graph, b, alpha: 0.5 }
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}
