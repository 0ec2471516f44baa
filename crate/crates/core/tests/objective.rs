mod common;

use common::{random_instance, rel_diff};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sbmatch::graph::{EdgeId, Graph};
use sbmatch::objective::{
    check_submodularity, evaluate_matching, ConcavePolynomial, GainContext, Objective, VertexLoads,
};

/// Vertex-separable Σ S(v)^2: supermodular, used to check that the
/// sampler catches violations.
struct Squares;

impl Objective for Squares {
    fn name(&self) -> String {
        "squares".into()
    }
    fn evaluate(&self, graph: &Graph, edges: &[EdgeId]) -> f64 {
        VertexLoads::from_edges(graph, edges)
            .as_slice()
            .iter()
            .map(|s| s * s)
            .sum()
    }
}

fn gains_in_order(graph: &Graph, obj: &dyn Objective, order: &[EdgeId]) -> Vec<f64> {
    let mut loads = VertexLoads::new(graph.num_vertices());
    let mut matched = Vec::new();
    let mut gains = Vec::new();
    for &e in order {
        let ctx = GainContext { graph, loads: &loads, matched: &matched };
        gains.push(obj.gain(&ctx, e));
        loads.add_edge(graph, e);
        matched.push(e);
    }
    gains
}

#[test]
fn telescoping_over_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for seed in 0..50 {
        let inst = random_instance(seed, 10, 20, &[1], &[0.0, 0.3, 0.5, 0.8, 1.0]);
        let obj = ConcavePolynomial::new(inst.alpha).unwrap();
        let mut set: Vec<EdgeId> = (0..inst.graph.num_edges() as EdgeId).collect();
        set.truncate(1 + seed as usize % set.len());
        let direct = evaluate_matching(&set, &inst.graph, &obj).unwrap();
        for _ in 0..10 {
            set.shuffle(&mut rng);
            let total: f64 = gains_in_order(&inst.graph, &obj, &set).iter().sum();
            assert!(rel_diff(total, direct) <= 1e-9, "seed {seed}: {total} vs {direct}");
        }
    }
}

#[test]
fn diminishing_returns_sampling() {
    for (i, alpha) in [0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0].into_iter().enumerate() {
        let inst = random_instance(100 + i as u64, 8, 16, &[1], &[alpha]);
        let obj = ConcavePolynomial::new(alpha).unwrap();
        let report = check_submodularity(&obj, &inst.graph, 500, 7).unwrap();
        assert!(report.passed(), "alpha {alpha}: {report:?}");
        assert_eq!(report.trials, 500);
        if alpha == 1.0 {
            assert_eq!(report.equalities, report.trials);
        }
    }
}

#[test]
fn supermodular_double_fails() {
    let g = Graph::from_edges(4, [(0, 1, 2.0), (1, 2, 3.0), (2, 3, 1.0), (0, 3, 4.0)]).unwrap();
    let report = check_submodularity(&Squares, &g, 200, 3).unwrap();
    let v = report.violation.expect("x^2 is supermodular");
    assert!(v.gain_smaller < v.gain_larger);
    assert!(v.smaller.iter().all(|e| v.larger.contains(e)));
    assert!(!v.larger.contains(&v.edge));
}

#[test]
fn submodularity_guard() {
    let edges: Vec<_> = (0..21).map(|i| (i, i + 1, 1.0)).collect();
    let g = Graph::from_edges(22, edges).unwrap();
    assert!(check_submodularity(&ConcavePolynomial::new(0.5).unwrap(), &g, 1, 0).is_err());
}

#[test]
fn gains_change_only_next_to_the_inserted_edge() {
    for seed in 0..30 {
        let inst = random_instance(500 + seed, 10, 30, &[1], &[0.3, 0.5]);
        let g = &inst.graph;
        let obj = ConcavePolynomial::new(inst.alpha).unwrap();
        let mut loads = VertexLoads::new(g.num_vertices());
        let mut matched: Vec<EdgeId> = Vec::new();
        for inserted in 0..g.num_edges() as EdgeId {
            let before: Vec<f64> = (0..g.num_edges() as EdgeId)
                .map(|e| obj.gain(&GainContext { graph: g, loads: &loads, matched: &matched }, e))
                .collect();
            loads.add_edge(g, inserted);
            matched.push(inserted);
            let (a, b) = g.endpoints(inserted);
            for e in 0..g.num_edges() as EdgeId {
                let after = obj.gain(&GainContext { graph: g, loads: &loads, matched: &matched }, e);
                let (u, v) = g.endpoints(e);
                let adjacent = [u, v].iter().any(|x| *x == a || *x == b);
                if !adjacent {
                    assert_eq!(after, before[e as usize]);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn incremental_loads_match_recomputation(
        weights in proptest::collection::vec(0.0f64..1e6, 1..30),
        picks in proptest::collection::vec(0usize..1000, 0..40),
    ) {
        let n = 12;
        let edges: Vec<_> = weights.iter().enumerate()
            .map(|(i, &w)| (i % n, (i * 7 + 1) % n, w))
            .collect();
        let g = Graph::from_edges(n, edges).unwrap();
        prop_assume!(g.num_edges() > 0);
        let mut loads = VertexLoads::new(n);
        let mut chosen = Vec::new();
        for p in picks {
            let e = (p % g.num_edges()) as EdgeId;
            loads.add_edge(&g, e);
            chosen.push(e);
        }
        let scratch = VertexLoads::from_edges(&g, &chosen);
        for (a, b) in loads.as_slice().iter().zip(scratch.as_slice()) {
            prop_assert!(rel_diff(*a, *b) <= 1e-12 || a == b);
        }
    }

    #[test]
    fn gains_are_monotone_and_diminishing(
        alpha in 0.0f64..=1.0,
        su in 0.0f64..1e4,
        sv in 0.0f64..1e4,
        extra in 0.0f64..1e4,
        w in 0.0f64..1e3,
    ) {
        let obj = ConcavePolynomial::new(alpha).unwrap();
        let g0 = obj.edge_gain(su, sv, w);
        let g1 = obj.edge_gain(su + extra, sv, w);
        prop_assert!(g0 >= 0.0 && g1 >= 0.0);
        prop_assert!(g1 <= g0 + 1e-9 * g0.max(1.0));
    }
}
