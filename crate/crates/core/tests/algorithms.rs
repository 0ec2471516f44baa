mod common;

use common::{random_instance, random_tied_instance, rel_diff};
use sbmatch::graph::{make_b_vector, BSpec, EdgeId, Graph};
use sbmatch::loadbalance::{build_assignment_instance, Capacity, TaskSet};
use sbmatch::matching::{
    audit_local_dominance, brute_force_optimal, greedy, lazy_evaluate, lazy_greedy,
    local_lazy_greedy, verify_matching, GainHeap, HeapEntry, MatchOutcome, MatchTrace,
    MatchingState, TraceEntry,
};
use sbmatch::objective::{evaluate_matching, ConcavePolynomial, Objective};
use sbmatch::{Error, Result};

type Algo = fn(&Graph, &sbmatch::graph::BVector, &dyn Objective) -> Result<MatchOutcome>;

const SERIAL: [(&str, Algo); 3] = [
    ("greedy", greedy),
    ("lazy", lazy_greedy),
    ("llg", local_lazy_greedy),
];

fn sqrt_obj() -> ConcavePolynomial {
    ConcavePolynomial::new(0.5).unwrap()
}

#[test]
fn empty_graph() {
    let g = Graph::from_edges(3, []).unwrap();
    let b = make_b_vector(&g, &BSpec::Uniform(1)).unwrap();
    for (name, algo) in SERIAL {
        let out = algo(&g, &b, &sqrt_obj()).unwrap();
        assert!(out.matching.is_empty(), "{name}");
        assert_eq!(evaluate_matching(out.matching.edges(), &g, &sqrt_obj()).unwrap(), 0.0);
    }
}

#[test]
fn path_of_two_edges() {
    // a-b (9), b-c (4); feasible matchings are {}, {ab}, {bc} with values 0, 6, 4
    let g = Graph::from_edges(3, [(0, 1, 9.0), (1, 2, 4.0)]).unwrap();
    let b = make_b_vector(&g, &BSpec::Uniform(1)).unwrap();
    let obj = sqrt_obj();
    let candidates: [&[EdgeId]; 3] = [&[], &[0], &[1]];
    let values: Vec<f64> = candidates
        .iter()
        .map(|m| evaluate_matching(m, &g, &obj).unwrap())
        .collect();
    assert_eq!(values, vec![0.0, 6.0, 4.0]);
    for (name, algo) in SERIAL {
        let out = algo(&g, &b, &obj).unwrap();
        assert_eq!(out.matching.sorted(), vec![0], "{name}");
        assert_eq!(evaluate_matching(out.matching.edges(), &g, &obj).unwrap(), 6.0);
    }
}

#[test]
fn worked_assignment_example() {
    let tasks = TaskSet::new(vec![300.0, 200.0, 100.0, 50.0]).unwrap();
    let inst = build_assignment_instance(&tasks, 2, Capacity::Auto).unwrap();
    for (name, algo) in SERIAL {
        let out = algo(&inst.graph, &inst.b, &sqrt_obj()).unwrap();
        let a = inst.assignment(&tasks, out.matching.edges()).unwrap();
        // machine 0 takes the 300 first (tie on machines goes to the smaller edge id)
        assert_eq!(a.machine_of, vec![0, 1, 1, 0], "{name}");
        assert_eq!(a.machine_loads, vec![350.0, 300.0], "{name}");
    }
}

#[test]
fn lazy_single_edge_counts() {
    let g = Graph::from_edges(2, [(0, 1, 2.0)]).unwrap();
    let b = make_b_vector(&g, &BSpec::Uniform(1)).unwrap();
    let out = lazy_greedy(&g, &b, &sqrt_obj()).unwrap();
    assert_eq!(out.matching.edges(), &[0]);
    assert_eq!((out.stats.pushes, out.stats.pops), (1, 1));
}

#[test]
fn equal_triangle_takes_smallest_id() {
    let g = Graph::from_edges(3, [(1, 2, 10.0), (0, 1, 10.0), (0, 2, 10.0)]).unwrap();
    let b = make_b_vector(&g, &BSpec::Uniform(1)).unwrap();
    for (name, algo) in SERIAL {
        let out = algo(&g, &b, &sqrt_obj()).unwrap();
        assert_eq!(out.matching.edges(), &[0], "{name}");
    }
}

#[test]
fn lazy_evaluate_skips_stale_top() {
    // e0 = (0,1) w 9, e1 = (0,2) w 4, e2 = (1,3) w 27 with b(1) = 2.
    // Once e2 is matched, e0 drops from 6 to 3 + (6 - sqrt 27) ~ 3.80 < 4.
    let g = Graph::from_edges(4, [(0, 1, 9.0), (0, 2, 4.0), (1, 3, 27.0)]).unwrap();
    let b = make_b_vector(&g, &BSpec::PerVertex(vec![1, 2, 1, 1])).unwrap();
    let obj = sqrt_obj();
    let mut state = MatchingState::new(&g, &b).unwrap();
    let mut heap = GainHeap::from_entries(vec![HeapEntry::new(6.0, 0), HeapEntry::new(4.0, 1)]);
    let g2 = state.gain(&g, &obj, 2).unwrap();
    state.commit(&g, 2, g2, 1);
    let expected_e0 = 3.0 + 36f64.sqrt() - 27f64.sqrt();
    assert!(expected_e0 < 4.0);

    let best = lazy_evaluate(&mut heap, &state, &g, &obj).unwrap().unwrap();
    assert_eq!(best.edge, 1);
    assert_eq!(best.gain, 4.0);
    assert_eq!(heap.counters.pushes, 3);

    // saturated top: e1 fills vertex 0, so e0 is dropped and e2 returned
    let e2_gain = 2.0 * 27f64.sqrt();
    let mut heap = GainHeap::from_entries(vec![HeapEntry::new(12.0, 0), HeapEntry::new(e2_gain, 2)]);
    let mut state = MatchingState::new(&g, &b).unwrap();
    state.commit(&g, 1, 4.0, 1);
    let best = lazy_evaluate(&mut heap, &state, &g, &obj).unwrap().unwrap();
    assert_eq!((best.edge, best.gain), (2, e2_gain));
    assert_eq!((heap.counters.pushes, heap.counters.pops), (2, 1));
    assert_eq!(heap.len(), 1);
}

#[test]
fn llg_disjoint_edges_same_round() {
    let g = Graph::from_edges(4, [(0, 1, 1.0), (2, 3, 5.0)]).unwrap();
    let b = make_b_vector(&g, &BSpec::Uniform(1)).unwrap();
    let out = local_lazy_greedy(&g, &b, &sqrt_obj()).unwrap();
    assert_eq!(out.matching.sorted(), vec![0, 1]);
    assert!(out.trace.entries().iter().all(|t| t.round == 1));
    assert_eq!(out.stats.per_round_matches, vec![1 + 1]);
}

#[test]
fn llg_decreasing_path() {
    // w1 > w2 > w3; brute force over the 5 matchings of a 3-edge path
    let g = Graph::from_edges(4, [(0, 1, 3.0), (1, 2, 2.0), (2, 3, 1.0)]).unwrap();
    let b = make_b_vector(&g, &BSpec::Uniform(1)).unwrap();
    let obj = ConcavePolynomial::new(1.0).unwrap();
    let (opt, f) = brute_force_optimal(&g, &b, &obj).unwrap();
    assert_eq!((opt.sorted(), f), (vec![0, 2], 8.0));
    let out = local_lazy_greedy(&g, &b, &obj).unwrap();
    assert_eq!(out.matching.sorted(), vec![0, 2]);
    let rounds: Vec<(EdgeId, u32)> = out.trace.entries().iter().map(|t| (t.edge, t.round)).collect();
    assert_eq!(rounds, vec![(0, 1), (2, 2)]);
    assert!(out.stats.rounds <= 2);
}

#[test]
fn non_local_objectives() {
    struct Generic;
    impl Objective for Generic {
        fn name(&self) -> String {
            "generic sqrt".into()
        }
        fn evaluate(&self, graph: &Graph, edges: &[EdgeId]) -> f64 {
            ConcavePolynomial::new(0.5).unwrap().evaluate(graph, edges)
        }
    }
    let inst = random_instance(5, 8, 12, &[1, 2], &[0.5]);
    let generic = greedy(&inst.graph, &inst.b, &Generic).unwrap();
    let local = greedy(&inst.graph, &inst.b, &sqrt_obj()).unwrap();
    assert_eq!(generic.matching, local.matching);
    assert!(matches!(lazy_greedy(&inst.graph, &inst.b, &Generic), Err(Error::Domain(_))));
    assert!(matches!(local_lazy_greedy(&inst.graph, &inst.b, &Generic), Err(Error::Domain(_))));
}

#[test]
fn invalid_gains_are_rejected() {
    struct Broken;
    impl Objective for Broken {
        fn name(&self) -> String {
            "broken".into()
        }
        fn evaluate(&self, _: &Graph, _: &[EdgeId]) -> f64 {
            0.0
        }
        fn is_local(&self) -> bool {
            true
        }
        fn gain(&self, _: &sbmatch::objective::GainContext<'_>, _: EdgeId) -> f64 {
            f64::NAN
        }
    }
    let g = Graph::from_edges(2, [(0, 1, 1.0)]).unwrap();
    let b = make_b_vector(&g, &BSpec::Uniform(1)).unwrap();
    for (name, algo) in SERIAL {
        assert!(matches!(algo(&g, &b, &Broken), Err(Error::Domain(_))), "{name}");
    }
}

#[test]
fn outputs_are_feasible_and_maximal() {
    for seed in 0..100 {
        let inst = random_instance(seed, 10, 25, &[0, 1, 2, 3], &[0.3, 0.5, 1.0]);
        let obj = ConcavePolynomial::new(inst.alpha).unwrap();
        for (name, algo) in SERIAL {
            let out = algo(&inst.graph, &inst.b, &obj).unwrap();
            let v = verify_matching(&inst.graph, &inst.b, out.matching.edges()).unwrap();
            assert!(v.feasible && v.maximal, "{name} seed {seed}: {v:?}");
        }
    }
}

#[test]
fn greedy_and_lazy_agree_exactly() {
    for seed in 0..100 {
        let inst = if seed % 2 == 0 {
            random_instance(seed, 12, 30, &[1, 2, 3], &[0.3, 0.5, 1.0])
        } else {
            random_tied_instance(seed, 12, 30, 2)
        };
        let obj = ConcavePolynomial::new(inst.alpha).unwrap();
        let g = greedy(&inst.graph, &inst.b, &obj).unwrap();
        let l = lazy_greedy(&inst.graph, &inst.b, &obj).unwrap();
        assert_eq!(g.matching, l.matching, "seed {seed}");
        assert_eq!(g.trace, l.trace, "seed {seed}");
    }
}

#[test]
fn approximation_against_brute_force() {
    for seed in 0..60 {
        let inst = random_instance(1000 + seed, 8, 14, &[1, 2], &[0.3, 0.5, 1.0]);
        let obj = ConcavePolynomial::new(inst.alpha).unwrap();
        let (_, opt) = brute_force_optimal(&inst.graph, &inst.b, &obj).unwrap();
        for (name, algo) in SERIAL {
            let out = algo(&inst.graph, &inst.b, &obj).unwrap();
            let f = evaluate_matching(out.matching.edges(), &inst.graph, &obj).unwrap();
            assert!(f >= opt / 3.0 - 1e-9, "{name} seed {seed}: {f} vs {opt}");
            assert!(f <= opt + 1e-9);
        }
    }
}

#[test]
fn traces_are_locally_dominant() {
    for seed in 0..100 {
        let inst = random_instance(2000 + seed, 10, 25, &[1, 2, 3], &[0.3, 0.5, 1.0]);
        let obj = ConcavePolynomial::new(inst.alpha).unwrap();
        for (name, algo) in SERIAL {
            let out = algo(&inst.graph, &inst.b, &obj).unwrap();
            let report = audit_local_dominance(&inst.graph, &inst.b, &obj, &out.trace, 1.0).unwrap();
            assert!(report.passed(), "{name} seed {seed}: {report:?}");
            assert_eq!(report.checked, out.trace.len());
        }
    }
}

#[test]
fn audit_flags_dominated_first_insertion() {
    let g = Graph::from_edges(3, [(0, 1, 9.0), (1, 2, 4.0)]).unwrap();
    let b = make_b_vector(&g, &BSpec::Uniform(1)).unwrap();
    let trace = MatchTrace::new(vec![TraceEntry {
        edge: 1,
        gain: 4.0,
        round: 1,
    }]);
    let report = audit_local_dominance(&g, &b, &sqrt_obj(), &trace, 1.0).unwrap();
    let v = report.violation.unwrap();
    assert_eq!((v.index, v.edge, v.rival), (0, 1, 0));
    // 4 >= 0.5 * 6, so the relaxed audit accepts it
    assert!(audit_local_dominance(&g, &b, &sqrt_obj(), &trace, 0.5).unwrap().passed());

    let inconsistent = MatchTrace::new(vec![
        TraceEntry { edge: 0, gain: 6.0, round: 1 },
        TraceEntry { edge: 1, gain: 4.0, round: 2 },
    ]);
    assert!(matches!(
        audit_local_dominance(&g, &b, &sqrt_obj(), &inconsistent, 1.0),
        Err(Error::Domain(_))
    ));
    assert!(audit_local_dominance(&g, &b, &sqrt_obj(), &trace, 0.0).is_err());
}

#[test]
fn push_bound_and_progress() {
    for seed in 0..100 {
        let inst = if seed % 3 == 0 {
            random_tied_instance(seed, 40, 300, 1 + (seed as i64 % 5))
        } else {
            random_instance(3000 + seed, 30, 200, &[1, 2, 3, 5], &[0.3, 0.5, 1.0])
        };
        let obj = ConcavePolynomial::new(inst.alpha).unwrap();
        let m = inst.graph.num_edges() as u64;
        let bound = m * (2 * inst.b.beta() as u64 + 1);
        for (name, algo) in [("lazy", lazy_greedy as Algo), ("llg", local_lazy_greedy)] {
            let out = algo(&inst.graph, &inst.b, &obj).unwrap();
            assert!(out.stats.pushes <= bound, "{name} seed {seed}: {} > {bound}", out.stats.pushes);
            assert!(out.stats.pops <= out.stats.pushes);
        }
        let llg = local_lazy_greedy(&inst.graph, &inst.b, &obj).unwrap();
        assert!(llg.stats.per_round_matches.iter().all(|&k| k >= 1));
        assert!(llg.stats.rounds as u64 <= inst.b.total());
        assert_eq!(
            llg.stats.per_round_matches.iter().map(|&k| k as usize).sum::<usize>(),
            llg.matching.len()
        );
    }
}

#[test]
fn lazy_and_llg_values_agree_without_ties() {
    for seed in 0..50 {
        let inst = random_instance(4000 + seed, 60, 400, &[1, 2, 5], &[0.3, 0.5, 1.0]);
        let obj = ConcavePolynomial::new(inst.alpha).unwrap();
        let l = lazy_greedy(&inst.graph, &inst.b, &obj).unwrap();
        let r = local_lazy_greedy(&inst.graph, &inst.b, &obj).unwrap();
        let fl = evaluate_matching(l.matching.edges(), &inst.graph, &obj).unwrap();
        let fr = evaluate_matching(r.matching.edges(), &inst.graph, &obj).unwrap();
        assert!(rel_diff(fl, fr) <= 1e-9, "seed {seed}: {fl} vs {fr}");
    }
}
