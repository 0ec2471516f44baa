use crate::Instant;

use crate::error::Result;
use crate::graph::{BVector, EdgeId, Graph, VertexId};
use crate::objective::Objective;

use super::heap::VertexHeaps;
use super::{initial_gains, lazy_evaluate, require_local, MatchOutcome, MatchStats, MatchingState};

pub(crate) const NO_EDGE: EdgeId = EdgeId::MAX;

/// Local lazy greedy: each vertex keeps a heap of its incident edges and
/// points at its best available one; mutually pointing pairs are locally
/// dominant and get matched together.
///
/// Rounds alternate an update phase over the `potential_u` worklist and a
/// matching phase over the vertices whose pointer was refreshed
/// (`potential_m`). Both worklists are append-only with a seen-bit filter.
/// The edges of a round are committed in edge id order.
pub fn local_lazy_greedy(graph: &Graph, b: &BVector, obj: &dyn Objective) -> Result<MatchOutcome> {
    require_local(obj)?;
    let n = graph.num_vertices();
    let mut state = MatchingState::new(graph, b)?;

    let start = Instant::now();
    let gains = initial_gains(graph, obj, &state)?;
    let (mut heaps, mut counters) = VertexHeaps::build(graph, &gains);
    let init_ms = start.elapsed().as_secs_f64() * 1e3;

    let mut pointer = vec![NO_EDGE; n];
    let mut seen = vec![false; n];
    let mut in_potential_m = vec![false; n];
    let mut potential_u: Vec<VertexId> = (0..n as VertexId).collect();
    let mut potential_m: Vec<VertexId> = Vec::new();
    let mut committed: Vec<EdgeId> = Vec::new();
    let mut stats = MatchStats {
        init_ms,
        ..MatchStats::default()
    };

    loop {
        // update
        potential_m.clear();
        for &v in &potential_u {
            if std::mem::replace(&mut seen[v as usize], true) {
                continue;
            }
            pointer[v as usize] = NO_EDGE;
            if state.residual(v) == 0 {
                continue;
            }
            let mut heap = heaps.vertex(v, &mut counters);
            if let Some(best) = lazy_evaluate(&mut heap, &state, graph, obj)? {
                pointer[v as usize] = best.edge;
                potential_m.push(v);
                in_potential_m[v as usize] = true;
            }
        }
        for &v in &potential_u {
            seen[v as usize] = false;
        }
        if potential_m.is_empty() {
            break;
        }

        // matching
        committed.clear();
        for &u in &potential_m {
            let e = pointer[u as usize];
            let (a, c) = graph.endpoints(e);
            let v = if a == u { c } else { a };
            if pointer[v as usize] == e
                && state.is_available(graph, e)
                && (u < v || !in_potential_m[v as usize])
            {
                committed.push(e);
            }
        }
        for &v in &potential_m {
            in_potential_m[v as usize] = false;
        }
        if committed.is_empty() {
            debug_assert!(false, "round without a locally dominant pair");
            break;
        }
        committed.sort_unstable();
        stats.rounds += 1;
        stats.per_round_matches.push(committed.len() as u32);
        for &e in &committed {
            let g = state.gain(graph, obj, e)?;
            state.commit(graph, e, g, stats.rounds);
        }

        potential_u.clear();
        for &e in &committed {
            let (u, v) = graph.endpoints(e);
            for x in [u, v] {
                if state.residual(x) > 0 {
                    potential_u.push(x);
                }
                potential_u.extend(
                    graph
                        .neighbors(x)
                        .iter()
                        .map(|inc| inc.neighbor)
                        .filter(|&y| state.residual(y) > 0),
                );
            }
        }
    }

    stats.pushes = counters.pushes;
    stats.pops = counters.pops;
    let (matching, trace) = state.into_parts();
    Ok(MatchOutcome {
        matching,
        trace,
        stats,
    })
}

