use crate::Instant;

use crate::error::Result;
use crate::graph::{BVector, EdgeId, Graph};
use crate::objective::Objective;

use super::heap::{GainHeap, HeapEntry, LazyHeap};
use super::{initial_gains, require_local, MatchOutcome, MatchStats, MatchingState};

/// Plain greedy: every step scans all available edges and adds the one with
/// the largest current gain (smaller edge id on ties). Works for any
/// objective, local or not.
pub fn greedy(graph: &Graph, b: &BVector, obj: &dyn Objective) -> Result<MatchOutcome> {
    let mut state = MatchingState::new(graph, b)?;
    let mut round = 0;
    loop {
        let mut best: Option<HeapEntry> = None;
        for e in 0..graph.num_edges() as EdgeId {
            if !state.is_available(graph, e) {
                continue;
            }
            let candidate = HeapEntry::new(state.gain(graph, obj, e)?, e);
            if best.is_none_or(|b| candidate > b) {
                best = Some(candidate);
            }
        }
        let Some(best) = best else { break };
        round += 1;
        state.commit(graph, best.edge, best.gain, round);
    }
    let (matching, trace) = state.into_parts();
    Ok(MatchOutcome {
        matching,
        trace,
        stats: MatchStats {
            rounds: round,
            ..MatchStats::default()
        },
    })
}

/// Lazy greedy over one global heap of cached gains.
///
/// The popped edge is matched when its refreshed gain still ranks at or above
/// the next cached key; otherwise it goes back with the new gain. Popped
/// edges that are no longer available are dropped for good.
pub fn lazy_greedy(graph: &Graph, b: &BVector, obj: &dyn Objective) -> Result<MatchOutcome> {
    require_local(obj)?;
    let mut state = MatchingState::new(graph, b)?;
    let start = Instant::now();
    let gains = initial_gains(graph, obj, &state)?;
    let mut heap = GainHeap::from_entries(
        gains
            .into_iter()
            .enumerate()
            .map(|(e, g)| HeapEntry::new(g, e as EdgeId))
            .collect(),
    );
    let init_ms = start.elapsed().as_secs_f64() * 1e3;

    let mut round = 0;
    while let Some(top) = heap.pop() {
        if !state.is_available(graph, top.edge) {
            continue;
        }
        let fresh = HeapEntry::new(state.gain(graph, obj, top.edge)?, top.edge);
        if heap.peek().is_none_or(|next| fresh >= next) {
            round += 1;
            state.commit(graph, fresh.edge, fresh.gain, round);
        } else {
            heap.push(fresh);
        }
    }
    let (matching, trace) = state.into_parts();
    Ok(MatchOutcome {
        matching,
        trace,
        stats: MatchStats {
            pushes: heap.counters.pushes,
            pops: heap.counters.pops,
            rounds: round,
            per_round_matches: Vec::new(),
            init_ms,
        },
    })
}
