//! Phase-synchronous shared-memory local lazy greedy.
//!
//! Each round runs a parallel update phase (refresh the pointer of every
//! claimed vertex on the worklist) and a parallel matching phase (detect
//! mutually pointing pairs). Rayon's join at the end of each phase is the
//! barrier. Matches found in a round are committed between phases in edge id
//! order, so the result and the trace equal the serial algorithm's for any
//! thread count.

use std::sync::atomic::{AtomicBool, AtomicU32, Ordering};
use crate::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{BVector, EdgeId, Graph, VertexId};
use crate::matching::heap::{lazy_evaluate_with, HeapCounters, HeapEntry, VertexHeap, VertexHeaps};
use crate::matching::{require_local, MatchOutcome, MatchStats, MatchingState};
use crate::objective::Objective;

const NO_EDGE: EdgeId = EdgeId::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParallelConfig {
    pub threads: usize,
    /// vertices per task in the phase loops
    pub chunk: usize,
}

impl ParallelConfig {
    pub fn new(threads: usize) -> Self {
        ParallelConfig { threads, chunk: 256 }
    }
}

/// Per-vertex test-and-set flags.
pub struct ClaimBits(Vec<AtomicBool>);

impl ClaimBits {
    pub fn new(n: usize) -> Self {
        ClaimBits((0..n).map(|_| AtomicBool::new(false)).collect())
    }

    /// True for exactly one caller per vertex until the bit is cleared.
    #[inline]
    pub fn claim(&self, v: VertexId) -> bool {
        !self.0[v as usize].swap(true, Ordering::AcqRel)
    }

    #[inline]
    pub fn is_set(&self, v: VertexId) -> bool {
        self.0[v as usize].load(Ordering::Acquire)
    }

    pub fn clear_all(&self, vertices: &[VertexId]) {
        vertices
            .par_iter()
            .for_each(|&v| self.0[v as usize].store(false, Ordering::Release));
    }
}

/// Per-vertex heaps shared across workers. A worker may only touch the heap
/// of a vertex it has claimed in the current update phase.
struct SharedHeaps<'a> {
    entries: *mut HeapEntry,
    offsets: &'a [usize],
    lens: *mut u32,
}

// SAFETY: access is partitioned per vertex by `ClaimBits`; see `vertex`.
unsafe impl Sync for SharedHeaps<'_> {}
unsafe impl Send for SharedHeaps<'_> {}

impl<'a> SharedHeaps<'a> {
    fn new(heaps: &'a mut VertexHeaps) -> Self {
        let (entries, offsets, lens) = heaps.raw_parts();
        SharedHeaps {
            entries,
            offsets,
            lens,
        }
    }

    /// # Safety
    /// The caller must hold the claim bit of `v` for the current phase, so
    /// no other reference to this vertex's heap exists.
    unsafe fn vertex<'b>(&'b self, v: VertexId, counters: &'b mut HeapCounters) -> VertexHeap<'b> {
        let v = v as usize;
        let start = self.offsets[v];
        let len = self.offsets[v + 1] - start;
        let data = std::slice::from_raw_parts_mut(self.entries.add(start), len);
        VertexHeap::new(data, &mut *self.lens.add(v), counters)
    }
}

/// Parallel local lazy greedy on a dedicated pool of `cfg.threads` workers.
pub fn parallel_local_lazy_greedy(
    graph: &Graph,
    b: &BVector,
    obj: &dyn Objective,
    cfg: &ParallelConfig,
) -> Result<MatchOutcome> {
    if cfg.threads == 0 {
        return Err(Error::domain("thread count must be at least 1"));
    }
    require_local(obj)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::domain(format!("cannot start thread pool: {e}")))?;
    pool.install(|| run(graph, b, obj, cfg.chunk.max(1)))
}

fn run(graph: &Graph, b: &BVector, obj: &dyn Objective, chunk: usize) -> Result<MatchOutcome> {
    let n = graph.num_vertices();
    let mut state = MatchingState::new(graph, b)?;

    let start = Instant::now();
    let gains: Vec<f64> = (0..graph.num_edges() as EdgeId)
        .into_par_iter()
        .map(|e| state.gain(graph, obj, e))
        .collect::<Result<_>>()?;
    let (mut heaps, mut counters) = VertexHeaps::build(graph, &gains);
    let init_ms = start.elapsed().as_secs_f64() * 1e3;
    let heaps = SharedHeaps::new(&mut heaps);

    let pointer: Vec<AtomicU32> = (0..n).map(|_| AtomicU32::new(NO_EDGE)).collect();
    let claimed = ClaimBits::new(n);
    let in_potential_m = ClaimBits::new(n);
    let mut potential_u: Vec<VertexId> = (0..n as VertexId).collect();
    let mut stats = MatchStats {
        init_ms,
        ..MatchStats::default()
    };

    loop {
        // update phase: state is read-only, each claimed vertex owns its heap
        let shared = &state;
        let parts: Vec<(Vec<VertexId>, HeapCounters)> = potential_u
            .par_chunks(chunk)
            .map(|vertices| {
                let mut local_m = Vec::new();
                let mut local_counters = HeapCounters::default();
                for &v in vertices {
                    if !claimed.claim(v) {
                        continue;
                    }
                    pointer[v as usize].store(NO_EDGE, Ordering::Relaxed);
                    if shared.residual(v) == 0 {
                        continue;
                    }
                    // SAFETY: `v` was claimed above; claims are cleared only
                    // after this phase has joined.
                    let mut heap = unsafe { heaps.vertex(v, &mut local_counters) };
                    let best = lazy_evaluate_with(
                        &mut heap,
                        |e| shared.is_available(graph, e),
                        |e| shared.gain(graph, obj, e),
                    )?;
                    if let Some(best) = best {
                        pointer[v as usize].store(best.edge, Ordering::Relaxed);
                        in_potential_m.claim(v);
                        local_m.push(v);
                    }
                }
                Ok((local_m, local_counters))
            })
            .collect::<Result<_>>()?;
        claimed.clear_all(&potential_u);
        let mut potential_m = Vec::with_capacity(parts.iter().map(|p| p.0.len()).sum());
        for (local_m, local_counters) in parts {
            potential_m.extend(local_m);
            counters += local_counters;
        }
        if potential_m.is_empty() {
            break;
        }

        // matching phase: the smaller endpoint commits, unless the larger
        // one is the only endpoint on the worklist
        let mut committed: Vec<EdgeId> = potential_m
            .par_chunks(chunk)
            .flat_map_iter(|vertices| {
                let mut local = Vec::new();
                for &u in vertices {
                    if !claimed.claim(u) {
                        continue;
                    }
                    let e = pointer[u as usize].load(Ordering::Relaxed);
                    let (a, c) = graph.endpoints(e);
                    let v = if a == u { c } else { a };
                    if pointer[v as usize].load(Ordering::Relaxed) == e
                        && shared.is_available(graph, e)
                        && (u < v || !in_potential_m.is_set(v))
                    {
                        local.push(e);
                    }
                }
                local
            })
            .collect();
        claimed.clear_all(&potential_m);
        in_potential_m.clear_all(&potential_m);
        if committed.is_empty() {
            debug_assert!(false, "round without a locally dominant pair");
            break;
        }

        // commit between the barriers
        committed.par_sort_unstable();
        stats.rounds += 1;
        stats.per_round_matches.push(committed.len() as u32);
        for &e in &committed {
            let g = state.gain(graph, obj, e)?;
            state.commit(graph, e, g, stats.rounds);
        }

        let shared = &state;
        potential_u = committed
            .par_chunks(chunk)
            .flat_map_iter(|edges| {
                let mut local = Vec::new();
                for &e in edges {
                    let (u, v) = graph.endpoints(e);
                    for x in [u, v] {
                        if shared.residual(x) > 0 {
                            local.push(x);
                        }
                        local.extend(
                            graph
                                .neighbors(x)
                                .iter()
                                .map(|inc| inc.neighbor)
                                .filter(|&y| shared.residual(y) > 0),
                        );
                    }
                }
                local
            })
            .collect();
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
