//! Serial b-matching algorithms and the checks around them.

mod audit;
mod greedy;
pub mod heap;
mod local;
mod oracle;
mod verify;

pub use audit::{audit_local_dominance, DominanceReport, DominanceViolation};
pub use greedy::{greedy, lazy_greedy};
pub use heap::{GainHeap, HeapCounters, HeapEntry, LazyHeap, VertexHeap, VertexHeaps};
pub use local::local_lazy_greedy;
pub use oracle::{brute_force_optimal, BRUTE_FORCE_EDGE_LIMIT};
pub use verify::{verify_matching, Verification};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BVector, EdgeId, Graph, VertexId};
use crate::objective::{GainContext, Objective, VertexLoads};

/// A matched edge set in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<EdgeId>,
}

impl Matching {
    pub fn from_edges(edges: Vec<EdgeId>) -> Self {
        Matching { edges }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edge ids in ascending order; the canonical form for comparisons.
    pub fn sorted(&self) -> Vec<EdgeId> {
        let mut v = self.edges.clone();
        v.sort_unstable();
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub edge: EdgeId,
    /// marginal gain at the moment of insertion
    pub gain: f64,
    pub round: u32,
}

/// Insertion log of a run. Greedy-type algorithms use one round per
/// insertion; the locally dominant algorithms record their matching round.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MatchTrace {
    entries: Vec<TraceEntry>,
}

impl MatchTrace {
    pub fn new(entries: Vec<TraceEntry>) -> Self {
        MatchTrace { entries }
    }

    pub fn entries(&self) -> &[TraceEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn push(&mut self, entry: TraceEntry) {
        self.entries.push(entry);
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MatchStats {
    pub pushes: u64,
    pub pops: u64,
    pub rounds: u32,
    /// matches committed in each round (locally dominant algorithms only)
    pub per_round_matches: Vec<u32>,
    /// time spent building heaps, excluded from the main loop timing
    pub init_ms: f64,
}

#[derive(Debug, Clone)]
pub struct MatchOutcome {
    pub matching: Matching,
    pub trace: MatchTrace,
    pub stats: MatchStats,
}

/// Mutable b-matching under construction.
#[derive(Debug, Clone)]
pub struct MatchingState {
    matched: Vec<bool>,
    residual: Vec<u32>,
    loads: VertexLoads,
    order: Vec<EdgeId>,
    trace: MatchTrace,
}

impl MatchingState {
    pub fn new(graph: &Graph, b: &BVector) -> Result<Self> {
        if b.len() != graph.num_vertices() {
            return Err(Error::domain(format!(
                "b vector has {} entries for {} vertices",
                b.len(),
                graph.num_vertices()
            )));
        }
        Ok(MatchingState {
            matched: vec![false; graph.num_edges()],
            residual: b.as_slice().to_vec(),
            loads: VertexLoads::new(graph.num_vertices()),
            order: Vec::new(),
            trace: MatchTrace::default(),
        })
    }

    pub fn is_matched(&self, e: EdgeId) -> bool {
        self.matched[e as usize]
    }

    pub fn residual(&self, v: VertexId) -> u32 {
        self.residual[v as usize]
    }

    pub fn loads(&self) -> &VertexLoads {
        &self.loads
    }

    pub fn cardinality(&self) -> usize {
        self.order.len()
    }

    pub fn matched_edges(&self) -> &[EdgeId] {
        &self.order
    }

    pub fn trace(&self) -> &MatchTrace {
        &self.trace
    }

    /// Unmatched with spare capacity at both endpoints.
    #[inline]
    pub fn is_available(&self, graph: &Graph, e: EdgeId) -> bool {
        let (u, v) = graph.endpoints(e);
        !self.matched[e as usize] && self.residual[u as usize] > 0 && self.residual[v as usize] > 0
    }

    /// Current marginal gain of `e`. Gains must be finite and non-negative.
    #[inline]
    pub fn gain(&self, graph: &Graph, obj: &dyn Objective, e: EdgeId) -> Result<f64> {
        let ctx = GainContext {
            graph,
            loads: &self.loads,
            matched: &self.order,
        };
        check_gain(obj.gain(&ctx, e), e)
    }

    /// Adds an available edge.
    pub fn commit(&mut self, graph: &Graph, e: EdgeId, gain: f64, round: u32) {
        debug_assert!(self.is_available(graph, e));
        let (u, v) = graph.endpoints(e);
        self.matched[e as usize] = true;
        self.residual[u as usize] -= 1;
        self.residual[v as usize] -= 1;
        self.loads.add_edge(graph, e);
        self.order.push(e);
        self.trace.push(TraceEntry { edge: e, gain, round });
    }

    pub(crate) fn into_parts(self) -> (Matching, MatchTrace) {
        (Matching::from_edges(self.order), self.trace)
    }
}

#[inline]
pub(crate) fn check_gain(g: f64, e: EdgeId) -> Result<f64> {
    if g.is_finite() && g >= 0.0 {
        Ok(g)
    } else {
        Err(Error::domain(format!(
            "objective returned invalid gain {g} for edge {e}"
        )))
    }
}

pub(crate) fn require_local(obj: &dyn Objective) -> Result<()> {
    if obj.is_local() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{} is not endpoint-local; only plain greedy supports it",
            obj.name()
        )))
    }
}

/// Initial gains f({e}) for every edge.
pub(crate) fn initial_gains(
    graph: &Graph,
    obj: &dyn Objective,
    state: &MatchingState,
) -> Result<Vec<f64>> {
    (0..graph.num_edges() as EdgeId)
        .map(|e| state.gain(graph, obj, e))
        .collect()
}

/// Lazy evaluation of one heap against the current state: returns the best
/// available edge with its refreshed gain, leaving it in the heap, or `None`
/// when the heap runs out of available edges.
pub fn lazy_evaluate<H: LazyHeap>(
    heap: &mut H,
    state: &MatchingState,
    graph: &Graph,
    obj: &dyn Objective,
) -> Result<Option<HeapEntry>> {
    heap::lazy_evaluate_with(
        heap,
        |e| state.is_available(graph, e),
        |e| state.gain(graph, obj, e),
    )
}
