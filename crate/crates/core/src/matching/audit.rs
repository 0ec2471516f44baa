use crate::error::{Error, Result};
use crate::graph::{BVector, EdgeId, Graph};
use crate::objective::Objective;

use super::{MatchTrace, MatchingState};

const AUDIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct DominanceViolation {
    /// position in the trace
    pub index: usize,
    pub edge: EdgeId,
    pub gain: f64,
    /// the adjacent available edge with the largest gain
    pub rival: EdgeId,
    pub rival_gain: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominanceReport {
    pub epsilon: f64,
    pub checked: usize,
    pub violation: Option<DominanceViolation>,
}

impl DominanceReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Replays a trace and checks that every inserted edge was ε-locally
/// dominant: its gain at insertion is at least ε times the gain of every
/// available edge sharing an endpoint with it.
pub fn audit_local_dominance(
    graph: &Graph,
    b: &BVector,
    obj: &dyn Objective,
    trace: &MatchTrace,
    epsilon: f64,
) -> Result<DominanceReport> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::domain(format!("epsilon {epsilon} outside (0, 1]")));
    }
    let mut state = MatchingState::new(graph, b)?;
    let mut report = DominanceReport {
        epsilon,
        checked: 0,
        violation: None,
    };
    for (index, entry) in trace.entries().iter().enumerate() {
        let e = entry.edge;
        graph.check_edge(e)?;
        if !state.is_available(graph, e) {
            return Err(Error::domain(format!(
                "trace entry {index} inserts edge {e}, which is not available"
            )));
        }
        let gain = state.gain(graph, obj, e)?;
        let (u, v) = graph.endpoints(e);
        let mut rival: Option<(EdgeId, f64)> = None;
        for inc in graph.neighbors(u).iter().chain(graph.neighbors(v)) {
            let f = inc.edge;
            if f == e || !state.is_available(graph, f) {
                continue;
            }
            let g = state.gain(graph, obj, f)?;
            if rival.is_none_or(|(_, best)| g > best) {
                rival = Some((f, g));
            }
        }
        report.checked += 1;
        if let Some((f, g)) = rival {
            if gain < epsilon * g - AUDIT_TOL {
                report.violation = Some(DominanceViolation {
                    index,
                    edge: e,
                    gain,
                    rival: f,
                    rival_gain: g,
                });
                return Ok(report);
            }
        }
        state.commit(graph, e, gain, entry.round);
    }
    Ok(report)
}
