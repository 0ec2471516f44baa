use crate::error::{Error, Result};
use crate::graph::{BVector, EdgeId, Graph};
use crate::objective::Objective;

use super::Matching;

pub const BRUTE_FORCE_EDGE_LIMIT: usize = 22;

/// Exhaustive maximizer of f over all feasible b-matchings.
///
/// Enumerates subsets by depth-first include/exclude with capacity pruning
/// and scores each complete subset with a full [`Objective::evaluate`]. Among
/// equal values the first one found wins.
pub fn brute_force_optimal(
    graph: &Graph,
    b: &BVector,
    obj: &dyn Objective,
) -> Result<(Matching, f64)> {
    let m = graph.num_edges();
    if m > BRUTE_FORCE_EDGE_LIMIT {
        return Err(Error::Size {
            edges: m,
            limit: BRUTE_FORCE_EDGE_LIMIT,
        });
    }
    if b.len() != graph.num_vertices() {
        return Err(Error::domain("b vector length does not match the graph"));
    }
    let mut search = Search {
        graph,
        obj,
        residual: b.as_slice().to_vec(),
        chosen: Vec::new(),
        best: Vec::new(),
        best_value: f64::NEG_INFINITY,
    };
    search.descend(0);
    Ok((Matching::from_edges(search.best), search.best_value))
}

struct Search<'a> {
    graph: &'a Graph,
    obj: &'a dyn Objective,
    residual: Vec<u32>,
    chosen: Vec<EdgeId>,
    best: Vec<EdgeId>,
    best_value: f64,
}

impl Search<'_> {
    fn descend(&mut self, next: usize) {
        if next == self.graph.num_edges() {
            let value = self.obj.evaluate(self.graph, &self.chosen);
            if value > self.best_value {
                self.best_value = value;
                self.best = self.chosen.clone();
            }
            return;
        }
        let e = next as EdgeId;
        let (u, v) = self.graph.endpoints(e);
        let (u, v) = (u as usize, v as usize);
        if self.residual[u] > 0 && self.residual[v] > 0 {
            self.residual[u] -= 1;
            self.residual[v] -= 1;
            self.chosen.push(e);
            self.descend(next + 1);
            self.chosen.pop();
            self.residual[u] += 1;
            self.residual[v] += 1;
        }
        self.descend(next + 1);
    }
}
