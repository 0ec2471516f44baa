//! Undirected weighted graphs in compressed adjacency form, plus the
//! per-vertex degree bounds used as b-matching capacities.

mod bvector;
mod mtx;
mod rmat;
mod weights;

pub use bvector::{make_b_vector, parse_b_file, BSpec, BVector};
pub use mtx::{parse_matrix_market, write_matrix_market};
pub use rmat::{generate_rmat, RmatParams};
pub use weights::{assign_random_weights, WeightMode};

use std::collections::HashSet;

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type EdgeId = u32;

/// One slot of a vertex's adjacency list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Incidence {
    pub neighbor: VertexId,
    pub edge: EdgeId,
}

/// Simple undirected edge-weighted graph.
///
/// Edge ids are dense in `0..num_edges()`. Every edge `(u, v)` is stored
/// with `u < v` and appears once in the adjacency list of each endpoint.
/// Adjacency lists are sorted by neighbor id.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    adjacency: Vec<Incidence>,
    endpoints: Vec<(VertexId, VertexId)>,
    weights: Vec<f64>,
    max_degree: usize,
}

impl Graph {
    /// Builds a graph from an edge stream. Self loops are dropped and for
    /// duplicate pairs (in either orientation) the first occurrence wins.
    /// Edge ids follow first-occurrence order.
    pub fn from_edges<I>(num_vertices: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if num_vertices > VertexId::MAX as usize {
            return Err(Error::domain(format!(
                "{num_vertices} vertices exceed the supported id range"
            )));
        }
        let mut seen = HashSet::new();
        let mut endpoints = Vec::new();
        let mut weights = Vec::new();
        for (a, b, w) in edges {
            if a >= num_vertices || b >= num_vertices {
                return Err(Error::domain(format!(
                    "edge ({a}, {b}) out of range for {num_vertices} vertices"
                )));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::domain(format!(
                    "edge ({a}, {b}) has invalid weight {w}"
                )));
            }
            if a == b {
                continue;
            }
            let key = (a.min(b) as VertexId, a.max(b) as VertexId);
            if seen.insert(key) {
                endpoints.push(key);
                weights.push(w);
            }
        }
        if endpoints.len() > EdgeId::MAX as usize {
            return Err(Error::domain("too many edges"));
        }
        Ok(Self::from_parts(num_vertices, endpoints, weights))
    }

    fn from_parts(n: usize, endpoints: Vec<(VertexId, VertexId)>, weights: Vec<f64>) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in &endpoints {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut adjacency = vec![
            Incidence {
                neighbor: 0,
                edge: 0
            };
            2 * endpoints.len()
        ];
        for (e, &(u, v)) in endpoints.iter().enumerate() {
            adjacency[fill[u as usize]] = Incidence {
                neighbor: v,
                edge: e as EdgeId,
            };
            fill[u as usize] += 1;
            adjacency[fill[v as usize]] = Incidence {
                neighbor: u,
                edge: e as EdgeId,
            };
            fill[v as usize] += 1;
        }
        for v in 0..n {
            adjacency[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        let max_degree = degree.iter().copied().max().unwrap_or(0);
        Graph {
            offsets,
            adjacency,
            endpoints,
            weights,
            max_degree,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.endpoints.len()
    }

    /// Maximum vertex degree (Δ).
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Incident edges of `v`, sorted by neighbor id.
    pub fn neighbors(&self, v: VertexId) -> &[Incidence] {
        let v = v as usize;
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.endpoints[e as usize]
    }

    pub fn weight(&self, e: EdgeId) -> f64 {
        self.weights[e as usize]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Iterates `(edge id, u, v, weight)` in edge id order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId, f64)> + '_ {
        self.endpoints
            .iter()
            .zip(&self.weights)
            .enumerate()
            .map(|(e, (&(u, v), &w))| (e as EdgeId, u, v, w))
    }

    /// Same topology with replacement weights.
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.num_edges() {
            return Err(Error::domain(format!(
                "expected {} weights, got {}",
                self.num_edges(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::domain(format!("invalid weight {w}")));
        }
        Ok(Graph {
            weights,
            ..self.clone()
        })
    }

    /// Looks up the edge id joining `u` and `v`.
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if u as usize >= self.num_vertices() || v as usize >= self.num_vertices() {
            return None;
        }
        let adj = self.neighbors(u);
        adj.binary_search_by_key(&v, |i| i.neighbor)
            .ok()
            .map(|i| adj[i].edge)
    }

    pub(crate) fn check_edge(&self, e: EdgeId) -> Result<()> {
        if (e as usize) < self.num_edges() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "edge id {e} out of range ({} edges)",
                self.num_edges()
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, [(1, 0, 5.0), (2, 0, 2.0), (2, 1, 1.0)]).unwrap()
    }

    #[test]
    fn adjacency_is_consistent() {
        let g = triangle();
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.max_degree(), 2);
        let total: usize = (0..3).map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.num_edges());
        for (e, u, v, _) in g.edges() {
            assert!(u < v);
            assert_eq!(g.neighbors(u).iter().filter(|i| i.edge == e).count(), 1);
            assert_eq!(g.neighbors(v).iter().filter(|i| i.edge == e).count(), 1);
        }
        assert_eq!(g.find_edge(2, 0), Some(1));
        assert_eq!(g.find_edge(0, 0), None);
    }

    #[test]
    fn drops_loops_and_duplicates() {
        let g = Graph::from_edges(3, [(0, 0, 1.0), (0, 1, 4.0), (1, 0, 9.0)]).unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.weight(0), 4.0);
    }

    #[test]
    fn rejects_negative_weight() {
        assert!(matches!(
            Graph::from_edges(2, [(0, 1, -1.0)]),
            Err(Error::Domain(_))
        ));
    }
}
