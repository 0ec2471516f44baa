use crate::error::{Error, Result};
use crate::graph::{BVector, EdgeId, Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub feasible: bool,
    pub maximal: bool,
    /// vertices matched more than b(v) times, with their matched count
    pub over_capacity: Vec<(VertexId, u32)>,
    /// an unmatched edge with spare capacity at both ends, if any
    pub augmentable: Option<EdgeId>,
}

/// Checks the degree constraints and maximality of an edge set. Repeated
/// ids count once.
pub fn verify_matching(graph: &Graph, b: &BVector, edges: &[EdgeId]) -> Result<Verification> {
    if b.len() != graph.num_vertices() {
        return Err(Error::domain("b vector length does not match the graph"));
    }
    let mut in_set = vec![false; graph.num_edges()];
    let mut used = vec![0u32; graph.num_vertices()];
    for &e in edges {
        graph.check_edge(e)?;
        if std::mem::replace(&mut in_set[e as usize], true) {
            continue;
        }
        let (u, v) = graph.endpoints(e);
        used[u as usize] += 1;
        used[v as usize] += 1;
    }
    let over_capacity: Vec<(VertexId, u32)> = used
        .iter()
        .enumerate()
        .filter(|&(v, &k)| k > b.get(v as VertexId))
        .map(|(v, &k)| (v as VertexId, k))
        .collect();
    let augmentable = graph
        .edges()
        .find(|&(e, u, v, _)| {
            !in_set[e as usize] && used[u as usize] < b.get(u) && used[v as usize] < b.get(v)
        })
        .map(|(e, ..)| e);
    Ok(Verification {
        feasible: over_capacity.is_empty(),
        maximal: augmentable.is_none(),
        over_capacity,
        augmentable,
    })
}
