use crate::error::{Error, Result};

use super::{Graph, VertexId};

/// Per-vertex capacities b(v), clamped to vertex degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BVector {
    b: Vec<u32>,
    beta: u32,
}

/// How capacities are requested before clamping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BSpec {
    Uniform(i64),
    PerVertex(Vec<i64>),
}

impl BVector {
    pub fn get(&self, v: VertexId) -> u32 {
        self.b[v as usize]
    }

    /// Largest capacity over all vertices (β).
    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.b.iter().map(|&x| x as u64).sum()
    }
}

/// Builds b(v) = min(requested(v), deg(v)).
pub fn make_b_vector(graph: &Graph, spec: &BSpec) -> Result<BVector> {
    let n = graph.num_vertices();
    let requested: Vec<i64> = match spec {
        BSpec::Uniform(x) => vec![*x; n],
        BSpec::PerVertex(list) => {
            if list.len() != n {
                return Err(Error::domain(format!(
                    "b list has {} entries for {n} vertices",
                    list.len()
                )));
            }
            list.clone()
        }
    };
    let mut b = Vec::with_capacity(n);
    for (v, &x) in requested.iter().enumerate() {
        if x < 0 {
            return Err(Error::domain(format!("negative b({v}) = {x}")));
        }
        let deg = graph.degree(v as VertexId) as i64;
        b.push(x.min(deg) as u32);
    }
    let beta = b.iter().copied().max().unwrap_or(0);
    Ok(BVector { b, beta })
}

/// Reads a b file: one integer per line, line i holds b of vertex i-1.
/// Blank lines are skipped.
pub fn parse_b_file(text: &str) -> Result<BSpec> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let x: i64 = t
            .parse()
            .map_err(|_| Error::parse(i + 1, format!("expected an integer, got {t:?}")))?;
        values.push(x);
    }
    Ok(BSpec::PerVertex(values))
}
