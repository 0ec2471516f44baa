//! Monotone normalized submodular objectives over edge sets.
//!
//! Heap-based algorithms need gains computable from endpoint state alone
//! ([`Objective::is_local`]); the concave polynomial objective
//! `f(M) = Σ_v (Σ_{e ∈ M ∩ δ(v)} W(e))^α` qualifies.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

/// Matched weight accumulated at each vertex, S(v).
#[derive(Debug, Clone, PartialEq)]
pub struct VertexLoads(Vec<f64>);

impl VertexLoads {
    pub fn new(num_vertices: usize) -> Self {
        VertexLoads(vec![0.0; num_vertices])
    }

    /// Recomputes loads from scratch for an edge set.
    pub fn from_edges(graph: &Graph, edges: &[EdgeId]) -> Self {
        let mut loads = Self::new(graph.num_vertices());
        for &e in edges {
            loads.add_edge(graph, e);
        }
        loads
    }

    pub fn get(&self, v: VertexId) -> f64 {
        self.0[v as usize]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn add_edge(&mut self, graph: &Graph, e: EdgeId) {
        let (u, v) = graph.endpoints(e);
        let w = graph.weight(e);
        self.0[u as usize] += w;
        self.0[v as usize] += w;
    }
}

/// What a gain evaluation may look at: the current loads and, for
/// non-local objectives, the matched edges themselves.
#[derive(Clone, Copy)]
pub struct GainContext<'a> {
    pub graph: &'a Graph,
    pub loads: &'a VertexLoads,
    pub matched: &'a [EdgeId],
}

pub trait Objective: Send + Sync {
    fn name(&self) -> String;

    /// f(edges). Must return 0 for the empty set.
    fn evaluate(&self, graph: &Graph, edges: &[EdgeId]) -> f64;

    /// Whether [`Objective::gain`] depends only on the endpoint loads of the
    /// edge, so matching an edge changes gains of adjacent edges only.
    fn is_local(&self) -> bool {
        false
    }

    /// Marginal gain f(M ∪ {e}) − f(M) for an unmatched `e`.
    fn gain(&self, ctx: &GainContext<'_>, e: EdgeId) -> f64 {
        let mut with = ctx.matched.to_vec();
        with.push(e);
        self.evaluate(ctx.graph, &with) - self.evaluate(ctx.graph, ctx.matched)
    }
}

/// Σ_v S(v)^α for α ∈ [0, 1]; α = 1 is the modular (linear weight) case
/// with every edge counted at both endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcavePolynomial {
    alpha: f64,
}

impl ConcavePolynomial {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::domain(format!("alpha {alpha} outside [0, 1]")));
        }
        Ok(ConcavePolynomial { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn vertex_value(&self, load: f64) -> f64 {
        if load <= 0.0 {
            0.0
        } else if self.alpha == 1.0 {
            load
        } else if self.alpha == 0.5 {
            load.sqrt()
        } else {
            load.powf(self.alpha)
        }
    }

    /// (S(u)+w)^α − S(u)^α + (S(v)+w)^α − S(v)^α
    #[inline]
    pub fn edge_gain(&self, load_u: f64, load_v: f64, w: f64) -> f64 {
        self.vertex_value(load_u + w) - self.vertex_value(load_u) + self.vertex_value(load_v + w)
            - self.vertex_value(load_v)
    }
}

impl Objective for ConcavePolynomial {
    fn name(&self) -> String {
        format!("concave-polynomial(alpha={})", self.alpha)
    }

    fn evaluate(&self, graph: &Graph, edges: &[EdgeId]) -> f64 {
        VertexLoads::from_edges(graph, edges)
            .as_slice()
            .iter()
            .map(|&s| self.vertex_value(s))
            .sum()
    }

    fn is_local(&self) -> bool {
        true
    }

    #[inline]
    fn gain(&self, ctx: &GainContext<'_>, e: EdgeId) -> f64 {
        let (u, v) = ctx.graph.endpoints(e);
        self.edge_gain(ctx.loads.get(u), ctx.loads.get(v), ctx.graph.weight(e))
    }
}

/// Gain of `e` at the given loads with the α-check done up front.
pub fn concave_gain(load_u: f64, load_v: f64, w: f64, alpha: f64) -> Result<f64> {
    Ok(ConcavePolynomial::new(alpha)?.edge_gain(load_u, load_v, w))
}

/// f(M) for an edge set; repeated ids count once.
pub fn evaluate_matching(edges: &[EdgeId], graph: &Graph, obj: &dyn Objective) -> Result<f64> {
    for &e in edges {
        graph.check_edge(e)?;
    }
    let mut set = edges.to_vec();
    set.sort_unstable();
    set.dedup();
    Ok(obj.evaluate(graph, &set))
}

/// One sampled diminishing-returns comparison that failed.
#[derive(Debug, Clone, PartialEq)]
pub struct SubmodularityViolation {
    pub smaller: Vec<EdgeId>,
    pub larger: Vec<EdgeId>,
    pub edge: EdgeId,
    pub gain_smaller: f64,
    pub gain_larger: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubmodularityReport {
    pub trials: usize,
    /// comparisons where both gains agreed to within tolerance
    pub equalities: usize,
    pub violation: Option<SubmodularityViolation>,
}

impl SubmodularityReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

const SUBMODULAR_TOL: f64 = 1e-9;

/// Samples nested sets A ⊆ B and an edge e ∉ B, checking
/// 0 ≤ f(B+e) − f(B) ≤ f(A+e) − f(A) + tol. Gains come from direct
/// evaluation, never from [`Objective::gain`].
pub fn check_submodularity(
    obj: &dyn Objective,
    graph: &Graph,
    trials: usize,
    seed: u64,
) -> Result<SubmodularityReport> {
    let m = graph.num_edges();
    if m > 20 {
        return Err(Error::Size { edges: m, limit: 20 });
    }
    let mut report = SubmodularityReport {
        trials: 0,
        equalities: 0,
        violation: None,
    };
    if m == 0 {
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<EdgeId> = (0..m as EdgeId).collect();
    let marginal = |set: &[EdgeId], e: EdgeId| {
        let mut with = set.to_vec();
        with.push(e);
        obj.evaluate(graph, &with) - obj.evaluate(graph, set)
    };
    for _ in 0..trials {
        let mut order = ids.clone();
        order.shuffle(&mut rng);
        let edge = order[0];
        let b_len = rng.gen_range(0..m);
        let larger: Vec<EdgeId> = order[1..=b_len].to_vec();
        let a_len = rng.gen_range(0..=b_len);
        let smaller: Vec<EdgeId> = larger[..a_len].to_vec();
        let gain_smaller = marginal(&smaller, edge);
        let gain_larger = marginal(&larger, edge);
        report.trials += 1;
        if (gain_smaller - gain_larger).abs() <= SUBMODULAR_TOL {
            report.equalities += 1;
        }
        let monotone = gain_smaller >= -SUBMODULAR_TOL && gain_larger >= -SUBMODULAR_TOL;
        if !monotone || gain_smaller < gain_larger - SUBMODULAR_TOL {
            report.violation = Some(SubmodularityViolation {
                smaller,
                larger,
                edge,
                gain_smaller,
                gain_larger,
            });
            break;
        }
    }
    Ok(report)
}
