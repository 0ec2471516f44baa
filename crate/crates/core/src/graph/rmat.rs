use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::Graph;

/// Recursive-matrix generator parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RmatParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// log2 of the vertex count
    pub scale: u32,
    pub edge_factor: u32,
    pub seed: u64,
}

impl RmatParams {
    /// Graph 500 skewed-degree preset.
    pub fn g500(scale: u32, edge_factor: u32, seed: u64) -> Self {
        RmatParams {
            a: 0.57,
            b: 0.19,
            c: 0.19,
            d: 0.05,
            scale,
            edge_factor,
            seed,
        }
    }

    /// SSCA#2 preset.
    pub fn ssca(scale: u32, edge_factor: u32, seed: u64) -> Self {
        RmatParams {
            a: 0.6,
            b: 0.4 / 3.0,
            c: 0.4 / 3.0,
            d: 0.4 / 3.0,
            scale,
            edge_factor,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        let probs = [self.a, self.b, self.c, self.d];
        if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::domain(format!(
                "quadrant probabilities must lie in [0,1]: {probs:?}"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!(
                "quadrant probabilities sum to {sum}, expected 1"
            )));
        }
        if self.scale < 1 || self.scale > 31 {
            return Err(Error::domain(format!("scale {} outside 1..=31", self.scale)));
        }
        if self.edge_factor < 1 {
            return Err(Error::domain("edge factor must be at least 1"));
        }
        Ok(())
    }
}

/// Samples `edge_factor * 2^scale` directed pairs by recursive quadrant
/// descent, then symmetrizes. Self loops and repeated pairs are dropped
/// without resampling. All edges get weight 1.
pub fn generate_rmat(params: &RmatParams) -> Result<Graph> {
    params.validate()?;
    let n = 1usize << params.scale;
    let samples = n * params.edge_factor as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let ab = params.a + params.b;
    let abc = ab + params.c;
    let mut pairs = Vec::with_capacity(samples);
    for _ in 0..samples {
        let (mut row, mut col) = (0usize, 0usize);
        for _ in 0..params.scale {
            let r: f64 = rng.gen();
            row <<= 1;
            col <<= 1;
            if r < params.a {
            } else if r < ab {
                col |= 1;
            } else if r < abc {
                row |= 1;
            } else {
                row |= 1;
                col |= 1;
            }
        }
        pairs.push((row, col, 1.0));
    }
    Graph::from_edges(n, pairs)
}
