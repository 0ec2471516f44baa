use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// uniform over `[lo, hi)`
    Real,
    /// uniform over the integers in `[lo, hi]`
    Integer,
}

/// Replaces every weight by an i.i.d. uniform draw. Edge `e` always draws
/// from ChaCha stream `e` of `seed`, so the result does not depend on
/// iteration order.
pub fn assign_random_weights(
    graph: &Graph,
    lo: f64,
    hi: f64,
    seed: u64,
    mode: WeightMode,
) -> Result<Graph> {
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(Error::domain(format!("invalid weight range [{lo}, {hi}]")));
    }
    if lo < 0.0 {
        return Err(Error::domain(format!("weight range [{lo}, {hi}] allows negatives")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw: Box<dyn FnMut(&mut ChaCha8Rng) -> f64> = match mode {
        WeightMode::Real if lo == hi => Box::new(move |_| lo),
        WeightMode::Real => {
            let dist = Uniform::new(lo, hi);
            Box::new(move |r| dist.sample(r))
        }
        WeightMode::Integer => {
            let (a, b) = (lo.ceil() as i64, hi.floor() as i64);
            if a > b {
                return Err(Error::domain(format!("no integer in [{lo}, {hi}]")));
            }
            let dist = Uniform::new_inclusive(a, b);
            Box::new(move |r| dist.sample(r) as f64)
        }
    };
    let weights = (0..graph.num_edges() as u64)
        .map(|e| {
            rng.set_stream(e);
            rng.set_word_pos(0);
            draw(&mut rng)
        })
        .collect();
    graph.with_weights(weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_rmat, RmatParams};

    fn sample() -> Graph {
        generate_rmat(&RmatParams::g500(6, 8, 11)).unwrap()
    }

    #[test]
    fn degenerate_interval() {
        let g = assign_random_weights(&sample(), 3.0, 3.0, 1, WeightMode::Real).unwrap();
        assert!(g.weights().iter().all(|&w| w == 3.0));
    }

    #[test]
    fn real_range_and_distinct() {
        let g = assign_random_weights(&sample(), 1.0, 5.0, 9, WeightMode::Real).unwrap();
        let w = g.weights();
        assert!(w.iter().all(|&x| (1.0..5.0).contains(&x)));
        let mut sorted = w.to_vec();
        sorted.sort_by(f64::total_cmp);
        sorted.dedup();
        assert_eq!(sorted.len(), w.len());
    }

    #[test]
    fn integer_range() {
        let g = assign_random_weights(&sample(), 1.0, 5.0, 9, WeightMode::Integer).unwrap();
        assert!(g
            .weights()
            .iter()
            .all(|&x| x.fract() == 0.0 && (1.0..=5.0).contains(&x)));
        assert!(g.weights().contains(&5.0));
    }

    #[test]
    fn deterministic_per_seed() {
        let base = sample();
        let a = assign_random_weights(&base, 1.0, 5.0, 42, WeightMode::Real).unwrap();
        let b = assign_random_weights(&base, 1.0, 5.0, 42, WeightMode::Real).unwrap();
        let c = assign_random_weights(&base, 1.0, 5.0, 43, WeightMode::Real).unwrap();
        assert_eq!(a.weights(), b.weights());
        assert_ne!(a.weights(), c.weights());
    }

    #[test]
    fn rejects_inverted_range() {
        assert!(assign_random_weights(&sample(), 5.0, 1.0, 0, WeightMode::Real).is_err());
    }
}
