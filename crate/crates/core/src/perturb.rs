//! Synthetic predictions: Gaussian position swaps.
//!
//! Positions are visited in order. Each draws an offset from
//! `Normal(0, S)`, rounded to the nearest integer, and the target position
//! `i + offset` is clamped into `1..=m`. If neither position has been
//! touched yet the two edges swap and both are marked; otherwise the edge
//! stays. A zero offset counts as a swap with itself.
//!
//! Randomness comes from ChaCha8 seeded with `seed ^ trial`, so a given
//! `(seed, trial, S)` yields the same prediction on every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::graph::EdgeSequence;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbConfig {
    /// Standard deviation of the offsets, in positions.
    pub s: f64,
    pub seed: u64,
    pub trials: usize,
}

impl PerturbConfig {
    pub fn trial_seed(&self, trial: usize) -> u64 {
        trial_seed(self.seed, trial)
    }
}

pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed ^ trial as u64
}

pub struct Perturbation {
    pub sequence: EdgeSequence,
    /// Indexed by 0-based position.
    pub modified: Vec<bool>,
}

/// Applies the swap rule to `sigma` with the given per-position offsets.
pub fn perturb_with_offsets(sigma: &EdgeSequence, offsets: impl IntoIterator<Item = i64>) -> Perturbation {
    let m = sigma.len();
    let mut edges = sigma.edges().to_vec();
    let mut modified = vec![false; m];
    for (i, offset) in offsets.into_iter().take(m).enumerate() {
        let target = (i as i64 + 1 + offset).clamp(1, m as i64) as usize - 1;
        if !modified[i] && !modified[target] {
            edges.swap(i, target);
            modified[i] = true;
            modified[target] = true;
        }
    }
    Perturbation {
        sequence: EdgeSequence::from_edges_unchecked(edges),
        modified,
    }
}

/// A prediction of `sigma` with offsets drawn from `Normal(0, s)`.
///
/// # Panics
///
/// If `s` is negative or not finite.
pub fn perturb(sigma: &EdgeSequence, s: f64, seed: u64) -> EdgeSequence {
    assert!(s.is_finite() && s >= 0.0, "standard deviation must be >= 0");
    if s == 0.0 {
        return sigma.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, s).expect("valid normal");
    let offsets = std::iter::repeat_with(move || normal.sample(&mut rng).round() as i64);
    perturb_with_offsets(sigma, offsets).sequence
}
