//! Shared fixtures for the criterion benches.

use incscc::perturb::perturb;
use incscc::synthetic::temporal_interactions;
use incscc::EdgeSequence;

pub struct Fixture {
    pub n: usize,
    pub sigma: EdgeSequence,
}

impl Fixture {
    /// Synthetic interaction stream with about one vertex per three edges.
    pub fn interactions(m: usize, seed: u64) -> Self {
        let (n, sigma) = temporal_interactions((m / 3).max(2), m, seed);
        Fixture { n, sigma }
    }

    pub fn prediction(&self, s: f64, seed: u64) -> EdgeSequence {
        perturb(&self.sigma, s, seed)
    }
}
