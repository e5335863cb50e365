//! Seeded random inputs.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::EdgeSequence;
use crate::ingest::densify;

/// `m` distinct non-loop arcs over `n` vertices, uniformly at random, in
/// random arrival order.
///
/// # Panics
///
/// If `m > n (n - 1)`.
pub fn random_digraph(n: usize, m: usize, rng: &mut impl Rng) -> EdgeSequence {
    assert!(m <= n * n.saturating_sub(1), "too many edges for {n} vertices");
    let mut seen = HashSet::with_capacity(m);
    let mut pairs = Vec::with_capacity(m);
    if 2 * m > n * (n - 1) {
        // dense: shuffle the complete arc set instead of rejection sampling
        let mut all: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        for i in 0..m {
            let j = rng.random_range(i..all.len());
            all.swap(i, j);
        }
        all.truncate(m);
        pairs = all;
    } else {
        while pairs.len() < m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v && seen.insert((u, v)) {
                pairs.push((u, v));
            }
        }
    }
    EdgeSequence::from_pairs(pairs).expect("generated pairs are distinct")
}

/// A random instance with `2 <= n <= n_max` and `1 <= m <= m_max`.
pub fn random_instance(seed: u64, n_max: usize, m_max: usize) -> (usize, EdgeSequence) {
    assert!(n_max >= 2 && m_max >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=n_max);
    let m = rng.random_range(1..=m_max.min(n * (n - 1)));
    (n, random_digraph(n, m, &mut rng))
}

/// An interaction stream shaped like a Q&A site: vertices join over time,
/// targets are picked by preferential attachment, and a share of arcs
/// answer an earlier arc in the reverse direction. Returns `(n, σ)` with
/// exactly `m` distinct arcs; `n` is close to `vertices`.
pub fn temporal_interactions(vertices: usize, m: usize, seed: u64) -> (usize, EdgeSequence) {
    assert!(vertices >= 2 && m >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let join = vertices as f64 / m as f64;
    let mut seen: HashSet<(u64, u64)> = HashSet::with_capacity(m);
    let mut arcs: Vec<(u64, u64)> = Vec::with_capacity(m);
    let mut joined: u64 = 2;
    let mut attempts = 0usize;

    while arcs.len() < m {
        attempts += 1;
        // vertices keep joining even if duplicates slow the arc count
        if attempts > 50 * m {
            joined += 1;
        }
        let (u, v) = if !arcs.is_empty() && rng.random_bool(0.25) {
            // reply to a recent arc
            let back = rng.random_range(0..arcs.len().min(2000));
            let (a, b) = arcs[arcs.len() - 1 - back];
            (b, a)
        } else {
            let u = if rng.random_bool(join.min(1.0)) && (joined as usize) < vertices {
                joined += 1;
                joined - 1
            } else {
                rng.random_range(0..joined)
            };
            let v = if !arcs.is_empty() && rng.random_bool(0.7) {
                let (a, b) = arcs[rng.random_range(0..arcs.len())];
                if rng.random_bool(0.5) {
                    a
                } else {
                    b
                }
            } else {
                rng.random_range(0..joined)
            };
            (u, v)
        };
        if u != v && seen.insert((u, v)) {
            arcs.push((u, v));
        }
    }
    densify(arcs.into_iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_and_sparse_generation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let full = random_digraph(5, 20, &mut rng);
        assert_eq!(full.len(), 20);
        let sparse = random_digraph(100, 50, &mut rng);
        assert_eq!(sparse.len(), 50);
        assert!(sparse.check_vertices(100).is_ok());
    }

    #[test]
    fn instances_respect_bounds() {
        for seed in 0..100 {
            let (n, sigma) = random_instance(seed, 10, 30);
            assert!((2..=10).contains(&n));
            assert!((1..=30).contains(&sigma.len()));
            assert!(sigma.check_vertices(n).is_ok());
        }
        assert_eq!(random_instance(5, 10, 30).1, random_instance(5, 10, 30).1);
    }

    #[test]
    fn interactions_have_cycles() {
        let (n, sigma) = temporal_interactions(300, 1000, 9);
        assert_eq!(sigma.len(), 1000);
        assert!(n <= 300 && n > 100);
        let parts = crate::graph::tarjan_scc(n, sigma.edges()).unwrap();
        assert!(parts.len() < n);
    }
}
