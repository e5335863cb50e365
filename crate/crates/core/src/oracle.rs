//! Brute-force ground truth: a fresh Tarjan run on every prefix.

use crate::graph::{tarjan_scc, EdgeSequence, SccPartition, Time, VertexId};
use crate::IncrementalScc;

/// SCC partition of `G_t` for every `t` in `0..=m`.
#[derive(Clone, Debug)]
pub struct SnapshotSeries {
    snapshots: Vec<SccPartition>,
}

impl SnapshotSeries {
    pub fn at(&self, t: Time) -> &SccPartition {
        &self.snapshots[t]
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SccPartition> {
        self.snapshots.iter()
    }
}

/// Recomputes the partition from scratch after each prefix; `O(m (n + m))`.
pub fn scc_snapshots(n: usize, sigma: &EdgeSequence) -> SnapshotSeries {
    let edges = sigma.edges();
    let snapshots = (0..=edges.len())
        .map(|t| tarjan_scc(n, &edges[..t]).expect("oracle input out of range"))
        .collect();
    SnapshotSeries { snapshots }
}

/// First `t` at which `u` and `v` share an SCC in the prefix graph of `seq`.
pub fn combining_time(n: usize, u: VertexId, v: VertexId, seq: &EdgeSequence) -> Option<Time> {
    let edges = seq.edges();
    (1..=edges.len()).find(|&t| {
        tarjan_scc(n, &edges[..t])
            .expect("oracle input out of range")
            .same(u, v)
    })
}

/// Combining times of all vertex pairs of one sequence.
#[derive(Clone, Debug)]
pub struct CombiningTimes {
    n: usize,
    times: Vec<Option<Time>>,
}

impl CombiningTimes {
    pub fn compute(n: usize, seq: &EdgeSequence) -> Self {
        let mut times = vec![None; n * n];
        for (t, snap) in scc_snapshots(n, seq).iter().enumerate().skip(1) {
            for members in &snap.components {
                for &a in members {
                    for &b in members {
                        let slot = &mut times[a * n + b];
                        if a != b && slot.is_none() {
                            *slot = Some(t);
                        }
                    }
                }
            }
        }
        CombiningTimes { n, times }
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> Option<Time> {
        self.times[u * self.n + v]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceReport {
    Success {
        inserts: usize,
    },
    Divergence {
        t: Time,
        u: VertexId,
        v: VertexId,
        expected: bool,
    },
    Error {
        t: Time,
        message: String,
    },
}

impl EquivalenceReport {
    pub fn is_success(&self) -> bool {
        matches!(self, EquivalenceReport::Success { .. })
    }
}

impl std::fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EquivalenceReport::Success { inserts } => write!(f, "ok after {inserts} inserts"),
            EquivalenceReport::Divergence { t, u, v, expected } => {
                write!(f, "diverged at t={t}: same_scc({u}, {v}) should be {expected}")
            }
            EquivalenceReport::Error { t, message } => write!(f, "insert {t} failed: {message}"),
        }
    }
}

/// Drives `algo` through `sigma`, comparing its partition with the oracle's
/// after every insert.
pub fn check_equivalence(algo: &mut dyn IncrementalScc, sigma: &EdgeSequence) -> EquivalenceReport {
    let n = algo.vertex_count();
    let truth = scc_snapshots(n, sigma);
    for (i, e) in sigma.iter().enumerate() {
        let t = i + 1;
        if let Err(err) = algo.insert(e) {
            return EquivalenceReport::Error {
                t,
                message: err.to_string(),
            };
        }
        let expected = truth.at(t).canonical();
        for u in 0..n {
            for v in 0..u {
                let want = expected[u] == expected[v];
                if algo.same_scc(u, v) != want {
                    return EquivalenceReport::Divergence {
                        t,
                        u: v,
                        v: u,
                        expected: want,
                    };
                }
            }
        }
    }
    EquivalenceReport::Success { inserts: sigma.len() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> EdgeSequence {
        EdgeSequence::from_pairs([(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn triangle_snapshots() {
        let s = scc_snapshots(3, &triangle());
        assert_eq!(s.len(), 4);
        for t in 0..3 {
            assert_eq!(s.at(t).len(), 3);
        }
        assert_eq!(s.at(3).len(), 1);
    }

    #[test]
    fn empty_sequence() {
        let s = scc_snapshots(4, &EdgeSequence::from_pairs(std::iter::empty()).unwrap());
        assert_eq!(s.len(), 1);
        assert_eq!(s.at(0).len(), 4);
    }

    #[test]
    fn triangle_combining_times() {
        assert_eq!(combining_time(3, 0, 2, &triangle()), Some(3));
        assert_eq!(combining_time(3, 2, 0, &triangle()), Some(3));
        let path = EdgeSequence::from_pairs([(0, 1), (1, 2)]).unwrap();
        assert_eq!(combining_time(3, 0, 1, &path), None);
        let all = CombiningTimes::compute(3, &triangle());
        assert_eq!(all.get(1, 0), Some(3));
        assert_eq!(all.get(1, 1), None);
    }
}
