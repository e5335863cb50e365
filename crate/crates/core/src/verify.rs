//! Randomized differential testing against the brute-force oracle.

use std::fmt;

use crate::baseline::{RankedCondensedGraph, Variant};
use crate::graph::{Edge, EdgeSequence, VertexId};
use crate::learned::LearnedIncScc;
use crate::offline::OfflineReplay;
use crate::oracle::{check_equivalence, EquivalenceReport};
use crate::perturb::perturb;
use crate::synthetic::random_instance;
use crate::{IncrementalScc, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub m_max: usize,
    pub seeds: u64,
    /// Swap the learned structure for one that never merges.
    pub inject_mutant: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: 40,
            m_max: 150,
            seeds: 200,
            inject_mutant: false,
        }
    }
}

/// Prediction used for a learned run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Regime {
    Perfect,
    Gaussian(f64),
    Reversed,
}

impl Regime {
    pub const ALL: [Regime; 5] = [
        Regime::Perfect,
        Regime::Gaussian(2.0),
        Regime::Gaussian(5.0),
        Regime::Gaussian(20.0),
        Regime::Reversed,
    ];

    pub fn predict(self, sigma: &EdgeSequence, seed: u64) -> EdgeSequence {
        match self {
            Regime::Perfect => sigma.clone(),
            Regime::Gaussian(s) => perturb(sigma, s, seed),
            Regime::Reversed => sigma.reversed(),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Perfect => f.write_str("perfect"),
            Regime::Gaussian(s) => write!(f, "S={s}"),
            Regime::Reversed => f.write_str("reversed"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub seed: u64,
    pub n: usize,
    pub sigma: EdgeSequence,
    pub algo: String,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "seed {} (n={}, m={}): {}: {}",
            self.seed,
            self.n,
            self.sigma.len(),
            self.algo,
            self.detail
        )?;
        write!(f, "  sigma:")?;
        for e in &self.sigma {
            write!(f, " {}->{}", e.src, e.dst)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub instances: u64,
    pub runs: u64,
    pub inserts: u64,
    /// Largest `relabels / (n ⌊log₂ n⌋)` seen on a learned run.
    pub worst_relabel_ratio: f64,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Learned structure with merging disabled, for checking that the harness
/// notices a broken implementation.
pub struct MergeSkippingMutant {
    inner: LearnedIncScc,
}

impl MergeSkippingMutant {
    pub fn new(n: usize, sigma_hat: &EdgeSequence) -> Result<Self> {
        Ok(MergeSkippingMutant {
            inner: LearnedIncScc::new(n, sigma_hat)?,
        })
    }
}

impl IncrementalScc for MergeSkippingMutant {
    fn insert(&mut self, e: &Edge) -> Result<()> {
        self.inner.insert(e).map(|_| ())
    }

    fn same_scc(&self, u: VertexId, v: VertexId) -> bool {
        u == v
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }
}

pub(crate) fn relabel_bound(n: usize) -> u64 {
    if n < 2 {
        0
    } else {
        n as u64 * n.ilog2() as u64
    }
}

pub fn verify(cfg: &VerifyConfig) -> VerifyReport {
    verify_with(cfg, |_, _| {})
}

/// As [`verify`], calling `progress(seed, failures_so_far)` after each
/// instance.
pub fn verify_with(cfg: &VerifyConfig, mut progress: impl FnMut(u64, usize)) -> VerifyReport {
    let mut report = VerifyReport::default();
    for seed in 0..cfg.seeds {
        let (n, sigma) = random_instance(seed, cfg.n_max, cfg.m_max);
        report.instances += 1;
        let mut problems: Vec<(String, String)> = Vec::new();

        for regime in Regime::ALL {
            let sigma_hat = regime.predict(&sigma, seed);
            let name = format!("learned[{regime}]");
            if cfg.inject_mutant {
                let made = MergeSkippingMutant::new(n, &sigma_hat).map(boxed);
                check(&mut report, &mut problems, &sigma, name, made);
                continue;
            }
            check(
                &mut report,
                &mut problems,
                &sigma,
                name.clone(),
                LearnedIncScc::new(n, &sigma_hat).map(boxed),
            );

            // relabel bound on a fresh run, since the checked one is consumed
            if let Ok(mut s) = LearnedIncScc::new(n, &sigma_hat) {
                if sigma.iter().try_for_each(|e| s.insert(e).map(|_| ())).is_ok() {
                    let relabels = s.labels().relabel_count();
                    let bound = relabel_bound(n);
                    if relabels > bound {
                        problems.push((name, format!("{relabels} relabels exceeds n log n = {bound}")));
                    } else if bound > 0 {
                        report.worst_relabel_ratio = report.worst_relabel_ratio.max(relabels as f64 / bound as f64);
                    }
                }
            }
        }
        check(
            &mut report,
            &mut problems,
            &sigma,
            "offline".into(),
            OfflineReplay::new(n, &sigma).map(boxed),
        );
        for (name, variant) in [("baseline", Variant::Basic), ("baseline-opt", Variant::Optimized)] {
            let made = RankedCondensedGraph::new(n, variant).map(boxed);
            check(&mut report, &mut problems, &sigma, name.into(), made);
        }
        report
            .failures
            .extend(problems.into_iter().map(|(algo, detail)| Failure {
                seed,
                n,
                sigma: sigma.clone(),
                algo,
                detail,
            }));
        progress(seed, report.failures.len());
    }
    report
}

fn boxed<S: IncrementalScc + 'static>(s: S) -> Box<dyn IncrementalScc> {
    Box::new(s)
}

fn check(
    report: &mut VerifyReport,
    problems: &mut Vec<(String, String)>,
    sigma: &EdgeSequence,
    algo: String,
    made: Result<Box<dyn IncrementalScc>>,
) {
    report.runs += 1;
    let outcome = match made {
        Ok(mut s) => check_equivalence(s.as_mut(), sigma),
        Err(e) => EquivalenceReport::Error {
            t: 0,
            message: e.to_string(),
        },
    };
    match outcome {
        EquivalenceReport::Success { inserts } => report.inserts += inserts as u64,
        other => problems.push((algo, other.to_string())),
    }
}
