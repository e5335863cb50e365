//! Trial runner and CSV output.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::baseline::{RankedCondensedGraph, Variant};
use crate::error::{Error, Result};
use crate::graph::{edge_errors, EdgeSequence};
use crate::ingest::Dataset;
use crate::learned::LearnedIncScc;
use crate::offline::RecursionTree;
use crate::perturb::{perturb, trial_seed};

pub const CSV_HEADER: &str = "dataset,algo,S,trial,seed,eta_max,eta_avg,runtime_ms,work_edges,merges";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algo {
    Learned,
    Offline,
    Baseline,
    BaselineOpt,
}

impl Algo {
    pub const ALL: [Algo; 4] = [Algo::Learned, Algo::Offline, Algo::Baseline, Algo::BaselineOpt];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Learned => "learned",
            Algo::Offline => "offline",
            Algo::Baseline => "baseline",
            Algo::BaselineOpt => "baseline-opt",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown algorithm {s:?}")))
    }
}

/// Cost of one algorithm run over the full sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurement {
    pub runtime: Duration,
    pub work_edges: u64,
    pub merges: u64,
}

/// Runs `algo` over `sigma`, timing only what depends on the arrivals
/// (plus prediction-dependent construction for the learned structure).
///
/// Work is `Σ (|E_x| + |V_x|)` over built subproblems for the learned and
/// offline structures, and arcs scanned by searches for the baselines.
/// Merges count vertices absorbed into another SCC.
pub fn run_once(algo: Algo, n: usize, sigma: &EdgeSequence, sigma_hat: &EdgeSequence) -> Result<Measurement> {
    match algo {
        Algo::Learned => {
            let start = Instant::now();
            let mut s = LearnedIncScc::new(n, sigma_hat)?;
            for e in sigma {
                s.insert(e)?;
            }
            let runtime = start.elapsed();
            let stats = s.stats();
            Ok(Measurement {
                runtime,
                work_edges: stats.work_edges,
                merges: stats.merges,
            })
        }
        Algo::Offline => {
            let start = Instant::now();
            let tree = RecursionTree::build(n, sigma)?;
            let runtime = start.elapsed();
            Ok(Measurement {
                runtime,
                work_edges: tree.work(),
                merges: (n - tree.final_component_count()) as u64,
            })
        }
        Algo::Baseline | Algo::BaselineOpt => {
            let variant = if algo == Algo::Baseline {
                Variant::Basic
            } else {
                Variant::Optimized
            };
            let mut s = RankedCondensedGraph::new(n, variant)?;
            let start = Instant::now();
            for e in sigma {
                s.insert(e)?;
            }
            let runtime = start.elapsed();
            Ok(Measurement {
                runtime,
                work_edges: s.stats().arcs_scanned,
                merges: s.stats().merges,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub algos: Vec<Algo>,
    pub s_values: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub dataset: String,
    pub algo: Algo,
    pub s: f64,
    pub trial: usize,
    pub seed: u64,
    pub eta_max: usize,
    pub eta_avg: f64,
    pub runtime_ms: f64,
    pub work_edges: u64,
    pub merges: u64,
}

impl RunRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.3},{},{}",
            self.dataset,
            self.algo,
            self.s,
            self.trial,
            self.seed,
            self.eta_max,
            self.eta_avg,
            self.runtime_ms,
            self.work_edges,
            self.merges
        )
    }
}

/// One record per `(S, trial, algo)`, in that order.
pub fn run_experiment(dataset: &Dataset, cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    run_experiment_with(dataset, cfg, |_| {})
}

/// As [`run_experiment`], reporting each record as it is produced.
pub fn run_experiment_with(
    dataset: &Dataset,
    cfg: &ExperimentConfig,
    mut progress: impl FnMut(&RunRecord),
) -> Result<Vec<RunRecord>> {
    if cfg.trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    if cfg.algos.is_empty() {
        return Err(Error::invalid("no algorithms selected"));
    }
    if let Some(s) = cfg.s_values.iter().find(|s| !(s.is_finite() && **s >= 0.0)) {
        return Err(Error::invalid(format!("S must be a finite value >= 0, got {s}")));
    }
    let sigma = &dataset.sigma;
    let mut records = Vec::new();
    for &s in &cfg.s_values {
        for trial in 0..cfg.trials {
            let seed = trial_seed(cfg.seed, trial);
            let sigma_hat = perturb(sigma, s, seed);
            let err = edge_errors(sigma, &sigma_hat)?;
            for &algo in &cfg.algos {
                let m = run_once(algo, dataset.n, sigma, &sigma_hat)?;
                let record = RunRecord {
                    dataset: dataset.name.clone(),
                    algo,
                    s,
                    trial,
                    seed,
                    eta_max: err.eta_max,
                    eta_avg: err.eta_avg(),
                    runtime_ms: m.runtime.as_secs_f64() * 1e3,
                    work_edges: m.work_edges,
                    merges: m.merges,
                };
                progress(&record);
                records.push(record);
            }
        }
    }
    Ok(records)
}

pub fn write_csv(mut w: impl Write, records: &[RunRecord]) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(w, "{}", r.csv_row())?;
    }
    Ok(())
}

/// Median runtime per `(algo, S)`, in first-seen order.
pub fn median_runtimes(records: &[RunRecord]) -> Vec<(Algo, f64, f64)> {
    let mut groups: Vec<(Algo, f64, Vec<f64>)> = Vec::new();
    for r in records {
        match groups.iter_mut().find(|g| g.0 == r.algo && g.1 == r.s) {
            Some(g) => g.2.push(r.runtime_ms),
            None => groups.push((r.algo, r.s, vec![r.runtime_ms])),
        }
    }
    groups
        .into_iter()
        .map(|(algo, s, mut times)| (algo, s, median(&mut times)))
        .collect()
}

pub fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty());
    values.sort_by(f64::total_cmp);
    let k = values.len() / 2;
    if values.len() % 2 == 1 {
        values[k]
    } else {
        (values[k - 1] + values[k]) / 2.0
    }
}
