use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};

use incscc::experiment::{median_runtimes, run_experiment_with, write_csv, Algo, ExperimentConfig};
use incscc::ingest::{ingest, write_temporal, Format};
use incscc::synthetic::temporal_interactions;
use incscc::verify::{verify_with, VerifyConfig};

#[derive(Parser)]
#[command(name = "incscc", version, about = "Incremental SCC with predicted arrival orders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time algorithms over perturbed predictions of a dataset and write a CSV.
    Run {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, default_value = "snap-temporal")]
        format: Format,
        #[arg(long, value_delimiter = ',', default_value = "learned,offline,baseline,baseline-opt")]
        algo: Vec<Algo>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        s_values: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep only the first K edges.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fuzz every algorithm against the brute-force oracle.
    Verify {
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        #[arg(long, default_value_t = 150)]
        m_max: usize,
        #[arg(long, default_value_t = 200)]
        seeds: u64,
        #[arg(long, hide = true)]
        inject_mutant: bool,
    },
    /// Parse a dataset and print its size and cleanup counters.
    Ingest {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, default_value = "snap-temporal")]
        format: Format,
    },
    /// Write a synthetic temporal interaction graph.
    Generate {
        #[arg(long, default_value_t = 35_000)]
        vertices: usize,
        #[arg(long, default_value_t = 100_000)]
        edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Run {
            dataset,
            format,
            algo,
            s_values,
            trials,
            seed,
            limit,
            out,
        } => {
            let mut data = ingest(&dataset, format)?;
            if let Some(k) = limit {
                anyhow::ensure!(k > 0, "--limit must be positive");
                data = data.prefix(k);
            }
            eprintln!("{}: n={} m={}", data.name, data.n, data.m());
            let cfg = ExperimentConfig {
                algos: algo,
                s_values,
                trials,
                seed,
            };
            let records = run_experiment_with(&data, &cfg, |r| {
                eprintln!(
                    "S={} trial={} {:<12} eta_max={:<6} {:>10.1} ms",
                    r.s, r.trial, r.algo, r.eta_max, r.runtime_ms
                );
            })?;
            let file = File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            let mut w = BufWriter::new(file);
            write_csv(&mut w, &records).and_then(|_| w.flush())?;
            println!("algo,S,median_runtime_ms");
            for (algo, s, ms) in median_runtimes(&records) {
                println!("{algo},{s},{ms:.3}");
            }
            eprintln!("wrote {} rows to {}", records.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            n_max,
            m_max,
            seeds,
            inject_mutant,
        } => {
            anyhow::ensure!(n_max >= 2 && m_max >= 1, "need --n-max >= 2 and --m-max >= 1");
            let cfg = VerifyConfig {
                n_max,
                m_max,
                seeds,
                inject_mutant,
            };
            let start = Instant::now();
            let report = verify_with(&cfg, |seed, failures| {
                if (seed + 1) % 50 == 0 {
                    eprintln!("{} instances, {failures} failures", seed + 1);
                }
            });
            println!(
                "{} instances, {} runs, {} inserts checked in {:.2?}",
                report.instances,
                report.runs,
                report.inserts,
                start.elapsed()
            );
            println!("worst relabel_count / (n log n): {:.3}", report.worst_relabel_ratio);
            if let Some(first) = report.failures.first() {
                println!("FAILED: {} divergent runs; first:", report.failures.len());
                println!("{first}");
                return Ok(ExitCode::from(1));
            }
            println!("ok");
            Ok(ExitCode::SUCCESS)
        }
        Command::Ingest { dataset, format } => {
            let d = ingest(&dataset, format)?;
            println!("dataset: {}", d.name);
            println!("n: {}", d.n);
            println!("m: {}", d.m());
            println!("lines: {}", d.stats.lines);
            println!("comments: {}", d.stats.comments);
            println!("self_loops: {}", d.stats.self_loops);
            println!("duplicates: {}", d.stats.duplicates);
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate {
            vertices,
            edges,
            seed,
            out,
        } => {
            anyhow::ensure!(vertices >= 2 && edges >= 1, "need --vertices >= 2 and --edges >= 1");
            let (n, sigma) = temporal_interactions(vertices, edges, seed);
            let file = File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            let mut w = BufWriter::new(file);
            write_temporal(&mut w, &sigma).and_then(|_| w.flush())?;
            eprintln!("wrote n={n} m={} to {}", sigma.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}
