//! Edge-list ingestion.
//!
//! Input lines are `SRC DST [TIMESTAMP]`, whitespace separated; blank lines
//! and lines starting with `#` are skipped. Temporal files are stably sorted
//! by timestamp. Self-loops are dropped, repeated `(SRC, DST)` pairs keep
//! their first arrival, and vertices are renumbered densely in order of
//! first appearance, so vertices without edges never get an id.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    SnapTemporal,
    EdgeList,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "snap-temporal" => Ok(Format::SnapTemporal),
            "edge-list" => Ok(Format::EdgeList),
            other => Err(Error::invalid(format!(
                "unknown format {other:?} (expected snap-temporal or edge-list)"
            ))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IngestStats {
    pub lines: usize,
    pub comments: usize,
    pub self_loops: usize,
    pub duplicates: usize,
}

#[derive(Clone, Debug)]
pub struct Dataset {
    pub name: String,
    pub n: usize,
    pub sigma: EdgeSequence,
    pub stats: IngestStats,
}

impl Dataset {
    pub fn m(&self) -> usize {
        self.sigma.len()
    }

    /// The first `k` edges, with vertices renumbered over those edges only.
    pub fn prefix(&self, k: usize) -> Dataset {
        if k >= self.sigma.len() {
            return self.clone();
        }
        let head = EdgeSequence::from_edges_unchecked(self.sigma.edges()[..k].to_vec());
        let (n, sigma) = compact(&head);
        Dataset {
            name: self.name.clone(),
            n,
            sigma,
            stats: self.stats.clone(),
        }
    }
}

/// Renumbers endpoints by first appearance and assigns edge ids in order.
/// Input must be free of self-loops and duplicates.
pub(crate) fn densify(pairs: impl Iterator<Item = (u64, u64)>) -> (usize, EdgeSequence) {
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut edges = Vec::new();
    for (u, v) in pairs {
        let next = ids.len();
        let a = *ids.entry(u).or_insert(next);
        let next = ids.len();
        let b = *ids.entry(v).or_insert(next);
        edges.push(Edge::new(edges.len(), a, b));
    }
    (ids.len(), EdgeSequence::from_edges_unchecked(edges))
}

/// Drops vertices without edges, renumbering the rest by first appearance.
/// Edge ids are reassigned in arrival order.
pub fn compact(sigma: &EdgeSequence) -> (usize, EdgeSequence) {
    densify(sigma.iter().map(|e| (e.src as u64, e.dst as u64)))
}

pub fn ingest(path: impl AsRef<Path>, format: Format) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = name
        .strip_suffix(".txt")
        .or_else(|| name.strip_suffix(".csv"))
        .unwrap_or(&name)
        .to_string();
    parse(BufReader::new(file), format, path, name)
}

pub fn parse(reader: impl BufRead, format: Format, path: &Path, name: String) -> Result<Dataset> {
    let mut stats = IngestStats::default();
    let mut rows: Vec<(i64, u64, u64)> = Vec::new();
    let err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };

    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        stats.lines += 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            stats.comments += 1;
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut vertex = |what: &str| -> Result<u64> {
            let f = fields.next().ok_or_else(|| err(lineno, format!("missing {what}")))?;
            f.parse::<u64>()
                .map_err(|e| err(lineno, format!("bad {what} {f:?}: {e}")))
        };
        let src = vertex("source")?;
        let dst = vertex("target")?;
        let ts = match (format, fields.next()) {
            (Format::SnapTemporal, Some(f)) => f
                .parse::<i64>()
                .map_err(|e| err(lineno, format!("bad timestamp {f:?}: {e}")))?,
            (Format::SnapTemporal, None) => return Err(err(lineno, "missing timestamp".into())),
            (Format::EdgeList, _) => 0,
        };
        rows.push((ts, src, dst));
    }

    if format == Format::SnapTemporal {
        rows.sort_by_key(|r| r.0);
    }

    let mut seen = HashSet::with_capacity(rows.len());
    let kept = rows.into_iter().filter_map(|(_, u, v)| {
        if u == v {
            stats.self_loops += 1;
            None
        } else if !seen.insert((u, v)) {
            stats.duplicates += 1;
            None
        } else {
            Some((u, v))
        }
    });
    let kept: Vec<_> = kept.collect();
    if kept.is_empty() {
        return Err(Error::invalid(format!("{}: no edges", path.display())));
    }
    let (n, sigma) = densify(kept.into_iter());
    Ok(Dataset { name, n, sigma, stats })
}

/// Writes `σ` as a temporal edge list with timestamps `1..=m`.
pub fn write_temporal(mut w: impl Write, sigma: &EdgeSequence) -> std::io::Result<()> {
    for (i, e) in sigma.iter().enumerate() {
        writeln!(w, "{} {} {}", e.src, e.dst, i + 1)?;
    }
    Ok(())
}
