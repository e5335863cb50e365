//! Vertex and edge types, edge sequences, static SCC decomposition and
//! prediction error metrics.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Dense vertex index, `0 <= id < n`.
pub type VertexId = usize;
/// Dense edge identity, stable across reorderings of a sequence.
pub type EdgeId = usize;
/// Arrival time. Time `t` means "after the first `t` edges".
pub type Time = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub id: EdgeId,
}

impl Edge {
    pub fn new(id: EdgeId, src: VertexId, dst: VertexId) -> Self {
        Edge { src, dst, id }
    }
}

/// An ordered arrival sequence of distinct directed edges.
///
/// Positions are 1-based: `at(1)` is the first edge to arrive. Edge ids are
/// a permutation of `0..len()`, so two sequences over the same edges can be
/// compared id by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSequence {
    edges: Vec<Edge>,
}

impl EdgeSequence {
    pub fn new(edges: Vec<Edge>) -> Result<Self> {
        let m = edges.len();
        let mut seen_id = vec![false; m];
        let mut seen_pair = HashSet::with_capacity(m);
        for e in &edges {
            if e.src == e.dst {
                return Err(Error::invalid(format!("self-loop on vertex {}", e.src)));
            }
            if e.id >= m || std::mem::replace(&mut seen_id[e.id], true) {
                return Err(Error::invalid(format!(
                    "edge ids must be a permutation of 0..{m}, got {}",
                    e.id
                )));
            }
            if !seen_pair.insert((e.src, e.dst)) {
                return Err(Error::invalid(format!("duplicate edge ({}, {})", e.src, e.dst)));
            }
        }
        Ok(EdgeSequence { edges })
    }

    /// Builds a sequence whose ids follow arrival order.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let edges = pairs
            .into_iter()
            .enumerate()
            .map(|(id, (src, dst))| Edge { src, dst, id })
            .collect();
        Self::new(edges)
    }

    pub(crate) fn from_edges_unchecked(edges: Vec<Edge>) -> Self {
        EdgeSequence { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Edge> {
        self.edges.iter()
    }

    /// Edge at 1-based position `pos`.
    pub fn at(&self, pos: Time) -> Option<&Edge> {
        pos.checked_sub(1).and_then(|i| self.edges.get(i))
    }

    /// 1-based position of every edge, indexed by edge id.
    pub fn positions(&self) -> Vec<Time> {
        let mut pos = vec![0; self.edges.len()];
        for (i, e) in self.edges.iter().enumerate() {
            pos[e.id] = i + 1;
        }
        pos
    }

    /// Edge lookup by id.
    pub fn by_id(&self) -> Vec<Edge> {
        let mut out = self.edges.clone();
        for e in &self.edges {
            out[e.id] = *e;
        }
        out
    }

    /// The same edges, arranged in the order given by `ids`.
    pub fn reordered(&self, ids: &[EdgeId]) -> Result<Self> {
        if ids.len() != self.len() {
            return Err(Error::invalid("reordering must list every edge once"));
        }
        let by_id = self.by_id();
        let mut seen = vec![false; ids.len()];
        let mut edges = Vec::with_capacity(ids.len());
        for &id in ids {
            if id >= by_id.len() || std::mem::replace(&mut seen[id], true) {
                return Err(Error::invalid(format!("bad edge id {id} in reordering")));
            }
            edges.push(by_id[id]);
        }
        Ok(EdgeSequence { edges })
    }

    pub fn reversed(&self) -> Self {
        let mut edges = self.edges.clone();
        edges.reverse();
        EdgeSequence { edges }
    }

    /// Smallest `n` such that every endpoint is below `n`.
    pub fn vertex_bound(&self) -> usize {
        self.edges.iter().map(|e| e.src.max(e.dst) + 1).max().unwrap_or(0)
    }

    pub fn check_vertices(&self, n: usize) -> Result<()> {
        for e in &self.edges {
            let v = e.src.max(e.dst);
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a EdgeSequence {
    type Item = &'a Edge;
    type IntoIter = std::slice::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.edges.iter()
    }
}

/// A partition of the vertex set into strongly connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccPartition {
    pub component_of: Vec<usize>,
    pub components: Vec<Vec<VertexId>>,
}

impl SccPartition {
    pub fn singletons(n: usize) -> Self {
        SccPartition {
            component_of: (0..n).collect(),
            components: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn same(&self, u: VertexId, v: VertexId) -> bool {
        self.component_of[u] == self.component_of[v]
    }

    /// Each vertex mapped to the smallest vertex of its class. Two partitions
    /// are equal iff their canonical forms are equal.
    pub fn canonical(&self) -> Vec<VertexId> {
        let mut min_of = vec![usize::MAX; self.components.len()];
        for (v, &c) in self.component_of.iter().enumerate() {
            min_of[c] = min_of[c].min(v);
        }
        self.component_of.iter().map(|&c| min_of[c]).collect()
    }

    fn from_components(c: &Components) -> Self {
        let mut components = vec![Vec::new(); c.count];
        for (v, &k) in c.comp.iter().enumerate() {
            components[k as usize].push(v);
        }
        SccPartition {
            component_of: c.comp.iter().map(|&k| k as usize).collect(),
            components,
        }
    }
}

/// Compact SCC labelling used on hot paths: `comp[v]` is the component of
/// `v`, numbered in the order Tarjan closes them (sinks first).
#[derive(Clone, Debug, Default)]
pub(crate) struct Components {
    pub comp: Vec<u32>,
    pub count: usize,
}

impl Components {
    /// Members of each component with at least two vertices.
    pub fn nontrivial(&self) -> Vec<Vec<u32>> {
        let mut size = vec![0u32; self.count];
        for &c in &self.comp {
            size[c as usize] += 1;
        }
        let mut slot = vec![u32::MAX; self.count];
        let mut groups: Vec<Vec<u32>> = Vec::new();
        for (v, &c) in self.comp.iter().enumerate() {
            let c = c as usize;
            if size[c] < 2 {
                continue;
            }
            if slot[c] == u32::MAX {
                slot[c] = groups.len() as u32;
                groups.push(Vec::with_capacity(size[c] as usize));
            }
            groups[slot[c] as usize].push(v as u32);
        }
        groups
    }
}

const UNSEEN: u32 = u32::MAX;

/// Iterative Tarjan over `n` vertices. `arcs` is traversed twice.
pub(crate) fn strongly_connected<I>(n: usize, arcs: I) -> Components
where
    I: Iterator<Item = (u32, u32)> + Clone,
{
    // CSR adjacency
    let mut offsets = vec![0u32; n + 1];
    for (u, _) in arcs.clone() {
        offsets[u as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut targets = vec![0u32; offsets[n] as usize];
    for (u, v) in arcs {
        let slot = &mut fill[u as usize];
        targets[*slot as usize] = v;
        *slot += 1;
    }

    let mut index = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut calls: Vec<(u32, u32)> = Vec::new();
    let mut next_index = 0u32;
    let mut count = 0u32;

    for root in 0..n as u32 {
        if index[root as usize] != UNSEEN {
            continue;
        }
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        calls.push((root, offsets[root as usize]));

        while let Some(&mut (v, ref mut cursor)) = calls.last_mut() {
            let vi = v as usize;
            if *cursor < offsets[vi + 1] {
                let w = targets[*cursor as usize];
                *cursor += 1;
                let wi = w as usize;
                if index[wi] == UNSEEN {
                    index[wi] = next_index;
                    low[wi] = next_index;
                    next_index += 1;
                    stack.push(w);
                    calls.push((w, offsets[wi]));
                } else if comp[wi] == UNSEEN {
                    // still on the Tarjan stack
                    low[vi] = low[vi].min(index[wi]);
                }
                continue;
            }
            calls.pop();
            if low[vi] == index[vi] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    comp[w as usize] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
            if let Some(&(parent, _)) = calls.last() {
                let pi = parent as usize;
                low[pi] = low[pi].min(low[vi]);
            }
        }
    }

    Components {
        comp,
        count: count as usize,
    }
}

/// Exact strongly connected components of the digraph `(0..n, edges)`.
pub fn tarjan_scc(n: usize, edges: &[Edge]) -> Result<SccPartition> {
    for e in edges {
        let v = e.src.max(e.dst);
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    let c = strongly_connected(n, edges.iter().map(|e| (e.src as u32, e.dst as u32)));
    Ok(SccPartition::from_components(&c))
}

/// Per-edge position error between a true sequence and a prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PredictionError {
    pub eta_max: usize,
    /// Sum of `|i(e) - î(e)|` over all edges; `eta_avg = eta_sum / m`.
    pub eta_sum: u64,
    pub m: usize,
}

impl PredictionError {
    pub fn eta_avg(&self) -> f64 {
        if self.m == 0 {
            0.0
        } else {
            self.eta_sum as f64 / self.m as f64
        }
    }
}

/// `η_e = |i(e) − î(e)|`, reported as its maximum and mean over all edges.
pub fn edge_errors(sigma: &EdgeSequence, sigma_hat: &EdgeSequence) -> Result<PredictionError> {
    if sigma.len() != sigma_hat.len() {
        return Err(Error::invalid(format!(
            "prediction has {} edges, sequence has {}",
            sigma_hat.len(),
            sigma.len()
        )));
    }
    let truth = sigma.by_id();
    let pos = sigma.positions();
    let mut eta_max = 0;
    let mut eta_sum = 0u64;
    for (i, e) in sigma_hat.iter().enumerate() {
        let t = &truth[e.id];
        if (t.src, t.dst) != (e.src, e.dst) {
            return Err(Error::invalid(format!(
                "prediction edge {} does not match the sequence",
                e.id
            )));
        }
        let err = pos[e.id].abs_diff(i + 1);
        eta_max = eta_max.max(err);
        eta_sum += err as u64;
    }
    Ok(PredictionError {
        eta_max,
        eta_sum,
        m: sigma.len(),
    })
}
