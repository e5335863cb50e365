//! IncSCC⁺: incremental SCC by maintaining a topological rank on the
//! condensed graph.
//!
//! Every arc between distinct condensed nodes points from a higher rank to a
//! lower one. An arc `(v, w)` with `rank(v) < rank(w)` triggers a forward
//! search from `w` and a backward search from `v`, both limited to the rank
//! window `[rank(v), rank(w)]`. The two searches meet iff the arc closes a
//! cycle, and the nodes they share are exactly the nodes of the new SCC.
//!
//! [`Variant::Basic`] confirms cycles with Tarjan on the searched nodes and
//! recomputes every rank with a whole-graph DFS after a contraction.
//! [`Variant::Optimized`] contracts the intersection directly and only
//! reassigns the ranks of the searched nodes.

use crate::error::{Error, Result};
use crate::graph::{strongly_connected, Edge, VertexId};
use crate::labels::NodeLabels;
use crate::IncrementalScc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Basic,
    Optimized,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BaselineStats {
    /// Inserts whose arc pointed against the current order.
    pub searches: u64,
    /// Arcs scanned by searches and global reorders.
    pub arcs_scanned: u64,
    pub local_reorders: u64,
    pub global_reorders: u64,
    /// Condensed-node contractions (pairwise).
    pub merges: u64,
    pub duplicates: u64,
}

pub struct RankedCondensedGraph {
    variant: Variant,
    parent: Vec<u32>,
    size: Vec<u32>,
    rank: Vec<u64>,
    out_arcs: Vec<Vec<u32>>,
    in_arcs: Vec<Vec<u32>>,
    labels: NodeLabels,
    inserted: Vec<bool>,
    stats: BaselineStats,
    // search scratch, stamped per search
    fwd_mark: Vec<u32>,
    bwd_mark: Vec<u32>,
    stamp: u32,
}

impl RankedCondensedGraph {
    pub fn new(n: usize, variant: Variant) -> Result<Self> {
        let labels = NodeLabels::new(n)?;
        Ok(RankedCondensedGraph {
            variant,
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            rank: (0..n as u64).collect(),
            out_arcs: vec![Vec::new(); n],
            in_arcs: vec![Vec::new(); n],
            labels,
            inserted: Vec::new(),
            stats: BaselineStats::default(),
            fwd_mark: vec![0; n],
            bwd_mark: vec![0; n],
            stamp: 0,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn stats(&self) -> &BaselineStats {
        &self.stats
    }

    pub fn labels(&self) -> &NodeLabels {
        &self.labels
    }

    pub fn same_scc(&self, u: VertexId, v: VertexId) -> Result<bool> {
        self.labels.same_scc(u, v)
    }

    /// Condensed node of `v`.
    pub fn find(&mut self, v: VertexId) -> usize {
        self.find_root(v as u32) as usize
    }

    /// Rank of the condensed node containing `v`.
    pub fn rank_of(&mut self, v: VertexId) -> u64 {
        let r = self.find_root(v as u32);
        self.rank[r as usize]
    }

    fn find_root(&mut self, v: u32) -> u32 {
        let mut root = v;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = v;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    pub fn insert(&mut self, e: &Edge) -> Result<()> {
        let n = self.parent.len();
        if e.src >= n || e.dst >= n {
            return Err(Error::VertexOutOfRange {
                vertex: e.src.max(e.dst),
                n,
            });
        }
        if self.inserted.len() <= e.id {
            self.inserted.resize(e.id + 1, false);
        }
        if std::mem::replace(&mut self.inserted[e.id], true) {
            self.stats.duplicates += 1;
            return Ok(());
        }

        let v = self.find_root(e.src as u32);
        let w = self.find_root(e.dst as u32);
        if v == w {
            return Ok(());
        }
        let (rv, rw) = (self.rank[v as usize], self.rank[w as usize]);
        if rv < rw {
            self.stats.searches += 1;
            let forward = self.search_forward(w, rv);
            let backward = self.search_backward(v, rw);
            let cycle = self.fwd_mark[v as usize] == self.stamp;
            if cycle {
                self.contract(v, w, &forward, &backward);
                return Ok(());
            }
            self.reorder(&forward, &backward, None);
        }
        self.out_arcs[v as usize].push(e.dst as u32);
        self.in_arcs[w as usize].push(e.src as u32);
        Ok(())
    }

    fn next_stamp(&mut self) -> u32 {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.fwd_mark.fill(0);
            self.bwd_mark.fill(0);
            self.stamp = 1;
        }
        self.stamp
    }

    /// Nodes reachable from `start` with rank `>= lower`.
    fn search_forward(&mut self, start: u32, lower: u64) -> Vec<u32> {
        let stamp = self.next_stamp();
        self.fwd_mark[start as usize] = stamp;
        let mut found = vec![start];
        let mut stack = vec![start];
        while let Some(z) = stack.pop() {
            let mut arcs = std::mem::take(&mut self.out_arcs[z as usize]);
            let mut i = 0;
            while i < arcs.len() {
                let y = self.find_root(arcs[i]);
                if y == z {
                    arcs.swap_remove(i);
                    continue;
                }
                i += 1;
                let yi = y as usize;
                if self.fwd_mark[yi] != stamp && self.rank[yi] >= lower {
                    self.fwd_mark[yi] = stamp;
                    found.push(y);
                    stack.push(y);
                }
            }
            self.stats.arcs_scanned += arcs.len() as u64;
            self.out_arcs[z as usize] = arcs;
        }
        found
    }

    /// Nodes that reach `start` with rank `<= upper`. Shares the stamp of the
    /// preceding forward search.
    fn search_backward(&mut self, start: u32, upper: u64) -> Vec<u32> {
        let stamp = self.stamp;
        self.bwd_mark[start as usize] = stamp;
        let mut found = vec![start];
        let mut stack = vec![start];
        while let Some(z) = stack.pop() {
            let mut arcs = std::mem::take(&mut self.in_arcs[z as usize]);
            let mut i = 0;
            while i < arcs.len() {
                let y = self.find_root(arcs[i]);
                if y == z {
                    arcs.swap_remove(i);
                    continue;
                }
                i += 1;
                let yi = y as usize;
                if self.bwd_mark[yi] != stamp && self.rank[yi] <= upper {
                    self.bwd_mark[yi] = stamp;
                    found.push(y);
                    stack.push(y);
                }
            }
            self.stats.arcs_scanned += arcs.len() as u64;
            self.in_arcs[z as usize] = arcs;
        }
        found
    }

    /// Reassigns the ranks of the searched nodes: forward-only nodes take the
    /// lowest slots, backward-only nodes the highest, and the contracted node
    /// (if any) the slot just above the forward-only ones. Each group keeps
    /// its relative order.
    fn reorder(&mut self, forward: &[u32], backward: &[u32], merged: Option<u32>) {
        self.stats.local_reorders += 1;
        let stamp = self.stamp;
        let in_both = |s: &Self, z: u32| s.fwd_mark[z as usize] == stamp && s.bwd_mark[z as usize] == stamp;

        let mut pool: Vec<u64> = forward
            .iter()
            .chain(backward.iter().filter(|&&z| self.fwd_mark[z as usize] != stamp))
            .map(|&z| self.rank[z as usize])
            .collect();
        pool.sort_unstable();

        let by_rank = |s: &Self, nodes: &mut Vec<u32>| nodes.sort_unstable_by_key(|&z| s.rank[z as usize]);
        let mut low: Vec<u32> = forward.iter().copied().filter(|&z| !in_both(self, z)).collect();
        let mut high: Vec<u32> = backward.iter().copied().filter(|&z| !in_both(self, z)).collect();
        by_rank(self, &mut low);
        by_rank(self, &mut high);

        // backward-only nodes must not move down, so they take the top
        // slots; the merged node sits right above the forward-only ones
        let top = pool.len() - high.len();
        for (z, r) in high.into_iter().zip(pool[top..].iter()) {
            self.rank[z as usize] = *r;
        }
        for (z, r) in low.into_iter().chain(merged).zip(pool[..top].iter()) {
            self.rank[z as usize] = *r;
        }
    }

    fn contract(&mut self, v: u32, w: u32, forward: &[u32], backward: &[u32]) {
        let stamp = self.stamp;
        let members: Vec<u32> = match self.variant {
            Variant::Optimized => forward
                .iter()
                .copied()
                .filter(|&z| self.bwd_mark[z as usize] == stamp)
                .collect(),
            Variant::Basic => self.cycle_by_tarjan(v, w, forward, backward),
        };
        debug_assert!(members.contains(&v) && members.contains(&w));

        self.labels.merge_unchecked(members.iter().map(|&z| z as usize));
        let mut root = members[0];
        for &z in &members[1..] {
            root = self.union(root, z);
        }
        match self.variant {
            Variant::Optimized => self.reorder(forward, backward, Some(root)),
            Variant::Basic => self.reorder_globally(),
        }
    }

    /// Non-trivial SCC of the searched subgraph plus the arc `v -> w`.
    fn cycle_by_tarjan(&mut self, v: u32, w: u32, forward: &[u32], backward: &[u32]) -> Vec<u32> {
        let stamp = self.stamp;
        let mut nodes: Vec<u32> = forward.to_vec();
        nodes.extend(backward.iter().filter(|&&z| self.fwd_mark[z as usize] != stamp));
        let local: std::collections::HashMap<u32, u32> =
            nodes.iter().enumerate().map(|(i, &z)| (z, i as u32)).collect();

        let mut arcs = vec![(local[&v], local[&w])];
        for &z in &nodes {
            for i in 0..self.out_arcs[z as usize].len() {
                let y = self.find_root(self.out_arcs[z as usize][i]);
                if let Some(&ly) = local.get(&y) {
                    if y != z {
                        arcs.push((local[&z], ly));
                    }
                }
            }
            self.stats.arcs_scanned += self.out_arcs[z as usize].len() as u64;
        }
        let comps = strongly_connected(nodes.len(), arcs.iter().copied());
        let target = comps.comp[local[&v] as usize];
        nodes
            .iter()
            .enumerate()
            .filter(|&(i, _)| comps.comp[i] == target)
            .map(|(_, &z)| z)
            .collect()
    }

    /// Union by size; the survivor inherits both adjacency lists.
    fn union(&mut self, a: u32, b: u32) -> u32 {
        let (a, b) = (self.find_root(a), self.find_root(b));
        if a == b {
            return a;
        }
        let (big, small) = if self.size[a as usize] >= self.size[b as usize] {
            (a, b)
        } else {
            (b, a)
        };
        let (bi, si) = (big as usize, small as usize);
        self.parent[si] = big;
        self.size[bi] += self.size[si];
        for lists in [&mut self.out_arcs, &mut self.in_arcs] {
            let mut moved = std::mem::take(&mut lists[si]);
            if moved.len() > lists[bi].len() {
                std::mem::swap(&mut moved, &mut lists[bi]);
            }
            lists[bi].extend(moved);
        }
        self.stats.merges += 1;
        big
    }

    /// Ranks every condensed node by DFS finishing order over the whole
    /// graph, so sources of arcs finish (and rank) after their targets.
    fn reorder_globally(&mut self) {
        self.stats.global_reorders += 1;
        let n = self.parent.len();
        let stamp = self.next_stamp();
        let mut next_rank = 0u64;
        let mut calls: Vec<(u32, usize)> = Vec::new();
        for s in 0..n as u32 {
            if self.parent[s as usize] != s || self.fwd_mark[s as usize] == stamp {
                continue;
            }
            self.fwd_mark[s as usize] = stamp;
            calls.push((s, 0));
            while let Some(&mut (z, ref mut cursor)) = calls.last_mut() {
                let zi = z as usize;
                if *cursor < self.out_arcs[zi].len() {
                    let target = self.out_arcs[zi][*cursor];
                    *cursor += 1;
                    let y = self.find_root(target);
                    if self.fwd_mark[y as usize] != stamp {
                        self.fwd_mark[y as usize] = stamp;
                        calls.push((y, 0));
                    }
                    continue;
                }
                self.stats.arcs_scanned += self.out_arcs[zi].len() as u64;
                self.rank[zi] = next_rank;
                next_rank += 1;
                calls.pop();
            }
        }
    }

    /// Every arc between distinct condensed nodes goes from higher to lower
    /// rank, and live ranks are distinct.
    pub fn check_ranks(&mut self) -> std::result::Result<(), String> {
        let n = self.parent.len();
        let mut live = Vec::new();
        for v in 0..n as u32 {
            let z = self.find_root(v);
            if z == v {
                live.push(self.rank[v as usize]);
            }
            for i in 0..self.out_arcs[v as usize].len() {
                let y = self.find_root(self.out_arcs[v as usize][i]);
                if y != z && self.rank[z as usize] <= self.rank[y as usize] {
                    return Err(format!(
                        "arc {z}->{y} has ranks {} <= {}",
                        self.rank[z as usize], self.rank[y as usize]
                    ));
                }
            }
        }
        live.sort_unstable();
        if live.windows(2).any(|w| w[0] == w[1]) {
            return Err("duplicate ranks".into());
        }
        Ok(())
    }
}

impl IncrementalScc for RankedCondensedGraph {
    fn insert(&mut self, e: &Edge) -> Result<()> {
        RankedCondensedGraph::insert(self, e)
    }

    fn same_scc(&self, u: VertexId, v: VertexId) -> bool {
        self.labels.same(u, v)
    }

    fn vertex_count(&self) -> usize {
        self.parent.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_ranks() {
        let mut g = RankedCondensedGraph::new(3, Variant::Optimized).unwrap();
        assert_eq!((0..3).map(|v| g.rank_of(v)).collect::<Vec<_>>(), [0, 1, 2]);
        assert_eq!(g.variant(), Variant::Optimized);
        g.check_ranks().unwrap();
    }

    #[test]
    fn ordered_arc_needs_no_search() {
        let mut g = RankedCondensedGraph::new(3, Variant::Basic).unwrap();
        g.insert(&Edge::new(0, 2, 0)).unwrap();
        assert_eq!(g.stats().searches, 0);
    }

    #[test]
    fn triangle_closes() {
        for variant in [Variant::Basic, Variant::Optimized] {
            let mut g = RankedCondensedGraph::new(3, variant).unwrap();
            g.insert(&Edge::new(0, 0, 1)).unwrap();
            g.insert(&Edge::new(1, 1, 2)).unwrap();
            assert_eq!(g.stats().searches, 2);
            g.check_ranks().unwrap();
            assert!(!g.same_scc(0, 2).unwrap());
            g.insert(&Edge::new(2, 2, 0)).unwrap();
            assert_eq!(g.stats().merges, 2);
            for u in 0..3 {
                for v in 0..3 {
                    assert!(g.same_scc(u, v).unwrap());
                }
            }
            assert_eq!(g.find(0), g.find(2));
            g.check_ranks().unwrap();
        }
    }

    #[test]
    fn duplicates_are_counted() {
        let mut g = RankedCondensedGraph::new(2, Variant::Optimized).unwrap();
        g.insert(&Edge::new(0, 0, 1)).unwrap();
        g.insert(&Edge::new(0, 0, 1)).unwrap();
        assert_eq!(g.stats().duplicates, 1);
        assert!(g.insert(&Edge::new(1, 0, 2)).is_err());
    }

    #[test]
    fn large_init_is_fast() {
        let start = std::time::Instant::now();
        let g = RankedCondensedGraph::new(100_000, Variant::Optimized).unwrap();
        assert_eq!(g.vertex_count(), 100_000);
        assert!(start.elapsed().as_secs_f64() < 1.0);
    }
}
