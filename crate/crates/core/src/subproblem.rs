//! Time intervals of the recursion tree and the condensed graphs stored at
//! its nodes. Shared by the offline tree and the learned structure.

use crate::graph::{strongly_connected, Components, EdgeId, EdgeSequence, Time, VertexId};

const NIL: u32 = u32::MAX;

/// A recursion-tree node's window `[lo, hi]` with midpoint `⌊(lo+hi)/2⌋`.
///
/// The subtree rooted here owns exactly the midpoints in the open interval
/// `(lo, hi)`. The root over `m` edges is `[0, m+1]`, so every arrival time
/// `1..=m` is the midpoint of exactly one node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: Time,
    pub hi: Time,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Root,
    Left,
    Right,
}

impl Interval {
    pub fn new(lo: Time, hi: Time) -> Self {
        debug_assert!(hi >= lo + 2);
        Interval { lo, hi }
    }

    pub fn root(m: usize) -> Self {
        Interval { lo: 0, hi: m + 1 }
    }

    pub fn mid(&self) -> Time {
        (self.lo + self.hi) / 2
    }

    /// Strict interior membership.
    pub fn contains(&self, t: Time) -> bool {
        self.lo < t && t < self.hi
    }

    pub fn left(&self) -> Option<Interval> {
        let x = self.mid();
        (x - self.lo >= 2).then(|| Interval::new(self.lo, x))
    }

    pub fn right(&self) -> Option<Interval> {
        let x = self.mid();
        (self.hi - x >= 2).then(|| Interval::new(x, self.hi))
    }

    /// The child whose interior holds `t`, if `t` is interior and not the
    /// midpoint.
    pub fn child_toward(&self, t: Time) -> Option<(Side, Interval)> {
        let x = self.mid();
        if !self.contains(t) || t == x {
            None
        } else if t < x {
            self.left().map(|c| (Side::Left, c))
        } else {
            self.right().map(|c| (Side::Right, c))
        }
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct LocalEdge {
    pub id: u32,
    pub src: u32,
    pub dst: u32,
}

/// The graph `G̃_x` of one subproblem: dense vertex handles, the
/// representative original vertex of each handle, and edges by id with
/// endpoints already remapped to handles.
#[derive(Clone, Debug, Default)]
pub struct CondensedGraph {
    pub(crate) rep_map: Vec<u32>,
    /// For left children: handle in the parent graph of each local handle,
    /// ascending. Empty otherwise.
    pub(crate) parent_handle: Vec<u32>,
    pub(crate) edges: Vec<LocalEdge>,
}

impl CondensedGraph {
    /// `V_x = V`, `E_x` = every edge.
    pub(crate) fn root(n: usize, sigma: &EdgeSequence) -> Self {
        CondensedGraph {
            rep_map: (0..n as u32).collect(),
            parent_handle: Vec::new(),
            edges: sigma
                .iter()
                .map(|e| LocalEdge {
                    id: e.id as u32,
                    src: e.src as u32,
                    dst: e.dst as u32,
                })
                .collect(),
        }
    }

    pub(crate) fn push_root_edge(&mut self, id: EdgeId, src: VertexId, dst: VertexId) {
        self.edges.push(LocalEdge {
            id: id as u32,
            src: src as u32,
            dst: dst as u32,
        });
    }

    pub fn vertex_count(&self) -> usize {
        self.rep_map.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id as EdgeId)
    }

    /// Representative original vertex `M_x(h)` of handle `h`.
    pub fn representative(&self, h: usize) -> VertexId {
        self.rep_map[h] as VertexId
    }

    pub(crate) fn cost(&self) -> u64 {
        (self.edges.len() + self.rep_map.len()) as u64
    }

    /// SCCs of the graph restricted to edges at positions `<= mid`.
    pub(crate) fn solve(&self, mid: Time, pos: &[u32]) -> Components {
        let mid = mid as u32;
        strongly_connected(
            self.rep_map.len(),
            self.edges
                .iter()
                .filter(move |e| pos[e.id as usize] <= mid)
                .map(|e| (e.src, e.dst)),
        )
    }

    /// Left child graph (intra-SCC edges, non-isolated vertices) and right
    /// child graph (inter-SCC edges over contracted SCCs).
    pub(crate) fn split(&self, comps: &Components) -> (CondensedGraph, CondensedGraph) {
        let nv = self.rep_map.len();
        let comp = &comps.comp;

        let mut left_id = vec![NIL; nv];
        let mut left_edges = Vec::new();
        let mut right_edges = Vec::new();
        for e in &self.edges {
            let (cs, cd) = (comp[e.src as usize], comp[e.dst as usize]);
            if cs == cd {
                left_id[e.src as usize] = 0;
                left_id[e.dst as usize] = 0;
                left_edges.push(*e);
            } else {
                right_edges.push(LocalEdge {
                    id: e.id,
                    src: cs,
                    dst: cd,
                });
            }
        }

        let mut parent_handle = Vec::new();
        let mut left_rep = Vec::new();
        for (h, slot) in left_id.iter_mut().enumerate() {
            if *slot != NIL {
                *slot = parent_handle.len() as u32;
                parent_handle.push(h as u32);
                left_rep.push(self.rep_map[h]);
            }
        }
        for e in &mut left_edges {
            e.src = left_id[e.src as usize];
            e.dst = left_id[e.dst as usize];
        }

        let mut right_rep = vec![NIL; comps.count];
        for (h, &c) in comp.iter().enumerate() {
            let r = &mut right_rep[c as usize];
            *r = (*r).min(self.rep_map[h]);
        }

        (
            CondensedGraph {
                rep_map: left_rep,
                parent_handle,
                edges: left_edges,
            },
            CondensedGraph {
                rep_map: right_rep,
                parent_handle: Vec::new(),
                edges: right_edges,
            },
        )
    }

    /// Local handle of parent handle `h` in a left child graph.
    pub(crate) fn handle_from_parent(&self, h: u32) -> Option<u32> {
        self.parent_handle.binary_search(&h).ok().map(|i| i as u32)
    }
}

/// Edge ids of `graph` split into (intra-SCC, inter-SCC).
pub(crate) fn partition_edge_ids(graph: &CondensedGraph, comps: &Components) -> (Vec<EdgeId>, Vec<EdgeId>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for e in &graph.edges {
        if comps.comp[e.src as usize] == comps.comp[e.dst as usize] {
            left.push(e.id as EdgeId);
        } else {
            right.push(e.id as EdgeId);
        }
    }
    (left, right)
}
