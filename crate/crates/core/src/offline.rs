//! Offline incremental SCC: the full divide-and-conquer recursion tree over a
//! known arrival sequence, with `O(log m)`-step historical queries.

use crate::error::{Error, Result};
use crate::graph::{Components, Edge, EdgeId, EdgeSequence, Time, VertexId};
use crate::subproblem::{partition_edge_ids, CondensedGraph, Interval, Side};
use crate::IncrementalScc;

struct TreeNode {
    interval: Interval,
    side: Side,
    depth: usize,
    parent: Option<usize>,
    children: [Option<usize>; 2],
    comps: Components,
    /// Child graphs (left, right); absent on leaves.
    split: Option<(CondensedGraph, CondensedGraph)>,
}

/// Fully built recursion tree for a sequence `σ`.
pub struct RecursionTree {
    n: usize,
    m: usize,
    root_graph: CondensedGraph,
    nodes: Vec<TreeNode>,
    level_edges: Vec<usize>,
    work: u64,
}

/// Read-only view of one node of a [`RecursionTree`].
#[derive(Clone, Copy)]
pub struct Subproblem<'a> {
    tree: &'a RecursionTree,
    id: usize,
}

impl<'a> Subproblem<'a> {
    fn node(&self) -> &'a TreeNode {
        &self.tree.nodes[self.id]
    }

    pub fn interval(&self) -> Interval {
        self.node().interval
    }

    pub fn side(&self) -> Side {
        self.node().side
    }

    pub fn depth(&self) -> usize {
        self.node().depth
    }

    pub fn graph(&self) -> &'a CondensedGraph {
        self.tree.graph_of(self.id)
    }

    /// Component of handle `h` in the midpoint graph.
    pub fn component_of(&self, h: usize) -> usize {
        self.node().comps.comp[h] as usize
    }

    pub fn component_count(&self) -> usize {
        self.node().comps.count
    }

    /// `(left_edges, right_edges)` of this node's midpoint split.
    pub fn split_edge_ids(&self) -> (Vec<EdgeId>, Vec<EdgeId>) {
        partition_edge_ids(self.graph(), &self.node().comps)
    }

    pub fn children(&self) -> impl Iterator<Item = Subproblem<'a>> + 'a {
        let tree = self.tree;
        self.node()
            .children
            .into_iter()
            .flatten()
            .map(move |id| Subproblem { tree, id })
    }
}

/// Builds the whole recursion tree for `sigma` over `n` vertices.
pub fn build_offline(n: usize, sigma: &EdgeSequence) -> Result<RecursionTree> {
    RecursionTree::build(n, sigma)
}

impl RecursionTree {
    pub fn build(n: usize, sigma: &EdgeSequence) -> Result<Self> {
        if n == 0 || sigma.is_empty() {
            return Err(Error::invalid("offline tree needs at least one vertex and one edge"));
        }
        sigma.check_vertices(n)?;
        let m = sigma.len();
        let pos: Vec<u32> = sigma.positions().iter().map(|&p| p as u32).collect();
        let mut tree = RecursionTree {
            n,
            m,
            root_graph: CondensedGraph::root(n, sigma),
            nodes: Vec::new(),
            level_edges: Vec::new(),
            work: 0,
        };

        // (interval, side, parent)
        let mut pending = vec![(Interval::root(m), Side::Root, None::<usize>)];
        while let Some((interval, side, parent)) = pending.pop() {
            let id = tree.nodes.len();
            let depth = parent.map_or(0, |p| tree.nodes[p].depth + 1);
            let (comps, split, edges, cost) = {
                let graph = match (parent, side) {
                    (None, _) => &tree.root_graph,
                    (Some(p), s) => tree.child_graph(p, s),
                };
                let comps = graph.solve(interval.mid(), &pos);
                let split = (interval.left().is_some() || interval.right().is_some()).then(|| graph.split(&comps));
                (comps, split, graph.edge_count(), graph.cost())
            };
            if tree.level_edges.len() <= depth {
                tree.level_edges.resize(depth + 1, 0);
            }
            tree.level_edges[depth] += edges;
            tree.work += cost;
            tree.nodes.push(TreeNode {
                interval,
                side,
                depth,
                parent,
                children: [None, None],
                comps,
                split,
            });
            if let Some(p) = parent {
                let slot = if side == Side::Left { 0 } else { 1 };
                tree.nodes[p].children[slot] = Some(id);
            }
            if let Some(r) = interval.right() {
                pending.push((r, Side::Right, Some(id)));
            }
            if let Some(l) = interval.left() {
                pending.push((l, Side::Left, Some(id)));
            }
        }
        Ok(tree)
    }

    fn child_graph(&self, parent: usize, side: Side) -> &CondensedGraph {
        let (l, r) = self.nodes[parent]
            .split
            .as_ref()
            .expect("internal node without a split");
        if side == Side::Left {
            l
        } else {
            r
        }
    }

    fn graph_of(&self, id: usize) -> &CondensedGraph {
        let node = &self.nodes[id];
        match node.parent {
            None => &self.root_graph,
            Some(p) => self.child_graph(p, node.side),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn root(&self) -> Subproblem<'_> {
        Subproblem { tree: self, id: 0 }
    }

    pub fn subproblems(&self) -> impl Iterator<Item = Subproblem<'_>> {
        (0..self.nodes.len()).map(move |id| Subproblem { tree: self, id })
    }

    pub fn depth(&self) -> usize {
        self.level_edges.len()
    }

    /// `Σ |E_x|` over the nodes of each depth.
    pub fn level_edge_counts(&self) -> &[usize] {
        &self.level_edges
    }

    /// Total `Σ (|E_x| + |V_x|)` over all nodes.
    pub fn work(&self) -> u64 {
        self.work
    }

    /// Number of SCCs of the final graph `G_m`.
    pub fn final_component_count(&self) -> usize {
        // the node with midpoint m lies on the all-right spine, which keeps
        // every contracted vertex
        let mut id = 0;
        loop {
            let node = &self.nodes[id];
            match node.children[1] {
                Some(c) => id = c,
                None => return node.comps.count,
            }
        }
    }

    /// Whether `u` and `v` share an SCC in `G_t`.
    pub fn query(&self, u: VertexId, v: VertexId, t: Time) -> Result<bool> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if t == 0 || t > self.m {
            return Err(Error::TimeOutOfRange { t, m: self.m });
        }
        let (mut hu, mut hv) = (u as u32, v as u32);
        let mut id = 0;
        loop {
            if hu == hv {
                return Ok(true);
            }
            let node = &self.nodes[id];
            let x = node.interval.mid();
            let comp = &node.comps.comp;
            if t == x {
                return Ok(comp[hu as usize] == comp[hv as usize]);
            }
            let (slot, next) = if t < x {
                let left = self.child_graph(id, Side::Left);
                // a vertex missing from the left child has no intra-SCC edge,
                // so it stays alone for the whole window
                match (left.handle_from_parent(hu), left.handle_from_parent(hv)) {
                    (Some(a), Some(b)) => (0, (a, b)),
                    _ => return Ok(false),
                }
            } else {
                (1, (comp[hu as usize], comp[hv as usize]))
            };
            (hu, hv) = next;
            id = node.children[slot].expect("interior time without a child");
        }
    }
}

/// Replays a prebuilt tree one arrival at a time, answering queries for the
/// current time.
pub struct OfflineReplay {
    tree: RecursionTree,
    order: Vec<EdgeId>,
    t: Time,
}

impl OfflineReplay {
    pub fn new(n: usize, sigma: &EdgeSequence) -> Result<Self> {
        Ok(OfflineReplay {
            tree: RecursionTree::build(n, sigma)?,
            order: sigma.iter().map(|e| e.id).collect(),
            t: 0,
        })
    }

    pub fn tree(&self) -> &RecursionTree {
        &self.tree
    }
}

impl IncrementalScc for OfflineReplay {
    fn insert(&mut self, e: &Edge) -> Result<()> {
        if self.order.get(self.t) != Some(&e.id) {
            return Err(Error::Sequence {
                edge: e.id,
                reason: "offline replay must follow the sequence it was built on",
            });
        }
        self.t += 1;
        Ok(())
    }

    fn same_scc(&self, u: VertexId, v: VertexId) -> bool {
        if self.t == 0 {
            return u == v;
        }
        self.tree.query(u, v, self.t).unwrap_or(false)
    }

    fn vertex_count(&self) -> usize {
        self.tree.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> EdgeSequence {
        EdgeSequence::from_pairs([(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn triangle_tree_shape() {
        let tree = build_offline(3, &triangle()).unwrap();
        let root = tree.root();
        assert_eq!(root.interval(), Interval::new(0, 4));
        assert_eq!(root.component_count(), 3);
        let (left, right) = root.split_edge_ids();
        assert!(left.is_empty());
        assert_eq!(right, [0, 1, 2]);
        let kids: Vec<_> = root.children().map(|c| c.interval()).collect();
        assert_eq!(kids, [Interval::new(0, 2), Interval::new(2, 4)]);
        let right_child = root.children().nth(1).unwrap();
        assert_eq!(right_child.interval().mid(), 3);
        assert_eq!(right_child.component_count(), 1);
        assert_eq!(tree.final_component_count(), 1);
    }

    #[test]
    fn triangle_queries() {
        let tree = build_offline(3, &triangle()).unwrap();
        assert!(!tree.query(0, 2, 2).unwrap());
        assert!(tree.query(0, 2, 3).unwrap());
        assert!(!tree.query(0, 1, 1).unwrap());
        for t in 1..=3 {
            for v in 0..3 {
                assert!(tree.query(v, v, t).unwrap());
            }
        }
        assert!(matches!(tree.query(0, 1, 0), Err(Error::TimeOutOfRange { .. })));
        assert!(tree.query(0, 1, 4).is_err());
        assert!(tree.query(0, 3, 1).is_err());
    }

    #[test]
    fn acyclic_sequence_has_no_left_edges() {
        let sigma = EdgeSequence::from_pairs([(0, 1), (1, 2)]).unwrap();
        let tree = build_offline(3, &sigma).unwrap();
        for sp in tree.subproblems() {
            assert!(sp.split_edge_ids().0.is_empty());
        }
    }

    #[test]
    fn single_edge() {
        let sigma = EdgeSequence::from_pairs([(0, 1)]).unwrap();
        let tree = build_offline(2, &sigma).unwrap();
        assert_eq!(tree.root().interval(), Interval::new(0, 2));
        assert_eq!(tree.subproblems().count(), 1);
        assert!(!tree.query(0, 1, 1).unwrap());
    }
}
