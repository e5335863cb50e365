//! Learned incremental SCC.
//!
//! The structure keeps a single root-to-`t` path of the recursion tree that
//! the offline algorithm would build on the current prediction `σ̂_t`. When
//! edge `e_t` arrives it is moved from its predicted slot `t̂` to `t`, the
//! path is cut back to the deepest node whose interior holds both `t` and
//! `t̂`, and everything from there down to the node with midpoint `t` is
//! rebuilt. The node with midpoint `t` merges vertex labels for each of its
//! non-trivial SCCs.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Components, Edge, EdgeId, EdgeSequence, Time, VertexId};
use crate::labels::NodeLabels;
use crate::prediction::Prediction;
use crate::subproblem::{partition_edge_ids, CondensedGraph, Interval, Side};
use crate::IncrementalScc;

/// What to do when an arriving edge is missing from the prediction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Reject it with [`Error::EdgeNotInPrediction`].
    #[default]
    Strict,
    /// Splice it into the prediction at the current time and rebuild the
    /// whole path from the root.
    Restart,
}

/// Times reported by one insertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrival {
    pub t: Time,
    /// Position of the edge in `σ̂_{t-1}`.
    pub t_hat: Time,
}

/// One subproblem build, recorded when tracing is enabled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RebuildEvent {
    pub t: Time,
    pub t_hat: Time,
    pub edge: EdgeId,
    pub depth: usize,
    pub interval: Interval,
    /// Arrival time of the previous build of the same interval (`0` for the
    /// initial path), if any.
    pub previous_build: Option<Time>,
    /// Whether this node was the walk-back target. Such a node is only
    /// rebuilt when the moved edge crossed its midpoint.
    pub lca: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LearnedStats {
    /// `Σ (|E_x| + |V_x|)` over every subproblem build.
    pub work_edges: u64,
    pub rebuilds_per_depth: Vec<u64>,
    pub relabel_count: u64,
    pub merges: u64,
    pub restarts: u64,
}

struct PathNode {
    interval: Interval,
    side: Side,
    comps: Components,
    split: Option<(CondensedGraph, CondensedGraph)>,
}

impl PathNode {
    fn placeholder(interval: Interval, side: Side) -> Self {
        PathNode {
            interval,
            side,
            comps: Components::default(),
            split: None,
        }
    }
}

#[derive(Default)]
struct Trace {
    events: Vec<RebuildEvent>,
    last_built: HashMap<Interval, Time>,
}

pub struct LearnedIncScc {
    n: usize,
    mode: Mode,
    prediction: Prediction,
    endpoints: Vec<(u32, u32)>,
    arrived: Vec<bool>,
    t: Time,
    root_graph: CondensedGraph,
    path: Vec<PathNode>,
    labels: NodeLabels,
    work: u64,
    rebuilds: Vec<u64>,
    restarts: u64,
    pair_index: Option<HashMap<(u32, u32), EdgeId>>,
    trace: Option<Trace>,
    // (t, t_hat, edge) of the insertion in progress
    current: (Time, Time, EdgeId),
    walk_back: usize,
}

impl LearnedIncScc {
    pub fn new(n: usize, sigma_hat: &EdgeSequence) -> Result<Self> {
        Self::with_mode(n, sigma_hat, Mode::Strict)
    }

    pub fn with_mode(n: usize, sigma_hat: &EdgeSequence, mode: Mode) -> Result<Self> {
        Self::with_options(n, sigma_hat, mode, false)
    }

    /// Like [`LearnedIncScc::new`], with every subproblem build recorded.
    pub fn traced(n: usize, sigma_hat: &EdgeSequence) -> Result<Self> {
        Self::with_options(n, sigma_hat, Mode::Strict, true)
    }

    fn with_options(n: usize, sigma_hat: &EdgeSequence, mode: Mode, trace: bool) -> Result<Self> {
        if sigma_hat.is_empty() {
            return Err(Error::invalid("prediction must contain at least one edge"));
        }
        sigma_hat.check_vertices(n)?;
        let labels = NodeLabels::new(n)?;
        let m = sigma_hat.len();
        let mut endpoints = vec![(0, 0); m];
        for e in sigma_hat {
            endpoints[e.id] = (e.src as u32, e.dst as u32);
        }
        let pair_index = (mode == Mode::Restart).then(|| {
            endpoints
                .iter()
                .enumerate()
                .map(|(id, &p)| (p, id))
                .collect::<HashMap<_, _>>()
        });
        let mut this = LearnedIncScc {
            n,
            mode,
            prediction: Prediction::new(sigma_hat),
            endpoints,
            arrived: vec![false; m],
            t: 0,
            root_graph: CondensedGraph::root(n, sigma_hat),
            path: vec![PathNode::placeholder(Interval::root(m), Side::Root)],
            labels,
            work: 0,
            rebuilds: Vec::new(),
            restarts: 0,
            pair_index,
            trace: trace.then(Trace::default),
            current: (0, 0, 0),
            walk_back: 0,
        };
        this.build_path(0, 0);
        Ok(this)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.prediction.len()
    }

    /// Number of edges that have arrived.
    pub fn current_time(&self) -> Time {
        self.t
    }

    pub fn prediction(&self) -> &Prediction {
        &self.prediction
    }

    pub fn labels(&self) -> &NodeLabels {
        &self.labels
    }

    pub fn same_scc(&self, u: VertexId, v: VertexId) -> Result<bool> {
        self.labels.same_scc(u, v)
    }

    pub fn stats(&self) -> LearnedStats {
        LearnedStats {
            work_edges: self.work,
            rebuilds_per_depth: self.rebuilds.clone(),
            relabel_count: self.labels.relabel_count(),
            merges: self.labels.union_count(),
            restarts: self.restarts,
        }
    }

    /// Intervals of the maintained path, root first.
    pub fn path(&self) -> Vec<Interval> {
        self.path.iter().map(|p| p.interval).collect()
    }

    /// The condensed graph of the path node at `depth`.
    pub fn path_graph(&self, depth: usize) -> &CondensedGraph {
        graph_at(&self.root_graph, &self.path, depth)
    }

    /// Stored `(left_edges, right_edges)` of the path node at `depth`, if it
    /// was last built as a non-base node.
    pub fn path_split(&self, depth: usize) -> Option<(Vec<EdgeId>, Vec<EdgeId>)> {
        let node = &self.path[depth];
        node.split.as_ref()?;
        Some(partition_edge_ids(self.path_graph(depth), &node.comps))
    }

    pub fn trace(&self) -> &[RebuildEvent] {
        self.trace.as_ref().map_or(&[], |t| &t.events)
    }

    /// Inserts the next arriving edge.
    pub fn insert(&mut self, e: &Edge) -> Result<Arrival> {
        let id = match self.resolve(e)? {
            Some(id) => id,
            None => return self.restart_with(e.src, e.dst),
        };
        let (t, t_hat) = self.update_prediction(id)?;

        // deepest node whose interior holds both t and t_hat; the root always
        // qualifies since t_hat <= m < m + 1
        let mut depth = self.path.len() - 1;
        while depth > 0 {
            let iv = self.path[depth].interval;
            if iv.lo < t && t_hat < iv.hi {
                break;
            }
            depth -= 1;
        }
        self.path.truncate(depth + 1);
        self.current = (t, t_hat, id);
        self.walk_back = depth;
        self.resume(depth, t, t_hat);
        self.arrived[id] = true;
        self.t = t;
        Ok(Arrival { t, t_hat })
    }

    /// Maps an arriving edge to its id in the prediction. `None` means the
    /// edge is unknown and restart mode is on.
    fn resolve(&self, e: &Edge) -> Result<Option<EdgeId>> {
        if e.src >= self.n || e.dst >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: e.src.max(e.dst),
                n: self.n,
            });
        }
        let pair = (e.src as u32, e.dst as u32);
        let id = if self.endpoints.get(e.id) == Some(&pair) {
            Some(e.id)
        } else if let Some(index) = &self.pair_index {
            index.get(&pair).copied()
        } else {
            return Err(Error::EdgeNotInPrediction(e.id));
        };
        if let Some(id) = id {
            if self.arrived[id] {
                return Err(Error::Sequence {
                    edge: id,
                    reason: "edge already arrived",
                });
            }
        }
        Ok(id)
    }

    /// Moves edge `id` from `t̂` to `t = current_time + 1` in the prediction.
    fn update_prediction(&mut self, id: EdgeId) -> Result<(Time, Time)> {
        let t = self.t + 1;
        let t_hat = self.prediction.move_to(id, t)?;
        Ok((t, t_hat))
    }

    fn restart_with(&mut self, src: VertexId, dst: VertexId) -> Result<Arrival> {
        debug_assert_eq!(self.mode, Mode::Restart);
        let t = self.t + 1;
        let id = self.prediction.insert_new(t);
        self.endpoints.push((src as u32, dst as u32));
        self.arrived.push(false);
        self.root_graph.push_root_edge(id, src, dst);
        if let Some(index) = &mut self.pair_index {
            index.insert((src as u32, dst as u32), id);
        }
        self.restarts += 1;

        let m = self.prediction.len();
        self.path.clear();
        self.path.push(PathNode::placeholder(Interval::root(m), Side::Root));
        self.current = (t, t, id);
        self.walk_back = 0;
        self.build_path(0, t);
        self.arrived[id] = true;
        self.t = t;
        Ok(Arrival { t, t_hat: t })
    }

    /// Continues the path from the walk-back node at `depth`. That node is
    /// only recomputed if the moved edge crossed its midpoint; otherwise its
    /// components and split are still current.
    fn resume(&mut self, depth: usize, t: Time, t_hat: Time) {
        let x = self.path[depth].interval.mid();
        if t <= x && x < t_hat {
            return self.build_path(depth, t);
        }
        let (above, rest) = self.path.split_at_mut(depth);
        let node = &mut rest[0];
        let graph = match above.last() {
            None => &self.root_graph,
            Some(parent) => child_of(parent, node.side),
        };
        if x == t {
            for group in node.comps.nontrivial() {
                self.labels
                    .merge_unchecked(group.iter().map(|&h| graph.representative(h as usize)));
            }
            return;
        }
        if node.split.is_none() {
            // the previous tip; only its components were kept
            self.work += graph.cost();
            node.split = Some(graph.split(&node.comps));
        }
        let (side, child) = node
            .interval
            .child_toward(t)
            .expect("walk-back node holds t in its interior");
        self.path.push(PathNode::placeholder(child, side));
        self.build_path(depth + 1, t);
    }

    /// Rebuilds the path node at `depth` and every node below it on the way
    /// to the node with midpoint `t`. With `t = 0` it builds the leftmost
    /// chain instead.
    fn build_path(&mut self, mut depth: usize, t: Time) {
        let pos = self.prediction.positions();
        loop {
            let (above, rest) = self.path.split_at_mut(depth);
            let node = &mut rest[0];
            let graph = match above.last() {
                None => &self.root_graph,
                Some(parent) => child_of(parent, node.side),
            };
            let interval = node.interval;
            let x = interval.mid();

            self.work += graph.cost();
            if self.rebuilds.len() <= depth {
                self.rebuilds.resize(depth + 1, 0);
            }
            self.rebuilds[depth] += 1;
            if let Some(trace) = &mut self.trace {
                let previous_build = trace.last_built.insert(interval, t);
                if t > 0 {
                    let (_, t_hat, edge) = self.current;
                    trace.events.push(RebuildEvent {
                        t,
                        t_hat,
                        edge,
                        depth,
                        interval,
                        previous_build,
                        lca: depth == self.walk_back,
                    });
                }
            }

            let comps = graph.solve(x, pos);
            if t > 0 && x == t {
                for group in comps.nontrivial() {
                    self.labels
                        .merge_unchecked(group.iter().map(|&h| graph.representative(h as usize)));
                }
                node.comps = comps;
                node.split = None;
                return;
            }

            let next = if t == 0 {
                interval.left().map(|c| (Side::Left, c))
            } else {
                interval.child_toward(t)
            };
            node.split = next.map(|_| graph.split(&comps));
            node.comps = comps;
            let Some((side, child)) = next else { return };
            self.path.push(PathNode::placeholder(child, side));
            depth += 1;
        }
    }
}

fn child_of(parent: &PathNode, side: Side) -> &CondensedGraph {
    let (l, r) = parent
        .split
        .as_ref()
        .expect("path node above the tip has no stored split");
    if side == Side::Left {
        l
    } else {
        r
    }
}

fn graph_at<'a>(root: &'a CondensedGraph, path: &'a [PathNode], depth: usize) -> &'a CondensedGraph {
    if depth == 0 {
        root
    } else {
        child_of(&path[depth - 1], path[depth].side)
    }
}

impl IncrementalScc for LearnedIncScc {
    fn insert(&mut self, e: &Edge) -> Result<()> {
        LearnedIncScc::insert(self, e).map(|_| ())
    }

    fn same_scc(&self, u: VertexId, v: VertexId) -> bool {
        self.labels.same(u, v)
    }

    fn vertex_count(&self) -> usize {
        self.n
    }
}
