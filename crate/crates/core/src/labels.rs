//! Vertex labels with O(1) same-component queries.
//!
//! Every label owns a doubly linked list of its vertices. Merging two classes
//! relabels the members of the smaller list and splices it onto the larger
//! one, so a vertex is relabeled at most `⌊log₂ n⌋` times overall.

use crate::error::{Error, Result};
use crate::graph::VertexId;

const NIL: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct NodeLabels {
    label: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    // indexed by label
    head: Vec<u32>,
    tail: Vec<u32>,
    size: Vec<u32>,
    relabels: u64,
    unions: u64,
}

impl NodeLabels {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("node labels need at least one vertex"));
        }
        if n >= NIL as usize {
            return Err(Error::invalid(format!("too many vertices: {n}")));
        }
        let ids: Vec<u32> = (0..n as u32).collect();
        Ok(NodeLabels {
            label: ids.clone(),
            next: vec![NIL; n],
            prev: vec![NIL; n],
            head: ids.clone(),
            tail: ids,
            size: vec![1; n],
            relabels: 0,
            unions: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label.is_empty()
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if v < self.label.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.label.len(),
            })
        }
    }

    pub fn label(&self, v: VertexId) -> Result<usize> {
        self.check(v)?;
        Ok(self.label[v] as usize)
    }

    pub fn same_scc(&self, a: VertexId, b: VertexId) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.label[a] == self.label[b])
    }

    /// Unchecked variant for callers that already validated both vertices.
    #[inline]
    pub(crate) fn same(&self, a: VertexId, b: VertexId) -> bool {
        self.label[a] == self.label[b]
    }

    /// Members of the class labelled `label`, in list order.
    pub fn members(&self, label: usize) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut cur = self.head.get(label).copied().unwrap_or(NIL);
        while cur != NIL {
            out.push(cur as usize);
            cur = self.next[cur as usize];
        }
        out
    }

    pub fn class_size(&self, label: usize) -> usize {
        self.size.get(label).copied().unwrap_or(0) as usize
    }

    /// Puts every vertex of `vs` into one class, merging left to right.
    pub fn merge(&mut self, vs: &[VertexId]) -> Result<()> {
        if vs.is_empty() {
            return Err(Error::invalid("merge needs at least one vertex"));
        }
        for &v in vs {
            self.check(v)?;
        }
        self.merge_unchecked(vs.iter().copied());
        Ok(())
    }

    pub(crate) fn merge_unchecked(&mut self, vs: impl IntoIterator<Item = VertexId>) {
        let mut vs = vs.into_iter();
        let Some(mut prev) = vs.next() else { return };
        for v in vs {
            self.union(prev, v);
            prev = v;
        }
    }

    fn union(&mut self, a: VertexId, b: VertexId) {
        let (la, lb) = (self.label[a], self.label[b]);
        if la == lb {
            return;
        }
        let (sa, sb) = (self.size[la as usize], self.size[lb as usize]);
        // equal sizes: the smaller label survives
        let (small, large) = if sa < sb || (sa == sb && la > lb) {
            (la, lb)
        } else {
            (lb, la)
        };
        let (s, l) = (small as usize, large as usize);

        let mut cur = self.head[s];
        while cur != NIL {
            self.label[cur as usize] = large;
            cur = self.next[cur as usize];
        }
        self.relabels += self.size[s] as u64;

        let (lt, sh) = (self.tail[l], self.head[s]);
        self.next[lt as usize] = sh;
        self.prev[sh as usize] = lt;
        self.tail[l] = self.tail[s];
        self.size[l] += self.size[s];
        self.head[s] = NIL;
        self.tail[s] = NIL;
        self.size[s] = 0;
        self.unions += 1;
    }

    /// Total number of single-vertex relabels performed.
    pub fn relabel_count(&self) -> u64 {
        self.relabels
    }

    /// Number of pairwise class unions that changed something.
    pub fn union_count(&self) -> u64 {
        self.unions
    }

    /// Number of classes.
    pub fn class_count(&self) -> usize {
        self.label.len() - self.unions as usize
    }

    /// Checks that labels and member lists describe the same partition.
    pub fn check_consistency(&self) -> std::result::Result<(), String> {
        let n = self.label.len();
        let mut seen = vec![false; n];
        let mut total = 0usize;
        for l in 0..n {
            let mut cur = self.head[l];
            let mut prev = NIL;
            let mut count = 0u32;
            while cur != NIL {
                let c = cur as usize;
                if self.label[c] as usize != l {
                    return Err(format!("vertex {c} listed under {l} but labelled {}", self.label[c]));
                }
                if std::mem::replace(&mut seen[c], true) {
                    return Err(format!("vertex {c} listed twice"));
                }
                if self.prev[c] != prev {
                    return Err(format!("broken back link at {c}"));
                }
                prev = cur;
                cur = self.next[c];
                count += 1;
            }
            if self.tail[l] != prev {
                return Err(format!("stale tail for label {l}"));
            }
            if count != self.size[l] {
                return Err(format!("size of label {l} is {} but list has {count}", self.size[l]));
            }
            total += count as usize;
        }
        if total != n {
            return Err(format!("lists cover {total} of {n} vertices"));
        }
        Ok(())
    }

    /// Each vertex mapped to the smallest vertex sharing its label.
    pub fn canonical(&self) -> Vec<VertexId> {
        let n = self.label.len();
        let mut min_of = vec![usize::MAX; n];
        for (v, &l) in self.label.iter().enumerate() {
            min_of[l as usize] = min_of[l as usize].min(v);
        }
        self.label.iter().map(|&l| min_of[l as usize]).collect()
    }
}
