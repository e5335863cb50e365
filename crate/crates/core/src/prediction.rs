//! The evolving predicted arrival order `σ̂_t`.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSequence, Time};

/// A permutation of edge ids with 1-based positions and O(1) lookups both
/// ways.
///
/// Corrections only ever move an edge *earlier*, from its predicted
/// position `t̂` to its true arrival time `t <= t̂`, shifting the edges in
/// between one step later. That is a rotation of the window `[t, t̂]`, so a
/// correction costs `O(t̂ - t + 1)`, which is at most `η + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    seq: Vec<u32>,
    pos: Vec<u32>,
}

impl Prediction {
    pub fn new(sigma_hat: &EdgeSequence) -> Self {
        let seq: Vec<u32> = sigma_hat.iter().map(|e| e.id as u32).collect();
        let mut pos = vec![0u32; seq.len()];
        for (i, &id) in seq.iter().enumerate() {
            pos[id as usize] = i as u32 + 1;
        }
        Prediction { seq, pos }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn edge_at(&self, pos: Time) -> Option<EdgeId> {
        pos.checked_sub(1).and_then(|i| self.seq.get(i)).map(|&id| id as EdgeId)
    }

    pub fn position_of(&self, id: EdgeId) -> Option<Time> {
        self.pos.get(id).map(|&p| p as Time)
    }

    /// Edge ids in predicted order.
    pub fn ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.seq.iter().map(|&id| id as EdgeId)
    }

    pub(crate) fn positions(&self) -> &[u32] {
        &self.pos
    }

    /// Moves `id` to position `t`, which must not be after its current
    /// position. Returns the position it came from.
    pub fn move_to(&mut self, id: EdgeId, t: Time) -> Result<Time> {
        let t_hat = self.position_of(id).ok_or(Error::EdgeNotInPrediction(id))?;
        if t == 0 || t > t_hat {
            return Err(Error::Sequence {
                edge: id,
                reason: "predicted position is earlier than the arrival time",
            });
        }
        if t == t_hat {
            return Ok(t_hat);
        }
        let window = &mut self.seq[t - 1..t_hat];
        window.rotate_right(1);
        for (offset, &e) in window.iter().enumerate() {
            self.pos[e as usize] = (t + offset) as u32;
        }
        Ok(t_hat)
    }

    /// Inserts a new edge id `len()` at position `t`.
    pub(crate) fn insert_new(&mut self, t: Time) -> EdgeId {
        let id = self.seq.len();
        self.seq.insert(t - 1, id as u32);
        self.pos.push(0);
        for (i, &e) in self.seq.iter().enumerate().skip(t - 1) {
            self.pos[e as usize] = i as u32 + 1;
        }
        id
    }
}
