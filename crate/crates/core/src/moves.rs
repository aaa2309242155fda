//! Pebble distributions, rubbling moves and sequence execution.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result, RubbleError};
use crate::graph::{Graph, Vertex};

/// Nonnegative pebble counts indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Distribution {
    counts: Vec<u32>,
    size: u64,
}

impl Distribution {
    pub fn new(counts: Vec<u32>) -> Self {
        let size = counts.iter().map(|&c| c as u64).sum();
        Distribution { counts, size }
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self::new(vec![0; vertex_count])
    }

    /// `count` pebbles on `v`, nothing elsewhere.
    pub fn single(vertex_count: usize, v: Vertex, count: u32) -> Self {
        let mut counts = vec![0; vertex_count];
        counts[v] = count;
        Self::new(counts)
    }

    pub fn from_pairs(vertex_count: usize, pairs: &[(Vertex, u32)]) -> Self {
        let mut counts = vec![0; vertex_count];
        for &(v, c) in pairs {
            counts[v] += c;
        }
        Self::new(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn get(&self, v: Vertex) -> u32 {
        self.counts[v]
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Total over a vertex set.
    pub fn sum_over(&self, vertices: &[Vertex]) -> u64 {
        vertices.iter().map(|&v| self.counts[v] as u64).sum()
    }

    pub fn check_against(&self, g: &Graph) -> Result<()> {
        if self.counts.len() != g.vertex_count() {
            return Err(invalid(format!(
                "distribution has {} entries but the graph has {} vertices",
                self.counts.len(),
                g.vertex_count()
            )));
        }
        Ok(())
    }
}

impl From<Vec<u32>> for Distribution {
    fn from(counts: Vec<u32>) -> Self {
        Distribution::new(counts)
    }
}

#[derive(Serialize)]
struct DistributionRepr<'a> {
    counts: &'a [u32],
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DistributionInput {
    Object { counts: Vec<u32> },
    Bare(Vec<u32>),
}

impl Serialize for Distribution {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DistributionRepr { counts: &self.counts }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Distribution {
    /// Accepts `{"counts": [...]}` or a bare array.
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(match DistributionInput::deserialize(deserializer)? {
            DistributionInput::Object { counts } | DistributionInput::Bare(counts) => Distribution::new(counts),
        })
    }
}

/// A pebbling move `(from, from → to)` or a strict rubbling move `(v, w → to)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    Pebbling { from: Vertex, to: Vertex },
    StrictRubbling { v: Vertex, w: Vertex, to: Vertex },
}

impl Move {
    pub fn target(&self) -> Vertex {
        match *self {
            Move::Pebbling { to, .. } | Move::StrictRubbling { to, .. } => to,
        }
    }

    /// The (vertex, pebbles removed) pairs of this move.
    pub fn sources(&self) -> impl Iterator<Item = (Vertex, u32)> {
        let (a, b) = match *self {
            Move::Pebbling { from, .. } => ((from, 2), None),
            Move::StrictRubbling { v, w, .. } => ((v, 1), Some((w, 1))),
        };
        std::iter::once(a).chain(b)
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        match *self {
            Move::Pebbling { from, to } => {
                if from >= n || to >= n || !g.has_edge(from, to) {
                    return Err(RubbleError::InvalidMove(format!("{{{from},{to}}} is not an edge")));
                }
            }
            Move::StrictRubbling { v, w, to } => {
                if v == w {
                    return Err(RubbleError::InvalidMove(format!(
                        "strict rubbling needs distinct sources, got {v} twice"
                    )));
                }
                if v >= n || w >= n || to >= n || !g.has_edge(v, to) || !g.has_edge(w, to) {
                    return Err(RubbleError::InvalidMove(format!("{v} and {w} are not both adjacent to {to}")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MoveSequence(pub Vec<Move>);

impl MoveSequence {
    pub fn new() -> Self {
        MoveSequence(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn push(&mut self, m: Move) {
        self.0.push(m);
    }

    /// Concatenation `self` then `other`.
    pub fn then(mut self, other: &MoveSequence) -> Self {
        self.0.extend_from_slice(&other.0);
        self
    }
}

/// One move applied to `p`; the size drops by exactly one.
pub fn apply_move(g: &Graph, p: &Distribution, m: &Move) -> Result<Distribution> {
    p.check_against(g)?;
    m.validate(g)?;
    let mut counts = p.counts.clone();
    for (v, k) in m.sources() {
        if counts[v] < k {
            return Err(RubbleError::MoveNotExecutable(format!("{m:?}: vertex {v} holds {}", counts[v])));
        }
        counts[v] -= k;
    }
    counts[m.target()] += 1;
    Ok(Distribution::new(counts))
}

/// Whether every prefix of `seq` keeps the pebble function nonnegative.
pub fn is_executable(g: &Graph, p: &Distribution, seq: &MoveSequence) -> Result<bool> {
    p.check_against(g)?;
    let mut f: Vec<i64> = p.counts.iter().map(|&c| c as i64).collect();
    let mut ok = true;
    for m in seq.moves() {
        m.validate(g)?;
        for (v, k) in m.sources() {
            f[v] -= k as i64;
            ok &= f[v] >= 0;
        }
        f[m.target()] += 1;
    }
    Ok(ok)
}

/// Executes `seq` from `p`, failing on the first non-executable move.
pub fn replay(g: &Graph, p: &Distribution, seq: &MoveSequence) -> Result<Distribution> {
    let mut current = p.clone();
    for m in seq.moves() {
        current = apply_move(g, &current, m)?;
    }
    Ok(current)
}
