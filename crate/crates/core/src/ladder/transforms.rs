use crate::error::{invalid, Result, RubbleError};
use crate::graph::{Graph, Vertex};
use crate::moves::Distribution;

/// Moves two pebbles off a degree-2 vertex holding at least three, one to
/// each neighbor. Size is preserved.
pub fn smoothing_move(g: &Graph, p: &Distribution, v: Vertex) -> Result<Distribution> {
    p.check_against(g)?;
    g.check_vertex(v)?;
    if g.degree(v) != 2 {
        return Err(RubbleError::InvalidSmoothing(format!("vertex {v} has degree {}", g.degree(v))));
    }
    if p.get(v) < 3 {
        return Err(RubbleError::InvalidSmoothing(format!("vertex {v} holds {} pebbles", p.get(v))));
    }
    let mut counts = p.counts().to_vec();
    counts[v] -= 2;
    for &u in g.neighbors(v) {
        counts[u] += 1;
    }
    Ok(Distribution::new(counts))
}

/// Smooths the lowest-index eligible vertex until none is left. Terminates
/// because each step lowers `Σ p(v)^2` on a fixed total.
pub fn smooth_fully(g: &Graph, p: &Distribution) -> Result<Distribution> {
    p.check_against(g)?;
    let mut current = p.clone();
    while let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) == 2 && current.get(v) >= 3) {
        current = smoothing_move(g, &current, v)?;
    }
    Ok(current)
}

/// Quotient of a graph by a partition into connected blocks.
#[derive(Debug, Clone)]
pub struct Collapse {
    pub graph: Graph,
    /// `block_of[v]` is the quotient vertex containing `v`.
    pub block_of: Vec<usize>,
}

impl Collapse {
    /// Collapsed distribution: each block carries the total of its vertices.
    pub fn distribution(&self, p: &Distribution) -> Result<Distribution> {
        if p.len() != self.block_of.len() {
            return Err(invalid("distribution does not match the collapsed graph's source"));
        }
        let mut counts = vec![0u32; self.graph.vertex_count()];
        for (v, &b) in self.block_of.iter().enumerate() {
            counts[b] += p.get(v);
        }
        Ok(Distribution::new(counts))
    }
}

pub fn collapse(g: &Graph, blocks: &[Vec<Vertex>]) -> Result<Collapse> {
    let mut block_of = vec![usize::MAX; g.vertex_count()];
    for (b, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(invalid(format!("block {b} is empty")));
        }
        for &v in block {
            g.check_vertex(v)?;
            if block_of[v] != usize::MAX {
                return Err(invalid(format!("vertex {v} appears in more than one block")));
            }
            block_of[v] = b;
        }
        if g.induced(block).is_err() {
            return Err(invalid(format!("block {b} does not induce a connected subgraph")));
        }
    }
    if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(invalid(format!("vertex {v} is not covered by any block")));
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (block_of[u], block_of[v]))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Ok(Collapse { graph: Graph::new(blocks.len(), &edges)?, block_of })
}
