//! Exact reachability by exhaustive search over the move DAG.
//!
//! Every move removes one pebble in total, so the set of distributions
//! reachable from `p` is finite and acyclic. The search visits each reachable
//! distribution once; nodes are keyed by the full count vector, so a single
//! traversal answers queries for every target vertex.

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{invalid, Result, RubbleError};
use crate::graph::{Graph, Vertex};
use crate::moves::{Distribution, Move, MoveSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    /// Reject queries whose target weight is below the demanded count before
    /// searching. Sound because no move increases any vertex weight.
    pub weight_cutoff: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { weight_cutoff: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachResult {
    pub max_pebbles: u32,
    pub witness: Option<MoveSequence>,
}

/// `Σ_u p(u) / 2^d(u, x)`.
pub fn weight(g: &Graph, p: &Distribution, x: Vertex) -> Dyadic {
    p.counts().iter().enumerate().filter(|(_, &c)| c > 0).map(|(u, &c)| Dyadic::halved(c as i128, g.dist(u, x))).sum()
}

pub(crate) fn to_state(g: &Graph, p: &Distribution) -> Result<Box<[u8]>> {
    p.check_against(g)?;
    if p.size() > u8::MAX as u64 {
        return Err(RubbleError::TooManyPebbles(format!("size {} exceeds {}", p.size(), u8::MAX)));
    }
    Ok(p.counts().iter().map(|&c| c as u8).collect())
}

/// All moves executable from `counts` (the first `g.vertex_count()` bytes).
pub(crate) fn executable_moves(g: &Graph, counts: &[u8], out: &mut Vec<Move>) {
    out.clear();
    for to in 0..g.vertex_count() {
        let nb = g.neighbors(to);
        for (i, &a) in nb.iter().enumerate() {
            if counts[a] >= 2 {
                out.push(Move::Pebbling { from: a, to });
            }
            if counts[a] >= 1 {
                for &b in &nb[i + 1..] {
                    if counts[b] >= 1 {
                        out.push(Move::StrictRubbling { v: a, w: b, to });
                    }
                }
            }
        }
    }
}

#[inline]
pub(crate) fn apply_to_state(state: &mut [u8], m: &Move) {
    match *m {
        Move::Pebbling { from, to } => {
            state[from] -= 2;
            state[to] += 1;
        }
        Move::StrictRubbling { v, w, to } => {
            state[v] -= 1;
            state[w] -= 1;
            state[to] += 1;
        }
    }
}

/// The visited part of the move DAG, with first-discovery parent links.
pub(crate) struct Exploration {
    states: Vec<Box<[u8]>>,
    parent: Vec<Option<(u32, Move)>>,
}

impl Exploration {
    pub(crate) fn len(&self) -> usize {
        self.states.len()
    }

    pub(crate) fn witness(&self, mut idx: u32) -> MoveSequence {
        let mut moves = Vec::new();
        while let Some((p, m)) = self.parent[idx as usize] {
            moves.push(m);
            idx = p;
        }
        moves.reverse();
        MoveSequence(moves)
    }
}

/// Depth-first traversal from `start`.
///
/// `start` may carry tag bytes after the pebble counts. `guard` sees the
/// move, the current state and the successor (counts already updated); it may
/// rewrite tag bytes and returns `false` to forbid the move. `visit`
/// returns `true` to stop; the stopping index is returned.
pub(crate) fn explore<G, V>(g: &Graph, start: Box<[u8]>, mut guard: G, mut visit: V) -> (Exploration, Option<u32>)
where
    G: FnMut(&Move, &[u8], &mut [u8]) -> bool,
    V: FnMut(&[u8]) -> bool,
{
    let mut ex = Exploration { states: Vec::new(), parent: Vec::new() };
    let mut index: FxHashMap<Box<[u8]>, u32> = FxHashMap::default();
    let stop_at_start = visit(&start);
    index.insert(start.clone(), 0);
    ex.states.push(start);
    ex.parent.push(None);
    if stop_at_start {
        return (ex, Some(0));
    }
    let mut stack = vec![0u32];
    let mut moves = Vec::new();
    let mut current: Vec<u8> = Vec::new();
    while let Some(idx) = stack.pop() {
        current.clear();
        current.extend_from_slice(&ex.states[idx as usize]);
        executable_moves(g, &current, &mut moves);
        for m in &moves {
            let mut next: Box<[u8]> = current.clone().into_boxed_slice();
            apply_to_state(&mut next, m);
            if !guard(m, &current, &mut next) || index.contains_key(&next) {
                continue;
            }
            let id = ex.states.len() as u32;
            let stop = visit(&next);
            index.insert(next.clone(), id);
            ex.states.push(next);
            ex.parent.push(Some((idx, *m)));
            if stop {
                return (ex, Some(id));
            }
            stack.push(id);
        }
    }
    (ex, None)
}

pub(crate) fn explore_free<V: FnMut(&[u8]) -> bool>(
    g: &Graph,
    start: Box<[u8]>,
    visit: V,
) -> (Exploration, Option<u32>) {
    explore(g, start, |_, _, _| true, visit)
}

/// Decision procedures bound to one graph.
#[derive(Debug, Clone, Copy)]
pub struct Engine<'g> {
    graph: &'g Graph,
    options: EngineOptions,
}

impl<'g> Engine<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Engine { graph, options: EngineOptions::default() }
    }

    pub fn with_options(graph: &'g Graph, options: EngineOptions) -> Self {
        Engine { graph, options }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    fn weight_floor(&self, p: &Distribution, v: Vertex) -> u64 {
        weight(self.graph, p, v).floor().max(0) as u64
    }

    /// Maximum of `p_T(target)` over executable `T`, with a witness.
    pub fn max_pebbles_to(&self, p: &Distribution, target: Vertex) -> Result<ReachResult> {
        let g = self.graph;
        g.check_vertex(target)?;
        let start = to_state(g, p)?;
        let ceiling = if self.options.weight_cutoff { self.weight_floor(p, target) } else { p.size() };
        let mut best = (start[target], 0u32);
        let mut seen = 0u32;
        let (ex, _) = explore_free(g, start, |s| {
            if s[target] > best.0 {
                best = (s[target], seen);
            }
            seen += 1;
            best.0 as u64 >= ceiling
        });
        Ok(ReachResult { max_pebbles: best.0 as u32, witness: Some(ex.witness(best.1)) })
    }

    /// Pointwise maximum over all reachable distributions: entry `v` is the
    /// largest `k` for which `v` is `k`-reachable.
    pub fn reach_profile(&self, p: &Distribution) -> Result<Vec<u32>> {
        let g = self.graph;
        let start = to_state(g, p)?;
        let ceilings: Vec<u64> = (0..g.vertex_count())
            .map(|v| if self.options.weight_cutoff { self.weight_floor(p, v) } else { p.size() })
            .collect();
        let mut best: Vec<u8> = start.to_vec();
        let mut open = (0..best.len()).filter(|&v| (best[v] as u64) < ceilings[v]).count();
        if open == 0 {
            return Ok(best.into_iter().map(u32::from).collect());
        }
        explore_free(g, start, |s| {
            for v in 0..best.len() {
                if s[v] > best[v] {
                    if (best[v] as u64) < ceilings[v] && s[v] as u64 >= ceilings[v] {
                        open -= 1;
                    }
                    best[v] = s[v];
                }
            }
            open == 0
        });
        Ok(best.into_iter().map(u32::from).collect())
    }

    pub fn is_reachable(&self, p: &Distribution, v: Vertex) -> Result<bool> {
        self.is_k_reachable(p, v, 1)
    }

    pub fn is_k_reachable(&self, p: &Distribution, v: Vertex, k: u32) -> Result<bool> {
        Ok(self.k_reach_witness(p, v, k)?.is_some())
    }

    /// A sequence placing at least `k` pebbles on `v`, if one exists.
    pub fn k_reach_witness(&self, p: &Distribution, v: Vertex, k: u32) -> Result<Option<MoveSequence>> {
        let g = self.graph;
        g.check_vertex(v)?;
        let start = to_state(g, p)?;
        if k == 0 {
            return Ok(Some(MoveSequence::new()));
        }
        if k as u64 > p.size() || (self.options.weight_cutoff && self.weight_floor(p, v) < k as u64) {
            return Ok(None);
        }
        let (ex, hit) = explore_free(g, start, |s| s[v] as u32 >= k);
        Ok(hit.map(|i| ex.witness(i)))
    }

    pub fn is_solvable(&self, p: &Distribution) -> Result<bool> {
        self.is_k_solvable(p, 1)
    }

    pub fn is_k_solvable(&self, p: &Distribution, k: u32) -> Result<bool> {
        let g = self.graph;
        if k == 0 {
            return Err(invalid("k must be at least 1"));
        }
        let start = to_state(g, p)?;
        if k as u64 > p.size() {
            return Ok(false);
        }
        if self.options.weight_cutoff && (0..g.vertex_count()).any(|v| self.weight_floor(p, v) < k as u64) {
            return Ok(false);
        }
        let k = k as u8;
        let mut covered = vec![false; g.vertex_count()];
        let mut open = g.vertex_count();
        let (_, hit) = explore_free(g, start, |s| {
            for (v, c) in covered.iter_mut().enumerate() {
                if !*c && s[v] >= k {
                    *c = true;
                    open -= 1;
                }
            }
            open == 0
        });
        Ok(hit.is_some())
    }

    pub fn independently_reachable(&self, p: &Distribution, u: Vertex, v: Vertex) -> Result<bool> {
        Ok(self.independent_witness(p, u, v)?.is_some())
    }

    pub fn independent_witness(&self, p: &Distribution, u: Vertex, v: Vertex) -> Result<Option<MoveSequence>> {
        let g = self.graph;
        g.check_vertex(u)?;
        g.check_vertex(v)?;
        if u == v {
            return Err(invalid("independent reachability needs two distinct vertices"));
        }
        let start = to_state(g, p)?;
        let (ex, hit) = explore_free(g, start, |s| s[u] >= 1 && s[v] >= 1);
        Ok(hit.map(|i| ex.witness(i)))
    }

    /// Maximum of `p_T(H)` over executable `T`.
    pub fn max_pebbles_to_set(&self, p: &Distribution, set: &[Vertex]) -> Result<u32> {
        let g = self.graph;
        if set.is_empty() {
            return Err(invalid("vertex set must be nonempty"));
        }
        let mut set = set.to_vec();
        set.sort_unstable();
        set.dedup();
        for &v in &set {
            g.check_vertex(v)?;
        }
        let start = to_state(g, p)?;
        let total = p.size() as u32;
        let mut best = 0u32;
        explore_free(g, start, |s| {
            let here: u32 = set.iter().map(|&v| s[v] as u32).sum();
            best = best.max(here);
            best == total
        });
        Ok(best)
    }

    /// Whether some executable `T` puts at least `k` pebbles on `set` in total.
    pub fn is_set_k_reachable(&self, p: &Distribution, set: &[Vertex], k: u32) -> Result<bool> {
        let g = self.graph;
        if set.is_empty() {
            return Err(invalid("vertex set must be nonempty"));
        }
        let mut set = set.to_vec();
        set.sort_unstable();
        set.dedup();
        for &v in &set {
            g.check_vertex(v)?;
        }
        if k as u64 > p.size() {
            return Ok(false);
        }
        let start = to_state(g, p)?;
        let (_, hit) = explore_free(g, start, |s| set.iter().map(|&v| s[v] as u32).sum::<u32>() >= k);
        Ok(hit.is_some())
    }

    /// Number of distributions reachable from `p` (including `p`).
    pub fn reachable_count(&self, p: &Distribution) -> Result<usize> {
        let start = to_state(self.graph, p)?;
        Ok(explore_free(self.graph, start, |_| false).0.len())
    }
}

pub fn max_pebbles_to(g: &Graph, p: &Distribution, target: Vertex) -> Result<ReachResult> {
    Engine::new(g).max_pebbles_to(p, target)
}

pub fn is_reachable(g: &Graph, p: &Distribution, v: Vertex) -> Result<bool> {
    Engine::new(g).is_reachable(p, v)
}

pub fn is_k_reachable(g: &Graph, p: &Distribution, v: Vertex, k: u32) -> Result<bool> {
    Engine::new(g).is_k_reachable(p, v, k)
}

pub fn is_solvable(g: &Graph, p: &Distribution) -> Result<bool> {
    Engine::new(g).is_solvable(p)
}

pub fn is_k_solvable(g: &Graph, p: &Distribution, k: u32) -> Result<bool> {
    Engine::new(g).is_k_solvable(p, k)
}

pub fn independently_reachable(g: &Graph, p: &Distribution, u: Vertex, v: Vertex) -> Result<bool> {
    Engine::new(g).independently_reachable(p, u, v)
}

pub fn max_pebbles_to_set(g: &Graph, p: &Distribution, set: &[Vertex]) -> Result<u32> {
    Engine::new(g).max_pebbles_to_set(p, set)
}
