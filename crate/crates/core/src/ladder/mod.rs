//! Structure specific to `P_n □ P_2`: rungs, one-sided weights and
//! one-sided reachability, greedy rubbling, biased sequences, smoothing,
//! collapsing and dependence of side-reachable vertices.
//!
//! Rung `i` (0-based, left to right) consists of the upper vertex `2i` and
//! the lower vertex `2i + 1`.

mod biased;
mod dependence;
mod transforms;

pub use biased::{find_a_biased_sequence, is_a_biased};
pub use dependence::p_dependent;
pub use transforms::{collapse, smooth_fully, smoothing_move, Collapse};

use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::engine::Engine;
use crate::error::{invalid, Result, RubbleError};
use crate::graph::{ladder, Family, Graph, Vertex};
use crate::moves::{Distribution, Move, MoveSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LadderLayout {
    rungs: usize,
}

impl LadderLayout {
    pub fn new(g: &Graph) -> Result<Self> {
        match g.family() {
            Family::Ladder(n) => Ok(LadderLayout { rungs: *n }),
            other => Err(RubbleError::InvalidLayout(format!("expected a ladder, got {other:?}"))),
        }
    }

    pub fn with_rungs(rungs: usize) -> Result<Self> {
        if rungs == 0 {
            return Err(invalid("ladder needs at least one rung"));
        }
        Ok(LadderLayout { rungs })
    }

    pub fn rungs(&self) -> usize {
        self.rungs
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.rungs
    }

    pub fn graph(&self) -> Graph {
        ladder(self.rungs).expect("rungs >= 1")
    }

    pub fn upper(&self, rung: usize) -> Vertex {
        2 * rung
    }

    pub fn lower(&self, rung: usize) -> Vertex {
        2 * rung + 1
    }

    pub fn rung(&self, rung: usize) -> [Vertex; 2] {
        [2 * rung, 2 * rung + 1]
    }

    pub fn rung_of(&self, v: Vertex) -> usize {
        v / 2
    }

    pub fn partner(&self, v: Vertex) -> Vertex {
        v ^ 1
    }

    pub fn is_upper(&self, v: Vertex) -> bool {
        v.is_multiple_of(2)
    }

    /// Ladder distance; equals the distance inside any sub-ladder that
    /// contains both endpoints.
    pub fn distance(&self, a: Vertex, b: Vertex) -> u32 {
        (self.rung_of(a).abs_diff(self.rung_of(b)) + usize::from(a % 2 != b % 2)) as u32
    }

    pub fn rung_total(&self, p: &Distribution, rung: usize) -> u64 {
        p.sum_over(&self.rung(rung))
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(invalid(format!("vertex {v} out of range for a ladder with {} rungs", self.rungs)))
        }
    }

    pub(crate) fn check_distribution(&self, p: &Distribution) -> Result<()> {
        if p.len() != self.vertex_count() {
            return Err(RubbleError::InvalidLayout(format!(
                "distribution has {} entries, ladder has {} vertices",
                p.len(),
                self.vertex_count()
            )));
        }
        Ok(())
    }

    /// Rungs kept when looking at `v` from one side: everything not strictly
    /// right of `v` for [`Side::Left`], not strictly left for [`Side::Right`].
    pub fn side_rungs(&self, rung: usize, side: Side) -> std::ops::Range<usize> {
        match side {
            Side::Left => 0..rung + 1,
            Side::Right => rung..self.rungs,
        }
    }

    pub fn on_side(&self, v: Vertex, of: Vertex, side: Side) -> bool {
        self.side_rungs(self.rung_of(of), side).contains(&self.rung_of(v))
    }

    /// The sub-ladder on the given side of rung `rung` and `p` restricted to it.
    /// Vertex `u` of the sub-ladder is vertex `u + offset` of the full ladder.
    pub fn truncate(&self, p: &Distribution, rung: usize, side: Side) -> (Graph, Distribution, usize) {
        let range = self.side_rungs(rung, side);
        let offset = 2 * range.start;
        let counts = p.counts()[offset..2 * range.end].to_vec();
        (ladder(range.len()).expect("nonempty side"), Distribution::new(counts), offset)
    }
}

fn side_weight(layout: &LadderLayout, p: &Distribution, v: Vertex, side: Side) -> Result<Dyadic> {
    layout.check_distribution(p)?;
    layout.check_vertex(v)?;
    Ok(p.counts()
        .iter()
        .enumerate()
        .filter(|&(x, &c)| c > 0 && layout.on_side(x, v, side))
        .map(|(x, &c)| Dyadic::halved(c as i128, layout.distance(x, v)))
        .sum())
}

/// Weight of `v` counting only vertices not right of `v` (its rung partner included).
pub fn left_weight(layout: &LadderLayout, p: &Distribution, v: Vertex) -> Result<Dyadic> {
    side_weight(layout, p, v, Side::Left)
}

/// Weight of `v` counting only vertices not left of `v` (its rung partner included).
pub fn right_weight(layout: &LadderLayout, p: &Distribution, v: Vertex) -> Result<Dyadic> {
    side_weight(layout, p, v, Side::Right)
}

pub fn side_weight_of(layout: &LadderLayout, p: &Distribution, v: Vertex, side: Side) -> Result<Dyadic> {
    side_weight(layout, p, v, side)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideReach {
    pub left: u32,
    pub right: u32,
}

/// Pebbles deliverable to `v` using only one side of the ladder.
pub fn side_reach_one(layout: &LadderLayout, p: &Distribution, v: Vertex, side: Side) -> Result<u32> {
    layout.check_distribution(p)?;
    layout.check_vertex(v)?;
    let (g, q, offset) = layout.truncate(p, layout.rung_of(v), side);
    Ok(Engine::new(&g).max_pebbles_to(&q, v - offset)?.max_pebbles)
}

pub fn side_reach(layout: &LadderLayout, p: &Distribution, v: Vertex) -> Result<SideReach> {
    Ok(SideReach { left: side_reach_one(layout, p, v, Side::Left)?, right: side_reach_one(layout, p, v, Side::Right)? })
}

/// One-sided reach for every vertex; one search per rung and side.
pub fn side_reach_all(layout: &LadderLayout, p: &Distribution) -> Result<Vec<SideReach>> {
    layout.check_distribution(p)?;
    let mut out = vec![SideReach { left: 0, right: 0 }; layout.vertex_count()];
    for rung in 0..layout.rungs {
        for side in [Side::Left, Side::Right] {
            let (g, q, offset) = layout.truncate(p, rung, side);
            let profile = Engine::new(&g).reach_profile(&q)?;
            for v in layout.rung(rung) {
                let value = profile[v - offset];
                match side {
                    Side::Left => out[v].left = value,
                    Side::Right => out[v].right = value,
                }
            }
        }
    }
    Ok(out)
}

/// `L_p(v) = ⌊Lw_p(v)⌋` and `R_p(v) = ⌊Rw_p(v)⌋`.
pub fn check_floor_exactness(layout: &LadderLayout, p: &Distribution, v: Vertex) -> Result<bool> {
    let reach = side_reach(layout, p, v)?;
    let lw = left_weight(layout, p, v)?;
    let rw = right_weight(layout, p, v)?;
    Ok(reach.left as i128 == lw.floor() && reach.right as i128 == rw.floor())
}

/// Consolidates pebbles toward `target` from one side, farthest level first.
///
/// At each distance `d` the (at most two) side vertices at that distance
/// send pebbles to the neighbor at distance `d - 1` they share (or, for a
/// lone vertex, its neighbor at distance `d - 1`, the rung partner if possible): pebbling moves in pairs,
/// then one strict rubbling move if both still hold a pebble. Afterwards
/// every level `d > 0` holds at most one pebble, and the target holds
/// `⌊weight⌋` pebbles.
pub fn greedy_rubbling(layout: &LadderLayout, p: &Distribution, target: Vertex, side: Side) -> Result<MoveSequence> {
    layout.check_distribution(p)?;
    layout.check_vertex(target)?;
    let side_vertices: Vec<Vertex> = (0..layout.vertex_count()).filter(|&x| layout.on_side(x, target, side)).collect();
    let dist = |x: Vertex| layout.distance(x, target);
    let adjacent = |a: Vertex, b: Vertex| layout.distance(a, b) == 1;
    let max_d = side_vertices.iter().map(|&x| dist(x)).max().unwrap_or(0);
    let mut counts = p.counts().to_vec();
    let mut seq = MoveSequence::new();
    for d in (1..=max_d).rev() {
        let level: Vec<Vertex> = side_vertices.iter().copied().filter(|&x| dist(x) == d).collect();
        assert!(level.len() <= 2, "ladder levels hold at most two vertices");
        let closer: Vec<Vertex> = side_vertices
            .iter()
            .copied()
            .filter(|&u| dist(u) == d - 1 && level.iter().all(|&x| adjacent(x, u)))
            .collect();
        // A shared neighbor one step closer is unique on ladders. A lone
        // vertex prefers its rung partner so that no rung exports from both ends.
        debug_assert!(level.len() < 2 || closer.len() == 1);
        let same_rung = |u: Vertex| level.len() == 1 && layout.rung_of(u) == layout.rung_of(level[0]);
        let Some(&hub) = closer.iter().min_by_key(|&&u| (!same_rung(u), u)) else {
            continue;
        };
        for &x in &level {
            while counts[x] >= 2 {
                counts[x] -= 2;
                counts[hub] += 1;
                seq.push(Move::Pebbling { from: x, to: hub });
            }
        }
        if let [a, b] = level[..] {
            if counts[a] == 1 && counts[b] == 1 {
                counts[a] = 0;
                counts[b] = 0;
                counts[hub] += 1;
                seq.push(Move::StrictRubbling { v: a, w: b, to: hub });
            }
        }
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{is_executable, replay};

    #[test]
    fn layout_distance_matches_graph() {
        for n in 1..=6 {
            let layout = LadderLayout::with_rungs(n).unwrap();
            let g = layout.graph();
            for a in 0..2 * n {
                for b in 0..2 * n {
                    assert_eq!(layout.distance(a, b), g.distance(a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn rejects_non_ladders() {
        let pr = crate::graph::prism(4).unwrap();
        assert!(matches!(LadderLayout::new(&pr), Err(RubbleError::InvalidLayout(_))));
        let layout = LadderLayout::with_rungs(3).unwrap();
        assert!(matches!(left_weight(&layout, &Distribution::empty(4), 0), Err(RubbleError::InvalidLayout(_))));
    }

    #[test]
    fn weights() {
        let layout = LadderLayout::with_rungs(3).unwrap();
        let p = Distribution::single(6, 2, 5);
        assert_eq!(left_weight(&layout, &p, 2).unwrap(), Dyadic::integer(5));
        assert_eq!(right_weight(&layout, &p, 2).unwrap(), Dyadic::integer(5));
        let partner = Distribution::single(6, 3, 1);
        assert_eq!(left_weight(&layout, &partner, 2).unwrap(), Dyadic::new(1, 1));
        assert_eq!(right_weight(&layout, &partner, 2).unwrap(), Dyadic::new(1, 1));
        let far = Distribution::single(6, 0, 1);
        assert_eq!(left_weight(&layout, &far, 4).unwrap(), Dyadic::new(1, 2));
        assert_eq!(right_weight(&layout, &far, 4).unwrap(), Dyadic::ZERO);
    }

    #[test]
    fn side_reach_examples() {
        let layout = LadderLayout::with_rungs(3).unwrap();
        let p = Distribution::single(6, 2, 3);
        assert_eq!(side_reach(&layout, &p, 2).unwrap(), SideReach { left: 3, right: 3 });

        // Values below come from the brute-force recursion in engine tests.
        let l4 = LadderLayout::with_rungs(4).unwrap();
        let p = Distribution::single(8, 0, 2);
        assert_eq!(side_reach(&l4, &p, 0).unwrap().right, 2);
        assert_eq!(side_reach(&l4, &p, 4).unwrap().left, 0);
        assert_eq!(side_reach(&l4, &p, 2).unwrap().left, 1);

        let p = Distribution::single(6, 4, 4);
        assert_eq!(side_reach(&layout, &p, 0).unwrap(), SideReach { left: 0, right: 1 });
        assert_eq!(side_reach(&layout, &p, 4).unwrap().left, 4);
    }

    #[test]
    fn floor_exactness_trivial() {
        let layout = LadderLayout::with_rungs(4).unwrap();
        for v in 0..8 {
            assert!(check_floor_exactness(&layout, &Distribution::empty(8), v).unwrap());
        }
    }

    #[test]
    fn side_reach_all_agrees() {
        let layout = LadderLayout::with_rungs(4).unwrap();
        let p = Distribution::from_pairs(8, &[(0, 3), (5, 1), (7, 2)]);
        let all = side_reach_all(&layout, &p).unwrap();
        for (v, reach) in all.iter().enumerate() {
            assert_eq!(*reach, side_reach(&layout, &p, v).unwrap());
        }
    }

    #[test]
    fn greedy_examples() {
        let layout = LadderLayout::with_rungs(3).unwrap();
        let p = Distribution::single(6, 2, 2);
        assert!(greedy_rubbling(&layout, &p, 2, Side::Left).unwrap().is_empty());

        let l2 = LadderLayout::with_rungs(2).unwrap();
        let p = Distribution::single(4, 0, 2);
        let seq = greedy_rubbling(&l2, &p, 2, Side::Left).unwrap();
        assert_eq!(seq.moves(), &[Move::Pebbling { from: 0, to: 2 }]);
        assert_eq!(replay(&l2.graph(), &p, &seq).unwrap().get(2), 1);

        let p = Distribution::from_pairs(6, &[(0, 2), (1, 1)]);
        let seq = greedy_rubbling(&layout, &p, 2, Side::Left).unwrap();
        let g = layout.graph();
        assert!(is_executable(&g, &p, &seq).unwrap());
        let end = replay(&g, &p, &seq).unwrap();
        assert_eq!(end.get(2), side_reach(&layout, &p, 2).unwrap().left);
        assert_eq!(end.get(2) as i128, left_weight(&layout, &p, 2).unwrap().floor());
    }
}
