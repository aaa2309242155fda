//! Window reduction on ladders: delete three consecutive rungs `l, x, r`,
//! reconnect their neighbors `A` and `B`, and redistribute the window's
//! pebbles (minus two) onto the four vertices of `A` and `B`.
//!
//! A reduced candidate is accepted under one of three certificates, tried in
//! this order: the four weight inequalities without floors when the window
//! holds at least four pebbles; the floored inequalities together with an
//! engine check that the four boundary vertices are reachable; or plain
//! engine solvability of the reduced distribution.

use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::engine::Engine;
use crate::error::{invalid, Result, RubbleError};
use crate::graph::{Graph, Vertex};
use crate::ladder::{left_weight, right_weight, LadderLayout, Side};
use crate::moves::Distribution;
use crate::par::{find_map_first, ExecMode};
use crate::search::compositions;

/// Rungs of a window `R = {l, x, r}` and its neighbors `A` (left), `B` (right).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WindowLabels {
    pub a: usize,
    pub l: usize,
    pub x: usize,
    pub r: usize,
    pub b: usize,
}

impl WindowLabels {
    /// The window whose left neighbor is rung `a`.
    pub fn with_left_neighbor(a: usize) -> Self {
        WindowLabels { a, l: a + 1, x: a + 2, r: a + 3, b: a + 4 }
    }

    pub fn window_rungs(&self) -> [usize; 3] {
        [self.l, self.x, self.r]
    }

    pub fn window_vertices(&self) -> [Vertex; 6] {
        [2 * self.l, 2 * self.l + 1, 2 * self.x, 2 * self.x + 1, 2 * self.r, 2 * self.r + 1]
    }

    fn validate(&self, layout: &LadderLayout) -> Result<()> {
        let consecutive = self.l == self.a + 1 && self.x == self.l + 1 && self.r == self.x + 1 && self.b == self.r + 1;
        if !consecutive || self.b >= layout.rungs() {
            return Err(invalid(format!("{self:?} is not a window of a ladder with {} rungs", layout.rungs())));
        }
        Ok(())
    }
}

/// `p(R)`.
pub fn window_total(p: &Distribution, w: &WindowLabels) -> u64 {
    p.sum_over(&w.window_vertices())
}

/// Windows with both neighbor rungs present, left to right.
pub fn admissible_windows(layout: &LadderLayout) -> Vec<WindowLabels> {
    (0..layout.rungs().saturating_sub(4)).map(WindowLabels::with_left_neighbor).collect()
}

/// Pebble totals of every `P_3 □ P_2` subgraph, indexed by its leftmost rung.
pub fn all_window_totals(layout: &LadderLayout, p: &Distribution) -> Vec<u64> {
    (0..layout.rungs().saturating_sub(2)).map(|s| (s..s + 3).map(|i| layout.rung_total(p, i)).sum()).collect()
}

/// The admissible window holding the most pebbles, leftmost on ties.
pub fn select_max_window(layout: &LadderLayout, p: &Distribution) -> Result<WindowLabels> {
    layout.check_distribution(p)?;
    if layout.rungs() < 5 {
        return Err(RubbleError::GraphTooSmall(format!("window reduction needs 5 rungs, got {}", layout.rungs())));
    }
    let windows = admissible_windows(layout);
    let best = windows.iter().map(|w| window_total(p, w)).max().expect("n >= 5");
    Ok(*windows.iter().find(|w| window_total(p, w) == best).expect("max exists"))
}

/// The ladder left after removing a window and joining `A` to `B`.
#[derive(Debug, Clone)]
pub struct ReducedGraph {
    pub graph: Graph,
    pub layout: LadderLayout,
    /// Original vertex to reduced vertex; `None` on the deleted window.
    pub vertex_map: Vec<Option<Vertex>>,
}

pub fn delete_window(layout: &LadderLayout, w: &WindowLabels) -> Result<ReducedGraph> {
    w.validate(layout)?;
    let reduced = LadderLayout::with_rungs(layout.rungs() - 3)?;
    let vertex_map = (0..layout.vertex_count())
        .map(|v| {
            let rung = layout.rung_of(v);
            if rung <= w.a {
                Some(v)
            } else if rung >= w.b {
                Some(v - 6)
            } else {
                None
            }
        })
        .collect();
    Ok(ReducedGraph { graph: reduced.graph(), layout: reduced, vertex_map })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    ModifiedInequalities,
    OriginalPlusRungCheck,
    DirectSolvability,
}

/// Named placements tried before the exhaustive candidate list. `TopPair`
/// moves the upper `l, x` pebbles to `Ā` and drops two there; the numbered
/// methods are the ones used when the upper pair holds two or three pebbles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReductionMethod {
    TopPair,
    MethodI,
    MethodII,
    MethodIII,
    MethodIV,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedInstance {
    #[serde(skip)]
    pub reduced_layout: Option<LadderLayout>,
    pub reduced_distribution: Distribution,
    pub window: WindowLabels,
    pub certificate: Option<Certificate>,
    pub method: Option<ReductionMethod>,
    /// Whether the part left of `A` / right of `B` was mirrored top-to-bottom.
    pub side_reflections: (bool, bool),
    /// Pebbles added on top of `p` at `[Ā, A̲, B̄, B̲]`.
    pub boundary_additions: [u32; 4],
}

impl ReducedInstance {
    pub fn reduced_graph(&self) -> Graph {
        self.layout().graph()
    }

    pub fn layout(&self) -> LadderLayout {
        self.reduced_layout.unwrap_or_else(|| {
            LadderLayout::with_rungs(self.reduced_distribution.len() / 2).expect("reduced ladder is nonempty")
        })
    }

    /// `[Ā, A̲, B̄, B̲]` in the reduced ladder.
    pub fn boundary_vertices(&self) -> [Vertex; 4] {
        let a = self.window.a;
        [2 * a, 2 * a + 1, 2 * (a + 1), 2 * (a + 1) + 1]
    }
}

fn build_instance(
    layout: &LadderLayout,
    p: &Distribution,
    w: &WindowLabels,
    additions: [u32; 4],
    reflections: (bool, bool),
    method: Option<ReductionMethod>,
) -> ReducedInstance {
    let reduced = LadderLayout::with_rungs(layout.rungs() - 3).expect("n >= 5");
    let mut counts = vec![0u32; reduced.vertex_count()];
    for rung in 0..layout.rungs() {
        if (w.l..=w.r).contains(&rung) {
            continue;
        }
        let target = if rung <= w.a { rung } else { rung - 3 };
        let (up, down) = (p.get(2 * rung), p.get(2 * rung + 1));
        let swap = (rung < w.a && reflections.0) || (rung > w.b && reflections.1);
        let (up, down) = if swap { (down, up) } else { (up, down) };
        counts[2 * target] = up;
        counts[2 * target + 1] = down;
    }
    counts[2 * w.a] += additions[0];
    counts[2 * w.a + 1] += additions[1];
    counts[2 * (w.a + 1)] += additions[2];
    counts[2 * (w.a + 1) + 1] += additions[3];
    ReducedInstance {
        reduced_layout: Some(reduced),
        reduced_distribution: Distribution::new(counts),
        window: *w,
        certificate: None,
        method,
        side_reflections: reflections,
        boundary_additions: additions,
    }
}

const REFLECTIONS: [(bool, bool); 4] = [(false, false), (true, false), (false, true), (true, true)];

/// Every admissible reduced distribution for window `w`: all placements of
/// `p(R) - 2` pebbles onto `Ā, A̲, B̄, B̲`, crossed with the four choices of
/// mirroring the outer parts.
pub fn candidate_reductions(layout: &LadderLayout, p: &Distribution, w: &WindowLabels) -> Result<Vec<ReducedInstance>> {
    layout.check_distribution(p)?;
    w.validate(layout)?;
    let total = window_total(p, w);
    if total < 2 {
        return Err(RubbleError::NoCandidates(format!("window holds {total} pebbles, two are dropped")));
    }
    let placements = compositions((total - 2) as u32, 4);
    let mut out = Vec::with_capacity(placements.len() * 4);
    for refl in REFLECTIONS {
        for place in &placements {
            let additions = [place[0], place[1], place[2], place[3]];
            out.push(build_instance(layout, p, w, additions, refl, None));
        }
    }
    Ok(out)
}

/// Local view of the window in one of four orientations.
#[derive(Debug, Clone, Copy)]
struct Frame {
    mirror_horizontal: bool,
    mirror_vertical: bool,
}

impl Frame {
    const ALL: [Frame; 4] = [
        Frame { mirror_horizontal: false, mirror_vertical: false },
        Frame { mirror_horizontal: false, mirror_vertical: true },
        Frame { mirror_horizontal: true, mirror_vertical: false },
        Frame { mirror_horizontal: true, mirror_vertical: true },
    ];

    /// Window counts as `[l̄, l̲, x̄, x̲, r̄, r̲]` in this frame.
    fn window(&self, p: &Distribution, w: &WindowLabels) -> [u32; 6] {
        let rungs = if self.mirror_horizontal { [w.r, w.x, w.l] } else { [w.l, w.x, w.r] };
        let mut out = [0; 6];
        for (i, rung) in rungs.iter().enumerate() {
            let (top, bottom) = (p.get(2 * rung), p.get(2 * rung + 1));
            let (top, bottom) = if self.mirror_vertical { (bottom, top) } else { (top, bottom) };
            out[2 * i] = top;
            out[2 * i + 1] = bottom;
        }
        out
    }

    /// Maps frame additions `[Ā, A̲, B̄, B̲]` back to the real boundary.
    fn unmap(&self, local: [i64; 4]) -> [i64; 4] {
        let [at, ab, bt, bb] = local;
        let (at, ab, bt, bb) = if self.mirror_horizontal { (bt, bb, at, ab) } else { (at, ab, bt, bb) };
        if self.mirror_vertical {
            [ab, at, bb, bt]
        } else {
            [at, ab, bt, bb]
        }
    }
}

/// Boundary additions for a named method in frame coordinates, or `None`
/// when its preconditions fail.
fn method_additions(method: ReductionMethod, win: [u32; 6]) -> Option<[i64; 4]> {
    let [lt, lb, xt, xb, rt, rb] = win.map(i64::from);
    let total = lt + lb + xt + xb + rt + rb;
    let top_pair = lt + xt;
    let method_one = top_pair >= 2 && xb + rb >= 2;
    let method_two = total >= 5 && top_pair == 3 && xb + rb >= 1;
    let method_three = top_pair == 2 && rb + xb <= 1 && lb + xb >= 2;
    // Routing shared by the main placement and method I.
    let straight = [lt + xt, lb, rt, xb + rb];
    // Routing shared by methods II to IV.
    let folded = [lt + xt, lb + xb, rt + rb, 0];
    let (routed, removed) = match method {
        ReductionMethod::TopPair if top_pair >= 4 => (straight, [2, 0, 0, 0]),
        ReductionMethod::MethodI if method_one => (straight, [1, 0, 0, 1]),
        ReductionMethod::MethodII if !method_one && method_two => (folded, [2, 0, 0, 0]),
        ReductionMethod::MethodIII if !method_one && !method_two && method_three => (folded, [1, 1, 0, 0]),
        ReductionMethod::MethodIV
            if !method_one
                && !method_two
                && !method_three
                && top_pair == 2
                && rb + xb <= 1
                && rt + rb >= 2
                && total >= 5 =>
        {
            (folded, [1, 0, 1, 0])
        }
        _ => return None,
    };
    Some([0, 1, 2, 3].map(|i| routed[i] - removed[i]))
}

/// Candidates produced by the named methods, in every orientation where
/// their preconditions hold.
pub fn method_candidates(layout: &LadderLayout, p: &Distribution, w: &WindowLabels) -> Result<Vec<ReducedInstance>> {
    layout.check_distribution(p)?;
    w.validate(layout)?;
    let methods = [
        ReductionMethod::TopPair,
        ReductionMethod::MethodI,
        ReductionMethod::MethodII,
        ReductionMethod::MethodIII,
        ReductionMethod::MethodIV,
    ];
    let mut out: Vec<ReducedInstance> = Vec::new();
    for method in methods {
        for frame in Frame::ALL {
            let Some(local) = method_additions(method, frame.window(p, w)) else { continue };
            let adds = frame.unmap(local);
            if adds.iter().any(|&a| a < 0) {
                continue;
            }
            let adds = adds.map(|a| a as u32);
            for refl in REFLECTIONS {
                let cand = build_instance(layout, p, w, adds, refl, Some(method));
                if !out.iter().any(|c| c.reduced_distribution == cand.reduced_distribution) {
                    out.push(cand);
                }
            }
        }
    }
    Ok(out)
}

/// Weight differences at `[Ā, A̲, B̄, B̲]`: right weights at `A`, left
/// weights at `B`, reduced minus original.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub modified: [Dyadic; 4],
    pub original: [i128; 4],
}

impl InequalityReport {
    pub fn modified_hold(&self) -> bool {
        self.modified.iter().all(|d| !d.is_negative())
    }

    pub fn original_hold(&self) -> bool {
        self.original.iter().all(|&d| d >= 0)
    }
}

pub fn check_inequalities(layout: &LadderLayout, p: &Distribution, cand: &ReducedInstance) -> Result<InequalityReport> {
    layout.check_distribution(p)?;
    let w = cand.window;
    let reduced = cand.layout();
    let q = &cand.reduced_distribution;
    let original =
        [(Side::Right, 2 * w.a), (Side::Right, 2 * w.a + 1), (Side::Left, 2 * w.b), (Side::Left, 2 * w.b + 1)];
    let mut modified = [Dyadic::ZERO; 4];
    let mut floored = [0i128; 4];
    for (i, ((side, v), rv)) in original.iter().zip(cand.boundary_vertices()).enumerate() {
        let (before, after) = match side {
            Side::Right => (right_weight(layout, p, *v)?, right_weight(&reduced, q, rv)?),
            Side::Left => (left_weight(layout, p, *v)?, left_weight(&reduced, q, rv)?),
        };
        modified[i] = after - before;
        floored[i] = after.floor() - before.floor();
    }
    Ok(InequalityReport { modified, original: floored })
}

#[derive(Debug, Clone, Copy)]
pub struct ReduceOptions {
    pub mode: ExecMode,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions { mode: ExecMode::Parallel }
    }
}

/// Reduction outcome with the evidence that certified it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReductionReport {
    pub instance: ReducedInstance,
    pub inequalities: InequalityReport,
    pub window_total: u64,
    pub windows_tried: usize,
}

fn windows_in_order(layout: &LadderLayout, p: &Distribution) -> Result<Vec<WindowLabels>> {
    let first = select_max_window(layout, p)?;
    let mut rest: Vec<WindowLabels> = admissible_windows(layout).into_iter().filter(|w| *w != first).collect();
    rest.sort_by_key(|w| (std::cmp::Reverse(window_total(p, w)), w.a));
    Ok(std::iter::once(first).chain(rest).filter(|w| window_total(p, w) >= 2).collect())
}

/// Finds a certified reduced instance for a solvable `p` on a ladder with at
/// least five rungs. Starts at the fullest window and shifts to the others
/// when no candidate there is certified.
pub fn reduce(layout: &LadderLayout, p: &Distribution) -> Result<ReductionReport> {
    reduce_with(layout, p, ReduceOptions::default())
}

pub fn reduce_with(layout: &LadderLayout, p: &Distribution, options: ReduceOptions) -> Result<ReductionReport> {
    let windows = windows_in_order(layout, p)?;
    for (tried, w) in windows.iter().enumerate() {
        if let Some(mut report) = reduce_at(layout, p, w, options)? {
            report.windows_tried = tried + 1;
            return Ok(report);
        }
    }
    Err(RubbleError::ReductionFailed(format!(
        "no certified reduced distribution in {} window(s) for {:?}",
        windows.len(),
        p.counts()
    )))
}

/// The first certified candidate for one window, or `None`.
pub fn reduce_at(
    layout: &LadderLayout,
    p: &Distribution,
    w: &WindowLabels,
    options: ReduceOptions,
) -> Result<Option<ReductionReport>> {
    let mut cands = method_candidates(layout, p, w)?;
    cands.extend(candidate_reductions(layout, p, w)?);
    let total = window_total(p, w);
    let reports: Vec<InequalityReport> =
        cands.iter().map(|c| check_inequalities(layout, p, c)).collect::<Result<_>>()?;
    let finish = |idx: usize, cert: Certificate| {
        let mut instance = cands[idx].clone();
        instance.certificate = Some(cert);
        Some(ReductionReport { instance, inequalities: reports[idx].clone(), window_total: total, windows_tried: 1 })
    };
    if total >= 4 {
        if let Some(i) = reports.iter().position(|r| r.modified_hold()) {
            return Ok(finish(i, Certificate::ModifiedInequalities));
        }
    }
    let indices: Vec<usize> = (0..cands.len()).collect();
    let rung_checked = find_map_first(options.mode, &indices, |&i| {
        if !reports[i].original_hold() {
            return None;
        }
        let g = cands[i].reduced_graph();
        let engine = Engine::new(&g);
        let q = &cands[i].reduced_distribution;
        cands[i].boundary_vertices().iter().all(|&v| engine.is_reachable(q, v).unwrap_or(false)).then_some(i)
    });
    if let Some(i) = rung_checked {
        return Ok(finish(i, Certificate::OriginalPlusRungCheck));
    }
    let solvable = find_map_first(options.mode, &indices, |&i| {
        let g = cands[i].reduced_graph();
        Engine::new(&g).is_solvable(&cands[i].reduced_distribution).unwrap_or(false).then_some(i)
    });
    Ok(solvable.and_then(|i| finish(i, Certificate::DirectSolvability)))
}

/// For `p` whose every `P_3 □ P_2` holds at most three pebbles: the most
/// pebbles any sequence confined to the rungs up to `a` collects on rung `a`
/// is at most three, and three only when `p(A) = 3`.
pub fn window_sum_bound_check(layout: &LadderLayout, p: &Distribution, a: usize) -> Result<bool> {
    layout.check_distribution(p)?;
    if a >= layout.rungs() {
        return Err(invalid(format!("rung {a} out of range")));
    }
    if all_window_totals(layout, p).iter().any(|&t| t > 3) {
        return Err(invalid("some P3xP2 window holds more than three pebbles"));
    }
    let (g, q, offset) = layout.truncate(p, a, Side::Left);
    let rung = layout.rung(a).map(|v| v - offset);
    let collected = Engine::new(&g).max_pebbles_to_set(&q, &rung)?;
    Ok(collected <= 3 && (collected < 3 || layout.rung_total(p, a) == 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_selection() {
        let l5 = LadderLayout::with_rungs(5).unwrap();
        let p = Distribution::from_pairs(10, &[(6, 2), (7, 2)]);
        assert_eq!(select_max_window(&l5, &p).unwrap(), WindowLabels::with_left_neighbor(0));
        let l6 = LadderLayout::with_rungs(6).unwrap();
        let uniform = Distribution::new(vec![1; 12]);
        assert_eq!(select_max_window(&l6, &uniform).unwrap().a, 0);
        // Rung 0 is never inside an admissible window.
        let left = Distribution::single(12, 0, 4);
        let w = select_max_window(&l6, &left).unwrap();
        assert!(w.l >= 1 && w.b < 6);
        assert_eq!(w.a, 0);
        let l4 = LadderLayout::with_rungs(4).unwrap();
        assert!(matches!(select_max_window(&l4, &Distribution::empty(8)), Err(RubbleError::GraphTooSmall(_))));
    }

    #[test]
    fn deletion_shrinks_by_three_rungs() {
        let l6 = LadderLayout::with_rungs(6).unwrap();
        let red = delete_window(&l6, &WindowLabels::with_left_neighbor(1)).unwrap();
        assert_eq!(red.layout.rungs(), 3);
        assert_eq!(red.graph.edges(), crate::graph::ladder(3).unwrap().edges());
        let l5 = LadderLayout::with_rungs(5).unwrap();
        let red = delete_window(&l5, &WindowLabels::with_left_neighbor(0)).unwrap();
        assert_eq!(red.layout.rungs(), 2);
        let kept: Vec<_> = red.vertex_map.iter().flatten().copied().collect();
        let mut sorted = kept.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), kept.len());
        assert_eq!(kept.len(), 4);
        assert!(delete_window(&l5, &WindowLabels::with_left_neighbor(1)).is_err());
    }

    #[test]
    fn candidate_counts() {
        let l5 = LadderLayout::with_rungs(5).unwrap();
        let w = WindowLabels::with_left_neighbor(0);
        let p = Distribution::from_pairs(10, &[(2, 2), (5, 2)]);
        let cands = candidate_reductions(&l5, &p, &w).unwrap();
        assert_eq!(cands.len(), 40);
        assert!(cands.iter().all(|c| c.reduced_distribution.size() == p.size() - 2));
        let two = Distribution::from_pairs(10, &[(0, 1), (4, 1), (6, 1)]);
        assert_eq!(candidate_reductions(&l5, &two, &w).unwrap().len(), 4);
        let one = Distribution::from_pairs(10, &[(0, 3), (4, 1)]);
        assert!(matches!(candidate_reductions(&l5, &one, &w), Err(RubbleError::NoCandidates(_))));
    }

    #[test]
    fn candidates_respect_reduced_distribution_rules() {
        let l7 = LadderLayout::with_rungs(7).unwrap();
        let p = Distribution::new(vec![1, 0, 2, 1, 0, 1, 2, 0, 1, 0, 0, 1, 0, 2]);
        let w = WindowLabels::with_left_neighbor(1);
        for c in candidate_reductions(&l7, &p, &w).unwrap() {
            let q = &c.reduced_distribution;
            assert_eq!(q.size(), p.size() - 2);
            for (orig, red) in [(2, 2), (3, 3), (10, 4), (11, 5)] {
                assert!(q.get(red) >= p.get(orig));
            }
            for (orig, red) in [(0, 0), (12, 6)] {
                assert_eq!(q.get(red) + q.get(red + 1), p.get(orig) + p.get(orig + 1));
            }
        }
    }

    #[test]
    fn empty_window_only_gains_weight() {
        // Reconnecting A to B only shortens distances.
        let l6 = LadderLayout::with_rungs(6).unwrap();
        let p = Distribution::from_pairs(12, &[(0, 2), (1, 3), (11, 1)]);
        let w = WindowLabels::with_left_neighbor(1);
        let c = build_instance(&l6, &p, &w, [0; 4], (false, false), None);
        let rep = check_inequalities(&l6, &p, &c).unwrap();
        assert!(rep.modified_hold());
        assert!(rep.original_hold());
        // The lower B pebble moves from distance 5 to distance 2 of Ā.
        assert_eq!(rep.modified[0], Dyadic::new(7, 5));
    }

    #[test]
    fn top_pair_delta_at_upper_a() {
        // Window l̄ = 3, x̄ = 2, l̲ = 1, x̲ = 1, r̄ = 1, r̲ = 2, and p empty elsewhere:
        // delta at Ā = ½l̄ + ¾x̄ − 2 + ⅜r̄ + ¼l̲ + ⅛x̲ + 3/16 r̲.
        let l5 = LadderLayout::with_rungs(5).unwrap();
        let w = WindowLabels::with_left_neighbor(0);
        let (lt, lb, xt, xb, rt, rb) = (3u32, 1u32, 2u32, 1u32, 1u32, 2u32);
        let p = Distribution::new(vec![0, 0, lt, lb, xt, xb, rt, rb, 0, 0]);
        let cands = method_candidates(&l5, &p, &w).unwrap();
        let top = cands
            .iter()
            .find(|c| c.method == Some(ReductionMethod::TopPair) && c.side_reflections == (false, false))
            .expect("top pair applies");
        assert_eq!(top.boundary_additions, [lt + xt - 2, lb, rt, xb + rb]);
        let rep = check_inequalities(&l5, &p, top).unwrap();
        let d = |n: i128, e: u32| Dyadic::new(n, e);
        let expected = d(lt as i128, 1) + d(3 * xt as i128, 2) - d(2, 0)
            + d(3 * rt as i128, 3)
            + d(lb as i128, 2)
            + d(xb as i128, 3)
            + d(3 * rb as i128, 4);
        assert_eq!(rep.modified[0], expected);
        assert!(rep.modified_hold());
    }

    #[test]
    fn sum_bound_examples() {
        let l5 = LadderLayout::with_rungs(5).unwrap();
        let p = Distribution::from_pairs(10, &[(4, 2), (5, 1)]);
        assert!(window_sum_bound_check(&l5, &p, 2).unwrap());
        let p = Distribution::from_pairs(10, &[(4, 2), (1, 1)]);
        let (g, q, _) = l5.truncate(&p, 2, Side::Left);
        assert_eq!(Engine::new(&g).max_pebbles_to_set(&q, &[4, 5]).unwrap(), 2);
        assert!(window_sum_bound_check(&l5, &p, 2).unwrap());
        let heavy = Distribution::from_pairs(10, &[(4, 4)]);
        assert!(window_sum_bound_check(&l5, &heavy, 2).is_err());
    }
}
