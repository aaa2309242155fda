use super::LadderLayout;
use crate::engine::{explore, to_state};
use crate::error::{invalid, Result};
use crate::graph::Vertex;
use crate::moves::{Distribution, Move, MoveSequence};

/// The vertex of rung `a` that `m` draws from while sending its pebble off
/// the rung, if any.
fn exporter(layout: &LadderLayout, a: usize, m: &Move) -> Option<Vertex> {
    if layout.rung_of(m.target()) == a {
        return None;
    }
    let mut found = None;
    for (v, _) in m.sources() {
        if layout.rung_of(v) == a {
            debug_assert!(found.is_none() || found == Some(v), "no vertex off rung A neighbors both of its ends");
            found = Some(v);
        }
    }
    found
}

/// Whether every move taking a pebble from rung `a` to another rung uses the
/// same vertex of `a`. Moves between the two vertices of `a` are exempt.
pub fn is_a_biased(seq: &MoveSequence, layout: &LadderLayout, a: usize) -> bool {
    let mut used: Option<Vertex> = None;
    for m in seq.moves() {
        if let Some(v) = exporter(layout, a, m) {
            match used {
                None => used = Some(v),
                Some(u) if u != v => return false,
                _ => {}
            }
        }
    }
    true
}

/// Searches the executable `a`-biased sequences for one that puts a pebble on
/// `v`, which must lie strictly left of rung `a`.
pub fn find_a_biased_sequence(
    layout: &LadderLayout,
    p: &Distribution,
    v: Vertex,
    a: usize,
) -> Result<Option<MoveSequence>> {
    layout.check_distribution(p)?;
    layout.check_vertex(v)?;
    if a >= layout.rungs() || layout.rung_of(v) >= a {
        return Err(invalid(format!("vertex {v} is not strictly left of rung {a}")));
    }
    let g = layout.graph();
    let n = g.vertex_count();
    let mut start = to_state(&g, p)?.into_vec();
    // Tag byte: 0 = rung untouched, 1 = exporting from upper, 2 = from lower.
    start.push(0);
    let guard = |m: &Move, _: &[u8], next: &mut [u8]| {
        let Some(src) = exporter(layout, a, m) else { return true };
        let tag = if layout.is_upper(src) { 1 } else { 2 };
        match next[n] {
            0 => {
                next[n] = tag;
                true
            }
            t => t == tag,
        }
    };
    let (ex, hit) = explore(&g, start.into_boxed_slice(), guard, |s| s[v] >= 1);
    Ok(hit.map(|i| ex.witness(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::{greedy_rubbling, Side};
    use crate::moves::replay;

    #[test]
    fn trivial_cases() {
        let layout = LadderLayout::with_rungs(4).unwrap();
        assert!(is_a_biased(&MoveSequence::new(), &layout, 2));
        let away = MoveSequence(vec![Move::Pebbling { from: 0, to: 2 }, Move::StrictRubbling { v: 0, w: 4, to: 2 }]);
        assert!(is_a_biased(&away, &layout, 3));
        let both = MoveSequence(vec![Move::Pebbling { from: 4, to: 2 }, Move::Pebbling { from: 5, to: 3 }]);
        assert!(!is_a_biased(&both, &layout, 2));
        let within = MoveSequence(vec![Move::Pebbling { from: 5, to: 4 }, Move::Pebbling { from: 4, to: 2 }]);
        assert!(is_a_biased(&within, &layout, 2));
    }

    #[test]
    fn occupied_target_needs_no_moves() {
        let layout = LadderLayout::with_rungs(5).unwrap();
        let p = Distribution::single(10, 1, 1);
        assert_eq!(find_a_biased_sequence(&layout, &p, 1, 3).unwrap(), Some(MoveSequence::new()));
        assert!(find_a_biased_sequence(&layout, &p, 6, 3).is_err());
    }

    #[test]
    fn witness_is_biased_and_reaches() {
        let layout = LadderLayout::with_rungs(5).unwrap();
        let g = layout.graph();
        let p = Distribution::from_pairs(10, &[(6, 4), (7, 2)]);
        let seq = find_a_biased_sequence(&layout, &p, 2, 3).unwrap().expect("reachable");
        assert!(is_a_biased(&seq, &layout, 3));
        assert!(replay(&g, &p, &seq).unwrap().get(2) >= 1);
    }

    #[test]
    fn weight_below_one_is_unreachable() {
        let layout = LadderLayout::with_rungs(5).unwrap();
        let p = Distribution::from_pairs(10, &[(6, 2), (7, 2)]);
        assert_eq!(find_a_biased_sequence(&layout, &p, 2, 3).unwrap(), None);
    }

    #[test]
    fn greedy_is_biased_and_reaches_floor() {
        let layout = LadderLayout::with_rungs(5).unwrap();
        let g = layout.graph();
        let p = Distribution::from_pairs(10, &[(8, 3), (7, 2), (9, 1), (0, 1)]);
        for target in 0..10 {
            for side in [Side::Left, Side::Right] {
                let seq = greedy_rubbling(&layout, &p, target, side).unwrap();
                let end = replay(&g, &p, &seq).unwrap();
                let w = crate::ladder::side_weight_of(&layout, &p, target, side).unwrap();
                assert_eq!(end.get(target) as i128, w.floor());
                for a in 0..5 {
                    assert!(is_a_biased(&seq, &layout, a));
                }
            }
        }
    }
}
