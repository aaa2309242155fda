use super::{side_reach_one, LadderLayout, Side};
use crate::engine::Engine;
use crate::error::{invalid, Result};
use crate::graph::Vertex;
use crate::moves::Distribution;

/// Whether `l` (the left one of the pair) is right-reachable and `r` is
/// left-reachable, yet no single executable sequence puts a pebble on both.
pub fn p_dependent(layout: &LadderLayout, p: &Distribution, l: Vertex, r: Vertex) -> Result<bool> {
    layout.check_distribution(p)?;
    layout.check_vertex(l)?;
    layout.check_vertex(r)?;
    if layout.rung_of(l) == layout.rung_of(r) {
        return Err(invalid("p-dependence needs vertices on different rungs"));
    }
    let (l, r) = if layout.rung_of(l) < layout.rung_of(r) { (l, r) } else { (r, l) };
    if side_reach_one(layout, p, l, Side::Right)? == 0 || side_reach_one(layout, p, r, Side::Left)? == 0 {
        return Ok(false);
    }
    let g = layout.graph();
    Ok(!Engine::new(&g).independently_reachable(p, l, r)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let layout = LadderLayout::with_rungs(4).unwrap();
        let both = Distribution::from_pairs(8, &[(0, 1), (6, 1)]);
        assert!(!p_dependent(&layout, &both, 0, 6).unwrap());
        assert!(!p_dependent(&layout, &Distribution::empty(8), 0, 6).unwrap());
        // Two pebbles on v_2 serve v_1 or v_3, never both.
        let shared = Distribution::single(8, 2, 2);
        assert!(p_dependent(&layout, &shared, 0, 4).unwrap());
        assert!(p_dependent(&layout, &shared, 4, 0).unwrap());
        assert!(p_dependent(&layout, &shared, 0, 1).is_err());
    }
}
