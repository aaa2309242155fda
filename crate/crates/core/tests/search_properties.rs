mod common;

use common::{all_distributions, Oracle};
use rubbling::graph::{cycle_graph, family_symmetries, ladder, mobius_ladder, path_graph, prism, SymmetryGroup};
use rubbling::search::{
    all_optimal_witnesses, canonical_form, enumerate_distributions, k_optimal_rubbling_number, k_optimal_with,
    optimal_rubbling_number, SearchConfig,
};
use rubbling::{Distribution, Engine, ExecMode, Graph};

#[test]
fn trivial_group_enumerates_every_composition() {
    for (n, m) in [(3, 4), (5, 3), (8, 2)] {
        let g = cycle_graph(n).unwrap();
        let ours: Vec<Vec<u32>> =
            enumerate_distributions(&g, m, &SymmetryGroup::trivial(n)).map(|d| d.counts().to_vec()).collect();
        let mut all = all_distributions(n, m);
        all.sort();
        assert_eq!(ours, all);
    }
}

#[test]
fn canonical_reps_cover_each_orbit_once() {
    for g in [ladder(4).unwrap(), prism(4).unwrap(), mobius_ladder(4).unwrap()] {
        let sym = family_symmetries(&g);
        let reps: Vec<Vec<u32>> = enumerate_distributions(&g, 3, &sym).map(|d| d.counts().to_vec()).collect();
        let mut from_all: Vec<Vec<u32>> =
            all_distributions(g.vertex_count(), 3).iter().map(|c| canonical_form(c, &sym)).collect();
        from_all.sort();
        from_all.dedup();
        assert_eq!(reps, from_all);
    }
}

#[test]
fn known_small_values() {
    assert_eq!(optimal_rubbling_number(&path_graph(2).unwrap()).unwrap().value, 2);
    assert_eq!(optimal_rubbling_number(&ladder(3).unwrap()).unwrap().value, 3);
    assert_eq!(k_optimal_rubbling_number(&cycle_graph(5).unwrap(), 2).unwrap().value, 5);
    assert_eq!(optimal_rubbling_number(&ladder(6).unwrap()).unwrap().value, 5);
    assert_eq!(optimal_rubbling_number(&prism(3).unwrap()).unwrap().value, 3);
    assert_eq!(optimal_rubbling_number(&prism(5).unwrap()).unwrap().value, 4);
}

#[test]
fn result_invariants() {
    for g in [ladder(5).unwrap(), prism(4).unwrap(), cycle_graph(6).unwrap()] {
        for k in 1..=2 {
            let r = k_optimal_rubbling_number(&g, k).unwrap();
            assert_eq!(r.witness.size(), r.value as u64);
            assert!(Oracle::of(&g).k_solvable(r.witness.counts(), k));
            let again = k_optimal_rubbling_number(&g, k).unwrap();
            assert_eq!((again.witness, again.tested_count), (r.witness, r.tested_count));
        }
    }
}

#[test]
fn k_monotone() {
    for g in [path_graph(4).unwrap(), cycle_graph(5).unwrap(), ladder(3).unwrap()] {
        let values: Vec<u32> = (1..=3).map(|k| k_optimal_rubbling_number(&g, k).unwrap().value).collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "{values:?}");
    }
}

#[test]
fn witness_orbits_stay_solvable() {
    for g in [prism(5).unwrap(), ladder(5).unwrap(), mobius_ladder(5).unwrap()] {
        let engine = Engine::new(&g);
        let witnesses = all_optimal_witnesses(&g).unwrap();
        assert!(!witnesses.is_empty());
        for w in &witnesses {
            for s in family_symmetries(&g).elements() {
                assert!(engine.is_solvable(&Distribution::new(s.permute_counts(w.counts()))).unwrap());
            }
        }
    }
}

#[test]
fn all_witnesses_match_oracle_on_small_graphs() {
    for g in [path_graph(3).unwrap(), cycle_graph(4).unwrap(), ladder(3).unwrap()] {
        let value = optimal_rubbling_number(&g).unwrap().value;
        let sym = family_symmetries(&g);
        let oracle = Oracle::of(&g);
        let mut expected: Vec<Vec<u32>> = all_distributions(g.vertex_count(), value)
            .into_iter()
            .filter(|p| oracle.solvable(p))
            .map(|p| canonical_form(&p, &sym))
            .collect();
        expected.sort();
        expected.dedup();
        let mut ours: Vec<Vec<u32>> = all_optimal_witnesses(&g).unwrap().iter().map(|d| d.counts().to_vec()).collect();
        ours.sort();
        assert_eq!(ours, expected);
    }
    let p3 = all_optimal_witnesses(&path_graph(3).unwrap()).unwrap();
    assert!(p3.contains(&Distribution::new(vec![0, 2, 0])));
}

#[test]
fn prism_at_most_shorter_ladder() {
    for n in 5..=6 {
        let pr = optimal_rubbling_number(&prism(n).unwrap()).unwrap().value;
        let lad = optimal_rubbling_number(&ladder(n - 1).unwrap()).unwrap().value;
        assert!(pr <= lad, "n={n}: prism {pr}, ladder {lad}");
    }
}

#[test]
fn modes_agree() {
    let graphs: Vec<Graph> = vec![ladder(5).unwrap(), prism(5).unwrap(), cycle_graph(7).unwrap()];
    for g in &graphs {
        let k = if matches!(g.family(), rubbling::graph::Family::Cycle(_)) { 2 } else { 1 };
        let seq = k_optimal_with(g, k, &SearchConfig { mode: ExecMode::Sequential, ..Default::default() }).unwrap();
        let par = k_optimal_with(g, k, &SearchConfig { mode: ExecMode::Parallel, ..Default::default() }).unwrap();
        assert_eq!((seq.value, seq.witness, seq.tested_count), (par.value, par.witness, par.tested_count));
    }
}
