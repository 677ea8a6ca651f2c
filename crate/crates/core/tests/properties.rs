use measiso_core::generate::{random_connected_multigraph, random_relabel, random_two_isomorphic};
use measiso_core::measurement::sample_configurations;
use measiso_core::{
    canonical_form, cycle_isomorphic, enumerate_two_separations, is_member, lengths_squared,
    project_point, reflect_across_cut_pair, reversal, two_isomorphic_search, EdgeAxisMap,
    EdgeBijection, Graph, MeasurementPoint, RealizeOptions, SearchOptions, SearchOutcome,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph_from(seed: u64, max_edges: usize) -> (Graph, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = rng.gen_range(2..=max_edges);
    let g = random_connected_multigraph(&mut rng, 2..=(e + 1).min(7), e, true);
    (g, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labels(seed in any::<u64>()) {
        let (g, mut rng) = graph_from(seed, 10);
        let (h, _) = random_relabel(&mut rng, &g);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn text_and_json_round_trip(seed in any::<u64>()) {
        let (g, _) = graph_from(seed, 10);
        prop_assert_eq!(&Graph::parse(&g.to_edge_list()).unwrap(), &g);
        let back: Graph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn reversal_keeps_every_cycle(seed in any::<u64>()) {
        let (g, mut rng) = graph_from(seed, 10);
        let seps = enumerate_two_separations(&g);
        if let Some(sep) = seps.choose(&mut rng) {
            let h = reversal(&g, sep).unwrap();
            prop_assert_eq!(h.edge_ids(), g.edge_ids());
            prop_assert!(EdgeBijection::identity(&g).preserves_cycles(&g, &h).unwrap());
        }
    }

    #[test]
    fn constructed_pairs_are_recognized(seed in any::<u64>()) {
        let (g, mut rng) = graph_from(seed, 9);
        let (h, sigma) = random_two_isomorphic(&mut rng, &g, 3);
        prop_assert!(sigma.preserves_cycles(&g, &h).unwrap());
        let found = cycle_isomorphic(&g, &h).unwrap();
        prop_assert!(found.is_some());
        prop_assert!(cycle_isomorphic(&h, &g).unwrap().is_some());
        match two_isomorphic_search(&g, &h, &SearchOptions::orbit_complete()) {
            SearchOutcome::Equivalent { witness } => prop_assert!(witness.verify(&g, &h).unwrap()),
            other => prop_assert!(false, "search gave {:?}", other),
        }
    }

    #[test]
    fn reflection_preserves_lengths(seed in any::<u64>(), d in 1usize..=3) {
        let (g, mut rng) = graph_from(seed, 10);
        let seps = enumerate_two_separations(&g);
        if let Some(sep) = seps.choose(&mut rng) {
            let ax = EdgeAxisMap::identity(&g);
            let conf = &sample_configurations(&g, d, 1, seed, 1.0)[0];
            let y = lengths_squared(&g, conf, &ax).unwrap();
            let flipped = reversal(&g, sep).unwrap();
            let moved = reflect_across_cut_pair(&g, sep, conf).unwrap();
            let z = lengths_squared(&flipped, &moved, &ax).unwrap();
            prop_assert!(y.max_abs_diff(&z) <= 1e-9 * (1.0 + y.coords.iter().cloned().fold(0.0, f64::max)));
        }
    }

    #[test]
    fn zero_padding_is_exact(seed in any::<u64>(), d in 1usize..=3) {
        let (g, _) = graph_from(seed, 10);
        let ax = EdgeAxisMap::identity(&g);
        for conf in sample_configurations(&g, d, 4, seed, 2.0) {
            let padded = conf.zero_padded(d + 1).unwrap();
            prop_assert_eq!(
                lengths_squared(&g, &conf, &ax).unwrap(),
                lengths_squared(&g, &padded, &ax).unwrap()
            );
        }
    }

    #[test]
    fn own_samples_are_members(seed in any::<u64>(), d in 1usize..=3) {
        let (g, _) = graph_from(seed, 8);
        let ax = EdgeAxisMap::identity(&g);
        let conf = &sample_configurations(&g, d, 1, seed, 1.0)[0];
        let y = lengths_squared(&g, conf, &ax).unwrap();
        let opts = RealizeOptions { seed, ..RealizeOptions::default() };
        let v = is_member(&g, &y, d, &opts).unwrap();
        prop_assert!(v.verify(&g, &y, 1e-8), "{:?}", v);
    }

    #[test]
    fn relabeling_round_trips(seed in any::<u64>()) {
        let (g, mut rng) = graph_from(seed, 10);
        let (h, sigma) = random_relabel(&mut rng, &g);
        let y = lengths_squared(
            &g,
            &sample_configurations(&g, 2, 1, seed, 1.0)[0],
            &EdgeAxisMap::identity(&g),
        )
        .unwrap();
        let there = y.relabeled(&sigma).unwrap();
        for id in g.edge_ids() {
            prop_assert_eq!(there.get(sigma.get(&id).unwrap()), y.get(&id));
        }
        let back = there.relabeled(&sigma.inverse()).unwrap();
        for id in g.edge_ids() {
            prop_assert_eq!(back.get(&id), y.get(&id));
        }
        prop_assert!(h.edge_count() == g.edge_count());
    }

    #[test]
    fn projection_keeps_coordinates(coords in prop::collection::vec(0.0f64..100.0, 1..12), pick in any::<u64>()) {
        let axes: Vec<String> = (0..coords.len()).map(|i| format!("e{i}")).collect();
        let p = MeasurementPoint::new(EdgeAxisMap::new(axes.clone()).unwrap(), coords).unwrap();
        let keep: Vec<&String> = axes.iter().enumerate().filter(|(i, _)| pick >> (i % 64) & 1 == 1).map(|(_, a)| a).collect();
        let q = project_point(&p, &keep).unwrap();
        prop_assert_eq!(q.coords.len(), keep.len());
        for a in &keep {
            prop_assert_eq!(q.get(a), p.get(a));
        }
    }
}
