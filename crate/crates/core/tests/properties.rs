use foxcol::coloring::{braid_coloring, count_colorings, validate_coloring, ColoredDiagram, Coloring};
use foxcol::diagram::{braid_closure, rational_diagram, BraidWord, Diagram, RationalSpec};
use foxcol::moves::{apply_move, random_legal_move, teneva_transform, MoveSpec};
use foxcol::verify::{corpus, exhaustive_count};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=4).prop_flat_map(|s| {
        prop::collection::vec((1..s, prop::bool::ANY), 1..=6)
            .prop_map(move |l| BraidWord::new(s, l.into_iter().map(|(i, p)| (i, if p { 1 } else { -1 })).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn snf_count_matches_scan_on_braid_closures(w in braid(), r in 2u64..=5) {
        let d = braid_closure(&w);
        prop_assume!(d.num_arcs() <= 7);
        prop_assert_eq!(count_colorings(&d, r).unwrap(), exhaustive_count(&d, r));
    }

    #[test]
    fn record_json_round_trips(w in braid()) {
        let d = braid_closure(&w);
        prop_assert_eq!(Diagram::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn rational_closures_are_valid(v in prop::collection::vec(prop_oneof![-4i64..=-1, 1i64..=4], 1..=3)) {
        let d = rational_diagram(&RationalSpec::new(v).unwrap()).unwrap();
        prop_assert!(d.validate().valid);
        prop_assert_eq!(Diagram::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn seeded_walks_keep_counts(seed in 0u64..1000, start in 0usize..8, r in prop::sample::select(vec![3u64, 5, 7])) {
        let d = braid_closure(&BraidWord::new(3, vec![(1, 1), (2, -1), (1, 1), (2, -1)]).unwrap());
        let d = if start % 2 == 0 { d } else { foxcol::diagram::torus_diagram(3 + start as u64).unwrap() };
        let counts: Vec<u128> = [2, 3, 4, 5].iter().map(|&q| count_colorings(&d, q).unwrap()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cd = ColoredDiagram::new(d.clone(), Coloring::constant(&d, r, 1).unwrap()).unwrap();
        for _ in 0..6 {
            let (spec, out) = random_legal_move(&cd, &mut rng).unwrap();
            // replaying a move by its spec is deterministic
            prop_assert_eq!(&apply_move(&cd, &spec).unwrap(), &out);
            let text = serde_json::to_string(&spec).unwrap();
            prop_assert_eq!(serde_json::from_str::<MoveSpec>(&text).unwrap(), spec);
            cd = out.colored;
            prop_assert!(validate_coloring(cd.diagram(), cd.coloring()).unwrap());
        }
        let after: Vec<u128> = [2, 3, 4, 5].iter().map(|&q| count_colorings(cd.diagram(), q).unwrap()).collect();
        prop_assert_eq!(after, counts);
    }

    #[test]
    fn teneva_keeps_colorings_valid(n in 3u64..=12, m in 1u64..=4, j in 0u64..12, a in 0u64..48, steps in 1u64..=11) {
        let r = n * m;
        let (a, b) = (a % r, (a % r + (j % n) * m) % r);
        prop_assume!(steps < n);
        let out = teneva_transform(&braid_coloring(n, r, a, b).unwrap(), steps).unwrap();
        prop_assert!(validate_coloring(out.colored.diagram(), out.colored.coloring()).unwrap());
        prop_assert!(out.trace.is_consistent());
        prop_assert_eq!(count_colorings(out.colored.diagram(), r).unwrap(), (n.min(r) * r) as u128);
    }
}

#[test]
fn corpus_is_valid_and_covers_each_source() {
    let c = corpus();
    assert!(c.iter().all(|(_, d)| d.validate().valid));
    for prefix in ["torus", "B", "rational", "figure-eight"] {
        assert!(c.iter().any(|(name, _)| name.starts_with(prefix)), "{prefix}");
    }
}
