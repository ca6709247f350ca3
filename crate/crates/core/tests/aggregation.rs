mod common;

use std::sync::Arc;
use std::thread;

use common::{intervals, points, small_graphs, weights, Plain};
use graphtempo::synth::{random_graph, RandomSpec};
use graphtempo::{
    aggregate, aggregate_static_fast, precompute_timepoint_aggregates, rollup_attributes, rollup_time_union_all,
    union, AggMode, AggregateCache, GraphError, IntervalSet, TemporalGraph,
};
use proptest::prelude::*;

const LISTS: &[&[&str]] = &[
    &["gender"],
    &["group"],
    &["level"],
    &["gender", "level"],
    &["level", "gender"],
    &["gender", "group"],
    &["group", "level", "gender"],
];

#[test]
fn aggregate_matches_oracle() {
    for g in small_graphs(60, 21) {
        let p = Plain::of(&g);
        for iv in intervals(g.n()) {
            let t = IntervalSet::from(iv);
            for attrs in LISTS {
                for mode in [AggMode::Dist, AggMode::All] {
                    let got = weights(&aggregate(&g, &t, attrs, mode).unwrap());
                    let want = common::aggregate(&p, &points(&t), attrs, mode == AggMode::Dist);
                    assert_eq!(got, want, "{attrs:?} {mode} over {iv:?}");
                }
            }
        }
    }
}

#[test]
fn union_graph_aggregate_equals_aggregate_over_union() {
    for g in small_graphs(30, 5) {
        for a in intervals(g.n()) {
            for b in intervals(g.n()) {
                let (t1, t2) = (IntervalSet::from(a), IntervalSet::from(b));
                let both = t1.union(&t2);
                let u = union(&g, &t1, &t2).unwrap();
                for mode in [AggMode::Dist, AggMode::All] {
                    assert_eq!(
                        aggregate(&u, &both, &["gender", "level"], mode).unwrap(),
                        aggregate(&g, &both, &["gender", "level"], mode).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn empty_and_unknown_inputs_are_errors() {
    let g = graphtempo::build_fixture_fig1();
    assert!(matches!(
        aggregate(&g, &IntervalSet::empty(), &["gender"], AggMode::All),
        Err(GraphError::Interval(_))
    ));
    assert!(matches!(aggregate(&g, &IntervalSet::point(0), &["age"], AggMode::All), Err(GraphError::Lookup(_))));
    assert!(aggregate_static_fast(&g, &IntervalSet::point(0), &["publications"], AggMode::All).is_err());
}

#[test]
fn time_rollup_matches_direct_union_exhaustively() {
    for g in small_graphs(40, 31) {
        for attrs in LISTS {
            let cache = precompute_timepoint_aggregates(&g, attrs).unwrap();
            for a in intervals(g.n()) {
                for b in intervals(g.n()) {
                    let (t1, t2) = (IntervalSet::from(a), IntervalSet::from(b));
                    let direct = aggregate(&union(&g, &t1, &t2).unwrap(), &t1.union(&t2), attrs, AggMode::All).unwrap();
                    assert_eq!(rollup_time_union_all(&cache, &t1, &t2, attrs, AggMode::All).unwrap(), direct);
                }
            }
            let t = IntervalSet::point(0);
            assert!(matches!(
                rollup_time_union_all(&cache, &t, &t, attrs, AggMode::Dist),
                Err(GraphError::UnsupportedRollup(_))
            ));
        }
    }
}

#[test]
fn rollup_reports_cache_miss() {
    let g = graphtempo::build_fixture_fig1();
    let cache = AggregateCache::new();
    let t = IntervalSet::point(0);
    assert!(matches!(
        rollup_time_union_all(&cache, &t, &t, &["gender"], AggMode::All),
        Err(GraphError::CacheMiss(_))
    ));
    let via = cache.union_all_or_compute(&g, &t, &IntervalSet::point(1), &["gender"]).unwrap();
    assert_eq!(via, aggregate(&g, &IntervalSet::from_points([0, 1]), &["gender"], AggMode::All).unwrap());
    assert_eq!(cache.len(), 2);
}

#[test]
fn cache_directory_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let g = random_graph(&RandomSpec::default(), 4);
    let first = AggregateCache::with_dir(dir.path());
    first.precompute(&g, &["level", "gender"]).unwrap();
    let second = AggregateCache::with_dir(dir.path());
    second.bind(&g);
    for t in 0..g.n() {
        let e = second.get(t, &["gender", "level"]).expect("entry on disk");
        assert_eq!(*e, aggregate(&g, &IntervalSet::point(t), &["gender", "level"], AggMode::All).unwrap());
    }
    assert_eq!(second.misses(), 0);
}

#[test]
fn concurrent_readers_see_whole_entries() {
    let g = Arc::new(random_graph(&RandomSpec { nodes: 30, points: 6, ..RandomSpec::default() }, 9));
    let cache = Arc::new(AggregateCache::new());
    let expected: Vec<_> =
        (0..g.n()).map(|t| aggregate(&g, &IntervalSet::point(t), &["gender"], AggMode::All).unwrap()).collect();
    let writer = {
        let (g, cache) = (Arc::clone(&g), Arc::clone(&cache));
        thread::spawn(move || cache.precompute(&g, &["gender"]).unwrap())
    };
    let readers: Vec<_> = (0..4)
        .map(|_| {
            let (cache, expected) = (Arc::clone(&cache), expected.clone());
            thread::spawn(move || {
                for _ in 0..200 {
                    for (t, want) in expected.iter().enumerate() {
                        if let Some(e) = cache.get(t, &["gender"]) {
                            assert_eq!(&*e, want);
                        }
                    }
                }
            })
        })
        .collect();
    writer.join().unwrap();
    for r in readers {
        r.join().unwrap();
    }
}

fn graph() -> impl Strategy<Value = TemporalGraph> {
    (1usize..=8, 1usize..=4, 0.05f64..0.6, 0.0f64..0.4, any::<bool>(), any::<u64>()).prop_map(
        |(nodes, points, d, missing, directed, seed)| {
            random_graph(&RandomSpec { nodes, points, edge_density: d, missing, directed, ..RandomSpec::default() }, seed)
        },
    )
}

fn graph_and_set() -> impl Strategy<Value = (TemporalGraph, IntervalSet, usize)> {
    graph().prop_flat_map(|g| {
        let n = g.n();
        let set = proptest::collection::btree_set(0..n, 1..=n).prop_map(IntervalSet::from_points);
        (Just(g), set, 0..LISTS.len())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dist_never_exceeds_all((g, t, l) in graph_and_set()) {
        let attrs = LISTS[l];
        let d = aggregate(&g, &t, attrs, AggMode::Dist).unwrap();
        let a = aggregate(&g, &t, attrs, AggMode::All).unwrap();
        for (k, w) in d.nodes() {
            prop_assert!(*w <= a.node_weight(k));
        }
        for ((x, y), w) in d.edges() {
            prop_assert!(*w <= a.edge_weight(x, y));
        }
    }

    #[test]
    fn single_point_dist_equals_all((g, t, l) in graph_and_set()) {
        let p = IntervalSet::point(t.points().next().unwrap());
        let attrs = LISTS[l];
        let d = aggregate(&g, &p, attrs, AggMode::Dist).unwrap();
        let a = aggregate(&g, &p, attrs, AggMode::All).unwrap();
        prop_assert_eq!(d.nodes(), a.nodes());
        prop_assert_eq!(d.edges(), a.edges());
    }

    #[test]
    fn single_point_weights_are_conserved(seed in any::<u64>(), nodes in 1usize..=8, points in 1usize..=4) {
        // Without missing values every present entity lands under some key.
        let spec = RandomSpec { nodes, points, missing: 0.0, ..RandomSpec::default() };
        let g = random_graph(&spec, seed);
        for t in 0..g.n() {
            let a = aggregate(&g, &IntervalSet::point(t), &["gender", "level"], AggMode::All).unwrap();
            prop_assert_eq!(a.nodes().values().sum::<u64>(), g.nodes().column_count(t) as u64);
            prop_assert_eq!(a.edges().values().sum::<u64>(), g.edges().column_count(t) as u64);
        }
    }

    #[test]
    fn static_fast_path_equals_general((g, t, _l) in graph_and_set()) {
        for attrs in [&["gender"][..], &["group"], &["group", "gender"]] {
            for mode in [AggMode::Dist, AggMode::All] {
                prop_assert_eq!(
                    aggregate_static_fast(&g, &t, attrs, mode).unwrap(),
                    aggregate(&g, &t, attrs, mode).unwrap()
                );
            }
        }
    }

    #[test]
    fn attribute_rollup_equals_direct(seed in any::<u64>(), nodes in 1usize..=8, points in 1usize..=4, mask in 1u8..16) {
        // A missing value drops an appearance from the full key but not
        // from a coarser one, so the data here is complete.
        let g = random_graph(&RandomSpec { nodes, points, missing: 0.0, ..RandomSpec::default() }, seed);
        let t = IntervalSet::from_points((0..points).filter(|i| mask & (1 << i) != 0).chain([0]));
        let full = ["group", "level", "gender"];
        let all = aggregate(&g, &t, &full, AggMode::All).unwrap();
        for subset in LISTS {
            prop_assert_eq!(rollup_attributes(&all, subset).unwrap(), aggregate(&g, &t, subset, AggMode::All).unwrap());
        }
        let p = IntervalSet::point(t.points().next().unwrap());
        let single = aggregate(&g, &p, &full, AggMode::Dist).unwrap();
        for subset in LISTS {
            let rolled = rollup_attributes(&single, subset).unwrap();
            let direct = aggregate(&g, &p, subset, AggMode::Dist).unwrap();
            prop_assert_eq!(rolled.nodes(), direct.nodes());
            prop_assert_eq!(rolled.edges(), direct.edges());
        }
    }
}
