mod common;

use common::{points, small_graphs, weights, EventKind, Plain, Semantics};
use graphtempo::synth::{random_graph, RandomSpec};
use graphtempo::{
    aggregate, aggregate_evolution, difference, event_aggregate, evolution_graph, intersection, AggMode, Event,
    IntervalSet, Pattern, TemporalGraph,
};
use proptest::prelude::*;

fn kind(e: Event) -> EventKind {
    match e {
        Event::Stability => EventKind::Stability,
        Event::Growth => EventKind::Growth,
        Event::Shrinkage => EventKind::Shrinkage,
    }
}

#[test]
fn event_aggregates_match_oracle() {
    for g in small_graphs(60, 41) {
        let p = Plain::of(&g);
        let n = g.n();
        for a in 0..n {
            for b in 0..n {
                let (told, tnew) = (IntervalSet::from_points(0..=a), IntervalSet::from_points(b..n));
                for event in Event::ALL {
                    for mode in [AggMode::Dist, AggMode::All] {
                        for attrs in [&["gender"][..], &["level"], &["gender", "level"]] {
                            let got = weights(&event_aggregate(&g, event, &told, &tnew, attrs, mode, None).unwrap());
                            let want = common::event_aggregate(
                                &p,
                                kind(event),
                                &points(&told),
                                &points(&tnew),
                                (Semantics::Union, Semantics::Union),
                                attrs,
                                mode == AggMode::Dist,
                            );
                            assert_eq!(got, want, "{event} {mode} {attrs:?} {told:?} -> {tnew:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn same_interval_has_no_growth_or_shrinkage() {
    for g in small_graphs(30, 2) {
        let t = IntervalSet::from(g.time().full());
        let evo = aggregate_evolution(&g, &t, &t, &["gender"], AggMode::Dist, None).unwrap();
        assert!(evo.nodes.values().all(|x| x.growth == 0 && x.shrinkage == 0));
        assert!(evo.edges.values().all(|x| x.growth == 0 && x.shrinkage == 0));
    }
}

fn graph_and_sides() -> impl Strategy<Value = (TemporalGraph, IntervalSet, IntervalSet)> {
    (2usize..=8, 2usize..=4, 0.05f64..0.6, any::<bool>(), any::<u64>())
        .prop_map(|(nodes, points, d, directed, seed)| {
            random_graph(&RandomSpec { nodes, points, edge_density: d, directed, ..RandomSpec::default() }, seed)
        })
        .prop_flat_map(|g| {
            let n = g.n();
            let set = proptest::collection::btree_set(0..n, 1..=n).prop_map(IntervalSet::from_points);
            (Just(g), set.clone(), set)
        })
}

fn node_keys(agg: &graphtempo::AggregateGraph) -> Vec<&graphtempo::Key> {
    agg.nodes().iter().filter(|(_, w)| **w > 0).map(|(k, _)| k).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn triples_decompose_into_event_aggregates((g, told, tnew) in graph_and_sides(), dist in any::<bool>()) {
        let mode = if dist { AggMode::Dist } else { AggMode::All };
        let attrs = ["gender", "level"];
        let evo = aggregate_evolution(&g, &told, &tnew, &attrs, mode, None).unwrap();
        for event in Event::ALL {
            let single = event_aggregate(&g, event, &told, &tnew, &attrs, mode, None).unwrap();
            prop_assert_eq!(evo.component(event), &single);
            for (k, w) in single.nodes() {
                prop_assert_eq!(evo.node(k).get(event), *w);
            }
            for ((a, b), w) in single.edges() {
                prop_assert_eq!(evo.edge(a, b).get(event), *w);
            }
        }
        prop_assert!(evo.nodes.values().all(|t| t.total() > 0));
        prop_assert!(evo.edges.values().all(|t| t.total() > 0));
    }

    #[test]
    fn pattern_triples_decompose((g, told, tnew) in graph_and_sides()) {
        let evo = aggregate_evolution(&g, &told, &tnew, &["gender"], AggMode::Dist, Some(Pattern::Triangle)).unwrap();
        for event in Event::ALL {
            let single = event_aggregate(&g, event, &told, &tnew, &["gender"], AggMode::Dist, Some(Pattern::Triangle)).unwrap();
            prop_assert_eq!(evo.component(event), &single);
        }
    }

    #[test]
    fn component_keys_lie_in_operator_aggregates((g, told, tnew) in graph_and_sides()) {
        let attrs = ["gender", "level"];
        let all = told.union(&tnew);
        let evo = aggregate_evolution(&g, &told, &tnew, &attrs, AggMode::Dist, None).unwrap();
        let stable = aggregate(&intersection(&g, &told, &tnew).unwrap(), &all, &attrs, AggMode::Dist).unwrap();
        let shrink = aggregate(&difference(&g, &told, &tnew).unwrap(), &told, &attrs, AggMode::Dist).unwrap();
        let grow = aggregate(&difference(&g, &tnew, &told).unwrap(), &tnew, &attrs, AggMode::Dist).unwrap();
        for (event, op) in [(Event::Stability, &stable), (Event::Shrinkage, &shrink), (Event::Growth, &grow)] {
            for k in node_keys(evo.component(event)) {
                prop_assert!(op.node_weight(k) > 0, "{} key {:?}", event, k);
            }
        }
    }

    #[test]
    fn overlay_labels_follow_components((g, told, tnew) in graph_and_sides()) {
        let evo = evolution_graph(&g, &told, &tnew).unwrap();
        let ids = |h: &TemporalGraph| (0..h.node_count()).map(|u| h.node_id(u).to_string()).collect::<Vec<_>>();
        for (id, l) in &evo.node_labels {
            prop_assert!(l.stable || l.grow || l.shrink);
            prop_assert_eq!(l.stable, ids(&evo.stable).contains(id));
            prop_assert_eq!(l.grow, ids(&evo.grow).contains(id));
            prop_assert_eq!(l.shrink, ids(&evo.shrink).contains(id));
        }
        for part in [&evo.stable, &evo.grow, &evo.shrink] {
            for e in 0..part.edge_count() {
                let (a, b) = part.edge_ids(e);
                prop_assert!(evo.edge_labels.contains_key(&(a.to_string(), b.to_string())));
            }
        }
    }
}
