//! Temporal attributed graphs: temporal operators, attribute and pattern
//! aggregation, evolution graphs and interval exploration.

pub mod attribute_agg;
pub mod error;
pub mod evolution;
pub mod exploration;
pub mod export;
pub mod graph_store;
pub mod materialization;
pub mod pattern_agg;
pub mod synth;
pub mod temporal_ops;
pub mod value;

pub use error::{GraphError, Result};
pub use graph_store::*;
pub use value::{key, pattern_key, render_key, Key, Value};
pub use attribute_agg::{aggregate, aggregate_static_fast, AggMode, AggregateGraph};
pub use evolution::{aggregate_evolution, event_aggregate, evolution_graph, AggregateEvolutionGraph, Event, EvolutionGraph, Triple};
pub use exploration::{
    brute_force_explore, event_weight, explore, i_explore, init_threshold, pair_aggregate, u_explore, Element, ExplorationQuery,
    ExplorationResult, Extremal, IntervalPair, Plan, Reference, Target, Threshold,
};
pub use materialization::{precompute_timepoint_aggregates, rollup_attributes, rollup_time_union_all, AggregateCache};
pub use pattern_agg::{aggregate_pattern, build_tri_graph, Pattern, Strategy};
pub use temporal_ops::{difference, intersection, project, union, SetOp};
