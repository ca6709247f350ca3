//! Search for minimal and maximal interval pairs with at least `k` events.
//!
//! A pair consists of a fixed reference point and a contiguous run of
//! points adjacent to it on the moving side. Minimal pairs combine the run
//! with union semantics (existence at any point), maximal pairs with
//! intersection semantics (existence at every point, varying values kept
//! only when constant over the run).

mod search;

use std::borrow::Cow;
use std::fmt;

use serde::Serialize;

pub use search::{brute_force_explore, brute_force_explore_capped, explore, i_explore, u_explore, DEFAULT_CAP};

use crate::attribute_agg::{aggregate_core, resolve, AggMode, AggregateGraph, KeyMap, Scope};
use crate::error::{GraphError, Result};
use crate::evolution::{event_aggregate, event_aggregate_masks, Event};
use crate::graph_store::{Column, Interval, IntervalSet, TemporalGraph, TimeMask};
use crate::pattern_agg::{build_tri_graph, member_key, Pattern};
use crate::value::{render_key, Key, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremal {
    Minimal,
    Maximal,
}

impl std::str::FromStr for Extremal {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "min" | "minimal" => Ok(Extremal::Minimal),
            "max" | "maximal" => Ok(Extremal::Maximal),
            _ => Err(GraphError::Usage(format!("unknown extremal {s:?}"))),
        }
    }
}

/// Which side of the pair stays a single point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reference {
    /// Old side fixed, new side extended to the right.
    OldFixed,
    /// New side fixed, old side extended to the left.
    NewFixed,
}

impl std::str::FromStr for Reference {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "old" | "old_fixed" => Ok(Reference::OldFixed),
            "new" | "new_fixed" => Ok(Reference::NewFixed),
            _ => Err(GraphError::Usage(format!("unknown reference {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// How a case is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plan {
    UExplore,
    IExplore,
    /// Decreasing minimal case: only consecutive pairs can be minimal.
    ConsecutiveOnly,
    /// Increasing maximal case: only the longest extension can be maximal.
    LongestOnly,
}

/// Direction in which the event weight moves as the moving side grows.
pub fn direction(event: Event, extremal: Extremal, reference: Reference) -> Direction {
    use Direction::*;
    let union = extremal == Extremal::Minimal;
    let grows_with_union = match (event, reference) {
        (Event::Stability, _) => true,
        (Event::Growth, Reference::OldFixed) => true,
        (Event::Growth, Reference::NewFixed) => false,
        (Event::Shrinkage, Reference::NewFixed) => true,
        (Event::Shrinkage, Reference::OldFixed) => false,
    };
    if union == grows_with_union {
        Increasing
    } else {
        Decreasing
    }
}

pub fn plan(event: Event, extremal: Extremal, reference: Reference) -> Plan {
    match (extremal, direction(event, extremal, reference)) {
        (Extremal::Minimal, Direction::Increasing) => Plan::UExplore,
        (Extremal::Minimal, Direction::Decreasing) => Plan::ConsecutiveOnly,
        (Extremal::Maximal, Direction::Decreasing) => Plan::IExplore,
        (Extremal::Maximal, Direction::Increasing) => Plan::LongestOnly,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "key")]
pub enum Element {
    Node(Key),
    Edge(Key, Key),
}

/// The aggregate entity whose weight is tracked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Target {
    pub element: Element,
    pub attrs: Vec<String>,
    pub mode: AggMode,
    pub pattern: Option<Pattern>,
}

impl Target {
    pub fn node(attrs: &[&str], key: Key, mode: AggMode) -> Self {
        Target { element: Element::Node(key), attrs: strings(attrs), mode, pattern: None }
    }

    pub fn edge(attrs: &[&str], a: Key, b: Key, mode: AggMode) -> Self {
        Target { element: Element::Edge(a, b), attrs: strings(attrs), mode, pattern: None }
    }

    pub fn pattern(attrs: &[&str], key: Key, mode: AggMode) -> Self {
        Target {
            element: Element::Node(key),
            attrs: strings(attrs),
            mode,
            pattern: Some(Pattern::Triangle),
        }
    }

    pub fn weight_in(&self, agg: &AggregateGraph) -> u64 {
        match &self.element {
            Element::Node(k) => agg.node_weight(k),
            Element::Edge(a, b) => agg.edge_weight(a, b),
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.attrs.len();
        let check = |k: &Key| -> Result<()> {
            let ok = match self.pattern {
                None => k.len() == n && k.iter().all(|v| matches!(v, Value::Atom(_))),
                Some(Pattern::Triangle) => {
                    k.len() == 3 && k.iter().all(|v| matches!(v, Value::Tuple(t) if t.len() == n))
                }
            };
            if ok {
                Ok(())
            } else {
                Err(GraphError::Usage(format!(
                    "target key {} does not match attributes {}",
                    render_key(k),
                    self.attrs.join(",")
                )))
            }
        };
        match &self.element {
            Element::Node(k) => check(k),
            Element::Edge(a, b) => check(a).and(check(b)),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.element {
            Element::Node(k) => write!(f, "node {}", render_key(k)),
            Element::Edge(a, b) => write!(f, "edge {}-{}", render_key(a), render_key(b)),
        }
    }
}

fn strings(attrs: &[&str]) -> Vec<String> {
    attrs.iter().map(|s| s.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExplorationQuery {
    pub event: Event,
    pub extremal: Extremal,
    pub reference: Reference,
    pub k: u64,
    pub target: Target,
}

impl ExplorationQuery {
    pub fn plan(&self) -> Plan {
        plan(self.event, self.extremal, self.reference)
    }

    pub fn direction(&self) -> Direction {
        direction(self.event, self.extremal, self.reference)
    }
}

/// A reference point and the run of points on the moving side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IntervalPair {
    pub reference: usize,
    pub extended: Interval,
}

impl IntervalPair {
    /// The pair whose moving side has `len` points.
    pub fn with_len(reference: usize, len: usize, side: Reference) -> IntervalPair {
        let extended = match side {
            Reference::OldFixed => Interval { start: reference + 1, end: reference + len },
            Reference::NewFixed => Interval { start: reference - len, end: reference - 1 },
        };
        IntervalPair { reference, extended }
    }

    pub fn old(&self, side: Reference) -> Interval {
        match side {
            Reference::OldFixed => Interval::point(self.reference),
            Reference::NewFixed => self.extended,
        }
    }

    pub fn new_side(&self, side: Reference) -> Interval {
        match side {
            Reference::OldFixed => self.extended,
            Reference::NewFixed => Interval::point(self.reference),
        }
    }

    /// All points covered by the pair.
    pub fn span(&self) -> Interval {
        Interval {
            start: self.reference.min(self.extended.start),
            end: self.reference.max(self.extended.end),
        }
    }
}

/// Longest possible moving side for `reference`.
pub fn max_len(n: usize, reference: usize, side: Reference) -> usize {
    match side {
        Reference::OldFixed => n - 1 - reference,
        Reference::NewFixed => reference,
    }
}

/// Reference points with a nonempty adjacent side.
pub fn references(n: usize, side: Reference) -> std::ops::Range<usize> {
    match side {
        Reference::OldFixed => 0..n.saturating_sub(1),
        Reference::NewFixed => 1.min(n)..n,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub pair: IntervalPair,
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExplorationResult {
    pub query: ExplorationQuery,
    /// Qualifying pairs sorted by reference point.
    pub pairs: Vec<Evaluation>,
    /// Number of interval pair aggregate graphs computed.
    pub evaluations: usize,
    /// Every evaluated pair with its weight, in evaluation order.
    pub evaluated: Vec<Evaluation>,
}

impl ExplorationResult {
    /// Point sets covered by the returned pairs.
    pub fn spans(&self) -> Vec<Interval> {
        self.pairs.iter().map(|e| e.pair.span()).collect()
    }

    /// Maximal elements of [`spans`](Self::spans) under inclusion, sorted.
    pub fn reduced_spans(&self) -> Vec<Interval> {
        reduce_maximal(&self.spans())
    }
}

pub fn reduce_maximal(spans: &[Interval]) -> Vec<Interval> {
    let mut out: Vec<Interval> = spans
        .iter()
        .filter(|a| !spans.iter().any(|b| b != *a && b.start <= a.start && a.end <= b.end))
        .copied()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Computes event weights of one target for interval pairs.
pub(crate) struct Evaluator<'g> {
    base: Cow<'g, TemporalGraph>,
    cols: Vec<usize>,
    event: Event,
    target: Target,
    pub evaluated: Vec<Evaluation>,
}

impl<'g> Evaluator<'g> {
    pub fn new(g: &'g TemporalGraph, event: Event, target: &Target) -> Result<Self> {
        target.validate()?;
        Self::unchecked(g, event, target)
    }

    fn unchecked(g: &'g TemporalGraph, event: Event, target: &Target) -> Result<Self> {
        let cols = resolve(g, &target.attrs)?;
        let base = match target.pattern {
            None => Cow::Borrowed(g),
            Some(Pattern::Triangle) => Cow::Owned(build_tri_graph(g, &IntervalSet::from(g.time().full()))?),
        };
        Ok(Evaluator { base, cols, event, target: target.clone(), evaluated: Vec::new() })
    }

    fn key_map(&self) -> Option<KeyMap<'static>> {
        self.target.pattern.map(|_| &member_key as KeyMap<'static>)
    }

    fn aggregate_masks(&self, g: &TemporalGraph, old: &TimeMask, new: &TimeMask) -> AggregateGraph {
        event_aggregate_masks(
            g,
            self.event,
            old,
            new,
            &self.cols,
            self.target.attrs.clone(),
            self.target.mode,
            self.key_map(),
        )
    }

    /// Event aggregate of the pair, combining the moving side by union
    /// (`meet` false) or intersection.
    pub fn aggregate(&self, pair: IntervalPair, side: Reference, meet: bool) -> AggregateGraph {
        let g = &*self.base;
        let n = g.n();
        if !meet {
            let old = IntervalSet::from(pair.old(side)).mask(n);
            let new = IntervalSet::from(pair.new_side(side)).mask(n);
            self.aggregate_masks(g, &old, &new)
        } else {
            let fixed = Column::Point(pair.reference);
            let moving = Column::Meet(pair.extended);
            let cols = match side {
                Reference::OldFixed => [fixed, moving],
                Reference::NewFixed => [moving, fixed],
            };
            let c = g.with_columns(&cols);
            self.aggregate_masks(&c, &IntervalSet::point(0).mask(2), &IntervalSet::point(1).mask(2))
        }
    }

    pub fn weight(&mut self, pair: IntervalPair, side: Reference, meet: bool) -> u64 {
        let w = self.target.weight_in(&self.aggregate(pair, side, meet));
        self.evaluated.push(Evaluation { pair, weight: w });
        w
    }

    /// Upper bound on any event weight of the target: its weight in the
    /// aggregate of the whole time domain.
    pub fn bound(&self) -> u64 {
        let g = &*self.base;
        let scope = Scope { key_map: self.key_map(), ..Scope::default() };
        let agg = aggregate_core(g, &TimeMask::full(g.n()), &self.cols, self.target.attrs.clone(), self.target.mode, scope);
        self.target.weight_in(&agg)
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }
}

/// Weight of the target in the aggregate graph of `event` from `told` to `tnew`.
pub fn event_weight(g: &TemporalGraph, event: Event, told: &IntervalSet, tnew: &IntervalSet, target: &Target) -> Result<u64> {
    target.validate()?;
    let agg = event_aggregate(g, event, told, tnew, &target.attrs, target.mode, target.pattern)?;
    Ok(target.weight_in(&agg))
}

/// Event aggregate of an interval pair under the semantics of `extremal`:
/// union over the moving side for minimal pairs, intersection for maximal.
#[allow(clippy::too_many_arguments)]
pub fn pair_aggregate<S: AsRef<str>>(
    g: &TemporalGraph,
    event: Event,
    pair: IntervalPair,
    side: Reference,
    extremal: Extremal,
    attrs: &[S],
    mode: AggMode,
    pattern: Option<Pattern>,
) -> Result<AggregateGraph> {
    let names: Vec<&str> = attrs.iter().map(|a| a.as_ref()).collect();
    let target = Target { element: Element::Node(Vec::new()), attrs: strings(&names), mode, pattern };
    let n = g.n();
    let ext = pair.extended;
    if pair.reference >= n || ext.end >= n || ext.contains(pair.reference) {
        return Err(GraphError::Interval("pair lies outside the time domain or overlaps its reference".into()));
    }
    let adjacent = match side {
        Reference::OldFixed => ext.start == pair.reference + 1,
        Reference::NewFixed => ext.end + 1 == pair.reference,
    };
    if !adjacent {
        return Err(GraphError::Interval("extension must be adjacent to its reference".into()));
    }
    let ev = Evaluator::unchecked(g, event, &target)?;
    Ok(ev.aggregate(pair, side, extremal == Extremal::Maximal))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub w_min: u64,
    pub w_max: u64,
    pub start: u64,
}

/// Initial `k` for a case from the weights of all consecutive point pairs:
/// the minimum for cases whose weight increases with extension, the maximum
/// otherwise.
pub fn init_threshold(
    g: &TemporalGraph,
    event: Event,
    extremal: Extremal,
    reference: Reference,
    target: &Target,
) -> Result<Threshold> {
    if g.n() < 2 {
        return Err(GraphError::Interval("threshold initialization needs at least two time points".into()));
    }
    let mut ev = Evaluator::new(g, event, target)?;
    let weights: Vec<u64> = (0..g.n() - 1)
        .map(|i| ev.weight(IntervalPair::with_len(i, 1, Reference::OldFixed), Reference::OldFixed, false))
        .collect();
    let w_min = *weights.iter().min().expect("n >= 2");
    let w_max = *weights.iter().max().expect("n >= 2");
    let start = match direction(event, extremal, reference) {
        Direction::Increasing => w_min,
        Direction::Decreasing => w_max,
    };
    Ok(Threshold { w_min, w_max, start })
}
