//! Per time point aggregates and the rollups derivable from them.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use parking_lot::RwLock;

use crate::attribute_agg::{aggregate, resolve, AggMode, AggregateGraph};
use crate::error::{GraphError, Result};
use crate::export::{aggregate_from_json, aggregate_to_json};
use crate::graph_store::{IntervalSet, TemporalGraph, TimeDomain};
use crate::value::{Key, Value};

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "GRAPHTEMPO_CACHE_DIR";

/// Attribute lists are stored sorted by name.
fn normalize<S: AsRef<str>>(attrs: &[S]) -> Vec<String> {
    let mut out: Vec<String> = attrs.iter().map(|a| a.as_ref().to_string()).collect();
    out.sort();
    out.dedup();
    out
}

fn file_safe(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.') { c } else { '_' })
        .collect()
}

type EntryKey = (usize, Vec<String>);

/// ALL-mode aggregates of single time points, keyed by point and sorted
/// attribute list. Safe to share between threads.
#[derive(Debug, Default)]
pub struct AggregateCache {
    entries: RwLock<HashMap<EntryKey, Arc<AggregateGraph>>>,
    time: RwLock<Option<Arc<TimeDomain>>>,
    dir: Option<PathBuf>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl AggregateCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Cache with write-through to `dir` (`<dir>/<attrs>/<point>.json`).
    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        AggregateCache { dir: Some(dir.into()), ..Self::default() }
    }

    /// Uses the directory in `GRAPHTEMPO_CACHE_DIR` when set.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(d) if !d.is_empty() => Self::with_dir(PathBuf::from(d)),
            _ => Self::new(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.entries.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.read().is_empty()
    }

    fn path(&self, t: usize, attrs: &[String]) -> Option<PathBuf> {
        let time = self.time.read();
        let label = time.as_ref().map_or_else(|| t.to_string(), |d| d.label(t).to_string());
        let key = attrs.iter().map(|a| file_safe(a)).collect::<Vec<_>>().join("+");
        self.dir.as_ref().map(|d| d.join(key).join(format!("{}.json", file_safe(&label))))
    }

    /// Ties the cache to the time labels of `g`, which name the files in
    /// the cache directory. Later calls keep the first binding.
    pub fn bind(&self, g: &TemporalGraph) {
        let mut time = self.time.write();
        if time.is_none() {
            *time = Some(Arc::new(g.time().clone()));
        }
    }

    /// Stores the ALL aggregate of point `t`; attribute order of `agg` must
    /// be the sorted order.
    pub fn insert(&self, t: usize, agg: AggregateGraph) -> Result<Arc<AggregateGraph>> {
        let attrs = agg.attrs().to_vec();
        if agg.mode() != AggMode::All || normalize(&attrs) != attrs {
            return Err(GraphError::Usage("cache entries are ALL aggregates over sorted attributes".into()));
        }
        if let Some(path) = self.path(t, &attrs) {
            fs::create_dir_all(path.parent().expect("entry has a parent"))?;
            // Written to a temporary name first so readers never see a partial file.
            let tmp = path.with_extension("json.tmp");
            fs::write(&tmp, aggregate_to_json(&agg))?;
            fs::rename(&tmp, &path)?;
        }
        let entry = Arc::new(agg);
        self.entries.write().insert((t, attrs), Arc::clone(&entry));
        Ok(entry)
    }

    /// Cached aggregate of point `t` in sorted attribute order. Falls back
    /// to the cache directory before reporting a miss.
    pub fn get<S: AsRef<str>>(&self, t: usize, attrs: &[S]) -> Option<Arc<AggregateGraph>> {
        let attrs = normalize(attrs);
        let key = (t, attrs);
        if let Some(e) = self.entries.read().get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Some(Arc::clone(e));
        }
        let loaded = self.path(t, &key.1).and_then(|p| fs::read_to_string(p).ok()).and_then(|text| {
            aggregate_from_json(&text, &key.1, AggMode::All, false).ok()
        });
        match loaded {
            Some(agg) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                let entry = Arc::new(agg);
                self.entries.write().entry(key).or_insert_with(|| Arc::clone(&entry));
                Some(entry)
            }
            None => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    /// Computes and stores the ALL aggregate of every time point of `g`.
    pub fn precompute<S: AsRef<str>>(&self, g: &TemporalGraph, attrs: &[S]) -> Result<()> {
        resolve(g, attrs)?;
        self.bind(g);
        let attrs = normalize(attrs);
        for t in 0..g.n() {
            self.insert(t, aggregate(g, &IntervalSet::point(t), &attrs, AggMode::All)?)?;
        }
        Ok(())
    }

    /// Union-ALL aggregate over `t1 ∪ t2`, computed directly from `g` when
    /// a point is not cached (and then cached).
    pub fn union_all_or_compute<S: AsRef<str>>(
        &self,
        g: &TemporalGraph,
        t1: &IntervalSet,
        t2: &IntervalSet,
        attrs: &[S],
    ) -> Result<AggregateGraph> {
        self.bind(g);
        let sorted = normalize(attrs);
        for t in t1.union(t2).points() {
            if self.get(t, &sorted).is_none() {
                self.insert(t, aggregate(g, &IntervalSet::point(t), &sorted, AggMode::All)?)?;
            }
        }
        rollup_time_union_all(self, t1, t2, attrs, AggMode::All)
    }
}

/// Builds a cache holding the ALL aggregate of every time point.
pub fn precompute_timepoint_aggregates<S: AsRef<str>>(g: &TemporalGraph, attrs: &[S]) -> Result<AggregateCache> {
    let cache = AggregateCache::new();
    cache.precompute(g, attrs)?;
    Ok(cache)
}

/// Sum of the cached point aggregates over `t1 ∪ t2`, with keys in the
/// order of `attrs`. Only union with ALL is distributive over time.
pub fn rollup_time_union_all<S: AsRef<str>>(
    cache: &AggregateCache,
    t1: &IntervalSet,
    t2: &IntervalSet,
    attrs: &[S],
    mode: AggMode,
) -> Result<AggregateGraph> {
    if mode != AggMode::All {
        return Err(GraphError::UnsupportedRollup(
            "distinct union aggregates cannot be summed over time points".into(),
        ));
    }
    let points: Vec<usize> = t1.union(t2).points().collect();
    if points.is_empty() {
        return Err(GraphError::Interval("rollup interval is empty".into()));
    }
    let sorted = normalize(attrs);
    let mut parts = Vec::with_capacity(points.len());
    for &t in &points {
        let entry = cache
            .get(t, &sorted)
            .ok_or_else(|| GraphError::CacheMiss(format!("no aggregate for point {t} over {}", sorted.join(","))))?;
        parts.push(entry);
    }
    let mut sum = AggregateGraph::new(sorted, AggMode::All, parts[0].is_directed());
    for p in &parts {
        for (k, &w) in p.nodes() {
            sum.add_node(k.clone(), w);
        }
        for ((a, b), &w) in p.edges() {
            sum.add_edge(a.clone(), b.clone(), w);
        }
    }
    let order: Vec<&str> = attrs.iter().map(AsRef::as_ref).collect();
    rollup_attributes(&sum, &order)
}

fn project_value(v: &Value, positions: &[usize], pattern: bool) -> Value {
    match (v, pattern) {
        (Value::Tuple(items), true) => Value::Tuple(positions.iter().map(|&p| items[p].clone()).collect()),
        _ => v.clone(),
    }
}

fn project_key(k: &Key, positions: &[usize]) -> Key {
    let pattern = k.iter().all(|v| matches!(v, Value::Tuple(_))) && !k.is_empty();
    if pattern {
        let mut out: Key = k.iter().map(|m| project_value(m, positions, true)).collect();
        out.sort();
        out
    } else {
        positions.iter().map(|&p| k[p].clone()).collect()
    }
}

/// Projects keys onto `subset` (in the given order) and sums weights.
pub fn rollup_attributes<S: AsRef<str>>(agg: &AggregateGraph, subset: &[S]) -> Result<AggregateGraph> {
    if subset.is_empty() {
        return Err(GraphError::Usage("rollup needs at least one attribute".into()));
    }
    let positions: Vec<usize> = subset
        .iter()
        .map(|a| {
            agg.attrs().iter().position(|x| x == a.as_ref()).ok_or_else(|| {
                GraphError::Usage(format!(
                    "attribute {:?} is not among the aggregated attributes {}",
                    a.as_ref(),
                    agg.attrs().join(",")
                ))
            })
        })
        .collect::<Result<_>>()?;
    let mut out = AggregateGraph::new(
        subset.iter().map(|a| a.as_ref().to_string()).collect(),
        agg.mode(),
        agg.is_directed(),
    );
    for (k, &w) in agg.nodes() {
        out.add_node(project_key(k, &positions), w);
    }
    for ((a, b), &w) in agg.edges() {
        out.add_edge(project_key(a, &positions), project_key(b, &positions), w);
    }
    Ok(out)
}
