use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{GraphError, Result};

/// Linearly ordered discrete time domain. Label order is time order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeDomain {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl TimeDomain {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(GraphError::Consistency("time domain needs at least one point".into()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::Consistency(format!("duplicate time label {l:?}")));
            }
        }
        Ok(TimeDomain { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, t: usize) -> &str {
        &self.labels[t]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn full(&self) -> Interval {
        Interval { start: 0, end: self.len() - 1 }
    }

    pub fn interval(&self, start: usize, end: usize) -> Result<Interval> {
        let iv = Interval::new(start, end)?;
        self.check(&iv)?;
        Ok(iv)
    }

    pub fn check(&self, iv: &Interval) -> Result<()> {
        if iv.end >= self.len() {
            return Err(GraphError::Interval(format!(
                "interval [{}, {}] exceeds time domain of {} points",
                iv.start,
                iv.end,
                self.len()
            )));
        }
        Ok(())
    }

    pub fn check_set(&self, set: &IntervalSet) -> Result<()> {
        set.iter().try_for_each(|iv| self.check(iv))
    }

    /// Parses `a..b`, `a` or a comma separated list of those into an interval set.
    pub fn parse_set(&self, spec: &str) -> Result<IntervalSet> {
        let mut out = Vec::new();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = match part.split_once("..") {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (part, part),
            };
            let lookup = |l: &str| {
                self.index_of(l)
                    .ok_or_else(|| GraphError::Interval(format!("unknown time label {l:?}")))
            };
            out.push(Interval::new(lookup(a)?, lookup(b)?)?);
        }
        Ok(IntervalSet::from_intervals(out))
    }

    pub fn render_interval(&self, iv: &Interval) -> String {
        if iv.start == iv.end {
            self.labels[iv.start].clone()
        } else {
            format!("{}..{}", self.labels[iv.start], self.labels[iv.end])
        }
    }
}

/// Closed interval of time point indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if start > end {
            return Err(GraphError::Interval(format!("interval start {start} after end {end}")));
        }
        Ok(Interval { start, end })
    }

    pub fn point(t: usize) -> Self {
        Interval { start: t, end: t }
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, t: usize) -> bool {
        self.start <= t && t <= self.end
    }

    pub fn points(&self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

/// Normalized set of intervals: sorted, non-overlapping, non-adjacent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn from_intervals(intervals: impl IntoIterator<Item = Interval>) -> Self {
        let mut all: Vec<Interval> = intervals.into_iter().collect();
        all.sort();
        let mut out: Vec<Interval> = Vec::with_capacity(all.len());
        for iv in all {
            match out.last_mut() {
                Some(last) if iv.start <= last.end + 1 => last.end = last.end.max(iv.end),
                _ => out.push(iv),
            }
        }
        IntervalSet { intervals: out }
    }

    pub fn from_points(points: impl IntoIterator<Item = usize>) -> Self {
        Self::from_intervals(points.into_iter().map(Interval::point))
    }

    pub fn point(t: usize) -> Self {
        IntervalSet { intervals: vec![Interval::point(t)] }
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.intervals.iter()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, t: usize) -> bool {
        self.intervals.iter().any(|iv| iv.contains(t))
    }

    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        self.intervals.iter().flat_map(|iv| iv.points())
    }

    pub fn len(&self) -> usize {
        self.intervals.iter().map(Interval::len).sum()
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        Self::from_intervals(self.intervals.iter().chain(other.intervals.iter()).copied())
    }

    pub fn mask(&self, n: usize) -> TimeMask {
        let mut m = TimeMask::empty(n);
        for t in self.points().filter(|&t| t < n) {
            m.set(t);
        }
        m
    }
}

impl From<Interval> for IntervalSet {
    fn from(iv: Interval) -> Self {
        IntervalSet { intervals: vec![iv] }
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<I: IntoIterator<Item = Interval>>(iter: I) -> Self {
        Self::from_intervals(iter)
    }
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// Bitmask over the time domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TimeMask {
    words: Vec<u64>,
    n: usize,
}

impl TimeMask {
    pub fn empty(n: usize) -> Self {
        TimeMask { words: vec![0; words_for(n)], n }
    }

    pub fn full(n: usize) -> Self {
        let mut m = Self::empty(n);
        for t in 0..n {
            m.set(t);
        }
        m
    }

    pub fn set(&mut self, t: usize) {
        self.words[t / 64] |= 1 << (t % 64);
    }

    pub fn contains(&self, t: usize) -> bool {
        self.words[t / 64] >> (t % 64) & 1 == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &TimeMask) -> TimeMask {
        TimeMask {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
            n: self.n,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&t| self.contains(t))
    }
}
