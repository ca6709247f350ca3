use super::{max_len, references, Evaluation, Evaluator, ExplorationQuery, ExplorationResult, Extremal, IntervalPair, Plan};
use crate::error::{GraphError, Result};
use crate::graph_store::TemporalGraph;

/// Default limit on time points for [`brute_force_explore`].
pub const DEFAULT_CAP: usize = 8;

fn start<'g>(g: &'g TemporalGraph, q: &ExplorationQuery) -> Result<Evaluator<'g>> {
    if q.k < 1 {
        return Err(GraphError::Usage("k must be at least 1".into()));
    }
    Evaluator::new(g, q.event, &q.target)
}

fn finish(q: &ExplorationQuery, ev: Evaluator<'_>, mut pairs: Vec<Evaluation>) -> ExplorationResult {
    pairs.sort_by_key(|e| e.pair);
    ExplorationResult { query: q.clone(), pairs, evaluations: ev.evaluated.len(), evaluated: ev.evaluated }
}

fn walk_union(g: &TemporalGraph, q: &ExplorationQuery) -> Result<ExplorationResult> {
    let mut ev = start(g, q)?;
    let n = ev.n();
    let side = q.reference;
    let mut out = Vec::new();
    let mut alive = Vec::new();
    for r in references(n, side) {
        let pair = IntervalPair::with_len(r, 1, side);
        let w = ev.weight(pair, side, false);
        if w >= q.k {
            out.push(Evaluation { pair, weight: w });
        } else {
            alive.push(r);
        }
    }
    if q.k > ev.bound() {
        alive.clear();
    }
    let mut len = 2;
    while !alive.is_empty() {
        alive.retain(|&r| len <= max_len(n, r, side));
        let mut next = Vec::with_capacity(alive.len());
        for &r in &alive {
            let pair = IntervalPair::with_len(r, len, side);
            let w = ev.weight(pair, side, false);
            if w >= q.k {
                out.push(Evaluation { pair, weight: w });
            } else {
                next.push(r);
            }
        }
        alive = next;
        len += 1;
    }
    Ok(finish(q, ev, out))
}

fn walk_intersection(g: &TemporalGraph, q: &ExplorationQuery) -> Result<ExplorationResult> {
    let mut ev = start(g, q)?;
    let n = ev.n();
    let side = q.reference;
    // Candidate set: the current best pair of every surviving reference.
    let mut cands: Vec<Evaluation> = Vec::new();
    for r in references(n, side) {
        let pair = IntervalPair::with_len(r, 1, side);
        let w = ev.weight(pair, side, true);
        if w >= q.k {
            cands.push(Evaluation { pair, weight: w });
        }
    }
    let mut open: Vec<usize> = (0..cands.len()).collect();
    let mut len = 2;
    while !open.is_empty() {
        let mut next = Vec::with_capacity(open.len());
        for &c in &open {
            let r = cands[c].pair.reference;
            if len > max_len(n, r, side) {
                continue;
            }
            let pair = IntervalPair::with_len(r, len, side);
            let w = ev.weight(pair, side, true);
            if w >= q.k {
                cands[c] = Evaluation { pair, weight: w };
                next.push(c);
            }
        }
        open = next;
        len += 1;
    }
    Ok(finish(q, ev, cands))
}

fn single_length(g: &TemporalGraph, q: &ExplorationQuery, longest: bool) -> Result<ExplorationResult> {
    let mut ev = start(g, q)?;
    let n = ev.n();
    let side = q.reference;
    let meet = q.extremal == Extremal::Maximal;
    let mut out = Vec::new();
    for r in references(n, side) {
        let len = if longest { max_len(n, r, side) } else { 1 };
        let pair = IntervalPair::with_len(r, len, side);
        let w = ev.weight(pair, side, meet);
        if w >= q.k {
            out.push(Evaluation { pair, weight: w });
        }
    }
    Ok(finish(q, ev, out))
}

/// Union exploration: the shortest qualifying extension per reference.
pub fn u_explore(g: &TemporalGraph, q: &ExplorationQuery) -> Result<ExplorationResult> {
    if q.extremal != Extremal::Minimal {
        return Err(GraphError::Usage("U-Explore searches minimal pairs".into()));
    }
    walk_union(g, q)
}

/// Intersection exploration: extends each candidate while it qualifies.
pub fn i_explore(g: &TemporalGraph, q: &ExplorationQuery) -> Result<ExplorationResult> {
    if q.extremal != Extremal::Maximal {
        return Err(GraphError::Usage("I-Explore searches maximal pairs".into()));
    }
    walk_intersection(g, q)
}

/// Evaluates the query with the cheapest plan valid for its case.
pub fn explore(g: &TemporalGraph, q: &ExplorationQuery) -> Result<ExplorationResult> {
    match q.plan() {
        Plan::UExplore => walk_union(g, q),
        Plan::IExplore => walk_intersection(g, q),
        Plan::ConsecutiveOnly => single_length(g, q, false),
        Plan::LongestOnly => single_length(g, q, true),
    }
}

pub fn brute_force_explore(g: &TemporalGraph, q: &ExplorationQuery) -> Result<ExplorationResult> {
    brute_force_explore_capped(g, q, DEFAULT_CAP)
}

/// Evaluates every pair and keeps, per reference, the shortest (minimal)
/// or longest (maximal) qualifying extension.
pub fn brute_force_explore_capped(g: &TemporalGraph, q: &ExplorationQuery, cap: usize) -> Result<ExplorationResult> {
    if g.n() > cap {
        return Err(GraphError::CapExceeded { points: g.n(), cap });
    }
    let mut ev = start(g, q)?;
    let n = ev.n();
    let side = q.reference;
    let meet = q.extremal == Extremal::Maximal;
    let mut out = Vec::new();
    for r in references(n, side) {
        let qualifying: Vec<Evaluation> = (1..=max_len(n, r, side))
            .map(|len| {
                let pair = IntervalPair::with_len(r, len, side);
                Evaluation { pair, weight: ev.weight(pair, side, meet) }
            })
            .filter(|e| e.weight >= q.k)
            .collect();
        // Extensions of one reference are nested, so inclusion is length order.
        let pick = match q.extremal {
            Extremal::Minimal => qualifying.into_iter().min_by_key(|e| e.pair.extended.len()),
            Extremal::Maximal => qualifying.into_iter().max_by_key(|e| e.pair.extended.len()),
        };
        out.extend(pick);
    }
    Ok(finish(q, ev, out))
}
