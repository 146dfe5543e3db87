//! Exceptional total colors: threshold classification, exact per-index
//! probabilities against the 11·2^k·√ε bound, and the goodified recoloring
//! of size-k edges.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;

use super::regularity::DeltaFunction;
use super::{enumerate_edges, BoundGraph, DensityTables, EdgeCoords, IndexSet, TotalColor};
use crate::error::{Error, Result};

/// Per-index exceptional-edge probability, exact.
#[derive(Debug, Clone)]
pub struct IndexProbability {
    pub index: IndexSet,
    pub exceptional_edges: u64,
    pub total_edges: u64,
}

impl IndexProbability {
    pub fn probability(&self) -> Rational64 {
        Rational64::new(self.exceptional_edges as i64, self.total_edges as i64)
    }
}

#[derive(Debug, Clone)]
pub struct ExceptionalReport {
    pub eps: f64,
    pub k: usize,
    /// 11 · 2^k · √ε, the reference bound the probabilities are compared to.
    pub bound: f64,
    pub exceptional: BTreeSet<TotalColor>,
    pub per_index: Vec<IndexProbability>,
}

/// A total color is exceptional iff some nonempty I′ ⊆ I has restricted
/// density below √ε/|C_{I′}| or restricted slack above 0.1·√ε/|C_{I′}|.
/// An undefined restricted density (frame realized by no edge) counts as
/// exceptional.
fn is_exceptional(
    g: &BoundGraph,
    tables: &DensityTables,
    delta: &DeltaFunction,
    eps: f64,
    tc: &TotalColor,
) -> bool {
    let sqrt_eps = eps.sqrt();
    tc.index.nonempty_subsets().into_iter().any(|sub| {
        let c = g.color_set(sub).len() as f64;
        let restricted = tc.restrict(sub);
        let low = match tables.density(&restricted) {
            Ok(d) => (*d.numer() as f64 / *d.denom() as f64) < sqrt_eps / c,
            Err(_) => true,
        };
        low || delta.get(&restricted) > 0.1 * sqrt_eps / c
    })
}

/// Classify every realized total color of G* and compute the exact
/// per-index probability that an edge is exceptional.
pub fn detect_exceptional(
    gstar: &BoundGraph,
    delta: &DeltaFunction,
    eps: f64,
) -> Result<ExceptionalReport> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::input("eps must be a nonnegative real"));
    }
    let tables = DensityTables::build(gstar);
    let mut exceptional = BTreeSet::new();
    let mut per_index = Vec::new();
    for index in gstar.indices() {
        let mut bad_edges = 0u64;
        for (tc, &count) in &tables.total_counts {
            if tc.index != index {
                continue;
            }
            if is_exceptional(gstar, &tables, delta, eps, tc) {
                exceptional.insert(tc.clone());
                bad_edges += count;
            }
        }
        per_index.push(IndexProbability {
            index,
            exceptional_edges: bad_edges,
            total_edges: tables.edges_at(index),
        });
    }
    let k = gstar.k();
    Ok(ExceptionalReport {
        eps,
        k,
        bound: 11.0 * (1u64 << k) as f64 * eps.sqrt(),
        exceptional,
        per_index,
    })
}

/// The goodified recoloring: each size-k edge mapped to a nonempty set of
/// top colors (lower-index edges are dropped).
#[derive(Debug, Clone)]
pub struct GoodifiedMap {
    /// (index, edge coordinates) -> admissible color indices, ascending.
    pub entries: BTreeMap<(IndexSet, EdgeCoords), Vec<u32>>,
}

/// Recolor every size-k edge: an exceptional edge keeps its own color as a
/// singleton; a non-exceptional edge gets every top color whose total color
/// over the same frame is non-exceptional. The edge's own color always
/// qualifies, so an empty set signals an internal inconsistency and is
/// surfaced as an error.
pub fn build_goodified(gstar: &BoundGraph, exc: &ExceptionalReport) -> Result<GoodifiedMap> {
    if exc.k != gstar.k() {
        return Err(Error::input("report was derived from a different graph"));
    }
    let tables = DensityTables::build(gstar);
    // reconstruct the slack values the report cannot carry: classification
    // below only needs the thresholds already decided in `exc.exceptional`
    // for realized totals, plus density thresholds for candidate totals.
    let k = gstar.k();
    let mut entries = BTreeMap::new();
    for index in gstar.indices() {
        if index.size() != k {
            continue;
        }
        let palette = gstar.color_set(index).len() as u32;
        for coords in enumerate_edges(gstar.ground(), index) {
            let own = gstar.color_at(index, &coords);
            let tc = gstar.total_color(index, &coords)?;
            let set = if exc.exceptional.contains(&tc) {
                vec![own]
            } else {
                let sqrt_eps = exc.eps.sqrt();
                let thresh = sqrt_eps / palette as f64;
                (0..palette)
                    .filter(|&c| {
                        let mut cand = tc.clone();
                        cand.components.insert(index, c);
                        if c == own {
                            return true;
                        }
                        // proper restrictions coincide with the edge's own
                        // and are non-exceptional; only the top matters
                        let d = tables
                            .density(&cand)
                            .map(|d| *d.numer() as f64 / *d.denom() as f64)
                            .unwrap_or(0.0);
                        d >= thresh && !exc.exceptional.contains(&cand)
                    })
                    .collect()
            };
            if set.is_empty() {
                return Err(Error::Inconsistency(format!(
                    "non-exceptional edge {coords:?} at index {{{}}} admits no \
                     non-exceptional top color",
                    index.label()
                )));
            }
            entries.insert((index, coords), set);
        }
    }
    Ok(GoodifiedMap { entries })
}
