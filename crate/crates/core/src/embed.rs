//! Shared backtracking machinery for embedding searches.
//!
//! Pattern vertices are placed in order 1..=m with host candidates tried in
//! ascending order, so the first complete map found is the lexicographically
//! least one. Callers supply a per-placement predicate; the helpers here only
//! own the injective enumeration and the edge bookkeeping.

use crate::hypercore::{rank_edge, ColoredHypergraph};

/// Search injective maps from pattern vertices `1..=m` into host `1..=n`.
/// `check(phi, placed)` is invoked right after pattern vertex `placed`
/// (1-based) receives its image; returning false abandons the branch.
pub(crate) fn backtrack_embedding(
    m: usize,
    n: usize,
    check: &mut impl FnMut(&[usize], usize) -> bool,
) -> Option<Vec<usize>> {
    if m > n {
        return None;
    }
    let mut phi: Vec<usize> = Vec::with_capacity(m);
    let mut used = vec![false; n + 1];
    fn rec(
        m: usize,
        n: usize,
        phi: &mut Vec<usize>,
        used: &mut [bool],
        check: &mut impl FnMut(&[usize], usize) -> bool,
    ) -> bool {
        if phi.len() == m {
            return true;
        }
        for v in 1..=n {
            if used[v] {
                continue;
            }
            phi.push(v);
            used[v] = true;
            if check(phi, phi.len()) && rec(m, n, phi, used, check) {
                return true;
            }
            used[v] = false;
            phi.pop();
        }
        false
    }
    if rec(m, n, &mut phi, &mut used, check) {
        Some(phi)
    } else {
        None
    }
}

/// Invoke `f` with every sorted k-subset of `1..=top` whose maximum is `top`.
fn for_each_new_subset(top: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if top < k {
        return true;
    }
    let mut subset = vec![0usize; k];
    subset[k - 1] = top;
    fn rec(subset: &mut Vec<usize>, pos: usize, lo: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if pos == subset.len() - 1 {
            return f(subset);
        }
        // subset[pos] ranges so that pos..k-2 still fit below subset[k-1]
        let hi = subset[subset.len() - 1] - (subset.len() - 1 - pos);
        for v in lo..=hi {
            subset[pos] = v;
            if !rec(subset, pos + 1, v + 1, f) {
                return false;
            }
        }
        true
    }
    if k == 1 {
        return f(&subset);
    }
    rec(&mut subset, 0, 1, f)
}

/// Check all pattern edges of a total coloring that became complete when
/// pattern vertex `placed` was mapped. `edge_ok(pattern_rank, host_edge)`
/// decides per edge; returns false as soon as one fails.
pub(crate) fn pattern_edges_ok(
    f: &ColoredHypergraph,
    phi: &[usize],
    placed: usize,
    edge_ok: &mut impl FnMut(usize, &[usize]) -> bool,
) -> bool {
    let k = f.k();
    let mut host = vec![0usize; k];
    for_each_new_subset(placed, k, &mut |pattern_edge| {
        for (i, &pv) in pattern_edge.iter().enumerate() {
            host[i] = phi[pv - 1];
        }
        host.sort_unstable();
        edge_ok(rank_edge(pattern_edge).expect("sorted pattern edge"), &host)
    })
}

/// Does `f` embed into the host with its image covering `anchor` (a sorted
/// host k-subset)? All images stay at or below `anchor`'s maximum vertex,
/// which is exactly the reachable region when host edges are assigned in
/// colex order up to `anchor`. Every pattern edge must pass `edge_ok`.
pub(crate) fn anchored_total_embedding(
    f: &ColoredHypergraph,
    anchor: &[usize],
    edge_ok: &mut impl FnMut(usize, &[usize]) -> bool,
) -> bool {
    let m = f.n();
    let k = f.k();
    if m < k {
        return false;
    }
    let maxv = anchor[k - 1];
    if m > maxv {
        return false;
    }
    backtrack_embedding(m, maxv, &mut |phi, placed| {
        let missing = anchor.iter().filter(|a| !phi.contains(a)).count();
        m - placed >= missing && pattern_edges_ok(f, phi, placed, edge_ok)
    })
    .is_some()
}

/// A BI pattern reduced to its black skeleton: only black edges constrain an
/// embedding, and vertices meeting no black edge just need spare host room.
#[derive(Debug, Clone)]
pub(crate) struct BlackPattern {
    /// Total number of pattern vertices (free ones included).
    pub m: usize,
    /// Vertices incident to at least one black edge, ascending.
    pub core: Vec<usize>,
    /// Black edges as sorted subsets of core *positions* (0-based).
    pub black_edges: Vec<Vec<usize>>,
}

impl BlackPattern {
    /// `black_color` is the index of "black" in the pattern's palette.
    pub fn from_graph(f: &ColoredHypergraph, black_color: u32) -> Self {
        let k = f.k();
        let mut black_vertex = vec![false; f.n() + 1];
        let mut raw_edges = Vec::new();
        for r in 0..f.edge_count() {
            if f.color_at_rank(r) == black_color {
                let e = crate::hypercore::unrank_edge(r, k);
                for &v in &e {
                    black_vertex[v] = true;
                }
                raw_edges.push(e);
            }
        }
        let core: Vec<usize> = (1..=f.n()).filter(|&v| black_vertex[v]).collect();
        let pos_of = |v: usize| core.iter().position(|&c| c == v).unwrap();
        let black_edges = raw_edges
            .iter()
            .map(|e| e.iter().map(|&v| pos_of(v)).collect())
            .collect();
        BlackPattern { m: f.n(), core, black_edges }
    }

    pub fn has_black(&self) -> bool {
        !self.black_edges.is_empty()
    }
}

/// Does the black skeleton embed into the host with every black-edge image
/// accepted by `host_black` and some black edge mapped exactly onto `anchor`?
/// `host_n` is the full host size (free pattern vertices need spare room).
pub(crate) fn anchored_black_embedding(
    pat: &BlackPattern,
    host_n: usize,
    anchor: &[usize],
    host_black: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if pat.black_edges.is_empty() || pat.m > host_n {
        return false;
    }
    let k = anchor.len();
    let maxv = anchor[k - 1];
    if pat.core.len() > maxv {
        return false;
    }
    let core_len = pat.core.len();
    // black edges grouped by the core position that completes them
    let mut by_last: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); core_len];
    for e in &pat.black_edges {
        by_last[*e.last().unwrap()].push(e);
    }
    // hit_at[d] records whether a black edge completed at depth d maps onto
    // the anchor; entries along the current path are always freshly written
    let mut hit_at = vec![false; core_len + 1];
    let mut host = vec![0usize; k];
    backtrack_embedding(core_len, maxv, &mut |phi, placed| {
        let mut hit_here = false;
        for e in &by_last[placed - 1] {
            for (i, &p) in e.iter().enumerate() {
                host[i] = phi[p];
            }
            host.sort_unstable();
            if !host_black(&host) {
                return false;
            }
            if host == anchor {
                hit_here = true;
            }
        }
        hit_at[placed] = hit_here;
        placed < core_len || hit_at[1..=core_len].iter().any(|&h| h)
    })
    .is_some()
}
