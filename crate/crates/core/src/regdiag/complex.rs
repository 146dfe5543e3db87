//! Simplicial complexes over a partite ground with h vertices per part,
//! their enumeration against a reference bound graph, and partitionwise
//! embedding probabilities (exact or sampled).

use std::collections::BTreeMap;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BoundGraph, EdgeCoords, IndexSet, TotalColor};
use crate::error::{Error, Result};

/// Default cap on ground maps enumerated by exact-mode probability.
pub const DEFAULT_EXACT_MAP_CAP: u64 = 1_000_000;

/// Default cap on assignments scanned when enumerating complexes.
pub const DEFAULT_COMPLEX_CAP: u64 = 1 << 21;

/// A bound simplicial complex on h vertices per part, colored against a
/// reference bound graph: each partitionwise edge either carries a color
/// index into the reference C_I or is invisible. Invisibility is upward
/// closed (supersets of an invisible edge are invisible).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    r: usize,
    k: usize,
    h: usize,
    part_sizes_ref: Vec<usize>,
    /// Per index, one entry per edge of the h-vertex ground in mixed-radix
    /// order; `None` marks an invisible edge.
    assignment: BTreeMap<IndexSet, Vec<Option<u32>>>,
}

impl Complex {
    pub fn new(
        g: &BoundGraph,
        h: usize,
        assignment: BTreeMap<IndexSet, Vec<Option<u32>>>,
    ) -> Result<Self> {
        if h == 0 {
            return Err(Error::input("complex needs at least one vertex per part"));
        }
        let r = g.ground().r();
        for index in g.indices() {
            let edges = assignment.get(&index).ok_or_else(|| {
                Error::input(format!("missing complex assignment at index {{{}}}", index.label()))
            })?;
            let want = h.pow(index.size() as u32);
            if edges.len() != want {
                return Err(Error::input(format!(
                    "index {{{}}} needs {want} complex edges, got {}",
                    index.label(),
                    edges.len()
                )));
            }
            let palette = g.color_set(index).len() as u32;
            if edges.iter().flatten().any(|&c| c >= palette) {
                return Err(Error::input(format!(
                    "complex color out of range at index {{{}}}",
                    index.label()
                )));
            }
        }
        if let Some(index) = assignment.keys().find(|i| i.size() > g.k()) {
            return Err(Error::input(format!(
                "complex index {{{}}} exceeds the bound k={}",
                index.label(),
                g.k()
            )));
        }
        let cx = Complex {
            r,
            k: g.k(),
            h,
            part_sizes_ref: g.ground().part_sizes().to_vec(),
            assignment,
        };
        // simpliciality: a visible edge has only visible sub-edges
        for (index, coords) in cx.visible_edges() {
            for sub in index.proper_subsets() {
                let sub_coords = project(index, &coords, sub);
                if cx.color(sub, &sub_coords).is_none() {
                    return Err(Error::input(format!(
                        "complex is not simplicial: visible edge {coords:?} at index {{{}}} \
                         has an invisible sub-edge at {{{}}}",
                        index.label(),
                        sub.label()
                    )));
                }
            }
        }
        Ok(cx)
    }

    pub fn h(&self) -> usize {
        self.h
    }

    fn offset(&self, index: IndexSet, coords: &[usize]) -> usize {
        let mut offset = 0;
        let mut stride = 1;
        for &c in coords {
            offset += c * stride;
            stride *= self.h;
        }
        let _ = index;
        offset
    }

    pub fn color(&self, index: IndexSet, coords: &[usize]) -> Option<u32> {
        self.assignment[&index][self.offset(index, coords)]
    }

    /// All visible edges, by ascending index mask then mixed-radix offset.
    pub fn visible_edges(&self) -> Vec<(IndexSet, EdgeCoords)> {
        let mut out = Vec::new();
        for (&index, edges) in &self.assignment {
            let m = index.size();
            let mut coords = vec![0usize; m];
            for entry in edges {
                if entry.is_some() {
                    out.push((index, coords.clone()));
                }
                for c in coords.iter_mut() {
                    *c += 1;
                    if *c < self.h {
                        break;
                    }
                    *c = 0;
                }
            }
        }
        out
    }

    /// The total color S⟨e⟩ of a visible edge: components read off the
    /// complex itself (all sub-edges are visible by simpliciality), as
    /// color indices into the reference graph's palettes.
    pub fn total_color(&self, index: IndexSet, coords: &[usize]) -> TotalColor {
        let mut components = BTreeMap::new();
        for sub in index.nonempty_subsets() {
            let sub_coords = project(index, coords, sub);
            components.insert(sub, self.color(sub, &sub_coords).expect("visible sub-edge"));
        }
        TotalColor { index, components }
    }

    /// A human-oriented one-line description used in reports.
    pub fn describe(&self, g: &BoundGraph) -> String {
        let parts: Vec<String> = self
            .visible_edges()
            .iter()
            .map(|(index, coords)| {
                let c = self.color(*index, coords).expect("visible");
                format!(
                    "{{{}}}{:?}={}",
                    index.label(),
                    coords,
                    g.color_set(*index)[c as usize]
                )
            })
            .collect();
        if parts.is_empty() {
            "all edges invisible".to_string()
        } else {
            parts.join(" ")
        }
    }
}

fn project(index: IndexSet, coords: &[usize], sub: IndexSet) -> EdgeCoords {
    index
        .parts()
        .zip(coords)
        .filter(|(p, _)| sub.contains_part(*p))
        .map(|(_, &c)| c)
        .collect()
}

/// Enumerate the complex family 𝒮: every simplicial assignment of the
/// h-vertex ground against G's palettes (each edge invisible or one of the
/// |C_I| reference colors). Deterministic odometer order. Errors when the
/// raw assignment space exceeds `cap`.
pub fn enumerate_complexes(g: &BoundGraph, h: usize, cap: u64) -> Result<Vec<Complex>> {
    let indices = g.indices();
    // flat slots: (index, edge offset) with per-slot radix |C_I| + 1
    let mut slots: Vec<(IndexSet, usize, u32)> = Vec::new();
    let mut space = 1u64;
    for &index in &indices {
        let radix = g.color_set(index).len() as u32 + 1;
        let n_edges = h.pow(index.size() as u32);
        for off in 0..n_edges {
            slots.push((index, off, radix));
            space = space.saturating_mul(radix as u64);
            if space > cap {
                return Err(Error::budget(format!(
                    "complex assignment space exceeds the cap of {cap}; \
                     supply an explicit complex list instead"
                )));
            }
        }
    }
    let mut values = vec![0u32; slots.len()];
    let mut out = Vec::new();
    loop {
        let mut assignment: BTreeMap<IndexSet, Vec<Option<u32>>> = indices
            .iter()
            .map(|&i| (i, vec![None; h.pow(i.size() as u32)]))
            .collect();
        for ((index, off, _), &v) in slots.iter().zip(&values) {
            assignment.get_mut(index).unwrap()[*off] = v.checked_sub(1);
        }
        if let Ok(cx) = Complex::new(g, h, assignment) {
            out.push(cx);
        }
        // advance the odometer
        let mut i = 0;
        loop {
            if i == values.len() {
                return Ok(out);
            }
            values[i] += 1;
            if values[i] < slots[i].2 {
                break;
            }
            values[i] = 0;
            i += 1;
        }
    }
}

/// How an embedding probability is computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbMode {
    Exact,
    Sampled { count: u64, seed: u64 },
}

/// A probability with its uncertainty: exact value in exact mode, a point
/// estimate with a 99% confidence radius in sampled mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbEstimate {
    pub value: f64,
    pub radius: f64,
    pub exact: Option<Rational64>,
}

const Z_99: f64 = 2.576;

/// P over uniform independent partitionwise maps that every visible edge
/// of S lands on its color in G.
pub fn embed_probability(
    g: &BoundGraph,
    s: &Complex,
    mode: ProbMode,
    exact_cap: u64,
) -> Result<ProbEstimate> {
    if s.part_sizes_ref != g.ground().part_sizes() || s.k != g.k() {
        return Err(Error::input("complex was built against a different ground"));
    }
    let r = g.ground().r();
    let h = s.h;
    // slot (i, j): image of the j-th complex vertex of part i
    let sizes: Vec<usize> = (0..r)
        .flat_map(|i| std::iter::repeat(g.ground().part_size(i)).take(h))
        .collect();
    // visible checks as (index, slot positions, color)
    let checks: Vec<(IndexSet, Vec<usize>, u32)> = s
        .visible_edges()
        .into_iter()
        .map(|(index, coords)| {
            let slots = index.parts().zip(&coords).map(|(p, &v)| p * h + v).collect();
            let c = s.color(index, &coords).expect("visible");
            (index, slots, c)
        })
        .collect();
    let matches = |assign: &[usize]| {
        checks.iter().all(|(index, slots, c)| {
            let image: EdgeCoords = slots.iter().map(|&s| assign[s]).collect();
            g.color_at(*index, &image) == *c
        })
    };
    match mode {
        ProbMode::Exact => {
            let total: u64 = sizes.iter().map(|&s| s as u64).product();
            if total > exact_cap {
                return Err(Error::capability(format!(
                    "exact enumeration needs {total} maps, above the cap of {exact_cap}; \
                     use sampled mode"
                )));
            }
            let mut assign = vec![0usize; sizes.len()];
            let mut hits = 0u64;
            for _ in 0..total {
                if matches(&assign) {
                    hits += 1;
                }
                for (a, &s) in assign.iter_mut().zip(&sizes) {
                    *a += 1;
                    if *a < s {
                        break;
                    }
                    *a = 0;
                }
            }
            let exact = Rational64::new(hits as i64, total as i64);
            Ok(ProbEstimate {
                value: hits as f64 / total as f64,
                radius: 0.0,
                exact: Some(exact),
            })
        }
        ProbMode::Sampled { count, seed } => {
            if count == 0 {
                return Err(Error::input("sampled mode needs a positive sample count"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut assign = vec![0usize; sizes.len()];
            let mut hits = 0u64;
            for _ in 0..count {
                for (a, &s) in assign.iter_mut().zip(&sizes) {
                    *a = rng.gen_range(0..s);
                }
                if matches(&assign) {
                    hits += 1;
                }
            }
            let m = count as f64;
            let p = hits as f64 / m;
            let radius = Z_99 * (p * (1.0 - p) / m).sqrt() + Z_99 / (2.0 * m);
            Ok(ProbEstimate { value: p, radius, exact: None })
        }
    }
}
