//! Partite regularity diagnostics: bound colored graphs on a partite
//! ground, frame/total colors, relative densities, subdivision checking,
//! complex-embedding probabilities, (ε,h)-regularity verification,
//! exceptional total colors and the goodified-graph construction.

mod complex;
mod exceptional;
mod regularity;

pub use complex::{
    embed_probability, enumerate_complexes, Complex, ProbEstimate, ProbMode,
    DEFAULT_COMPLEX_CAP, DEFAULT_EXACT_MAP_CAP,
};
pub use exceptional::{build_goodified, detect_exceptional, ExceptionalReport, GoodifiedMap};
pub use regularity::{
    check_regularity, fit_delta, ComplexCheck, DeltaFunction, IndexCheck, RegularityReport,
};

use std::collections::BTreeMap;

use num_rational::Rational64;

use crate::error::{Error, Result};

/// A nonempty set of part indices (0-based), as a bitmask. Orderings
/// derived from the mask are used for all deterministic iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(u32);

impl IndexSet {
    pub fn from_mask(mask: u32) -> Result<Self> {
        if mask == 0 {
            return Err(Error::input("index set must be nonempty"));
        }
        Ok(IndexSet(mask))
    }

    pub fn from_parts(parts: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &p in parts {
            if p >= 32 {
                return Err(Error::input("part index too large"));
            }
            if mask >> p & 1 == 1 {
                return Err(Error::input(format!("duplicate part {} in index set", p + 1)));
            }
            mask |= 1 << p;
        }
        IndexSet::from_mask(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Part indices in ascending order.
    pub fn parts(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |&i| mask >> i & 1 == 1)
    }

    pub fn contains_part(self, p: usize) -> bool {
        self.0 >> p & 1 == 1
    }

    pub fn is_subset_of(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// All nonempty subsets, ascending by mask.
    pub fn nonempty_subsets(self) -> Vec<IndexSet> {
        let mut out = Vec::new();
        // iterate submasks of self.0
        let full = self.0;
        let mut sub = full;
        loop {
            if sub != 0 {
                out.push(IndexSet(sub));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & full;
        }
        out.sort();
        out
    }

    /// Proper nonempty subsets, ascending by mask.
    pub fn proper_subsets(self) -> Vec<IndexSet> {
        self.nonempty_subsets().into_iter().filter(|s| *s != self).collect()
    }

    /// 1-based label like "1,3" used in the text formats.
    pub fn label(self) -> String {
        self.parts().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Finite parts with uniform measure on each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartiteGround {
    part_sizes: Vec<usize>,
}

impl PartiteGround {
    pub fn new(part_sizes: Vec<usize>) -> Result<Self> {
        if part_sizes.is_empty() {
            return Err(Error::input("ground must have at least one part"));
        }
        if part_sizes.len() > 16 {
            return Err(Error::capability("at most 16 parts supported"));
        }
        if let Some(i) = part_sizes.iter().position(|&n| n == 0) {
            return Err(Error::input(format!("part {} must be nonempty", i + 1)));
        }
        Ok(PartiteGround { part_sizes })
    }

    pub fn r(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn part_size(&self, i: usize) -> usize {
        self.part_sizes[i]
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    /// Number of partitionwise edges with the given index set.
    pub fn edge_count(&self, index: IndexSet) -> u64 {
        index.parts().map(|p| self.part_sizes[p] as u64).product()
    }

    /// All index sets with 1 <= |I| <= k, ascending by mask.
    pub fn indices_up_to(&self, k: usize) -> Vec<IndexSet> {
        let r = self.r();
        (1u32..1 << r)
            .filter(|m| (m.count_ones() as usize) <= k)
            .map(IndexSet)
            .collect()
    }
}

/// Per-part vertex coordinates of a partitionwise edge, one entry per part
/// of its index set in ascending part order, each 0-based.
pub type EdgeCoords = Vec<usize>;

/// Enumerate all edges of an index set in mixed-radix order (first part
/// fastest).
pub fn enumerate_edges(ground: &PartiteGround, index: IndexSet) -> Vec<EdgeCoords> {
    let sizes: Vec<usize> = index.parts().map(|p| ground.part_size(p)).collect();
    let total: usize = sizes.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut coords = vec![0usize; sizes.len()];
    for _ in 0..total {
        out.push(coords.clone());
        for (c, &s) in coords.iter_mut().zip(&sizes) {
            *c += 1;
            if *c < s {
                break;
            }
            *c = 0;
        }
    }
    out
}

/// Mixed-radix offset of an edge within its index's edge list.
pub fn edge_offset(ground: &PartiteGround, index: IndexSet, coords: &[usize]) -> usize {
    let mut offset = 0usize;
    let mut stride = 1usize;
    for (c, p) in coords.iter().zip(index.parts()) {
        offset += c * stride;
        stride *= ground.part_size(p);
    }
    offset
}

/// Tuple of colors of all nonempty sub-edges of a partitionwise edge
/// (J = I included; its use in densities and slack functions needs the top
/// component).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TotalColor {
    pub index: IndexSet,
    /// J -> color index in C_J, for every nonempty J ⊆ index.
    pub components: BTreeMap<IndexSet, u32>,
}

impl TotalColor {
    /// The frame: components at proper subsets only.
    pub fn frame(&self) -> BTreeMap<IndexSet, u32> {
        self.components
            .iter()
            .filter(|(j, _)| **j != self.index)
            .map(|(j, c)| (*j, *c))
            .collect()
    }

    pub fn top(&self) -> u32 {
        self.components[&self.index]
    }

    /// Restriction to a nonempty sub-index.
    pub fn restrict(&self, sub: IndexSet) -> TotalColor {
        debug_assert!(sub.is_subset_of(self.index));
        TotalColor {
            index: sub,
            components: self
                .components
                .iter()
                .filter(|(j, _)| j.is_subset_of(sub))
                .map(|(j, c)| (*j, *c))
                .collect(),
        }
    }
}

/// An r-partite k-bound colored graph: per-index color lists C_I and a
/// total coloring of every partitionwise edge of every size up to k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundGraph {
    ground: PartiteGround,
    k: usize,
    colors: BTreeMap<IndexSet, Vec<String>>,
    coloring: BTreeMap<IndexSet, Vec<u32>>,
}

impl BoundGraph {
    pub fn new(
        ground: PartiteGround,
        k: usize,
        colors: BTreeMap<IndexSet, Vec<String>>,
        coloring: BTreeMap<IndexSet, Vec<u32>>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("bound k must be at least 1"));
        }
        for index in ground.indices_up_to(k) {
            let cs = colors.get(&index).ok_or_else(|| {
                Error::input(format!("missing color set for index {{{}}}", index.label()))
            })?;
            if cs.is_empty() {
                return Err(Error::input(format!(
                    "color set for index {{{}}} is empty",
                    index.label()
                )));
            }
            for (i, a) in cs.iter().enumerate() {
                if cs[..i].contains(a) {
                    return Err(Error::input(format!(
                        "duplicate color \"{a}\" at index {{{}}}",
                        index.label()
                    )));
                }
            }
            let gamma = coloring.get(&index).ok_or_else(|| {
                Error::input(format!("missing coloring for index {{{}}}", index.label()))
            })?;
            let want = ground.edge_count(index) as usize;
            if gamma.len() != want {
                return Err(Error::input(format!(
                    "index {{{}}} needs {want} edge colors, got {}",
                    index.label(),
                    gamma.len()
                )));
            }
            if let Some(&c) = gamma.iter().find(|&&c| c as usize >= cs.len()) {
                return Err(Error::input(format!(
                    "color index {c} out of range at index {{{}}}",
                    index.label()
                )));
            }
        }
        for index in colors.keys().chain(coloring.keys()) {
            if index.size() > k {
                return Err(Error::input(format!(
                    "index {{{}}} exceeds the bound k={k}",
                    index.label()
                )));
            }
            if !index.parts().all(|p| p < ground.r()) {
                return Err(Error::input(format!(
                    "index {{{}}} refers to a part outside the ground",
                    index.label()
                )));
            }
        }
        Ok(BoundGraph { ground, k, colors, coloring })
    }

    pub fn ground(&self) -> &PartiteGround {
        &self.ground
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn indices(&self) -> Vec<IndexSet> {
        self.ground.indices_up_to(self.k)
    }

    pub fn color_set(&self, index: IndexSet) -> &[String] {
        &self.colors[&index]
    }

    pub fn color_at(&self, index: IndexSet, coords: &[usize]) -> u32 {
        self.coloring[&index][edge_offset(&self.ground, index, coords)]
    }

    /// Project an edge's coordinates onto a sub-index.
    pub fn project(&self, index: IndexSet, coords: &[usize], sub: IndexSet) -> EdgeCoords {
        index
            .parts()
            .zip(coords)
            .filter(|(p, _)| sub.contains_part(*p))
            .map(|(_, &c)| c)
            .collect()
    }

    /// The total color of a partitionwise edge: colors of all nonempty
    /// sub-edges, the edge's own color included.
    pub fn total_color(&self, index: IndexSet, coords: &[usize]) -> Result<TotalColor> {
        if index.size() > self.k {
            return Err(Error::input(format!(
                "index {{{}}} exceeds the bound k={}",
                index.label(),
                self.k
            )));
        }
        let expected = index.size();
        if coords.len() != expected {
            return Err(Error::input(format!(
                "edge has {} coordinates, index {{{}}} needs {expected}",
                coords.len(),
                index.label()
            )));
        }
        for (p, &c) in index.parts().zip(coords) {
            if c >= self.ground.part_size(p) {
                return Err(Error::input(format!(
                    "vertex {c} outside part {} of size {}",
                    p + 1,
                    self.ground.part_size(p)
                )));
            }
        }
        let mut components = BTreeMap::new();
        for sub in index.nonempty_subsets() {
            let sub_coords = self.project(index, coords, sub);
            components.insert(sub, self.color_at(sub, &sub_coords));
        }
        Ok(TotalColor { index, components })
    }

    /// Realized total colors at an index, ascending.
    pub fn realized_totals(&self, index: IndexSet) -> Vec<TotalColor> {
        let mut set = std::collections::BTreeSet::new();
        for coords in enumerate_edges(&self.ground, index) {
            set.insert(self.total_color(index, &coords).expect("valid edge"));
        }
        set.into_iter().collect()
    }
}

type Frame = BTreeMap<IndexSet, u32>;

/// Exact per-index counts of total colors and frames, built once and shared
/// by densities, regularity checks and exceptional classification.
#[derive(Debug, Clone)]
pub struct DensityTables {
    pub total_counts: BTreeMap<TotalColor, u64>,
    frame_counts: BTreeMap<(IndexSet, Frame), u64>,
    edge_totals: BTreeMap<IndexSet, u64>,
}

impl DensityTables {
    pub fn build(g: &BoundGraph) -> Self {
        let mut total_counts = BTreeMap::new();
        let mut frame_counts = BTreeMap::new();
        let mut edge_totals = BTreeMap::new();
        for index in g.indices() {
            let mut n_edges = 0u64;
            for coords in enumerate_edges(g.ground(), index) {
                let tc = g.total_color(index, &coords).expect("valid edge");
                *frame_counts.entry((index, tc.frame())).or_insert(0) += 1;
                *total_counts.entry(tc).or_insert(0) += 1;
                n_edges += 1;
            }
            edge_totals.insert(index, n_edges);
        }
        DensityTables { total_counts, frame_counts, edge_totals }
    }

    pub fn frame_count(&self, index: IndexSet, frame: &Frame) -> u64 {
        *self.frame_counts.get(&(index, frame.clone())).unwrap_or(&0)
    }

    pub fn total_count(&self, tc: &TotalColor) -> u64 {
        *self.total_counts.get(tc).unwrap_or(&0)
    }

    pub fn edges_at(&self, index: IndexSet) -> u64 {
        *self.edge_totals.get(&index).unwrap_or(&0)
    }

    /// Relative density: P[top color | frame color], exact. Errors when the
    /// frame is realized by no edge.
    pub fn density(&self, tc: &TotalColor) -> Result<Rational64> {
        let denom = self.frame_count(tc.index, &tc.frame());
        if denom == 0 {
            return Err(Error::input(format!(
                "frame of the given total color at index {{{}}} is realized by no edge; \
                 its relative density is undefined",
                tc.index.label()
            )));
        }
        Ok(Rational64::new(self.total_count(tc) as i64, denom as i64))
    }
}

/// Relative density of a total color in G, exact.
pub fn relative_density(g: &BoundGraph, tc: &TotalColor) -> Result<Rational64> {
    DensityTables::build(g).density(tc)
}

/// Outcome of a subdivision check, with the first violation when any.
#[derive(Debug, Clone)]
pub struct SubdivisionReport {
    pub ok: bool,
    pub violation: Option<String>,
}

/// G* is a subdivision of G iff size-k colorings agree edge by edge and,
/// for every smaller index, the G*-coloring refines the G-coloring.
pub fn check_subdivision(g: &BoundGraph, gstar: &BoundGraph) -> Result<SubdivisionReport> {
    if g.ground() != gstar.ground() {
        return Err(Error::input("subdivision check requires the same ground"));
    }
    if g.k() != gstar.k() {
        return Err(Error::input("subdivision check requires the same bound k"));
    }
    for index in g.indices() {
        let edges = enumerate_edges(g.ground(), index);
        if index.size() == g.k() {
            for coords in &edges {
                let a = &g.color_set(index)[g.color_at(index, coords) as usize];
                let b = &gstar.color_set(index)[gstar.color_at(index, coords) as usize];
                if a != b {
                    return Ok(SubdivisionReport {
                        ok: false,
                        violation: Some(format!(
                            "size-k edge {coords:?} at index {{{}}} recolored from \"{a}\" to \"{b}\"",
                            index.label()
                        )),
                    });
                }
            }
        } else {
            // refinement: equal G*-colors force equal G-colors
            let mut seen: BTreeMap<u32, (u32, EdgeCoords)> = BTreeMap::new();
            for coords in &edges {
                let fine = gstar.color_at(index, coords);
                let coarse = g.color_at(index, coords);
                match seen.get(&fine) {
                    None => {
                        seen.insert(fine, (coarse, coords.clone()));
                    }
                    Some((c0, e0)) if *c0 != coarse => {
                        return Ok(SubdivisionReport {
                            ok: false,
                            violation: Some(format!(
                                "index {{{}}}: edges {e0:?} and {coords:?} share the refined \
                                 color \"{}\" but had distinct colors \"{}\" and \"{}\"",
                                index.label(),
                                gstar.color_set(index)[fine as usize],
                                g.color_set(index)[*c0 as usize],
                                g.color_set(index)[coarse as usize]
                            )),
                        });
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(SubdivisionReport { ok: true, violation: None })
}

/// Deterministic random bound graph for diagnostics and tests: every index
/// gets between 1 and `max_colors` colors and uniform random edge colors.
pub fn random_bound_graph(
    rng: &mut impl rand::Rng,
    r: usize,
    k: usize,
    max_part: usize,
    max_colors: usize,
) -> BoundGraph {
    let sizes: Vec<usize> = (0..r).map(|_| rng.gen_range(1..=max_part)).collect();
    let ground = PartiteGround::new(sizes).expect("valid sizes");
    let mut colors = BTreeMap::new();
    let mut coloring = BTreeMap::new();
    for index in ground.indices_up_to(k) {
        let c = rng.gen_range(1..=max_colors);
        let labels: Vec<String> = (1..=c).map(|i| format!("c{}_{i}", index.label().replace(',', "_"))).collect();
        let edges = ground.edge_count(index) as usize;
        let gamma: Vec<u32> = (0..edges).map(|_| rng.gen_range(0..c) as u32).collect();
        colors.insert(index, labels);
        coloring.insert(index, gamma);
    }
    BoundGraph::new(ground, k, colors, coloring).expect("valid random graph")
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The 2x2 two-part ground with one vertex color per part and the pair
    /// coloring black except edge (1,1) which is white.
    pub(crate) fn three_quarter_black() -> BoundGraph {
        let ground = PartiteGround::new(vec![2, 2]).unwrap();
        let i1 = IndexSet::from_mask(0b01).unwrap();
        let i2 = IndexSet::from_mask(0b10).unwrap();
        let i12 = IndexSet::from_mask(0b11).unwrap();
        let mut colors = BTreeMap::new();
        colors.insert(i1, vec!["u".to_string()]);
        colors.insert(i2, vec!["v".to_string()]);
        colors.insert(i12, vec!["black".to_string(), "white".to_string()]);
        let mut coloring = BTreeMap::new();
        coloring.insert(i1, vec![0, 0]);
        coloring.insert(i2, vec![0, 0]);
        // offsets: (0,0),(1,0),(0,1),(1,1); make the last one white
        coloring.insert(i12, vec![0, 0, 0, 1]);
        BoundGraph::new(ground, 2, colors, coloring).unwrap()
    }

    #[test]
    fn total_color_read_off() {
        let g = three_quarter_black();
        let i12 = IndexSet::from_mask(0b11).unwrap();
        let tc = g.total_color(i12, &[0, 0]).unwrap();
        assert_eq!(tc.components.len(), 3);
        assert_eq!(tc.top(), 0);
        // restriction consistency
        let i1 = IndexSet::from_mask(0b01).unwrap();
        let sub = g.total_color(i1, &[0]).unwrap();
        assert_eq!(tc.restrict(i1), sub);
    }

    #[test]
    fn vertex_total_color_is_vertex_color() {
        let g = three_quarter_black();
        let i1 = IndexSet::from_mask(0b01).unwrap();
        let tc = g.total_color(i1, &[1]).unwrap();
        assert_eq!(tc.components.len(), 1);
        assert_eq!(tc.top(), 0);
    }

    #[test]
    fn density_examples() {
        let g = three_quarter_black();
        let i12 = IndexSet::from_mask(0b11).unwrap();
        let black = g.total_color(i12, &[0, 0]).unwrap();
        assert_eq!(relative_density(&g, &black).unwrap(), Rational64::new(3, 4));
        let white = g.total_color(i12, &[1, 1]).unwrap();
        assert_eq!(relative_density(&g, &white).unwrap(), Rational64::new(1, 4));
        // densities over a shared frame sum to 1
        assert_eq!(
            relative_density(&g, &black).unwrap() + relative_density(&g, &white).unwrap(),
            Rational64::new(1, 1)
        );
    }

    #[test]
    fn density_sums_to_one_random() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let g = random_bound_graph(&mut rng, 3, 2, 4, 3);
            let tables = DensityTables::build(&g);
            for index in g.indices() {
                let mut by_frame: BTreeMap<Frame, Rational64> = BTreeMap::new();
                for tc in g.realized_totals(index) {
                    let d = tables.density(&tc).unwrap();
                    *by_frame.entry(tc.frame()).or_insert(Rational64::new(0, 1)) += d;
                }
                for (_, sum) in by_frame {
                    assert_eq!(sum, Rational64::new(1, 1));
                }
            }
        }
    }

    #[test]
    fn undefined_density_is_an_error() {
        let g = three_quarter_black();
        let i12 = IndexSet::from_mask(0b11).unwrap();
        let mut tc = g.total_color(i12, &[0, 0]).unwrap();
        // fabricate a frame that no edge realizes (vertex color index 5)
        let i1 = IndexSet::from_mask(0b01).unwrap();
        tc.components.insert(i1, 5);
        assert!(matches!(relative_density(&g, &tc), Err(Error::Input(_))));
    }

    #[test]
    fn subdivision_examples() {
        let g = three_quarter_black();
        assert!(check_subdivision(&g, &g).unwrap().ok);

        // split the vertex-color class of part 1 into two labels: refinement
        let mut fine = g.clone();
        let i1 = IndexSet::from_mask(0b01).unwrap();
        fine.colors.insert(i1, vec!["u0".to_string(), "u1".to_string()]);
        fine.coloring.insert(i1, vec![0, 1]);
        assert!(check_subdivision(&g, &fine).unwrap().ok);
        // but the original does not subdivide the refined graph
        let back = check_subdivision(&fine, &g).unwrap();
        assert!(!back.ok);
        assert!(back.violation.is_some());

        // recoloring a size-k edge is never a subdivision
        let mut bad = g.clone();
        let i12 = IndexSet::from_mask(0b11).unwrap();
        bad.coloring.insert(i12, vec![1, 0, 0, 1]);
        assert!(!check_subdivision(&g, &bad).unwrap().ok);
    }

    #[test]
    fn subdivision_refinement_transitive() {
        let g = three_quarter_black();
        let mut mid = g.clone();
        let i1 = IndexSet::from_mask(0b01).unwrap();
        mid.colors.insert(i1, vec!["u0".to_string(), "u1".to_string()]);
        mid.coloring.insert(i1, vec![0, 1]);
        let mut fine = mid.clone();
        let i2 = IndexSet::from_mask(0b10).unwrap();
        fine.colors.insert(i2, vec!["v0".to_string(), "v1".to_string()]);
        fine.coloring.insert(i2, vec![0, 1]);
        assert!(check_subdivision(&g, &mid).unwrap().ok);
        assert!(check_subdivision(&mid, &fine).unwrap().ok);
        assert!(check_subdivision(&g, &fine).unwrap().ok);
    }
}
