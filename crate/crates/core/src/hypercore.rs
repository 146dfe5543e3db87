//! Core combinatorial data model: labeled colored hypergraphs, colex edge
//! indexing, induced subgraphs, embeddings and canonical forms.
//!
//! Vertices are `1..=n`. Every k-subset of the vertex set is an edge and
//! carries exactly one color (total colorings). Edges are indexed by their
//! colexicographic rank, so extending the vertex set never changes the rank
//! of an existing edge.

use crate::error::{Error, Result};

/// Default cap for exhaustive canonicalization.
pub const DEFAULT_CANONICAL_CAP: usize = 8;

/// Binomial coefficient C(n, k) in u64 (desk scale; no overflow checks
/// needed for n <= 60).
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

fn validate_subset(subset: &[usize]) -> Result<()> {
    if subset.is_empty() {
        return Err(Error::input("edge subset is empty"));
    }
    for w in subset.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::input(format!(
                "edge subset {subset:?} is not strictly increasing"
            )));
        }
    }
    if subset[0] < 1 {
        return Err(Error::input(format!(
            "edge subset {subset:?} has a vertex below 1"
        )));
    }
    Ok(())
}

/// Colexicographic rank of a sorted k-subset of the positive integers.
///
/// rank{a_1 < ... < a_k} = sum_i C(a_i - 1, i).
pub fn rank_edge(subset: &[usize]) -> Result<usize> {
    validate_subset(subset)?;
    let mut r = 0u64;
    for (i, &a) in subset.iter().enumerate() {
        r += binomial(a - 1, i + 1);
    }
    Ok(r as usize)
}

/// Inverse of [`rank_edge`]: the sorted k-subset with the given colex rank.
pub fn unrank_edge(rank: usize, k: usize) -> Vec<usize> {
    let mut subset = vec![0usize; k];
    let mut rem = rank as u64;
    for i in (1..=k).rev() {
        // largest a with C(a-1, i) <= rem
        let mut a = i;
        while binomial(a, i) <= rem {
            a += 1;
        }
        subset[i - 1] = a;
        rem -= binomial(a - 1, i);
    }
    subset
}

/// An ordered set of distinct color labels. The order is fixed at
/// construction; colors are compared by label, never by position symmetry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet {
    labels: Vec<String>,
}

impl ColorSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::input("color set must contain at least one color"));
        }
        if labels.len() > 31 {
            return Err(Error::capability("color sets larger than 31 are not supported"));
        }
        for (i, a) in labels.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::input("color label must be nonempty"));
            }
            if labels[..i].contains(a) {
                return Err(Error::input(format!("duplicate color label \"{a}\"")));
            }
        }
        Ok(ColorSet { labels })
    }

    pub fn from_strs(labels: &[&str]) -> Self {
        ColorSet::new(labels.iter().map(|s| s.to_string()).collect()).expect("valid labels")
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

    pub fn label(&self, idx: u32) -> &str {
        &self.labels[idx as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }
}

/// A nonempty subset of a color set, as a bitmask over color indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorMask(u32);

impl ColorMask {
    pub fn new(mask: u32) -> Result<Self> {
        if mask == 0 {
            return Err(Error::input("edge choice set must be nonempty"));
        }
        Ok(ColorMask(mask))
    }

    pub fn full(c: usize) -> Self {
        ColorMask((1u32 << c) - 1)
    }

    pub fn singleton(idx: u32) -> Self {
        ColorMask(1 << idx)
    }

    pub fn from_indices(indices: &[u32]) -> Result<Self> {
        let mut m = 0;
        for &i in indices {
            m |= 1u32 << i;
        }
        ColorMask::new(m)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, idx: u32) -> bool {
        self.0 >> idx & 1 == 1
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Color indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        (0..32).filter(move |&i| self.0 >> i & 1 == 1)
    }
}

/// A k-uniform total coloring of all k-subsets of `1..=n`.
///
/// `edge_colors[r]` is the color index of the edge with colex rank `r`.
/// When `n < k` there are no edges and the color word is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredHypergraph {
    k: usize,
    n: usize,
    colors: ColorSet,
    edge_colors: Vec<u32>,
}

impl ColoredHypergraph {
    pub fn new(k: usize, n: usize, colors: ColorSet, edge_colors: Vec<u32>) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("uniformity k must be at least 1"));
        }
        let m = binomial(n, k) as usize;
        if edge_colors.len() != m {
            return Err(Error::input(format!(
                "expected {m} edge colors for n={n}, k={k}, got {}",
                edge_colors.len()
            )));
        }
        for (r, &c) in edge_colors.iter().enumerate() {
            if c as usize >= colors.len() {
                return Err(Error::input(format!(
                    "edge {:?} has color index {c} outside the color set",
                    unrank_edge(r, k)
                )));
            }
        }
        Ok(ColoredHypergraph { k, n, colors, edge_colors })
    }

    /// Monochromatic hypergraph with every edge in color `c`.
    pub fn constant(k: usize, n: usize, colors: ColorSet, c: u32) -> Result<Self> {
        let m = binomial(n, k) as usize;
        ColoredHypergraph::new(k, n, colors, vec![c; m])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> &ColorSet {
        &self.colors
    }

    pub fn edge_count(&self) -> usize {
        self.edge_colors.len()
    }

    pub fn color_word(&self) -> &[u32] {
        &self.edge_colors
    }

    pub fn color_at_rank(&self, rank: usize) -> u32 {
        self.edge_colors[rank]
    }

    /// Color of the edge given by a sorted k-subset of `1..=n`.
    pub fn color_of(&self, subset: &[usize]) -> Result<u32> {
        if subset.len() != self.k {
            return Err(Error::input(format!(
                "edge {subset:?} has size {}, expected {}",
                subset.len(),
                self.k
            )));
        }
        validate_subset(subset)?;
        if subset[subset.len() - 1] > self.n {
            return Err(Error::input(format!(
                "edge {subset:?} has a vertex above n={}",
                self.n
            )));
        }
        Ok(self.edge_colors[rank_edge(subset)?])
    }

    /// Induced subgraph on `verts`, relabeled 1..|verts| order-preservingly.
    pub fn induced_subgraph(&self, verts: &[usize]) -> Result<ColoredHypergraph> {
        let mut vs = verts.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() != verts.len() {
            return Err(Error::input(format!("vertex subset {verts:?} has duplicates")));
        }
        if let Some(&v) = vs.iter().find(|&&v| v < 1 || v > self.n) {
            return Err(Error::input(format!(
                "vertex {v} outside the host vertex set 1..={}",
                self.n
            )));
        }
        let nn = vs.len();
        let m = binomial(nn, self.k) as usize;
        let mut edge_colors = Vec::with_capacity(m);
        let mut scratch = vec![0usize; self.k];
        for r in 0..m {
            let e = unrank_edge(r, self.k);
            for (i, &v) in e.iter().enumerate() {
                scratch[i] = vs[v - 1];
            }
            edge_colors.push(self.edge_colors[rank_edge(&scratch)?]);
        }
        ColoredHypergraph::new(self.k, nn, self.colors.clone(), edge_colors)
    }

    /// Relabel by a permutation of `1..=n`: result(e) = self(perm(e)).
    /// `perm[i-1]` is the image of new label i in the old labeling.
    pub fn relabeled(&self, perm: &[usize]) -> Result<ColoredHypergraph> {
        if perm.len() != self.n {
            return Err(Error::input("permutation length must equal n"));
        }
        let m = self.edge_colors.len();
        let mut edge_colors = vec![0u32; m];
        let mut scratch = vec![0usize; self.k];
        for (r, slot) in edge_colors.iter_mut().enumerate() {
            let e = unrank_edge(r, self.k);
            for (i, &v) in e.iter().enumerate() {
                scratch[i] = perm[v - 1];
            }
            scratch.sort_unstable();
            *slot = self.edge_colors[rank_edge(&scratch)?];
        }
        ColoredHypergraph::new(self.k, self.n, self.colors.clone(), edge_colors)
    }

    /// Minimum color word over all vertex relabelings. Two hypergraphs have
    /// equal canonical forms iff one is a relabeling of the other.
    pub fn canonical_form(&self) -> Result<ColoredHypergraph> {
        self.canonical_form_capped(DEFAULT_CANONICAL_CAP)
    }

    pub fn canonical_form_capped(&self, cap: usize) -> Result<ColoredHypergraph> {
        if self.n > cap {
            return Err(Error::capability(format!(
                "canonicalization supports at most {cap} vertices, got {}",
                self.n
            )));
        }
        let mut best: Option<Vec<u32>> = None;
        let mut perm: Vec<usize> = (1..=self.n).collect();
        loop {
            let word = self.relabeled(&perm)?.edge_colors;
            if best.as_ref().is_none_or(|b| word < *b) {
                best = Some(word);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        ColoredHypergraph::new(
            self.k,
            self.n,
            self.colors.clone(),
            best.unwrap_or_default(),
        )
    }
}

/// Assignment of a nonempty set of candidate colors to every k-subset of
/// `1..=n` (the choice object that extremal search maximizes over).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceHypergraph {
    k: usize,
    n: usize,
    colors: ColorSet,
    edge_choices: Vec<ColorMask>,
}

impl ChoiceHypergraph {
    pub fn new(k: usize, n: usize, colors: ColorSet, edge_choices: Vec<ColorMask>) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("uniformity k must be at least 1"));
        }
        let m = binomial(n, k) as usize;
        if edge_choices.len() != m {
            return Err(Error::input(format!(
                "expected {m} edge choice sets for n={n}, k={k}, got {}",
                edge_choices.len()
            )));
        }
        let full = ColorMask::full(colors.len()).bits();
        for (r, &ch) in edge_choices.iter().enumerate() {
            if ch.bits() & !full != 0 {
                return Err(Error::input(format!(
                    "edge {:?} has choice colors outside the color set",
                    unrank_edge(r, k)
                )));
            }
        }
        Ok(ChoiceHypergraph { k, n, colors, edge_choices })
    }

    /// Every edge gets the full color set.
    pub fn unconstrained(k: usize, n: usize, colors: ColorSet) -> Result<Self> {
        let m = binomial(n, k) as usize;
        let full = ColorMask::full(colors.len());
        ChoiceHypergraph::new(k, n, colors, vec![full; m])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> &ColorSet {
        &self.colors
    }

    pub fn edge_count(&self) -> usize {
        self.edge_choices.len()
    }

    pub fn choices(&self) -> &[ColorMask] {
        &self.edge_choices
    }

    pub fn choice_at_rank(&self, rank: usize) -> ColorMask {
        self.edge_choices[rank]
    }

    pub fn choice_of(&self, subset: &[usize]) -> Result<ColorMask> {
        if subset.len() != self.k {
            return Err(Error::input(format!(
                "edge {subset:?} has size {}, expected {}",
                subset.len(),
                self.k
            )));
        }
        Ok(self.edge_choices[rank_edge(subset)?])
    }
}

/// Injective map from pattern vertices `1..=m` into host vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    images: Vec<usize>,
}

impl Embedding {
    pub fn new(images: Vec<usize>) -> Self {
        Embedding { images }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, pattern_vertex: usize) -> usize {
        self.images[pattern_vertex - 1]
    }
}

/// Lexicographically least injective φ: V(F) -> V(H) with
/// H(φ(e)) = F(e) for every edge e of F, if one exists.
pub fn find_embedding(h: &ColoredHypergraph, f: &ColoredHypergraph) -> Result<Option<Embedding>> {
    if h.k != f.k {
        return Err(Error::input(format!(
            "uniformity mismatch: host k={}, pattern k={}",
            h.k, f.k
        )));
    }
    if h.colors != f.colors {
        return Err(Error::input("color set mismatch between host and pattern"));
    }
    let found = crate::embed::backtrack_embedding(f.n, h.n, &mut |phi, placed| {
        crate::embed::pattern_edges_ok(f, phi, placed, &mut |pr, host_edge| {
            f.edge_colors[pr] == h.edge_colors[rank_edge(host_edge).expect("sorted edge")]
        })
    });
    Ok(found.map(Embedding::new))
}

/// Advance `perm` to the next lexicographic permutation; false at the last.
pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}
