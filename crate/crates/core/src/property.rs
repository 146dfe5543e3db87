//! Hereditary and monotone properties: forbidden families, membership and
//! goodness tests, black-induced containment, the BI-to-BW family expansion,
//! and exact chromatic numbers for the Erdős–Stone reference value.

use crate::embed;
use crate::error::{Error, Result};
use crate::hypercore::{
    ChoiceHypergraph, ColorSet, ColoredHypergraph, Embedding, DEFAULT_CANONICAL_CAP,
};

/// Default cap on the number of selections the brute-force goodness oracle
/// will enumerate.
pub const DEFAULT_SELECTION_CAP: u64 = 1 << 24;

/// The two-color palette of monotone pattern graphs.
pub fn bi_palette() -> ColorSet {
    ColorSet::from_strs(&["black", "invisible"])
}

/// `black, white_1, ..., white_ell`: the target palette of the BI expansion.
pub fn bw_palette(ell: usize) -> Result<ColorSet> {
    if ell == 0 {
        return Err(Error::input("ell must be at least 1"));
    }
    let mut labels = vec!["black".to_string()];
    for i in 1..=ell {
        labels.push(format!("white_{i}"));
    }
    ColorSet::new(labels)
}

/// A finite list of forbidden colored hypergraphs over a shared palette,
/// deduplicated by canonical form at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenFamily {
    k: usize,
    colors: ColorSet,
    members: Vec<ColoredHypergraph>,
}

impl ForbiddenFamily {
    pub fn new(k: usize, colors: ColorSet, members: Vec<ColoredHypergraph>) -> Result<Self> {
        let mut dedup: Vec<ColoredHypergraph> = Vec::new();
        let mut canons: Vec<Option<ColoredHypergraph>> = Vec::new();
        for (i, m) in members.into_iter().enumerate() {
            if m.k() != k {
                return Err(Error::input(format!(
                    "family member {i} has k={}, family has k={k}",
                    m.k()
                )));
            }
            if m.colors() != &colors {
                return Err(Error::input(format!(
                    "family member {i} uses a different color set than the family"
                )));
            }
            let canon = if m.n() <= DEFAULT_CANONICAL_CAP {
                Some(m.canonical_form()?)
            } else {
                None
            };
            let dup = match &canon {
                Some(c) => canons.iter().any(|k| k.as_ref() == Some(c)),
                None => dedup.contains(&m),
            };
            if !dup {
                dedup.push(m);
                canons.push(canon);
            }
        }
        Ok(ForbiddenFamily { k, colors, members: dedup })
    }

    pub fn empty(k: usize, colors: ColorSet) -> Self {
        ForbiddenFamily { k, colors, members: Vec::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &ColorSet {
        &self.colors
    }

    pub fn members(&self) -> &[ColoredHypergraph] {
        &self.members
    }

    fn check_host(&self, k: usize, colors: &ColorSet) -> Result<()> {
        if k != self.k {
            return Err(Error::input(format!(
                "uniformity mismatch: host k={k}, family k={}",
                self.k
            )));
        }
        if colors != &self.colors {
            return Err(Error::input("color set mismatch between host and family"));
        }
        Ok(())
    }
}

/// A finite list of forbidden BI-patterns together with the number of white
/// colors in the target BW palette.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BIFamily {
    k: usize,
    ell: usize,
    members: Vec<ColoredHypergraph>,
}

impl BIFamily {
    pub fn new(k: usize, ell: usize, members: Vec<ColoredHypergraph>) -> Result<Self> {
        if ell == 0 {
            return Err(Error::input("ell must be at least 1"));
        }
        let bi = bi_palette();
        let fam = ForbiddenFamily::new(k, bi, members)?;
        Ok(BIFamily { k, ell, members: fam.members })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn members(&self) -> &[ColoredHypergraph] {
        &self.members
    }
}

/// Does H avoid every member of the family as a (color-exact) subgraph?
pub fn member(h: &ColoredHypergraph, fam: &ForbiddenFamily) -> Result<bool> {
    fam.check_host(h.k(), h.colors())?;
    for f in &fam.members {
        if crate::hypercore::find_embedding(h, f)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Witness that a choice hypergraph is not good: the forbidden member and
/// the choice-respecting embedding realizing it.
#[derive(Debug, Clone)]
pub struct GoodWitness {
    pub member_index: usize,
    pub embedding: Embedding,
}

/// Goodness by the choice-embedding characterization: H is good iff no
/// member F admits an injective φ with F(e) ∈ H(φ(e)) for all edges e of F.
/// On failure the first witness (member order, then lexicographically least
/// φ) is returned.
pub fn is_good(h: &ChoiceHypergraph, fam: &ForbiddenFamily) -> Result<(bool, Option<GoodWitness>)> {
    fam.check_host(h.k(), h.colors())?;
    for (idx, f) in fam.members.iter().enumerate() {
        let hit = embed::backtrack_embedding(f.n(), h.n(), &mut |phi, placed| {
            embed::pattern_edges_ok(f, phi, placed, &mut |pr, host_edge| {
                let want = f.color_at_rank(pr);
                h.choice_of(host_edge).expect("sorted host edge").contains(want)
            })
        });
        if let Some(images) = hit {
            return Ok((
                false,
                Some(GoodWitness { member_index: idx, embedding: Embedding::new(images) }),
            ));
        }
    }
    Ok((true, None))
}

/// Definitional goodness oracle: enumerate every selection (one color per
/// edge from its choice set) and test membership. Exponential; capped.
pub fn member_all_selections_oracle(
    h: &ChoiceHypergraph,
    fam: &ForbiddenFamily,
    cap: u64,
) -> Result<bool> {
    fam.check_host(h.k(), h.colors())?;
    let mut total: u64 = 1;
    for ch in h.choices() {
        total = total.saturating_mul(ch.len() as u64);
        if total > cap {
            return Err(Error::capability(format!(
                "selection count exceeds the oracle cap of {cap}"
            )));
        }
    }
    let per_edge: Vec<Vec<u32>> = h.choices().iter().map(|c| c.iter().collect()).collect();
    let m = per_edge.len();
    let mut odometer = vec![0usize; m];
    loop {
        let word: Vec<u32> = (0..m).map(|r| per_edge[r][odometer[r]]).collect();
        let sel = ColoredHypergraph::new(h.k(), h.n(), h.colors().clone(), word)?;
        if !member(&sel, fam)? {
            return Ok(false);
        }
        // advance mixed-radix odometer
        let mut pos = 0;
        loop {
            if pos == m {
                return Ok(true);
            }
            odometer[pos] += 1;
            if odometer[pos] < per_edge[pos].len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}

/// Lexicographically least injective φ such that every black edge of the BI
/// pattern maps onto a black edge of the BW host; invisible pattern edges
/// impose no constraint.
pub fn contains_black_induced(
    h: &ColoredHypergraph,
    f: &ColoredHypergraph,
) -> Result<Option<Embedding>> {
    if h.k() != f.k() {
        return Err(Error::input(format!(
            "uniformity mismatch: host k={}, pattern k={}",
            h.k(),
            f.k()
        )));
    }
    if f.colors() != &bi_palette() {
        return Err(Error::input("pattern must use the {black, invisible} palette"));
    }
    let host_black = h
        .colors()
        .index_of("black")
        .ok_or_else(|| Error::input("host palette has no \"black\" color"))?;
    if h.colors().index_of("invisible").is_some() {
        return Err(Error::input("host palette must not contain \"invisible\""));
    }
    let pat_black = f.colors().index_of("black").expect("BI palette");
    let found = embed::backtrack_embedding(f.n(), h.n(), &mut |phi, placed| {
        embed::pattern_edges_ok(f, phi, placed, &mut |pr, host_edge| {
            f.color_at_rank(pr) != pat_black
                || h.color_of(host_edge).expect("sorted host edge") == host_black
        })
    });
    Ok(found.map(Embedding::new))
}

/// Expand a BI family to the BW family ⟨F⟩ with Forb_bi(F) = Forb(⟨F⟩):
/// every way of recoloring each invisible edge with a non-invisible color.
pub fn expand_bi_family(fam: &BIFamily) -> Result<ForbiddenFamily> {
    let bw = bw_palette(fam.ell)?;
    let c = bw.len() as u32; // ell + 1
    let bi = bi_palette();
    let pat_black = bi.index_of("black").unwrap();
    let mut out = Vec::new();
    for f in &fam.members {
        let invisible_ranks: Vec<usize> = (0..f.edge_count())
            .filter(|&r| f.color_at_rank(r) != pat_black)
            .collect();
        let mut word: Vec<u32> = (0..f.edge_count()).map(|_| 0).collect();
        let mut odometer = vec![0u32; invisible_ranks.len()];
        loop {
            for slot in word.iter_mut() {
                *slot = 0; // black
            }
            for (i, &r) in invisible_ranks.iter().enumerate() {
                word[r] = odometer[i];
            }
            out.push(ColoredHypergraph::new(f.k(), f.n(), bw.clone(), word.clone())?);
            let mut pos = 0;
            loop {
                if pos == odometer.len() {
                    break;
                }
                odometer[pos] += 1;
                if odometer[pos] < c {
                    break;
                }
                odometer[pos] = 0;
                pos += 1;
            }
            if odometer.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    ForbiddenFamily::new(fam.k, bw, out)
}

/// Exact chromatic number of the graph formed by the black edges of a BI
/// pattern (k=2 only, at most 10 vertices).
pub fn chromatic_number(f: &ColoredHypergraph) -> Result<u32> {
    if f.k() != 2 {
        return Err(Error::capability("chromatic_number supports k=2 only"));
    }
    if f.colors() != &bi_palette() {
        return Err(Error::input("pattern must use the {black, invisible} palette"));
    }
    if f.n() > 10 {
        return Err(Error::capability("chromatic_number supports at most 10 vertices"));
    }
    let n = f.n();
    if n == 0 {
        return Ok(0);
    }
    let black = f.colors().index_of("black").unwrap();
    let mut adj = vec![vec![false; n + 1]; n + 1];
    let mut has_edge = false;
    for u in 1..=n {
        for v in (u + 1)..=n {
            if f.color_of(&[u, v])? == black {
                adj[u][v] = true;
                adj[v][u] = true;
                has_edge = true;
            }
        }
    }
    if !has_edge {
        return Ok(1);
    }
    for c in 2..=n as u32 {
        if colorable(&adj, n, c) {
            return Ok(c);
        }
    }
    unreachable!("n colors always suffice")
}

fn colorable(adj: &[Vec<bool>], n: usize, c: u32) -> bool {
    fn rec(adj: &[Vec<bool>], n: usize, c: u32, coloring: &mut Vec<u32>) -> bool {
        let v = coloring.len() + 1;
        if v > n {
            return true;
        }
        // only colors up to one past the current maximum break color symmetry
        let used_max = coloring.iter().copied().max().map_or(0, |m| m + 1);
        for col in 0..c.min(used_max + 1) {
            if (1..v).any(|u| adj[u][v] && coloring[u - 1] == col) {
                continue;
            }
            coloring.push(col);
            if rec(adj, n, c, coloring) {
                return true;
            }
            coloring.pop();
        }
        false
    }
    rec(adj, n, c, &mut Vec::with_capacity(n))
}

/// Convenience constructor: the all-black k=2 clique on m vertices over the
/// BI palette (K_m as a monotone pattern).
pub fn black_clique_bi(m: usize) -> ColoredHypergraph {
    ColoredHypergraph::constant(2, m, bi_palette(), 0).expect("valid clique")
}

/// All-black k-uniform clique on m vertices over an arbitrary palette whose
/// first color plays the role of black.
pub fn black_clique(k: usize, m: usize, colors: ColorSet) -> ColoredHypergraph {
    ColoredHypergraph::constant(k, m, colors, 0).expect("valid clique")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::{binomial, rank_edge, ColorMask};

    fn bw2() -> ColorSet {
        ColorSet::from_strs(&["black", "white"])
    }

    fn triangle_family() -> ForbiddenFamily {
        let f = ColoredHypergraph::constant(2, 3, bw2(), 0).unwrap();
        ForbiddenFamily::new(2, bw2(), vec![f]).unwrap()
    }

    #[test]
    fn member_examples() {
        let fam = ForbiddenFamily::empty(2, bw2());
        let h = ColoredHypergraph::constant(2, 3, bw2(), 0).unwrap();
        assert!(member(&h, &fam).unwrap());
        let fam = triangle_family();
        assert!(!member(&h, &fam).unwrap());
        // two black edges on 3 vertices: no black triangle possible
        let word = vec![0, 0, 1];
        let h2 = ColoredHypergraph::new(2, 3, bw2(), word).unwrap();
        assert!(member(&h2, &fam).unwrap());
    }

    #[test]
    fn member_rejects_mismatch() {
        let fam = triangle_family();
        let h3 = ColoredHypergraph::constant(3, 4, bw2(), 0).unwrap();
        assert!(member(&h3, &fam).is_err());
        let other = ColoredHypergraph::constant(2, 3, ColorSet::from_strs(&["red", "blue"]), 0).unwrap();
        assert!(member(&other, &fam).is_err());
    }

    #[test]
    fn is_good_examples() {
        let fam = triangle_family();
        let both = ColorMask::full(2);
        let h = ChoiceHypergraph::new(2, 3, bw2(), vec![both; 3]).unwrap();
        let (good, wit) = is_good(&h, &fam).unwrap();
        assert!(!good);
        let wit = wit.unwrap();
        assert_eq!(wit.member_index, 0);
        assert_eq!(wit.embedding.images(), &[1, 2, 3]);

        // choices {b,w},{b,w},{w}: all 4 selections with both-colored edges ok
        let w = ColorMask::singleton(1);
        let h2 = ChoiceHypergraph::new(2, 3, bw2(), vec![both, both, w]).unwrap();
        assert!(is_good(&h2, &fam).unwrap().0);

        let empty = ForbiddenFamily::empty(2, bw2());
        assert!(is_good(&h, &empty).unwrap().0);
    }

    #[test]
    fn is_good_matches_selection_oracle() {
        // every choice hypergraph on 3 vertices over {b,w}, vs the triangle
        // family and vs each single-edge family
        let fam_t = triangle_family();
        let b_edge = ColoredHypergraph::constant(2, 2, bw2(), 0).unwrap();
        let fam_e = ForbiddenFamily::new(2, bw2(), vec![b_edge]).unwrap();
        let masks = [0b01u32, 0b10, 0b11];
        for a in masks {
            for b in masks {
                for c in masks {
                    let ch = ChoiceHypergraph::new(
                        2,
                        3,
                        bw2(),
                        vec![
                            ColorMask::new(a).unwrap(),
                            ColorMask::new(b).unwrap(),
                            ColorMask::new(c).unwrap(),
                        ],
                    )
                    .unwrap();
                    for fam in [&fam_t, &fam_e] {
                        let fast = is_good(&ch, fam).unwrap().0;
                        let slow = member_all_selections_oracle(&ch, fam, DEFAULT_SELECTION_CAP).unwrap();
                        assert_eq!(fast, slow, "choices {a:b},{b:b},{c:b}");
                    }
                }
            }
        }
    }

    #[test]
    fn selection_oracle_cap() {
        let fam = triangle_family();
        let h = ChoiceHypergraph::unconstrained(2, 3, bw2()).unwrap();
        assert!(matches!(
            member_all_selections_oracle(&h, &fam, 4),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn black_induced_examples() {
        let bw = bw_palette(1).unwrap();
        // H on 4 vertices, black edges forming the 4-cycle 1-2-3-4
        let mut word = vec![1u32; 6];
        for e in [[1usize, 2], [2, 3], [3, 4], [1, 4]] {
            word[rank_edge(&e).unwrap()] = 0;
        }
        let h = ColoredHypergraph::new(2, 4, bw.clone(), word).unwrap();

        let single_black = ColoredHypergraph::constant(2, 2, bi_palette(), 0).unwrap();
        assert!(contains_black_induced(&h, &single_black).unwrap().is_some());

        // black K3 does not sit inside a C4 (triangle-free)
        let k3 = black_clique_bi(3);
        assert!(contains_black_induced(&h, &k3).unwrap().is_none());

        // all-invisible pattern: no constraints, identity embedding
        let inv = ColoredHypergraph::constant(2, 3, bi_palette(), 1).unwrap();
        let phi = contains_black_induced(&h, &inv).unwrap().unwrap();
        assert_eq!(phi.images(), &[1, 2, 3]);
    }

    #[test]
    fn expand_bi_examples() {
        // F on 3 vertices: one black edge, two invisible; ell = 1
        let mut word = vec![1u32; 3];
        word[rank_edge(&[1, 2]).unwrap()] = 0;
        let f = ColoredHypergraph::new(2, 3, bi_palette(), word).unwrap();
        let fam = BIFamily::new(2, 1, vec![f]).unwrap();
        let expanded = expand_bi_family(&fam).unwrap();
        // 2 free edges x 2 colors = 4 recolorings; dedup keeps all 4 distinct?
        // {1,3} and {2,3} are symmetric, so two of the four coincide
        assert_eq!(expanded.members().len(), 3);

        // all-black member expands to itself
        let f = black_clique_bi(3);
        let fam = BIFamily::new(2, 1, vec![f]).unwrap();
        let expanded = expand_bi_family(&fam).unwrap();
        assert_eq!(expanded.members().len(), 1);
        assert!(expanded.members()[0]
            .color_word()
            .iter()
            .all(|&c| c == 0));

        let empty = BIFamily::new(2, 1, vec![]).unwrap();
        assert!(expand_bi_family(&empty).unwrap().members().is_empty());
    }

    #[test]
    fn expand_bi_recoloring_count_before_dedup() {
        // oracle for the 4-recoloring count: enumerate by hand
        let mut word = vec![1u32; 3];
        word[rank_edge(&[1, 2]).unwrap()] = 0;
        let f = ColoredHypergraph::new(2, 3, bi_palette(), word).unwrap();
        let bw = bw_palette(1).unwrap();
        let mut raw = Vec::new();
        for c1 in 0..2u32 {
            for c2 in 0..2u32 {
                let mut w = vec![0u32; 3];
                w[rank_edge(&[1, 3]).unwrap()] = c1;
                w[rank_edge(&[2, 3]).unwrap()] = c2;
                raw.push(ColoredHypergraph::new(2, 3, bw.clone(), w).unwrap());
            }
        }
        assert_eq!(raw.len(), 4);
        let fam = BIFamily::new(2, 1, vec![f]).unwrap();
        let expanded = expand_bi_family(&fam).unwrap();
        // every raw recoloring is canonically equal to some expanded member
        for g in &raw {
            let gc = g.canonical_form().unwrap();
            assert!(expanded
                .members()
                .iter()
                .any(|m| m.canonical_form().unwrap() == gc));
        }
    }

    #[test]
    fn forb_bi_equals_forb_of_expansion() {
        // exhaustive over BI members on <= 3 vertices and BW hosts on <= 4
        // vertices, ell in {1, 2}
        for ell in 1..=2usize {
            let bw = bw_palette(ell).unwrap();
            let cbw = bw.len() as u32;
            let mut bi_members = Vec::new();
            for bits in 0..8u32 {
                let word = vec![bits & 1, bits >> 1 & 1, bits >> 2 & 1];
                bi_members.push(ColoredHypergraph::new(2, 3, bi_palette(), word).unwrap());
            }
            for f in bi_members {
                let fam = BIFamily::new(2, ell, vec![f.clone()]).unwrap();
                let expanded = expand_bi_family(&fam).unwrap();
                for n in 2..=4usize {
                    let m = binomial(n, 2) as usize;
                    let total = (cbw as u64).pow(m as u32);
                    for code in 0..total {
                        let mut word = Vec::with_capacity(m);
                        let mut x = code;
                        for _ in 0..m {
                            word.push((x % cbw as u64) as u32);
                            x /= cbw as u64;
                        }
                        let h = ColoredHypergraph::new(2, n, bw.clone(), word).unwrap();
                        let via_bi = contains_black_induced(&h, &f).unwrap().is_none();
                        let via_forb = member(&h, &expanded).unwrap();
                        assert_eq!(via_bi, via_forb, "ell={ell} n={n} code={code}");
                    }
                }
            }
        }
    }

    #[test]
    fn heredity_of_forb() {
        let fam = triangle_family();
        let mut state = 0x51ab_cdefu64;
        for n in 3..=5usize {
            for _ in 0..20 {
                let m = binomial(n, 2) as usize;
                let word: Vec<u32> = (0..m)
                    .map(|_| {
                        state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                        (state >> 33 & 1) as u32
                    })
                    .collect();
                let h = ColoredHypergraph::new(2, n, bw2(), word).unwrap();
                if !member(&h, &fam).unwrap() {
                    continue;
                }
                // every induced subgraph of a member is a member
                for drop in 1..=n {
                    let verts: Vec<usize> = (1..=n).filter(|&v| v != drop).collect();
                    let sub = h.induced_subgraph(&verts).unwrap();
                    assert!(member(&sub, &fam).unwrap());
                }
            }
        }
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&black_clique_bi(3)).unwrap(), 3);
        assert_eq!(chromatic_number(&black_clique_bi(4)).unwrap(), 4);
        // C5: odd cycle needs 3 colors
        let mut word = vec![1u32; 10];
        for e in [[1usize, 2], [2, 3], [3, 4], [4, 5], [1, 5]] {
            word[rank_edge(&e).unwrap()] = 0;
        }
        let c5 = ColoredHypergraph::new(2, 5, bi_palette(), word).unwrap();
        assert_eq!(chromatic_number(&c5).unwrap(), 3);
        // exhaustive 2-coloring impossibility oracle for C5
        assert!(!two_colorable_oracle(&c5));
    }

    fn two_colorable_oracle(f: &ColoredHypergraph) -> bool {
        let n = f.n();
        let black = f.colors().index_of("black").unwrap();
        'outer: for bits in 0..(1u32 << n) {
            for u in 1..=n {
                for v in (u + 1)..=n {
                    if f.color_of(&[u, v]).unwrap() == black
                        && (bits >> (u - 1) & 1) == (bits >> (v - 1) & 1)
                    {
                        continue 'outer;
                    }
                }
            }
            return true;
        }
        false
    }

    #[test]
    fn chromatic_matches_exhaustive_search() {
        // all graphs on <= 5 vertices against a first-fit exhaustive oracle
        for n in 1..=5usize {
            let m = binomial(n, 2) as usize;
            for bits in 0..(1u64 << m) {
                let word: Vec<u32> = (0..m).map(|r| 1 - (bits >> r & 1) as u32).collect();
                let f = ColoredHypergraph::new(2, n, bi_palette(), word).unwrap();
                assert_eq!(chromatic_number(&f).unwrap(), chromatic_oracle(&f), "n={n} bits={bits:b}");
            }
        }
    }

    fn chromatic_oracle(f: &ColoredHypergraph) -> u32 {
        let n = f.n();
        let black = f.colors().index_of("black").unwrap();
        'colors: for c in 1..=n as u32 {
            let total = (c as u64).pow(n as u32);
            'assign: for code in 0..total {
                let mut col = Vec::with_capacity(n);
                let mut x = code;
                for _ in 0..n {
                    col.push((x % c as u64) as u32);
                    x /= c as u64;
                }
                for u in 1..=n {
                    for v in (u + 1)..=n {
                        if f.color_of(&[u, v]).unwrap() == black && col[u - 1] == col[v - 1] {
                            continue 'assign;
                        }
                    }
                }
                return c;
            }
            continue 'colors;
        }
        n as u32
    }

    #[test]
    fn chromatic_rejects_k3_uniform() {
        let f = ColoredHypergraph::constant(3, 4, bi_palette(), 0).unwrap();
        assert!(matches!(chromatic_number(&f), Err(Error::Capability(_))));
    }

    #[test]
    fn family_dedup_by_canonical_form() {
        let c = bw2();
        let g1 = ColoredHypergraph::new(2, 3, c.clone(), vec![1, 0, 0]).unwrap();
        let g2 = ColoredHypergraph::new(2, 3, c.clone(), vec![0, 0, 1]).unwrap();
        let fam = ForbiddenFamily::new(2, c, vec![g1, g2]).unwrap();
        assert_eq!(fam.members().len(), 1);
    }
}
