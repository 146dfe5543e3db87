//! Exact computation of the extremal value ex(n, P) by branch-and-bound
//! over choice hypergraphs, the specialized monotone (max-black) solver,
//! and the Erdős–Stone reference value.
//!
//! The objective is carried as the exact integer product of edge choice-set
//! sizes; floating logs are used only for cheap bound screening, with an
//! exact big-integer comparison on anything near the boundary.

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::One;

use crate::budget::{BudgetMeter, SearchBudget};
use crate::embed::{anchored_black_embedding, anchored_total_embedding, BlackPattern};
use crate::error::{Error, Result};
use crate::hypercore::{
    binomial, next_permutation, rank_edge, unrank_edge, ChoiceHypergraph, ColorMask,
    ColoredHypergraph,
};
use crate::numeric::{exact_power_of_two, log2_biguint};
use crate::property::{bw_palette, BIFamily, ForbiddenFamily};

/// Above this many permutations per completed level, symmetry pruning falls
/// back to transpositions only.
const PERM_CAP: usize = 5040;

/// Result of an extremal search. `exact == false` means the budget ran out
/// and `best_product` is only a lower bound on the true maximum.
#[derive(Debug, Clone)]
pub struct ExtremalResult {
    pub n: usize,
    pub k: usize,
    pub binom: u64,
    /// max over P-good H of the product of |H(e)|.
    pub best_product: BigUint,
    pub witness: ChoiceHypergraph,
    pub exact: bool,
    pub nodes: u64,
}

impl ExtremalResult {
    /// ex(n, P) = log2(best_product) / C(n, k), as a decimal annotation.
    pub fn ex_decimal(&self) -> f64 {
        log2_biguint(&self.best_product) / self.binom as f64
    }

    /// When the product is a power of two, ex(n, P) is the exact fraction
    /// (numerator, denominator) = (log2 product, C(n, k)).
    pub fn ex_fraction(&self) -> Option<(u64, u64)> {
        exact_power_of_two(&self.best_product).map(|e| (e, self.binom))
    }
}

/// Branch order over nonempty color subsets: decreasing cardinality, then
/// lexicographic on the sorted index sequence. The key table maps a mask to
/// its ordinal in this order.
struct BranchOrder {
    masks: Vec<ColorMask>,
    key: Vec<u32>,
}

fn branch_order(c: usize) -> BranchOrder {
    let mut with_seq: Vec<(usize, Vec<u32>, u32)> = (1u32..1 << c)
        .map(|m| {
            let seq: Vec<u32> = (0..c as u32).filter(|&i| m >> i & 1 == 1).collect();
            (seq.len(), seq, m)
        })
        .collect();
    with_seq.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let mut key = vec![0u32; 1 << c];
    let mut masks = Vec::with_capacity(with_seq.len());
    for (ord, (_, _, m)) in with_seq.iter().enumerate() {
        key[*m as usize] = ord as u32;
        masks.push(ColorMask::new(*m).expect("nonempty"));
    }
    BranchOrder { masks, key }
}

/// Edge-rank relabeling maps for vertex permutations of `1..=m`; the
/// identity is excluded. Used to cut branches whose prefix is not minimal
/// within its relabeling orbit.
fn perm_edge_maps(m: usize, k: usize) -> Vec<Vec<usize>> {
    let edge_count = binomial(m, k) as usize;
    let factorial: usize = (1..=m).product();
    let mut maps = Vec::new();
    let mut emit = |perm: &[usize]| {
        let mut map = vec![0usize; edge_count];
        let mut scratch = vec![0usize; k];
        for (r, slot) in map.iter_mut().enumerate() {
            let e = unrank_edge(r, k);
            for (i, &v) in e.iter().enumerate() {
                scratch[i] = perm[v - 1];
            }
            scratch.sort_unstable();
            *slot = rank_edge(&scratch).expect("sorted edge");
        }
        maps.push(map);
    };
    if factorial <= PERM_CAP {
        let mut perm: Vec<usize> = (1..=m).collect();
        while next_permutation(&mut perm) {
            emit(&perm);
        }
    } else {
        for i in 1..=m {
            for j in (i + 1)..=m {
                let mut perm: Vec<usize> = (1..=m).collect();
                perm.swap(i - 1, j - 1);
                emit(&perm);
            }
        }
    }
    maps
}

/// For each edge rank `t`, the vertex count `m` whose edge set becomes
/// complete at `t` (t + 1 == C(m, k)), if any, with k <= m < n.
fn completion_points(n: usize, k: usize, m_edges: usize) -> Vec<Option<usize>> {
    let mut out = vec![None; m_edges];
    for m in k..n {
        let idx = binomial(m, k) as usize;
        if idx >= 1 && idx <= m_edges {
            out[idx - 1] = Some(m);
        }
    }
    out
}

struct ExSearch<'a> {
    fam: &'a ForbiddenFamily,
    m_edges: usize,
    c: usize,
    order: BranchOrder,
    completion: Vec<Option<usize>>,
    sym: Vec<Vec<Vec<usize>>>, // indexed by m; empty when unused
    use_sym: bool,
    assignment: Vec<ColorMask>,
    counts: Vec<u64>, // per choice-set cardinality
    sumlog: f64,
    log_full: f64,
    best: Option<(BigUint, f64, Vec<ColorMask>)>,
    meter: BudgetMeter,
}

impl ExSearch<'_> {
    fn prefix_product(&self) -> BigUint {
        let mut p = BigUint::one();
        for (card, &cnt) in self.counts.iter().enumerate().skip(2) {
            if cnt > 0 {
                p *= BigUint::from(card).pow(cnt as u32);
            }
        }
        p
    }

    fn feasible_after(&self, t: usize) -> bool {
        let anchor = unrank_edge(t, self.fam.k());
        for f in self.fam.members() {
            let hit = anchored_total_embedding(f, &anchor, &mut |pr, host_edge| {
                let r = rank_edge(host_edge).expect("sorted edge");
                r < self.assignment.len()
                    && self.assignment[r].contains(f.color_at_rank(pr))
            });
            if hit {
                return false;
            }
        }
        true
    }

    fn bound_allows(&self, t: usize) -> bool {
        let Some((best_big, best_log, _)) = &self.best else {
            return true;
        };
        let rem = (self.m_edges - t - 1) as f64;
        let bound_log = self.sumlog + rem * self.log_full;
        if bound_log < best_log - 1e-6 {
            return false;
        }
        if bound_log < best_log + 1e-6 {
            let bound =
                self.prefix_product() * BigUint::from(self.c).pow((self.m_edges - t - 1) as u32);
            return bound > *best_big;
        }
        true
    }

    fn prefix_canonical(&self, m: usize) -> bool {
        let edge_count = binomial(m, self.fam.k()) as usize;
        'perms: for map in &self.sym[m] {
            for r in 0..edge_count {
                let a = self.order.key[self.assignment[r].bits() as usize];
                let b = self.order.key[self.assignment[map[r]].bits() as usize];
                if b < a {
                    return false;
                }
                if b > a {
                    continue 'perms;
                }
            }
        }
        true
    }

    /// Returns false when the budget is exhausted.
    fn dfs(&mut self) -> bool {
        let t = self.assignment.len();
        if t == self.m_edges {
            let product = self.prefix_product();
            let better = match &self.best {
                None => true,
                Some((b, _, _)) => product > *b,
            };
            if better {
                let log = log2_biguint(&product);
                self.best = Some((product, log, self.assignment.clone()));
            }
            return true;
        }
        for mi in 0..self.order.masks.len() {
            if !self.meter.tick() {
                return false;
            }
            let mask = self.order.masks[mi];
            self.assignment.push(mask);
            self.counts[mask.len() as usize] += 1;
            self.sumlog += (mask.len() as f64).log2();
            let viable = self.feasible_after(t)
                && self.bound_allows(t)
                && match (self.use_sym, self.completion[t]) {
                    (true, Some(m)) => self.prefix_canonical(m),
                    _ => true,
                };
            let keep_going = !viable || self.dfs();
            self.sumlog -= (mask.len() as f64).log2();
            self.counts[mask.len() as usize] -= 1;
            self.assignment.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Exact maximum of the choice-set-size product over all P-good choice
/// hypergraphs on `[n]`, with a deterministic witness (first optimum in the
/// branch order: edges by colex rank, subsets by decreasing cardinality then
/// lexicographic order).
pub fn ex_exact(n: usize, fam: &ForbiddenFamily, budget: &SearchBudget) -> Result<ExtremalResult> {
    let k = fam.k();
    if n < k {
        return Err(Error::input(format!("n={n} must be at least k={k}")));
    }
    for (i, f) in fam.members().iter().enumerate() {
        if f.edge_count() == 0 && f.n() <= n {
            return Err(Error::input(format!(
                "family member {i} has no edges and at most n vertices; \
                 no choice hypergraph on [{n}] is good, ex is undefined"
            )));
        }
    }
    let c = fam.colors().len();
    let m_edges = binomial(n, k) as usize;
    let completion = completion_points(n, k, m_edges);
    let mut sym = vec![Vec::new(); n.max(1)];
    if budget.symmetry {
        for m in k..n {
            sym[m] = perm_edge_maps(m, k);
        }
    }
    let mut search = ExSearch {
        fam,
        m_edges,
        c,
        order: branch_order(c),
        completion,
        sym,
        use_sym: budget.symmetry,
        assignment: Vec::with_capacity(m_edges),
        counts: vec![0; c + 1],
        sumlog: 0.0,
        log_full: (c as f64).log2(),
        best: None,
        meter: BudgetMeter::new(budget),
    };
    let finished = search.dfs();
    let nodes = search.meter.nodes;
    match search.best {
        Some((best_product, _, word)) => {
            let witness = ChoiceHypergraph::new(k, n, fam.colors().clone(), word)?;
            Ok(ExtremalResult { n, k, binom: binomial(n, k), best_product, witness, exact: finished, nodes })
        }
        None => {
            if finished {
                Err(Error::input(format!(
                    "no P-good choice hypergraph exists on [{n}] for this family"
                )))
            } else {
                Err(Error::budget(format!(
                    "search budget exhausted after {nodes} nodes before any feasible assignment"
                )))
            }
        }
    }
}

/// Brute-force oracle for [`ex_exact`]: enumerate every choice assignment,
/// test goodness, and keep the exact maximum product. Independent of the
/// branch-and-bound path.
pub fn ex_brute_oracle(n: usize, fam: &ForbiddenFamily, cap: u64) -> Result<BigUint> {
    let k = fam.k();
    if n < k {
        return Err(Error::input(format!("n={n} must be at least k={k}")));
    }
    let c = fam.colors().len();
    let m = binomial(n, k) as usize;
    let subsets: Vec<ColorMask> = (1u32..1 << c).map(|b| ColorMask::new(b).unwrap()).collect();
    let total = (subsets.len() as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
    if total > cap {
        return Err(Error::capability(format!(
            "brute-force space {total} exceeds the cap of {cap}"
        )));
    }
    let mut best: Option<BigUint> = None;
    let mut odometer = vec![0usize; m];
    loop {
        let word: Vec<ColorMask> = odometer.iter().map(|&i| subsets[i]).collect();
        let h = ChoiceHypergraph::new(k, n, fam.colors().clone(), word)?;
        if crate::property::is_good(&h, fam)?.0 {
            let mut p = BigUint::one();
            for ch in h.choices() {
                p *= BigUint::from(ch.len());
            }
            if best.as_ref().is_none_or(|b| p > *b) {
                best = Some(p);
            }
        }
        let mut pos = 0;
        loop {
            if pos == m {
                return best.ok_or_else(|| {
                    Error::input(format!("no P-good choice hypergraph exists on [{n}]"))
                });
            }
            odometer[pos] += 1;
            if odometer[pos] < subsets.len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}

/// Result of the specialized monotone solver.
#[derive(Debug, Clone)]
pub struct MonotoneResult {
    pub n: usize,
    pub k: usize,
    pub binom: u64,
    pub ell: usize,
    /// Maximum number of black edges over BW-graphs in Forb_bi(n, F).
    pub max_black: u64,
    /// (ell+1)^max_black * ell^(C(n,k) - max_black).
    pub best_product: BigUint,
    /// Witness BW coloring (whites materialized as white_1).
    pub bw_witness: ColoredHypergraph,
    /// The corresponding good choice hypergraph: black edges carry the full
    /// BW palette, white edges carry the white colors only.
    pub choice_witness: ChoiceHypergraph,
    pub exact: bool,
    pub nodes: u64,
}

impl MonotoneResult {
    /// ex value by the monotone formula:
    /// log2((ell+1)/ell) * max_black / C(n,k) + log2(ell).
    pub fn ex_decimal(&self) -> f64 {
        let l = self.ell as f64;
        ((l + 1.0) / l).log2() * self.max_black as f64 / self.binom as f64 + l.log2()
    }
}

struct MonoSearch<'a> {
    patterns: &'a [BlackPattern],
    n: usize,
    k: usize,
    m_edges: usize,
    completion: Vec<Option<usize>>,
    sym: Vec<Vec<Vec<usize>>>,
    use_sym: bool,
    assignment: Vec<u8>, // 0 = black, 1 = white
    black: u64,
    best: Option<(u64, Vec<u8>)>,
    meter: BudgetMeter,
}

impl MonoSearch<'_> {
    fn black_feasible(&self, t: usize) -> bool {
        let anchor = unrank_edge(t, self.k);
        for pat in self.patterns {
            let hit = anchored_black_embedding(pat, self.n, &anchor, &mut |host| {
                let r = rank_edge(host).expect("sorted edge");
                r < self.assignment.len() && self.assignment[r] == 0
            });
            if hit {
                return false;
            }
        }
        true
    }

    fn prefix_canonical(&self, m: usize) -> bool {
        let edge_count = binomial(m, self.k) as usize;
        'perms: for map in &self.sym[m] {
            for r in 0..edge_count {
                let a = self.assignment[r];
                let b = self.assignment[map[r]];
                if b < a {
                    return false;
                }
                if b > a {
                    continue 'perms;
                }
            }
        }
        true
    }

    fn dfs(&mut self) -> bool {
        let t = self.assignment.len();
        if t == self.m_edges {
            if self.best.as_ref().is_none_or(|(b, _)| self.black > *b) {
                self.best = Some((self.black, self.assignment.clone()));
            }
            return true;
        }
        for color in 0u8..=1 {
            if !self.meter.tick() {
                return false;
            }
            self.assignment.push(color);
            if color == 0 {
                self.black += 1;
            }
            let remaining = (self.m_edges - t - 1) as u64;
            let bound_ok = self
                .best
                .as_ref()
                .is_none_or(|(b, _)| self.black + remaining > *b);
            let viable = bound_ok
                && (color == 1 || self.black_feasible(t))
                && match (self.use_sym, self.completion[t]) {
                    (true, Some(m)) => self.prefix_canonical(m),
                    _ => true,
                };
            let keep_going = !viable || self.dfs();
            if color == 0 {
                self.black -= 1;
            }
            self.assignment.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Maximum number of black edges over BW-graphs on `[n]` avoiding every
/// family member as a black-induced subgraph, by direct search over
/// black/white colorings (whites are interchangeable for membership).
pub fn monotone_ex(n: usize, fam: &BIFamily, budget: &SearchBudget) -> Result<MonotoneResult> {
    let k = fam.k();
    if n < k {
        return Err(Error::input(format!("n={n} must be at least k={k}")));
    }
    let black = crate::property::bi_palette().index_of("black").unwrap();
    let mut patterns = Vec::new();
    for (i, f) in fam.members().iter().enumerate() {
        let pat = BlackPattern::from_graph(f, black);
        if !pat.has_black() && f.n() <= n {
            return Err(Error::input(format!(
                "family member {i} has no black edges and at most n vertices; \
                 Forb_bi(n, F) is empty, the maximum is undefined"
            )));
        }
        if pat.has_black() {
            patterns.push(pat);
        }
    }
    let m_edges = binomial(n, k) as usize;
    let completion = completion_points(n, k, m_edges);
    let mut sym = vec![Vec::new(); n.max(1)];
    if budget.symmetry {
        for m in k..n {
            sym[m] = perm_edge_maps(m, k);
        }
    }
    let mut search = MonoSearch {
        patterns: &patterns,
        n,
        k,
        m_edges,
        completion,
        sym,
        use_sym: budget.symmetry,
        assignment: Vec::with_capacity(m_edges),
        black: 0,
        best: None,
        meter: BudgetMeter::new(budget),
    };
    let finished = search.dfs();
    let nodes = search.meter.nodes;
    let Some((max_black, word)) = search.best else {
        return Err(Error::budget(format!(
            "search budget exhausted after {nodes} nodes before any coloring"
        )));
    };
    let ell = fam.ell();
    let bw = bw_palette(ell)?;
    let bw_word: Vec<u32> = word.iter().map(|&c| c as u32).collect();
    let bw_witness = ColoredHypergraph::new(k, n, bw.clone(), bw_word)?;
    let full = ColorMask::full(bw.len());
    let whites = ColorMask::new(full.bits() & !1).expect("ell >= 1 whites");
    let choice_word: Vec<ColorMask> = word
        .iter()
        .map(|&c| if c == 0 { full } else { whites })
        .collect();
    let choice_witness = ChoiceHypergraph::new(k, n, bw, choice_word)?;
    let best_product = BigUint::from(ell + 1).pow(max_black as u32)
        * BigUint::from(ell).pow((binomial(n, k) - max_black) as u32);
    Ok(MonotoneResult {
        n,
        k,
        binom: binomial(n, k),
        ell,
        max_black,
        best_product,
        bw_witness,
        choice_witness,
        exact: finished,
        nodes,
    })
}

/// Brute-force oracle for [`monotone_ex`]: enumerate all black/white
/// colorings and check black-induced containment directly.
pub fn monotone_brute_oracle(n: usize, fam: &BIFamily, cap: u64) -> Result<u64> {
    let k = fam.k();
    let m = binomial(n, k) as usize;
    if m >= 63 || (1u64 << m) > cap {
        return Err(Error::capability(format!(
            "brute-force space 2^{m} exceeds the cap of {cap}"
        )));
    }
    let bw = bw_palette(1)?;
    let mut best: Option<u64> = None;
    'coloring: for bits in 0..(1u64 << m) {
        // bit set = black
        let word: Vec<u32> = (0..m).map(|r| 1 - (bits >> r & 1) as u32).collect();
        let h = ColoredHypergraph::new(k, n, bw.clone(), word)?;
        for f in fam.members() {
            if crate::property::contains_black_induced(&h, f)?.is_some() {
                continue 'coloring;
            }
        }
        let blacks = bits.count_ones() as u64;
        if best.is_none_or(|b| blacks > b) {
            best = Some(blacks);
        }
    }
    best.ok_or_else(|| Error::input(format!("Forb_bi({n}, F) is empty")))
}

/// min over members of 1 - 1/(chi(F) - 1): the limit of ex(n, Forb_bi(F))
/// for graphs (k = 2, ell = 1) without the o(1) term.
pub fn erdos_stone_value(fam: &BIFamily) -> Result<Rational64> {
    if fam.k() != 2 {
        return Err(Error::capability("the Erdős–Stone value requires k=2"));
    }
    if fam.ell() != 1 {
        return Err(Error::capability("the Erdős–Stone value requires ell=1"));
    }
    if fam.members().is_empty() {
        return Err(Error::input("empty family: the minimum is undefined"));
    }
    let mut best: Option<Rational64> = None;
    for (i, f) in fam.members().iter().enumerate() {
        let chi = crate::property::chromatic_number(f)?;
        if chi < 2 {
            return Err(Error::input(format!(
                "family member {i} has no black edges (chi=1); \
                 1 - 1/(chi-1) is undefined"
            )));
        }
        let v = Rational64::new(chi as i64 - 2, chi as i64 - 1);
        if best.is_none_or(|b| v < b) {
            best = Some(v);
        }
    }
    Ok(best.expect("nonempty family"))
}
