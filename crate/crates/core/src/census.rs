//! Exact labeled counting of P_n and the side-by-side trend against
//! ex(n, P): the counted family against its extremal lower bound.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::budget::{BudgetMeter, SearchBudget};
use crate::embed::anchored_total_embedding;
use crate::error::{Error, Result};
use crate::extremal::{ex_exact, ExtremalResult};
use crate::hypercore::{binomial, rank_edge, unrank_edge, ColoredHypergraph};
use crate::numeric::log2_biguint;
use crate::property::{member, ForbiddenFamily};

/// Default cap on colorings the brute-force counting oracle enumerates.
pub const DEFAULT_COUNT_ORACLE_CAP: u64 = 1 << 24;

/// Exact number of labeled (k,C)-graphs on `[n]` avoiding every family
/// member, by backtracking over edges in colex order. A partial coloring is
/// cut as soon as a forbidden member embeds into the colored prefix, so the
/// subtree below it contributes nothing.
pub fn count_property(n: usize, fam: &ForbiddenFamily, budget: &SearchBudget) -> Result<BigUint> {
    for f in fam.members() {
        if f.edge_count() == 0 && f.n() <= n {
            // an edgeless pattern embeds into everything with enough vertices
            return Ok(BigUint::zero());
        }
    }
    let k = fam.k();
    let m_edges = binomial(n, k) as usize;
    let c = fam.colors().len() as u32;
    let mut meter = BudgetMeter::new(budget);
    let mut word: Vec<u32> = Vec::with_capacity(m_edges);
    let mut count = BigUint::zero();

    fn dfs(
        fam: &ForbiddenFamily,
        m_edges: usize,
        c: u32,
        word: &mut Vec<u32>,
        count: &mut BigUint,
        meter: &mut BudgetMeter,
    ) -> bool {
        let t = word.len();
        if t == m_edges {
            *count += BigUint::one();
            return true;
        }
        let anchor = unrank_edge(t, fam.k());
        for color in 0..c {
            if !meter.tick() {
                return false;
            }
            word.push(color);
            let blocked = fam.members().iter().any(|f| {
                anchored_total_embedding(f, &anchor, &mut |pr, host_edge| {
                    let r = rank_edge(host_edge).expect("sorted edge");
                    r < word.len() && word[r] == f.color_at_rank(pr)
                })
            });
            let keep_going = blocked || dfs(fam, m_edges, c, word, count, meter);
            word.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }

    if dfs(fam, m_edges, c, &mut word, &mut count, &mut meter) {
        Ok(count)
    } else {
        // counting admits no sound partial answer
        Err(Error::budget(format!(
            "count search exhausted its budget after {} nodes",
            meter.nodes
        )))
    }
}

/// Brute-force counting oracle: enumerate every coloring and test
/// membership directly.
pub fn count_brute_oracle(n: usize, fam: &ForbiddenFamily, cap: u64) -> Result<BigUint> {
    let k = fam.k();
    let m = binomial(n, k) as usize;
    let c = fam.colors().len() as u64;
    let total = c.checked_pow(m as u32).unwrap_or(u64::MAX);
    if total > cap {
        return Err(Error::capability(format!(
            "oracle space {c}^{m} exceeds the cap of {cap}"
        )));
    }
    let mut count = BigUint::zero();
    for code in 0..total {
        let mut word = Vec::with_capacity(m);
        let mut x = code;
        for _ in 0..m {
            word.push((x % c) as u32);
            x /= c;
        }
        let h = ColoredHypergraph::new(k, n, fam.colors().clone(), word)?;
        if member(&h, fam)? {
            count += BigUint::one();
        }
    }
    Ok(count)
}

/// One row of the trend table: the exact count |P_n| next to the exact
/// extremal product, with decimal renderings derived from them.
#[derive(Debug, Clone)]
pub struct CensusRow {
    pub n: usize,
    pub binom: u64,
    pub count: BigUint,
    pub extremal: ExtremalResult,
}

impl CensusRow {
    /// log2 |P_n| / C(n, k).
    pub fn log_density(&self) -> f64 {
        if self.binom == 0 {
            return 0.0;
        }
        log2_biguint(&self.count) / self.binom as f64
    }

    pub fn ex_decimal(&self) -> f64 {
        self.extremal.ex_decimal()
    }

    pub fn gap(&self) -> f64 {
        self.log_density() - self.ex_decimal()
    }
}

/// Rows for each n in the inclusive range, with both invariants verified
/// exactly: count <= |C|^C(n,k) and ex-product <= count (the counting lower
/// bound), the latter in big-integer arithmetic.
pub fn trend_report(
    fam: &ForbiddenFamily,
    n_from: usize,
    n_to: usize,
    budget: &SearchBudget,
) -> Result<Vec<CensusRow>> {
    if n_from > n_to {
        return Err(Error::input(format!("empty range {n_from}..={n_to}")));
    }
    let mut rows = Vec::new();
    for n in n_from..=n_to {
        let count = count_property(n, fam, budget)?;
        let extremal = ex_exact(n, fam, budget)?;
        let binom = binomial(n, fam.k());
        let upper = BigUint::from(fam.colors().len()).pow(binom as u32);
        if count > upper {
            return Err(Error::Inconsistency(format!(
                "count {count} exceeds |C|^C({n},{}) = {upper}",
                fam.k()
            )));
        }
        if extremal.exact && extremal.best_product > count {
            return Err(Error::Inconsistency(format!(
                "extremal product {} exceeds the count {count} at n={n}",
                extremal.best_product
            )));
        }
        rows.push(CensusRow { n, binom, count, extremal });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::ColorSet;

    fn bw2() -> ColorSet {
        ColorSet::from_strs(&["black", "white"])
    }

    fn triangle_family() -> ForbiddenFamily {
        let f = ColoredHypergraph::constant(2, 3, bw2(), 0).unwrap();
        ForbiddenFamily::new(2, bw2(), vec![f]).unwrap()
    }

    #[test]
    fn count_examples() {
        let empty = ForbiddenFamily::empty(2, bw2());
        let b = SearchBudget::default();
        assert_eq!(count_property(3, &empty, &b).unwrap(), BigUint::from(8u32));
        // only the all-black triangle is excluded
        assert_eq!(count_property(3, &triangle_family(), &b).unwrap(), BigUint::from(7u32));
        let edge = ColoredHypergraph::constant(2, 2, bw2(), 0).unwrap();
        let fam = ForbiddenFamily::new(2, bw2(), vec![edge]).unwrap();
        assert_eq!(count_property(3, &fam, &b).unwrap(), BigUint::one());
    }

    #[test]
    fn count_matches_oracle() {
        let b = SearchBudget::default();
        let fams = [
            ForbiddenFamily::empty(2, bw2()),
            triangle_family(),
            ForbiddenFamily::new(
                2,
                bw2(),
                vec![ColoredHypergraph::new(2, 3, bw2(), vec![0, 1, 0]).unwrap()],
            )
            .unwrap(),
        ];
        for fam in &fams {
            for n in 2..=4usize {
                assert_eq!(
                    count_property(n, fam, &b).unwrap(),
                    count_brute_oracle(n, fam, DEFAULT_COUNT_ORACLE_CAP).unwrap(),
                    "n={n}"
                );
            }
        }
    }

    #[test]
    fn count_budget_is_an_error() {
        let fam = triangle_family();
        let budget = SearchBudget::new(10, std::time::Duration::from_secs(60), false).unwrap();
        assert!(matches!(
            count_property(5, &fam, &budget),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn trend_rows() {
        let b = SearchBudget::default();
        // empty family: both sides equal log2 |C|, gap 0
        let rows = trend_report(&ForbiddenFamily::empty(2, bw2()), 2, 4, &b).unwrap();
        for row in &rows {
            assert!(row.gap().abs() < 1e-12);
        }
        // triangle family at n=3: count 7, ex 2/3, positive gap
        let rows = trend_report(&triangle_family(), 3, 3, &b).unwrap();
        assert_eq!(rows[0].count, BigUint::from(7u32));
        assert_eq!(rows[0].extremal.ex_fraction(), Some((2, 3)));
        assert!(rows[0].gap() > 0.0);
        // single black edge: count 1, ex 0, gap 0
        let edge = ColoredHypergraph::constant(2, 2, bw2(), 0).unwrap();
        let fam = ForbiddenFamily::new(2, bw2(), vec![edge]).unwrap();
        let rows = trend_report(&fam, 2, 4, &b).unwrap();
        for row in &rows {
            assert_eq!(row.count, BigUint::one());
            assert_eq!(row.extremal.best_product, BigUint::one());
            assert_eq!(row.gap(), 0.0);
        }
    }

    #[test]
    fn lower_bound_exact() {
        // 2^{ex * C(n,k)} <= |P_n| as big integers
        let b = SearchBudget::default();
        for n in 3..=5usize {
            let fam = triangle_family();
            let count = count_property(n, &fam, &b).unwrap();
            let ex = ex_exact(n, &fam, &b).unwrap();
            assert!(ex.best_product <= count, "n={n}");
        }
    }
}
