//! (ε,h)-regularity verification: the per-complex interval condition with
//! the [0,1] clamp, the per-index average-slack condition, and a fitter
//! that derives the smallest workable uniform slack per total color.

use std::collections::BTreeMap;

use super::complex::{embed_probability, enumerate_complexes, Complex, ProbEstimate, ProbMode};
use super::{BoundGraph, DensityTables, IndexSet, TotalColor};
use crate::error::{Error, Result};

/// Tolerance absorbing float noise in interval comparisons; probabilities
/// and densities are exact rationals underneath.
const TOL: f64 = 1e-9;

/// A slack function on total colors. Missing entries read as 0, so the
/// function is total on every TC(G) by default.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DeltaFunction {
    values: BTreeMap<TotalColor, f64>,
}

impl DeltaFunction {
    pub fn new(entries: impl IntoIterator<Item = (TotalColor, f64)>) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (tc, v) in entries {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::input(format!("slack value {v} must be a nonnegative real")));
            }
            values.insert(tc, v);
        }
        Ok(DeltaFunction { values })
    }

    pub fn zero() -> Self {
        DeltaFunction::default()
    }

    pub fn get(&self, tc: &TotalColor) -> f64 {
        *self.values.get(tc).unwrap_or(&0.0)
    }

    pub fn set(&mut self, tc: TotalColor, v: f64) {
        self.values.insert(tc, v);
    }

    pub fn raise(&mut self, tc: &TotalColor, v: f64) {
        let cur = self.get(tc);
        if v > cur {
            self.values.insert(tc.clone(), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TotalColor, f64)> {
        self.values.iter().map(|(tc, &v)| (tc, v))
    }
}

/// Condition (ii): the exact average slack at one index against ε/|C_I|.
#[derive(Debug, Clone)]
pub struct IndexCheck {
    pub index: IndexSet,
    pub average_delta: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Condition (i) at one complex: the probability against the clamped
/// density product interval.
#[derive(Debug, Clone)]
pub struct ComplexCheck {
    pub description: String,
    pub lower: f64,
    pub upper: f64,
    pub probability: ProbEstimate,
    /// Some visible edge's frame is realized by no G-edge; its density is
    /// undefined and enters the product as 0.
    pub undefined_density: bool,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct RegularityReport {
    pub eps: f64,
    pub h: usize,
    pub index_checks: Vec<IndexCheck>,
    pub complex_checks: Vec<ComplexCheck>,
    /// False when the complex family was truncated by the budget; the
    /// verdict then covers only the recorded checks.
    pub complete: bool,
    pub verdict: bool,
}

/// The clamped interval [∏ max(0, d−δ), ∏ min(1, d+δ)] over the visible
/// edges of S, with the undefined-density flag.
fn interval(
    g: &BoundGraph,
    tables: &DensityTables,
    delta: &DeltaFunction,
    s: &Complex,
) -> (f64, f64, bool) {
    let mut lower = 1.0;
    let mut upper = 1.0;
    let mut undefined = false;
    for (index, coords) in s.visible_edges() {
        let tc = s.total_color(index, &coords);
        let d = match tables.density(&tc) {
            Ok(d) => *d.numer() as f64 / *d.denom() as f64,
            Err(_) => {
                undefined = true;
                0.0
            }
        };
        let dl = delta.get(&tc);
        lower *= (d - dl).max(0.0);
        upper *= (d + dl).min(1.0);
    }
    let _ = g;
    (lower, upper, undefined)
}

fn complex_pass(p: &ProbEstimate, lower: f64, upper: f64) -> bool {
    // sampled mode only flags violations beyond the confidence radius
    p.value >= lower - p.radius - TOL && p.value <= upper + p.radius + TOL
}

/// Condition (ii) for every index: E over Ω_I of δ(G⟨e⟩) ≤ ε/|C_I|, the
/// expectation computed exactly from the total-color counts.
fn index_checks(
    g: &BoundGraph,
    tables: &DensityTables,
    delta: &DeltaFunction,
    eps: f64,
) -> Vec<IndexCheck> {
    g.indices()
        .into_iter()
        .map(|index| {
            let mut sum = 0.0;
            for (tc, &count) in &tables.total_counts {
                if tc.index == index {
                    sum += delta.get(tc) * count as f64;
                }
            }
            let average_delta = sum / tables.edges_at(index) as f64;
            let bound = eps / g.color_set(index).len() as f64;
            IndexCheck { index, average_delta, bound, pass: average_delta <= bound + TOL }
        })
        .collect()
}

/// Verify (ε,h)-regularity of G under the given slack function. The complex
/// family is the supplied list, or every simplicial complex against G's
/// palettes when none is given; a budget-truncated enumeration yields a
/// partial report with `complete = false`.
pub fn check_regularity(
    g: &BoundGraph,
    delta: &DeltaFunction,
    eps: f64,
    h: usize,
    mode: ProbMode,
    complexes: Option<Vec<Complex>>,
    complex_cap: u64,
    exact_cap: u64,
) -> Result<RegularityReport> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::input("eps must be a nonnegative real"));
    }
    let tables = DensityTables::build(g);
    let (family, complete) = match complexes {
        Some(list) => (list, true),
        None => match enumerate_complexes(g, h, complex_cap) {
            Ok(list) => (list, true),
            Err(Error::Budget(_)) => (Vec::new(), false),
            Err(e) => return Err(e),
        },
    };
    let mut complex_checks = Vec::with_capacity(family.len());
    for s in &family {
        let p = embed_probability(g, s, mode, exact_cap)?;
        let (lower, upper, undefined_density) = interval(g, &tables, delta, s);
        let pass = complex_pass(&p, lower, upper);
        complex_checks.push(ComplexCheck {
            description: s.describe(g),
            lower,
            upper,
            probability: p,
            undefined_density,
            pass,
        });
    }
    let index_checks = index_checks(g, &tables, delta, eps);
    let verdict =
        index_checks.iter().all(|c| c.pass) && complex_checks.iter().all(|c| c.pass);
    Ok(RegularityReport { eps, h, index_checks, complex_checks, complete, verdict })
}

/// Fit the smallest uniform per-complex slack: for each complex S, binary
/// search the least t with ∏ max(0, d−t) ≤ P[S] ≤ ∏ min(1, d+t) over the
/// visible edges, then give every total color the maximum requirement over
/// the complexes it appears in. Widening any interval never breaks a check,
/// so the combined function passes all of them. Exact probabilities only.
pub fn fit_delta(
    g: &BoundGraph,
    eps: f64,
    h: usize,
    complex_cap: u64,
    exact_cap: u64,
) -> Result<(DeltaFunction, RegularityReport)> {
    let tables = DensityTables::build(g);
    let mut delta = DeltaFunction::zero();
    // total on TC(G): every realized total color gets an explicit entry
    for index in g.indices() {
        for tc in g.realized_totals(index) {
            delta.set(tc, 0.0);
        }
    }
    let family = enumerate_complexes(g, h, complex_cap)?;
    let mut fits: Vec<(Complex, f64)> = Vec::new();
    for s in family {
        let p = embed_probability(g, &s, ProbMode::Exact, exact_cap)?;
        let p = p.value;
        let totals: Vec<(TotalColor, f64)> = s
            .visible_edges()
            .into_iter()
            .map(|(index, coords)| {
                let tc = s.total_color(index, &coords);
                let d = tables
                    .density(&tc)
                    .map(|d| *d.numer() as f64 / *d.denom() as f64)
                    .unwrap_or(0.0);
                (tc, d)
            })
            .collect();
        let passes = |t: f64| {
            let mut lower = 1.0;
            let mut upper = 1.0;
            for (_, d) in &totals {
                lower *= (d - t).max(0.0);
                upper *= (d + t).min(1.0);
            }
            p >= lower - TOL && p <= upper + TOL
        };
        let t = if passes(0.0) {
            0.0
        } else {
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            for _ in 0..60 {
                let mid = (lo + hi) / 2.0;
                if passes(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            hi
        };
        fits.push((s, t));
    }
    for (s, t) in &fits {
        if *t > 0.0 {
            for (index, coords) in s.visible_edges() {
                delta.raise(&s.total_color(index, &coords), *t);
            }
        }
    }
    let complexes = fits.into_iter().map(|(s, _)| s).collect();
    let report = check_regularity(
        g,
        &delta,
        eps,
        h,
        ProbMode::Exact,
        Some(complexes),
        complex_cap,
        exact_cap,
    )?;
    Ok((delta, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regdiag::complex::{DEFAULT_COMPLEX_CAP, DEFAULT_EXACT_MAP_CAP};
    use crate::regdiag::tests::three_quarter_black;
    use crate::regdiag::PartiteGround;

    fn check_h(g: &BoundGraph, delta: &DeltaFunction, eps: f64, h: usize) -> RegularityReport {
        check_regularity(
            g,
            delta,
            eps,
            h,
            ProbMode::Exact,
            None,
            DEFAULT_COMPLEX_CAP,
            DEFAULT_EXACT_MAP_CAP,
        )
        .unwrap()
    }

    fn check(g: &BoundGraph, delta: &DeltaFunction, eps: f64) -> RegularityReport {
        check_h(g, delta, eps, 1)
    }

    /// 2x2 pair ground with one vertex color and XOR edge colors: both edge
    /// densities are 1/2, but edges sharing endpoints are fully correlated,
    /// so h=2 products miss without slack.
    fn correlated() -> BoundGraph {
        let ground = PartiteGround::new(vec![2, 2]).unwrap();
        let i1 = IndexSet::from_mask(0b01).unwrap();
        let i2 = IndexSet::from_mask(0b10).unwrap();
        let i12 = IndexSet::from_mask(0b11).unwrap();
        let mut colors = BTreeMap::new();
        colors.insert(i1, vec!["u".into()]);
        colors.insert(i2, vec!["v".into()]);
        colors.insert(i12, vec!["black".into(), "white".into()]);
        let mut coloring = BTreeMap::new();
        coloring.insert(i1, vec![0, 0]);
        coloring.insert(i2, vec![0, 0]);
        // offsets (u,w): edge black iff u = w
        coloring.insert(i12, vec![0, 1, 1, 0]);
        BoundGraph::new(ground, 2, colors, coloring).unwrap()
    }

    #[test]
    fn single_color_is_regular() {
        let ground = PartiteGround::new(vec![3, 2]).unwrap();
        let i1 = IndexSet::from_mask(0b01).unwrap();
        let i2 = IndexSet::from_mask(0b10).unwrap();
        let i12 = IndexSet::from_mask(0b11).unwrap();
        let colors: BTreeMap<_, _> = [
            (i1, vec!["c".to_string()]),
            (i2, vec!["c".to_string()]),
            (i12, vec!["c".to_string()]),
        ]
        .into();
        let coloring: BTreeMap<_, _> =
            [(i1, vec![0; 3]), (i2, vec![0; 2]), (i12, vec![0; 6])].into();
        let g = BoundGraph::new(ground, 2, colors, coloring).unwrap();
        let report = check(&g, &DeltaFunction::zero(), 0.0);
        assert!(report.verdict);
        assert!(report.complete);
    }

    #[test]
    fn three_quarter_black_zero_delta() {
        // probability 3/4 equals density 3/4 exactly at h=1
        let report = check(&three_quarter_black(), &DeltaFunction::zero(), 0.1);
        assert!(report.verdict, "{:#?}", report.complex_checks);
    }

    #[test]
    fn correlated_ground_needs_slack() {
        let g = correlated();
        // at h=1 the products still factor exactly
        assert!(check(&g, &DeltaFunction::zero(), 1.0).verdict);
        // at h=2 they do not: four black edges embed with probability 1/8,
        // but the density product is 1/16
        let report = check_h(&g, &DeltaFunction::zero(), 4.0, 2);
        assert!(!report.verdict);
        let witness = report.complex_checks.iter().find(|c| !c.pass).unwrap();
        assert!(witness.probability.exact.is_some());

        // an insufficient slack on the affected totals still fails
        let (fitted, _) = fit_delta(&g, 4.0, 2, DEFAULT_COMPLEX_CAP, DEFAULT_EXACT_MAP_CAP).unwrap();
        let halved = DeltaFunction::new(
            fitted.entries().map(|(tc, v)| (tc.clone(), v * 0.4)),
        )
        .unwrap();
        assert!(!check_h(&g, &halved, 4.0, 2).verdict);
    }

    #[test]
    fn fit_delta_examples() {
        // single color: delta identically 0
        let g3 = three_quarter_black();
        let (delta, report) =
            fit_delta(&g3, 0.1, 1, DEFAULT_COMPLEX_CAP, DEFAULT_EXACT_MAP_CAP).unwrap();
        assert!(report.verdict);
        assert!(delta.entries().all(|(_, v)| v == 0.0));

        // correlated ground at h=2: nonzero slack appears and the report
        // passes its complex checks; the eps verdict depends on eps
        let g = correlated();
        let (delta, report) =
            fit_delta(&g, 4.0, 2, DEFAULT_COMPLEX_CAP, DEFAULT_EXACT_MAP_CAP).unwrap();
        assert!(delta.entries().any(|(_, v)| v > 0.0));
        assert!(report.complex_checks.iter().all(|c| c.pass));
        assert!(report.verdict);
        let (_, strict) =
            fit_delta(&g, 0.01, 2, DEFAULT_COMPLEX_CAP, DEFAULT_EXACT_MAP_CAP).unwrap();
        assert!(!strict.verdict);
        assert!(strict.index_checks.iter().any(|c| !c.pass));
    }

    #[test]
    fn sampled_mode_no_false_alarms() {
        let g = three_quarter_black();
        let report = check_regularity(
            &g,
            &DeltaFunction::zero(),
            0.1,
            1,
            ProbMode::Sampled { count: 500, seed: 9 },
            None,
            DEFAULT_COMPLEX_CAP,
            DEFAULT_EXACT_MAP_CAP,
        )
        .unwrap();
        assert!(report.verdict, "{:#?}", report.complex_checks);
    }
}
