//! Self-contained invariant suites behind the `verify` command: each one
//! replays a cross-check between independent implementations on a fixed
//! small instance set and fails loudly on the first discrepancy.

use num_bigint::BigUint;

use crate::budget::SearchBudget;
use crate::census::{count_brute_oracle, count_property, DEFAULT_COUNT_ORACLE_CAP};
use crate::error::{Error, Result};
use crate::extremal::{ex_brute_oracle, ex_exact, monotone_brute_oracle, monotone_ex};
use crate::hypercore::{binomial, ChoiceHypergraph, ColorMask, ColorSet, ColoredHypergraph};
use crate::property::{
    bi_palette, contains_black_induced, expand_bi_family, is_good, member,
    member_all_selections_oracle, BIFamily, ForbiddenFamily, DEFAULT_SELECTION_CAP,
};

fn bw2() -> ColorSet {
    ColorSet::from_strs(&["black", "white"])
}

/// Every single-member forbidden family with a member on 2 or 3 vertices,
/// k=2, over {black, white}.
pub fn small_families() -> Vec<ForbiddenFamily> {
    let mut out = Vec::new();
    for m in [2usize, 3] {
        let edges = binomial(m, 2) as usize;
        for code in 0..(1u32 << edges) {
            let word: Vec<u32> = (0..edges).map(|r| code >> r & 1).collect();
            let member = ColoredHypergraph::new(2, m, bw2(), word).expect("valid member");
            out.push(ForbiddenFamily::new(2, bw2(), vec![member]).expect("valid family"));
        }
    }
    out
}

/// Every single-member BI family with a member on 2 or 3 vertices carrying
/// at least one black edge, for the given white count.
pub fn small_bi_families(ell: usize) -> Vec<BIFamily> {
    let mut out = Vec::new();
    for m in [2usize, 3] {
        let edges = binomial(m, 2) as usize;
        for code in 0..(1u32 << edges) {
            // bit set = invisible; skip the all-invisible member
            if code == (1 << edges) - 1 {
                continue;
            }
            let word: Vec<u32> = (0..edges).map(|r| code >> r & 1).collect();
            let member = ColoredHypergraph::new(2, m, bi_palette(), word).expect("valid member");
            out.push(BIFamily::new(2, ell, vec![member]).expect("valid family"));
        }
    }
    out
}

fn check(ok: bool, msg: String, lines: &mut Vec<String>) -> Result<()> {
    if ok {
        lines.push(format!("ok: {msg}"));
        Ok(())
    } else {
        Err(Error::Check(msg))
    }
}

/// bestProduct(n+1)^C(n,k) <= bestProduct(n)^C(n+1,k) for every small
/// family, as big integers — the growth-rate monotonicity the counting
/// argument leans on.
pub fn suite_monotonicity(budget: &SearchBudget) -> Result<Vec<String>> {
    let mut lines = Vec::new();
    for (i, fam) in small_families().iter().enumerate() {
        if fam.members()[0].edge_count() == 0 {
            continue; // ex is undefined once the edgeless member fits
        }
        let mut prev: Option<(u64, BigUint)> = None;
        for n in 2..=5usize {
            let res = ex_exact(n, fam, budget)?;
            if let Some((prev_binom, prev_best)) = prev {
                let lhs = res.best_product.pow(prev_binom as u32);
                let rhs = prev_best.pow(res.binom as u32);
                check(
                    lhs <= rhs,
                    format!("family {i}: ex non-increasing from n={} to n={n}", n - 1),
                    &mut lines,
                )?;
            }
            prev = Some((res.binom, res.best_product));
        }
    }
    Ok(lines)
}

/// bestProduct <= |P_n| as big integers: the counting lower bound.
pub fn suite_lowerbound(budget: &SearchBudget) -> Result<Vec<String>> {
    let mut lines = Vec::new();
    for (i, fam) in small_families().iter().enumerate() {
        for n in 2..=4usize {
            let count = count_property(n, fam, budget)?;
            if fam.members()[0].edge_count() == 0 {
                check(
                    count == BigUint::from(0u32) || fam.members()[0].n() > n,
                    format!("family {i}, n={n}: edgeless member zeroes the count"),
                    &mut lines,
                )?;
                continue;
            }
            let ex = ex_exact(n, fam, budget)?;
            check(
                ex.best_product <= count,
                format!("family {i}, n={n}: product {} <= count {count}", ex.best_product),
                &mut lines,
            )?;
        }
    }
    Ok(lines)
}

/// Forb_bi(F) membership coincides with Forb(<F>) membership on every BW
/// host with at most 4 vertices, and the monotone solver agrees with the
/// general one on the expanded family.
pub fn suite_bi_equivalence(budget: &SearchBudget) -> Result<Vec<String>> {
    let mut lines = Vec::new();
    for ell in [1usize, 2] {
        for (i, fam) in small_bi_families(ell).iter().enumerate() {
            let expanded = expand_bi_family(fam)?;
            let c = expanded.colors().len() as u32;
            for n in 2..=4usize {
                let edges = binomial(n, 2) as usize;
                let hosts = (c as u64).pow(edges as u32);
                let mut agreements = 0u64;
                for code in 0..hosts {
                    let mut word = Vec::with_capacity(edges);
                    let mut x = code;
                    for _ in 0..edges {
                        word.push((x % c as u64) as u32);
                        x /= c as u64;
                    }
                    let host =
                        ColoredHypergraph::new(2, n, expanded.colors().clone(), word)?;
                    let mut bi = true;
                    for f in fam.members() {
                        if contains_black_induced(&host, f)?.is_some() {
                            bi = false;
                            break;
                        }
                    }
                    let bw = member(&host, &expanded)?;
                    if bi != bw {
                        return Err(Error::Check(format!(
                            "ell={ell}, family {i}, n={n}: BI and BW membership disagree"
                        )));
                    }
                    agreements += 1;
                }
                lines.push(format!(
                    "ok: ell={ell}, family {i}, n={n}: memberships agree on {agreements} hosts"
                ));
            }
            for n in 2..=4usize {
                let mono = monotone_ex(n, fam, budget)?;
                let general = ex_exact(n, &expanded, budget)?;
                check(
                    mono.best_product == general.best_product,
                    format!(
                        "ell={ell}, family {i}, n={n}: monotone product {} matches ex",
                        mono.best_product
                    ),
                    &mut lines,
                )?;
            }
        }
    }
    Ok(lines)
}

/// Search results equal brute-force enumeration: extremal, monotone,
/// counting, and goodness.
pub fn suite_oracle(budget: &SearchBudget) -> Result<Vec<String>> {
    let mut lines = Vec::new();
    let plain = budget.clone().without_symmetry();
    for (i, fam) in small_families().iter().enumerate() {
        if fam.members()[0].edge_count() == 0 {
            continue;
        }
        for n in 2..=4usize {
            let res = ex_exact(n, fam, &plain)?;
            let brute = ex_brute_oracle(n, fam, DEFAULT_SELECTION_CAP)?;
            check(
                res.best_product == brute,
                format!("family {i}, n={n}: ex {} = brute {brute}", res.best_product),
                &mut lines,
            )?;
            let count = count_property(n, fam, budget)?;
            let brute_count = count_brute_oracle(n, fam, DEFAULT_COUNT_ORACLE_CAP)?;
            check(
                count == brute_count,
                format!("family {i}, n={n}: count {count} = brute {brute_count}"),
                &mut lines,
            )?;
        }
    }
    for ell in [1usize, 2] {
        for (i, fam) in small_bi_families(ell).iter().enumerate() {
            for n in 2..=4usize {
                let mono = monotone_ex(n, fam, budget)?;
                let brute = monotone_brute_oracle(n, fam, DEFAULT_SELECTION_CAP)?;
                check(
                    mono.max_black == brute,
                    format!("ell={ell}, family {i}, n={n}: maxBlack {} = brute {brute}", mono.max_black),
                    &mut lines,
                )?;
            }
        }
    }
    // goodness against selection enumeration on every 3-vertex choice graph
    let triangle = ForbiddenFamily::new(
        2,
        bw2(),
        vec![ColoredHypergraph::constant(2, 3, bw2(), 0)?],
    )?;
    let masks = [0b01u32, 0b10, 0b11];
    let mut agreements = 0u64;
    for a in masks {
        for b in masks {
            for c in masks {
                let h = ChoiceHypergraph::new(
                    2,
                    3,
                    bw2(),
                    vec![ColorMask::new(a)?, ColorMask::new(b)?, ColorMask::new(c)?],
                )?;
                let (good, _) = is_good(&h, &triangle)?;
                let oracle = member_all_selections_oracle(&h, &triangle, DEFAULT_SELECTION_CAP)?;
                if good != oracle {
                    return Err(Error::Check(
                        "goodness and selection enumeration disagree".to_string(),
                    ));
                }
                agreements += 1;
            }
        }
    }
    lines.push(format!("ok: goodness matches selection enumeration on {agreements} choice graphs"));
    Ok(lines)
}

/// Dispatch by suite name (the `--suite` argument).
pub fn run_suite(name: &str, budget: &SearchBudget) -> Result<Vec<String>> {
    match name {
        "monotonicity" => suite_monotonicity(budget),
        "lowerbound" => suite_lowerbound(budget),
        "bi-equivalence" => suite_bi_equivalence(budget),
        "oracle" => suite_oracle(budget),
        other => Err(Error::input(format!(
            "unknown suite \"{other}\"; expected monotonicity, lowerbound, bi-equivalence or oracle"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        let budget = SearchBudget::default();
        for suite in ["monotonicity", "lowerbound", "bi-equivalence", "oracle"] {
            let lines = run_suite(suite, &budget).unwrap();
            assert!(!lines.is_empty(), "{suite} produced no checks");
        }
    }

    #[test]
    fn unknown_suite_is_input_error() {
        assert!(matches!(
            run_suite("nope", &SearchBudget::default()),
            Err(Error::Input(_))
        ));
    }
}
