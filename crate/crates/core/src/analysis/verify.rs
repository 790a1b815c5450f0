//! Named pass/fail checks bundling the closed forms against the oracles.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::closed_forms::{
    d2_quipu, d2_quipu_published, d2_spider, fifteen_fourteenths, limit_ratio, r2_path, w_path,
    w_quipu, w_spider, SpiderCase,
};
use crate::error::{out_of_range, Result};
use crate::families::FamilySpec;
use crate::graph::WienerValue;
use crate::rational::{ExactRational, SignedWiener};

use super::ratio::ratio_rk;
use super::search::{check_buckley, verify_theorem1_trees};
use super::theorems::{lemma4_deviation, threshold_scan, verify_theorem5};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

fn expect_eq<T: PartialEq + std::fmt::Display>(name: &str, got: T, want: T) -> Check {
    let passed = got == want;
    let detail = if passed {
        format!("{got}")
    } else {
        format!("got {got}, expected {want}")
    };
    Check::new(name, passed, detail)
}

/// The order-22 worked example: `T_{7,7,7}` against `P_22`.
pub fn paper_numbers(budget: usize) -> Result<Vec<Check>> {
    let t = FamilySpec::Spider(7, 7, 7).build()?;
    let r = ratio_rk(&t, 2, budget)?;
    let p = ratio_rk(&FamilySpec::Path(22).build()?, 2, budget)?;
    let t_r2 = r.r2().cloned().expect("nonempty");
    let p_r2 = p.r2().cloned().expect("nonempty");
    let zero = SignedWiener(0.into());
    Ok(vec![
        expect_eq("W(T_7,7,7)", r.wiener, WienerValue(1428)),
        expect_eq(
            "D2(T_7,7,7)",
            r.d2.clone().unwrap_or(zero),
            SignedWiener(357.into()),
        ),
        expect_eq(
            "1-R2(T_7,7,7)",
            ExactRational::one() - t_r2.clone(),
            ExactRational::new(1, 4),
        ),
        expect_eq(
            "1-R2(P_22)",
            ExactRational::one() - p_r2.clone(),
            ExactRational::new(126, 506),
        ),
        Check::new(
            "R2(T_7,7,7) < R2(P_22)",
            t_r2 < p_r2,
            format!("{t_r2} vs {p_r2}"),
        ),
    ])
}

/// Every closed form against build-then-BFS: spiders with arms in
/// `1..=max_a` (`2..=max_a` for `D₂`), quipus for `2..=max_a`, paths for
/// `3..=max_n`.
pub fn lemmas(max_a: u64, max_n: u64, budget: usize) -> Result<Vec<Check>> {
    if max_a < 2 || max_n < 3 {
        return Err(out_of_range("closed-form checks need max_a >= 2 and max_n >= 3"));
    }
    let mut w_fail = Vec::new();
    let mut d2_fail = Vec::new();
    let mut w_count = 0;
    let mut d2_count = 0;
    for a in 1..=max_a {
        for b in 1..=max_a {
            for c in 1..=max_a {
                let g = FamilySpec::Spider(a as usize, b as usize, c as usize).build()?;
                let with_d2 = a >= 2 && b >= 2 && c >= 2;
                let r = ratio_rk(&g, if with_d2 { 2 } else { 1 }, budget)?;
                w_count += 1;
                if r.wiener != w_spider(a, b, c)? {
                    w_fail.push(format!("({a},{b},{c})"));
                }
                if with_d2 {
                    d2_count += 1;
                    let want = SignedWiener::difference(d2_spider(a, b, c)?, WienerValue(0));
                    if r.d2.as_ref() != Some(&want) {
                        d2_fail.push(format!("({a},{b},{c})"));
                    }
                }
            }
        }
    }
    let summary = |fails: &[String], count: usize| {
        if fails.is_empty() {
            format!("{count} spiders agree")
        } else {
            format!("{} of {count} disagree: {}", fails.len(), fails.join(" "))
        }
    };
    let mut checks = vec![
        Check::new("spider W", w_fail.is_empty(), summary(&w_fail, w_count)),
        Check::new("spider D2", d2_fail.is_empty(), summary(&d2_fail, d2_count)),
    ];

    let mut q_fail = Vec::new();
    let mut published_off = Vec::new();
    for a in 2..=max_a {
        if d2_quipu_published(a)? != d2_quipu(a)? {
            published_off.push(a);
        }
        let r = ratio_rk(&FamilySpec::BalancedQuipu(a as usize).build()?, 2, budget)?;
        let want = SignedWiener::difference(d2_quipu(a)?, WienerValue(0));
        if r.wiener != w_quipu(a)? || r.d2.as_ref() != Some(&want) {
            q_fail.push(a.to_string());
        }
    }
    checks.push(Check::new(
        "quipu W and D2",
        q_fail.is_empty(),
        format!(
            "{}; published D2 polynomial differs from the oracle at {} of {} values",
            if q_fail.is_empty() {
                format!("a = 2..={max_a} agree")
            } else {
                format!("disagree at a = {}", q_fail.join(", "))
            },
            published_off.len(),
            max_a - 1
        ),
    ));

    let mut p_fail = Vec::new();
    for n in 3..=max_n {
        let r = ratio_rk(&FamilySpec::Path(n as usize).build()?, 2, budget)?;
        if r.wiener != w_path(n)? || r.r2() != Some(&r2_path(n)?) {
            p_fail.push(n.to_string());
        }
    }
    checks.push(Check::new(
        "path W and R2",
        p_fail.is_empty(),
        if p_fail.is_empty() {
            format!("n = 3..={max_n} agree")
        } else {
            format!("disagree at n = {}", p_fail.join(", "))
        },
    ));
    Ok(checks)
}

pub fn buckley(max_n: usize) -> Result<Vec<Check>> {
    let b = check_buckley(max_n)?;
    let detail = if b.passed() {
        format!("{} trees of order 2..={max_n}", b.trees_checked)
    } else {
        let codes: Vec<String> = b.failures.iter().map(ToString::to_string).collect();
        format!("{} failures: {}", codes.len(), codes.join(" "))
    };
    Ok(vec![Check::new("Buckley identity", b.passed(), detail)])
}

/// Each balanced-spider case fails below `a = 7` and passes from 7 on, and
/// the quotient against the path approaches 15/14.
pub fn thm4(a_range: RangeInclusive<u64>) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for case in SpiderCase::ALL {
        let r = threshold_scan(case, a_range.clone())?;
        let wrong: Vec<u64> = r
            .rows
            .iter()
            .filter(|row| row.passes != (row.a >= 7))
            .map(|row| row.a)
            .collect();
        let found = r
            .smallest_passing_a
            .map_or("none".to_string(), |a| a.to_string());
        checks.push(Check::new(
            format!("case {case} threshold"),
            wrong.is_empty(),
            if wrong.is_empty() {
                format!("smallest passing a = {found}")
            } else {
                format!("smallest passing a = {found}; unexpected verdict at a = {wrong:?}")
            },
        ));
    }
    let limit = fifteen_fourteenths();
    let tol = ExactRational::new(1, 100);
    for case in SpiderCase::ALL {
        let d100 = (limit_ratio(100, case)? - limit.clone()).abs();
        let d1000 = (limit_ratio(1000, case)? - limit.clone()).abs();
        checks.push(Check::new(
            format!("case {case} limit 15/14"),
            d1000 < tol && d1000 < d100,
            format!(
                "|dev| = {:.3e} at a = 100, {:.3e} at a = 1000",
                d100.to_f64(),
                d1000.to_f64()
            ),
        ));
    }
    Ok(checks)
}

pub fn thm5(a: u64, budget: usize) -> Result<Vec<Check>> {
    let c = verify_theorem5(a, budget)?;
    let margin = &c.r2_path - &c.r2_ua;
    Ok(vec![Check::new(
        format!("R2(U_{a}) < R2(P_{})", c.n),
        c.holds,
        format!(
            "R2(U_a) ≈ {:.9}, R2(P_n) ≈ {:.9}, margin {margin}",
            c.r2_ua.to_f64(),
            c.r2_path.to_f64()
        ),
    )])
}

/// `|W(U_a)/(⅔a⁵) - 1|` and `|D₂(U_a)/(⅙a⁴) - 1|` strictly decrease over the
/// given values of `a`, taken in increasing order.
pub fn deviations(a_values: &[u64], budget: usize) -> Result<Vec<Check>> {
    let mut a_values = a_values.to_vec();
    a_values.sort_unstable();
    a_values.dedup();
    if a_values.len() < 2 {
        return Err(out_of_range(
            "deviation check needs at least two values of a",
        ));
    }
    let devs = a_values
        .iter()
        .map(|&a| lemma4_deviation(a, budget))
        .collect::<Result<Vec<_>>>()?;
    let check = |name: &str, pick: &dyn Fn(usize) -> ExactRational| {
        let values: Vec<ExactRational> = (0..devs.len()).map(pick).collect();
        let shrinking = values.windows(2).all(|w| w[0].abs() > w[1].abs());
        let shown: Vec<String> = a_values
            .iter()
            .zip(&values)
            .map(|(a, v)| format!("a = {a}: {:.4}", v.to_f64()))
            .collect();
        Check::new(name, shrinking, shown.join(", "))
    };
    Ok(vec![
        check("W(U_a) relative deviation", &|i| devs[i].w_dev.clone()),
        check("D2(U_a) relative deviation", &|i| devs[i].d2_dev.clone()),
    ])
}

pub fn thm1(max_n: usize, order_limit: usize) -> Result<Vec<Check>> {
    if max_n < 4 {
        return Err(out_of_range("R1 check needs max_n >= 4"));
    }
    (4..=max_n)
        .map(|n| {
            let c = verify_theorem1_trees(n, order_limit)?;
            Ok(Check::new(
                format!("star minimizes R1, n = {n}"),
                c.unique,
                format!(
                    "R1(star) = {}, min = {}, {} minimizer(s) over {} trees",
                    c.star_r1, c.min_r1, c.minimizers, c.trees_scanned
                ),
            ))
        })
        .collect()
}
