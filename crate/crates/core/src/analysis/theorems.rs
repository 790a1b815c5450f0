use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::closed_forms::{limit_ratio, r2_path, spider_gap, SpiderCase};
use crate::error::{out_of_range, Result};
use crate::families::FamilySpec;
use crate::graph::WienerValue;
use crate::rational::{ExactRational, SignedWiener};

use super::ratio::ratio_rk;

/// The family a threshold scan runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanFamily {
    Spider(SpiderCase),
    /// `U_a`, evaluated by building the tree and its second line graph.
    Ua,
}

impl std::fmt::Display for ScanFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScanFamily::Spider(c) => write!(f, "{c}"),
            ScanFamily::Ua => f.write_str("ua"),
        }
    }
}

impl std::str::FromStr for ScanFamily {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("ua") {
            Ok(ScanFamily::Ua)
        } else {
            s.parse().map(ScanFamily::Spider)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub a: u64,
    pub n: u64,
    /// `(1 - R₂(T)) - (1 - R₂(P_n))`.
    pub gap: ExactRational,
    /// `(1 - R₂(T)) / (1 - R₂(P_n))`.
    pub quotient: ExactRational,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub family: ScanFamily,
    /// Smallest `a` from which every scanned parameter passes.
    pub smallest_passing_a: Option<u64>,
    pub rows: Vec<ThresholdRow>,
}

fn check_range(range: &RangeInclusive<u64>) -> Result<()> {
    if range.is_empty() {
        return Err(out_of_range("empty parameter range"));
    }
    if *range.start() < 2 {
        return Err(out_of_range("scans start at a >= 2"));
    }
    Ok(())
}

fn finish(family: ScanFamily, rows: Vec<ThresholdRow>) -> ThresholdReport {
    let smallest_passing_a = rows
        .iter()
        .rev()
        .take_while(|r| r.passes)
        .last()
        .map(|r| r.a);
    ThresholdReport {
        family,
        smallest_passing_a,
        rows,
    }
}

/// Exact gap per `a` for a balanced spider case, from the closed forms.
pub fn threshold_scan(case: SpiderCase, a_range: RangeInclusive<u64>) -> Result<ThresholdReport> {
    check_range(&a_range)?;
    let rows = a_range
        .map(|a| {
            let gap = spider_gap(a, case)?;
            Ok(ThresholdRow {
                a,
                n: case.order(a),
                passes: gap.is_positive(),
                gap,
                quotient: limit_ratio(a, case)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(ScanFamily::Spider(case), rows))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem5Check {
    pub a: u64,
    pub n: u64,
    pub w_ua: WienerValue,
    pub w2_ua: WienerValue,
    pub r2_ua: ExactRational,
    pub r2_path: ExactRational,
    pub holds: bool,
}

/// Builds `U_a`, computes `R₂(U_a)` exactly and compares it with the path of
/// order `a² + 3a`.
pub fn verify_theorem5(a: u64, budget: usize) -> Result<Theorem5Check> {
    if a < 2 {
        return Err(out_of_range("U_a needs a >= 2"));
    }
    let g = FamilySpec::SubdividedQuipu(a as usize).build()?;
    let report = ratio_rk(&g, 2, budget)?;
    let n = g.order() as u64;
    let r2_ua = report
        .r2()
        .cloned()
        .expect("U_a has a nonempty second line graph");
    let r2_path = r2_path(n)?;
    Ok(Theorem5Check {
        a,
        n,
        w_ua: report.wiener,
        w2_ua: report.wiener_k[1].expect("nonempty"),
        holds: r2_ua < r2_path,
        r2_ua,
        r2_path,
    })
}

/// `verify_theorem5` over a range, as a threshold table.
pub fn theorem5_scan(a_range: RangeInclusive<u64>, budget: usize) -> Result<ThresholdReport> {
    check_range(&a_range)?;
    let rows = a_range
        .map(|a| {
            let c = verify_theorem5(a, budget)?;
            let one = ExactRational::one();
            Ok(ThresholdRow {
                a,
                n: c.n,
                gap: &c.r2_path - &c.r2_ua,
                quotient: (&one - &c.r2_ua) / (&one - &c.r2_path),
                passes: c.holds,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(ScanFamily::Ua, rows))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma4Deviation {
    pub a: u64,
    pub w_ua: WienerValue,
    pub d2_ua: SignedWiener,
    /// `W(U_a) / (⅔a⁵) - 1`.
    pub w_dev: ExactRational,
    /// `D₂(U_a) / (⅙a⁴) - 1`.
    pub d2_dev: ExactRational,
}

/// Relative deviation of `W(U_a)` and `D₂(U_a)` from their leading terms.
pub fn lemma4_deviation(a: u64, budget: usize) -> Result<Lemma4Deviation> {
    let c = verify_theorem5(a, budget)?;
    let d2_ua = SignedWiener::difference(c.w_ua, c.w2_ua);
    let a_r = ExactRational::integer(a);
    let pow = |k: u32| (0..k).fold(ExactRational::one(), |acc, _| &acc * &a_r);
    let w_lead = ExactRational::new(2, 3) * pow(5);
    let d2_lead = ExactRational::new(1, 6) * pow(4);
    Ok(Lemma4Deviation {
        a,
        w_ua: c.w_ua,
        w_dev: ExactRational::from(c.w_ua) / w_lead - ExactRational::one(),
        d2_dev: ExactRational::from(&d2_ua) / d2_lead - ExactRational::one(),
        d2_ua,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::w_subdivided_quipu;
    use crate::graph::DEFAULT_BUDGET;

    #[test]
    fn spider_thresholds() {
        for case in SpiderCase::ALL {
            let r = threshold_scan(case, 2..=30).unwrap();
            assert_eq!(r.smallest_passing_a, Some(7), "case {case}");
            assert!(!r.rows[4].passes);
        }
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 5..=4;
        assert!(threshold_scan(SpiderCase::I, empty).is_err());
        assert!(threshold_scan(SpiderCase::I, 1..=4).is_err());
    }

    #[test]
    fn quotients_increase_toward_limit() {
        let limit = crate::closed_forms::fifteen_fourteenths();
        for case in SpiderCase::ALL {
            let r = threshold_scan(case, 7..=30).unwrap();
            for w in r.rows.windows(2) {
                assert!(w[0].quotient < w[1].quotient, "case {case} a = {}", w[0].a);
            }
            for row in &r.rows {
                assert!(row.quotient > ExactRational::one() && row.quotient < limit);
            }
        }
    }

    #[test]
    fn raw_gap_peaks_and_shrinks() {
        // Both sides of the gap decay like 1/a, so the difference itself is
        // not monotone past the threshold.
        let r = threshold_scan(SpiderCase::I, 7..=30).unwrap();
        assert!(r.rows[0].gap < r.rows[5].gap);
        assert!(r.rows[23].gap < r.rows[10].gap);
    }

    #[test]
    fn theorem5_small_a_reports_values() {
        let c = verify_theorem5(2, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.n, 10);
        assert_eq!(c.w_ua, w_subdivided_quipu(2).unwrap());
        assert!(verify_theorem5(1, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn lemma4_and_theorem5_agree() {
        for a in [3, 8, 13] {
            let d = lemma4_deviation(a, DEFAULT_BUDGET).unwrap();
            let c = verify_theorem5(a, DEFAULT_BUDGET).unwrap();
            assert_eq!(d.w_ua, c.w_ua);
            assert_eq!(d.w_ua, w_subdivided_quipu(a).unwrap());
        }
    }

    #[test]
    fn smallest_passing_requires_a_passing_suffix() {
        let rows = |p: &[bool]| {
            p.iter()
                .enumerate()
                .map(|(i, &passes)| ThresholdRow {
                    a: i as u64 + 2,
                    n: 0,
                    gap: ExactRational::zero(),
                    quotient: ExactRational::one(),
                    passes,
                })
                .collect::<Vec<_>>()
        };
        let fam = ScanFamily::Ua;
        assert_eq!(
            finish(fam, rows(&[false, true, false, true, true])).smallest_passing_a,
            Some(5)
        );
        assert_eq!(
            finish(fam, rows(&[true, true, false])).smallest_passing_a,
            None
        );
        assert_eq!(finish(fam, rows(&[true, true])).smallest_passing_a, Some(2));
    }
}
