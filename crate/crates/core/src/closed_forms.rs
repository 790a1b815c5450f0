//! Exact closed forms for Wiener indices of paths, spiders and quipus, and
//! for the balanced-spider comparison against the path.
//!
//! Every polynomial is evaluated over the rationals in the same shape as it is
//! usually written (half-integer coefficients included) and only then checked
//! to be integral.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};
use crate::graph::WienerValue;
use crate::rational::ExactRational;

fn q(v: u64) -> ExactRational {
    ExactRational::integer(v)
}

fn frac(num: i64, den: i64) -> ExactRational {
    ExactRational::new(num, den)
}

/// Evaluates `Σ coeffs[i]·x^i`.
fn poly(coeffs: &[ExactRational], x: u64) -> ExactRational {
    let x = q(x);
    coeffs
        .iter()
        .rev()
        .fold(ExactRational::zero(), |acc, c| &(&acc * &x) + c)
}

/// `W(P_n) = (n-1)n(n+1)/6`.
pub fn w_path(n: u64) -> Result<WienerValue> {
    if n < 1 {
        return Err(out_of_range("w_path needs n >= 1"));
    }
    (q(n - 1) * q(n) * q(n + 1) * frac(1, 6)).to_wiener()
}

/// `R₂(P_n) = (n-2)(n-3) / (n(n+1))`; `L²(P_n)` is empty below `n = 3`.
pub fn r2_path(n: u64) -> Result<ExactRational> {
    if n < 3 {
        return Err(out_of_range("r2_path needs n >= 3"));
    }
    Ok((q(n - 2) * q(n - 3)) / (q(n) * q(n + 1)))
}

/// `1 - R₂(P_n) = D₂(P_n)/W(P_n) = 6(n-1) / (n(n+1))`.
pub fn one_minus_r2_path(n: u64) -> Result<ExactRational> {
    if n < 3 {
        return Err(out_of_range("one_minus_r2_path needs n >= 3"));
    }
    Ok(q(6 * (n - 1)) / (q(n) * q(n + 1)))
}

/// `W(T_{a,b,c}) = s(s+1)(s+2)/6 - abc` with `s = a+b+c`.
pub fn w_spider(a: u64, b: u64, c: u64) -> Result<WienerValue> {
    if a.min(b).min(c) < 1 {
        return Err(out_of_range("w_spider needs a, b, c >= 1"));
    }
    let s = a + b + c;
    (q(s) * q(s + 1) * q(s + 2) * frac(1, 6) - q(a) * q(b) * q(c)).to_wiener()
}

/// `D₂(T_{a,b,c}) = ½(a²+b²+c²) + 2(ab+ac+bc) - ½(a+b+c)`, valid for
/// `a, b, c ≥ 2` only.
pub fn d2_spider(a: u64, b: u64, c: u64) -> Result<WienerValue> {
    if a.min(b).min(c) < 2 {
        return Err(out_of_range("d2_spider needs a, b, c >= 2"));
    }
    let half = frac(1, 2);
    let squares = q(a * a + b * b + c * c);
    let products = q(a * b + a * c + b * c);
    let linear = q(a + b + c);
    (&half * &squares + q(2) * products - half * linear).to_wiener()
}

/// `W(Q_a) = ⅔a⁵ + a⁴ + 2a³ + 5/2 a² + 11/6 a + 1`.
pub fn w_quipu(a: u64) -> Result<WienerValue> {
    if a < 2 {
        return Err(out_of_range("w_quipu needs a >= 2"));
    }
    poly(&[q(1), frac(11, 6), frac(5, 2), q(2), q(1), frac(2, 3)], a).to_wiener()
}

/// `D₂(Q_a) = ⅙a⁴ + a³ + 4/3 a² + 5/2 a + 1`, fitted to and checked against
/// the BFS oracle.
pub fn d2_quipu(a: u64) -> Result<WienerValue> {
    if a < 2 {
        return Err(out_of_range("d2_quipu needs a >= 2"));
    }
    poly(&[q(1), frac(5, 2), frac(4, 3), q(1), frac(1, 6)], a).to_wiener()
}

/// The published `⅙a⁴ + 3a³ + 19/3 a² - 9/2 a + 1`. It exceeds the
/// true `D₂(Q_a)` by `2a³ + 5a² - 7a`; kept for comparison only.
pub fn d2_quipu_published(a: u64) -> Result<WienerValue> {
    if a < 2 {
        return Err(out_of_range("d2_quipu_published needs a >= 2"));
    }
    poly(&[q(1), frac(-9, 2), frac(19, 3), q(3), frac(1, 6)], a).to_wiener()
}

/// `W(U_a)` assembled from `W(Q_a)`: lengthen the spine from `a+2` to `3a`
/// vertices, then add distances from the `2(a-1)` new spine vertices to the
/// `a²` arm vertices, which total `3a⁴ - a³ - 2a²`.
pub fn w_subdivided_quipu(a: u64) -> Result<WienerValue> {
    if a < 2 {
        return Err(out_of_range("w_subdivided_quipu needs a >= 2"));
    }
    let spine_growth = ExactRational::from(w_path(3 * a)?) - ExactRational::from(w_path(a + 2)?);
    let cross = poly(&[q(0), q(0), frac(-2, 1), frac(-1, 1), q(3)], a);
    (ExactRational::from(w_quipu(a)?) + spine_growth + cross).to_wiener()
}

/// The three balanced spiders of order `3a+1`, `3a+2`, `3a+3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpiderCase {
    /// `T_{a,a,a}`
    I,
    /// `T_{a,a,a+1}`
    II,
    /// `T_{a,a+1,a+1}`
    III,
}

impl SpiderCase {
    pub const ALL: [SpiderCase; 3] = [SpiderCase::I, SpiderCase::II, SpiderCase::III];

    pub fn arms(self, a: u64) -> (u64, u64, u64) {
        match self {
            SpiderCase::I => (a, a, a),
            SpiderCase::II => (a, a, a + 1),
            SpiderCase::III => (a, a + 1, a + 1),
        }
    }

    pub fn order(self, a: u64) -> u64 {
        match self {
            SpiderCase::I => 3 * a + 1,
            SpiderCase::II => 3 * a + 2,
            SpiderCase::III => 3 * a + 3,
        }
    }

    /// The balanced spider of order `n ≥ 7`, with `a = ⌊(n-1)/3⌋`.
    pub fn for_order(n: u64) -> Result<(SpiderCase, u64)> {
        if n < 7 {
            return Err(out_of_range("balanced spiders are indexed from order 7"));
        }
        let a = (n - 1) / 3;
        let case = match n - 3 * a {
            1 => SpiderCase::I,
            2 => SpiderCase::II,
            _ => SpiderCase::III,
        };
        Ok((case, a))
    }
}

impl fmt::Display for SpiderCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpiderCase::I => "i",
            SpiderCase::II => "ii",
            SpiderCase::III => "iii",
        })
    }
}

impl FromStr for SpiderCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(SpiderCase::I),
            "ii" | "2" => Ok(SpiderCase::II),
            "iii" | "3" => Ok(SpiderCase::III),
            other => Err(out_of_range(format!("invalid spider case {other:?}"))),
        }
    }
}

/// The quantities of one balanced-spider case at parameter `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedSpiderValues {
    pub case: SpiderCase,
    pub a: u64,
    pub n: u64,
    pub w: WienerValue,
    pub d2: WienerValue,
    pub one_minus_r2_tree: ExactRational,
    pub one_minus_r2_path: ExactRational,
}

/// Per-case closed forms for the balanced spider of parameter `a` and the
/// path of the same order.
pub fn theorem4_case(a: u64, case: SpiderCase) -> Result<BalancedSpiderValues> {
    if a < 2 {
        return Err(out_of_range("balanced spider case needs a >= 2"));
    }
    let n = case.order(a);
    let (w, d2, tree, path) = match case {
        SpiderCase::I => (
            frac(1, 2) * q(a) * q(a + 1) * q(7 * a + 2),
            frac(3, 2) * q(a) * q(5 * a - 1),
            q(3 * (5 * a - 1)) / (q(a + 1) * q(7 * a + 2)),
            q(18 * a) / (q(3 * a + 1) * q(3 * a + 2)),
        ),
        SpiderCase::II => (
            frac(1, 2) * q(a + 1) * q(a + 1) * q(7 * a + 2),
            frac(1, 2) * q(a) * q(15 * a + 7),
            q(a * (15 * a + 7)) / (q(a + 1) * q(a + 1) * q(7 * a + 2)),
            q(2 * (3 * a + 1)) / (q(a + 1) * q(3 * a + 2)),
        ),
        SpiderCase::III => (
            frac(1, 2) * q(a + 1) * q(7 * a * a + 16 * a + 8),
            frac(1, 2) * q(3 * a + 1) * q(5 * a + 4),
            q((3 * a + 1) * (5 * a + 4)) / (q(a + 1) * q(7 * a * a + 16 * a + 8)),
            q(2 * (3 * a + 2)) / (q(a + 1) * q(3 * a + 4)),
        ),
    };
    Ok(BalancedSpiderValues {
        case,
        a,
        n,
        w: w.to_wiener()?,
        d2: d2.to_wiener()?,
        one_minus_r2_tree: tree,
        one_minus_r2_path: path,
    })
}

/// `(1 - R₂(T)) / (1 - R₂(P_n))` for the balanced spider; tends to 15/14.
pub fn limit_ratio(a: u64, case: SpiderCase) -> Result<ExactRational> {
    let v = theorem4_case(a, case)?;
    Ok(v.one_minus_r2_tree / v.one_minus_r2_path)
}

/// `(1 - R₂(T)) - (1 - R₂(P_n))`; positive exactly when the spider beats the path.
pub fn spider_gap(a: u64, case: SpiderCase) -> Result<ExactRational> {
    let v = theorem4_case(a, case)?;
    Ok(v.one_minus_r2_tree - v.one_minus_r2_path)
}

pub fn fifteen_fourteenths() -> ExactRational {
    ExactRational::new(BigInt::from(15), BigInt::from(14))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: u128) -> WienerValue {
        WienerValue(v)
    }

    #[test]
    fn path_values() {
        assert_eq!(w_path(22).unwrap(), w(1771));
        assert_eq!(w_path(1).unwrap(), w(0));
        assert_eq!(w_path(4).unwrap(), w(10));
        assert!(w_path(0).is_err());
        assert_eq!(r2_path(3).unwrap(), ExactRational::zero());
        assert_eq!(r2_path(10).unwrap(), ExactRational::new(28, 55));
        assert_eq!(
            ExactRational::one() - r2_path(22).unwrap(),
            ExactRational::new(126, 506)
        );
        assert!(r2_path(2).is_err());
    }

    #[test]
    fn spider_values() {
        assert_eq!(w_spider(7, 7, 7).unwrap(), w(1428));
        assert_eq!(w_spider(1, 1, 1).unwrap(), w(9));
        assert_eq!(w_spider(3, 4, 5).unwrap(), w(304));
        assert_eq!(d2_spider(7, 7, 7).unwrap(), w(357));
        assert_eq!(d2_spider(2, 2, 2).unwrap(), w(27));
        assert_eq!(d2_spider(3, 4, 5).unwrap(), w(113));
        assert!(d2_spider(1, 2, 2).is_err());
        assert!(w_spider(0, 2, 2).is_err());
    }

    #[test]
    fn quipu_values() {
        assert_eq!(w_quipu(2).unwrap(), w(68));
        assert_eq!(d2_quipu(2).unwrap(), w(22));
        assert_eq!(d2_quipu_published(2).unwrap(), w(44));
        for a in 2..40u64 {
            let gap = d2_quipu_published(a).unwrap().get() - d2_quipu(a).unwrap().get();
            assert_eq!(gap, (2 * a * a * a + 5 * a * a - 7 * a) as u128);
        }
        assert!(w_quipu(1).is_err());
        assert!(d2_quipu(1).is_err());
    }

    #[test]
    fn worked_example_case_i() {
        let v = theorem4_case(7, SpiderCase::I).unwrap();
        assert_eq!(v.n, 22);
        assert_eq!(v.w, w(1428));
        assert_eq!(v.d2, w(357));
        assert_eq!(v.one_minus_r2_tree, ExactRational::new(1, 4));
        assert_eq!(v.one_minus_r2_path, ExactRational::new(126, 506));
    }

    #[test]
    fn limit_ratio_sides_of_one() {
        assert!(limit_ratio(7, SpiderCase::I).unwrap() > ExactRational::one());
        assert!(limit_ratio(2, SpiderCase::I).unwrap() < ExactRational::one());
        let dev = (limit_ratio(1000, SpiderCase::I).unwrap() - fifteen_fourteenths()).abs();
        assert!(dev < ExactRational::new(1, 100));
    }

    #[test]
    fn case_tags() {
        assert_eq!("ii".parse::<SpiderCase>().unwrap(), SpiderCase::II);
        assert!("iv".parse::<SpiderCase>().is_err());
        assert_eq!(SpiderCase::for_order(22).unwrap(), (SpiderCase::I, 7));
        assert_eq!(SpiderCase::for_order(23).unwrap(), (SpiderCase::II, 7));
        assert_eq!(SpiderCase::for_order(24).unwrap(), (SpiderCase::III, 7));
        assert!(SpiderCase::for_order(6).is_err());
    }

    #[test]
    fn case_forms_agree_with_general_forms() {
        for a in 2..=20 {
            for case in SpiderCase::ALL {
                let v = theorem4_case(a, case).unwrap();
                let (x, y, z) = case.arms(a);
                assert_eq!(v.n, x + y + z + 1);
                assert_eq!(v.w, w_spider(x, y, z).unwrap());
                assert_eq!(v.d2, d2_spider(x, y, z).unwrap());
                let w_r = ExactRational::from(v.w);
                let d2_r = ExactRational::from(v.d2);
                assert_eq!(v.one_minus_r2_tree, d2_r / w_r);
                assert_eq!(v.one_minus_r2_path, one_minus_r2_path(v.n).unwrap());
            }
        }
    }

    #[test]
    fn path_second_difference() {
        for n in 3..200u64 {
            let d2 = w_path(n).unwrap().get() - w_path(n - 2).unwrap().get();
            assert_eq!(d2, ((n - 1) * (n - 1)) as u128);
            assert_eq!(
                ExactRational::one() - r2_path(n).unwrap(),
                one_minus_r2_path(n).unwrap()
            );
        }
    }

    proptest! {
        #[test]
        fn d2_spider_symmetric(a in 2u64..500, b in 2u64..500, c in 2u64..500) {
            let v = d2_spider(a, b, c).unwrap();
            prop_assert_eq!(v, d2_spider(b, c, a).unwrap());
            prop_assert_eq!(v, d2_spider(c, b, a).unwrap());
            prop_assert_eq!(w_spider(a, b, c).unwrap(), w_spider(b, a, c).unwrap());
        }
    }
}
