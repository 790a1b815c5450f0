use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::closed_forms::r2_path;
use crate::error::{out_of_range, Error, Result};
use crate::graph::{check_budget, line_graph, wiener_index, Graph, WienerValue};
use crate::rational::{ExactRational, SignedWiener};

/// Wiener indices of `G, L(G), …, L^K(G)` and the ratios `R_k = W_k / W`.
///
/// Index `k-1` of `wiener_k` and `r_k` holds level `k`; `None` marks a level
/// whose iterated line graph has no vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioReport {
    pub order: usize,
    pub is_tree: bool,
    pub wiener: WienerValue,
    pub wiener_k: Vec<Option<WienerValue>>,
    pub r_k: Vec<Option<ExactRational>>,
    /// `W - W_2`, when level 2 was computed and is nonempty.
    pub d2: Option<SignedWiener>,
    /// `1 - R_2`.
    pub one_minus_r2: Option<ExactRational>,
    /// `R_2(P_n)` for the path of the same order (`n ≥ 3`).
    pub path_r2: Option<ExactRational>,
    /// `R_2 < R_2(P_n)`, when both sides exist.
    pub beats_path: Option<bool>,
}

impl RatioReport {
    pub fn r2(&self) -> Option<&ExactRational> {
        self.r_k.get(1).and_then(Option::as_ref)
    }
}

pub fn ratio_rk(g: &Graph, k_max: usize, budget: usize) -> Result<RatioReport> {
    if g.order() < 2 {
        return Err(out_of_range("ratio needs a graph of order >= 2"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let wiener = wiener_index(g)?;
    let mut wiener_k = Vec::with_capacity(k_max);
    let mut current = g.clone();
    for _ in 0..k_max {
        if current.order() == 0 {
            wiener_k.push(None);
            continue;
        }
        check_budget(&current, budget)?;
        current = line_graph(&current);
        wiener_k.push(if current.order() == 0 {
            None
        } else {
            Some(wiener_index(&current)?)
        });
    }
    let w = ExactRational::from(wiener);
    let r_k: Vec<Option<ExactRational>> = wiener_k
        .iter()
        .map(|wk| wk.map(|wk| &ExactRational::from(wk) / &w))
        .collect();
    let w2 = wiener_k.get(1).copied().flatten();
    let d2 = w2.map(|w2| SignedWiener::difference(wiener, w2));
    let one_minus_r2 = r_k
        .get(1)
        .and_then(Option::as_ref)
        .map(|r| ExactRational::one() - r.clone());
    let path_r2 = r2_path(g.order() as u64).ok();
    let beats_path = match (r_k.get(1).and_then(Option::as_ref), &path_r2) {
        (Some(r2), Some(p)) => Some(r2 < p),
        _ => None,
    };
    Ok(RatioReport {
        order: g.order(),
        is_tree: g.is_tree(),
        wiener,
        wiener_k,
        r_k,
        d2,
        one_minus_r2,
        path_r2,
        beats_path,
    })
}

/// Outcome of the inequality `D₂(G)/W(G) > 6(n-1)/(n(n+1))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathComparison {
    pub order: usize,
    pub beats_path: bool,
    /// False when the input is not a tree; the inequality is still evaluated.
    pub is_tree: bool,
    pub wiener: WienerValue,
    pub d2: SignedWiener,
}

/// Decides `R₂(G) < R₂(P_n)` through the `D₂` form of the inequality, by
/// cross-multiplication over big integers.
pub fn beats_path(g: &Graph, budget: usize) -> Result<PathComparison> {
    let n = g.order();
    if n < 3 {
        return Err(out_of_range("beats_path needs order >= 3"));
    }
    let w = wiener_index(g)?;
    check_budget(g, budget)?;
    let l1 = line_graph(g);
    check_budget(&l1, budget)?;
    let w2 = wiener_index(&line_graph(&l1))?;
    let d2 = SignedWiener::difference(w, w2);
    let n_big = BigInt::from(n);
    let lhs = &d2.0 * &n_big * (&n_big + 1);
    let rhs = BigInt::from(6) * (&n_big - 1) * BigInt::from(w.get());
    Ok(PathComparison {
        order: n,
        beats_path: lhs > rhs,
        is_tree: g.is_tree(),
        wiener: w,
        d2,
    })
}

/// Compares `a_num/a_den` with `b_num/b_den` for positive denominators.
pub(crate) fn cmp_fractions(a_num: u128, a_den: u128, b_num: u128, b_den: u128) -> Ordering {
    match (a_num.checked_mul(b_den), b_num.checked_mul(a_den)) {
        (Some(l), Some(r)) => l.cmp(&r),
        _ => (BigInt::from(a_num) * BigInt::from(b_den))
            .cmp(&(BigInt::from(b_num) * BigInt::from(a_den))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;
    use crate::graph::DEFAULT_BUDGET;

    fn build(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().build().unwrap()
    }

    #[test]
    fn spider_777() {
        let r = ratio_rk(&build("spider:7,7,7"), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.one_minus_r2, Some(ExactRational::new(1, 4)));
        assert_eq!(r.beats_path, Some(true));
        assert_eq!(r.wiener, WienerValue(1428));
        assert_eq!(r.d2, Some(SignedWiener(357.into())));
    }

    #[test]
    fn path_22() {
        let r = ratio_rk(&build("path:22"), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.r2(), Some(&ExactRational::new(380, 506)));
        assert_eq!(r.beats_path, Some(false));
    }

    #[test]
    fn star_k14_has_negative_d2() {
        let r = ratio_rk(&build("star:5"), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.wiener, WienerValue(16));
        assert_eq!(r.wiener_k[1], Some(WienerValue(18)));
        assert_eq!(r.d2, Some(SignedWiener((-2).into())));
    }

    #[test]
    fn vanished_levels() {
        let r = ratio_rk(&build("path:3"), 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            r.wiener_k,
            vec![Some(WienerValue(1)), Some(WienerValue(0)), None]
        );
        assert_eq!(r.r_k[2], None);
        let r = ratio_rk(&build("path:2"), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.wiener_k, vec![Some(WienerValue(0)), None]);
        assert_eq!(r.beats_path, None);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            ratio_rk(&Graph::empty(1), 2, 10),
            Err(Error::OutOfRange(_))
        ));
        assert_eq!(ratio_rk(&Graph::empty(3), 2, 10), Err(Error::Disconnected));
        assert!(matches!(
            ratio_rk(&build("complete:10"), 3, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(beats_path(&build("path:2"), 100).is_err());
    }

    #[test]
    fn beats_path_cases() {
        assert!(
            beats_path(&build("spider:7,7,7"), DEFAULT_BUDGET)
                .unwrap()
                .beats_path
        );
        assert!(
            !beats_path(&build("spider:6,6,6"), DEFAULT_BUDGET)
                .unwrap()
                .beats_path
        );
        for n in 3..30 {
            let c = beats_path(&build(&format!("path:{n}")), DEFAULT_BUDGET).unwrap();
            assert!(!c.beats_path && c.is_tree);
        }
        let k5 = beats_path(&build("complete:5"), DEFAULT_BUDGET).unwrap();
        assert!(!k5.is_tree);
    }

    #[test]
    fn fraction_comparison() {
        assert_eq!(cmp_fractions(1, 3, 2, 6), Ordering::Equal);
        assert_eq!(cmp_fractions(1, 3, 1, 2), Ordering::Less);
        assert_eq!(cmp_fractions(u128::MAX, 2, u128::MAX, 3), Ordering::Greater);
    }
}
