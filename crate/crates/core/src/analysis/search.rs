use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::r2_path;
use crate::enumeration::{canonical_code, CanonicalCode, FreeTrees, TreeFilter, WorkUnit};
use crate::error::{out_of_range, Error, Result};
use crate::graph::{line_graph, wiener_index, Graph};
use crate::rational::ExactRational;

use super::ratio::cmp_fractions;

/// Largest order searched exhaustively unless raised explicitly.
pub const DEFAULT_ORDER_LIMIT: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimizerReport {
    pub order: usize,
    pub class_description: String,
    /// `None` when no tree of the order passes the filter.
    pub min_ratio: Option<ExactRational>,
    /// Canonical codes of every minimizer, sorted.
    pub witnesses: Vec<CanonicalCode>,
    pub trees_scanned: u64,
    pub path_r2: ExactRational,
    /// Trees of the class with `R₂(T) < R₂(P_n)`.
    pub trees_beating_path: u64,
}

impl MinimizerReport {
    pub fn min_beats_path(&self) -> bool {
        self.min_ratio.as_ref().is_some_and(|m| *m < self.path_r2)
    }
}

/// Running exact minimum of `num/den` with all witnesses; merges associatively.
#[derive(Clone, Debug, Default)]
struct MinAccumulator {
    best: Option<(u128, u128)>,
    witnesses: Vec<CanonicalCode>,
    scanned: u64,
    beating: u64,
}

impl MinAccumulator {
    fn offer(&mut self, num: u128, den: u128, tree: &Graph) -> Result<()> {
        let ord = match self.best {
            None => Ordering::Less,
            Some((bn, bd)) => cmp_fractions(num, den, bn, bd),
        };
        match ord {
            Ordering::Less => {
                self.best = Some((num, den));
                self.witnesses.clear();
                self.witnesses.push(canonical_code(tree)?);
            }
            Ordering::Equal => self.witnesses.push(canonical_code(tree)?),
            Ordering::Greater => {}
        }
        Ok(())
    }

    fn merge(mut self, other: MinAccumulator) -> MinAccumulator {
        self.scanned += other.scanned;
        self.beating += other.beating;
        let ord = match (self.best, other.best) {
            (_, None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (Some((an, ad)), Some((bn, bd))) => cmp_fractions(an, ad, bn, bd),
        };
        match ord {
            Ordering::Less => {}
            Ordering::Greater => {
                self.best = other.best;
                self.witnesses = other.witnesses;
            }
            Ordering::Equal => self.witnesses.extend(other.witnesses),
        }
        self
    }
}

fn check_order(n: usize, min: usize, limit: usize) -> Result<()> {
    if n < min {
        return Err(out_of_range(format!("search needs order >= {min}")));
    }
    if n > limit {
        return Err(Error::OrderLimit { order: n, limit });
    }
    Ok(())
}

/// `(W(L²(T)), W(T))` for a tree of order at least 3.
fn second_order_wiener(t: &Graph) -> Result<(u128, u128)> {
    let w = wiener_index(t)?.get();
    let w2 = wiener_index(&line_graph(&line_graph(t)))?.get();
    Ok((w2, w))
}

fn scan_units<F>(trees: &FreeTrees, per_tree: F) -> Result<MinAccumulator>
where
    F: Fn(&Graph, &mut MinAccumulator) -> Result<()> + Sync,
{
    let units: Vec<WorkUnit> = trees.units();
    units
        .par_iter()
        .map(|&unit| {
            let mut acc = MinAccumulator::default();
            for t in trees.unit_trees(unit) {
                acc.scanned += 1;
                per_tree(&t, &mut acc)?;
            }
            Ok(acc)
        })
        .try_reduce(MinAccumulator::default, |a, b| Ok(a.merge(b)))
}

/// Exact minimum of `R₂` over the trees of order `n` passing `filter`, with
/// every minimizer. Errors above `order_limit` instead of sampling.
pub fn min_r2_search(n: usize, filter: TreeFilter, order_limit: usize) -> Result<MinimizerReport> {
    check_order(n, 4, order_limit)?;
    let trees = FreeTrees::with_filter(n, filter)?;
    let path = r2_path(n as u64)?;
    let (pn, pd) = (((n - 2) * (n - 3)) as u128, (n * (n + 1)) as u128);
    let acc = scan_units(&trees, |t, acc| {
        let (w2, w) = second_order_wiener(t)?;
        if cmp_fractions(w2, w, pn, pd) == Ordering::Less {
            acc.beating += 1;
        }
        acc.offer(w2, w, t)
    })?;
    let mut witnesses = acc.witnesses;
    witnesses.sort();
    Ok(MinimizerReport {
        order: n,
        class_description: filter.describe(),
        min_ratio: acc.best.map(|(num, den)| ExactRational::new(num, den)),
        witnesses,
        trees_scanned: acc.scanned,
        path_r2: path,
        trees_beating_path: acc.beating,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Check {
    pub order: usize,
    /// The star attains the minimum of `R₁` over trees.
    pub holds: bool,
    /// The star is the only minimizer.
    pub unique: bool,
    pub star_r1: ExactRational,
    pub min_r1: ExactRational,
    pub minimizers: usize,
    pub trees_scanned: u64,
}

/// Checks over all trees of order `n` that the star minimizes `R₁`.
pub fn verify_theorem1_trees(n: usize, order_limit: usize) -> Result<Theorem1Check> {
    check_order(n, 4, order_limit)?;
    let trees = FreeTrees::new(n)?;
    let acc = scan_units(&trees, |t, acc| {
        let w = wiener_index(t)?.get();
        let w1 = wiener_index(&line_graph(t))?.get();
        acc.offer(w1, w, t)
    })?;
    let star = crate::families::FamilySpec::Star(n).build()?;
    let star_w = wiener_index(&star)?.get();
    let star_w1 = wiener_index(&line_graph(&star))?.get();
    let star_code = canonical_code(&star)?;
    let (bn, bd) = acc.best.expect("at least one tree");
    let holds = cmp_fractions(star_w1, star_w, bn, bd) == Ordering::Equal;
    Ok(Theorem1Check {
        order: n,
        holds,
        unique: holds && acc.witnesses == [star_code],
        star_r1: ExactRational::new(star_w1, star_w),
        min_r1: ExactRational::new(bn, bd),
        minimizers: acc.witnesses.len(),
        trees_scanned: acc.scanned,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuckleyCheck {
    pub max_order: usize,
    /// `(order, trees checked)` for each order from 2.
    pub per_order: Vec<(usize, u64)>,
    pub trees_checked: u64,
    /// Canonical codes of trees violating `W(L(T)) = W(T) - C(n,2)`.
    pub failures: Vec<CanonicalCode>,
}

impl BuckleyCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `W(L(T)) = W(T) - C(n, 2)` over every tree of order `2..=max_order`.
pub fn check_buckley(max_order: usize) -> Result<BuckleyCheck> {
    if max_order < 2 {
        return Err(out_of_range("Buckley check needs max order >= 2"));
    }
    let mut per_order = Vec::new();
    let mut failures = Vec::new();
    for n in 2..=max_order {
        let trees = FreeTrees::new(n)?;
        let pairs = (n * (n - 1) / 2) as u128;
        let results: Vec<(u64, Vec<CanonicalCode>)> = trees
            .units()
            .par_iter()
            .map(|&unit| {
                let mut count = 0u64;
                let mut bad = Vec::new();
                for t in trees.unit_trees(unit) {
                    count += 1;
                    let w = wiener_index(&t)?.get();
                    let w1 = wiener_index(&line_graph(&t))?.get();
                    if w1 + pairs != w {
                        bad.push(canonical_code(&t)?);
                    }
                }
                Ok((count, bad))
            })
            .collect::<Result<_>>()?;
        let count = results.iter().map(|r| r.0).sum();
        per_order.push((n, count));
        failures.extend(results.into_iter().flat_map(|r| r.1));
    }
    failures.sort();
    Ok(BuckleyCheck {
        max_order,
        trees_checked: per_order.iter().map(|p| p.1).sum(),
        per_order,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::ratio::ratio_rk;
    use crate::families::FamilySpec;
    use crate::graph::DEFAULT_BUDGET;

    #[test]
    fn seven_vertices() {
        let r = min_r2_search(7, TreeFilter::default(), DEFAULT_ORDER_LIMIT).unwrap();
        assert_eq!(r.trees_scanned, 11);
        assert_eq!(r.path_r2, ExactRational::new(20, 56));
        // Brute force over the same trees through the public ratio API.
        let mut best: Option<ExactRational> = None;
        for t in FreeTrees::new(7).unwrap().iter() {
            let r2 = ratio_rk(&t, 2, DEFAULT_BUDGET)
                .unwrap()
                .r2()
                .unwrap()
                .clone();
            best = Some(best.map_or(r2.clone(), |b| b.min(r2)));
        }
        assert_eq!(r.min_ratio, best);
        for w in &r.witnesses {
            let t = w.to_tree().unwrap();
            assert_eq!(
                ratio_rk(&t, 2, DEFAULT_BUDGET).unwrap().r2(),
                r.min_ratio.as_ref()
            );
        }
    }

    #[test]
    fn order_limits() {
        assert!(matches!(
            min_r2_search(30, TreeFilter::default(), DEFAULT_ORDER_LIMIT),
            Err(Error::OrderLimit {
                order: 30,
                limit: 22
            })
        ));
        assert!(min_r2_search(3, TreeFilter::default(), DEFAULT_ORDER_LIMIT).is_err());
    }

    #[test]
    fn filtered_class_can_be_empty() {
        let f = TreeFilter {
            min_max_degree: Some(9),
            ..Default::default()
        };
        let r = min_r2_search(6, f, DEFAULT_ORDER_LIMIT).unwrap();
        assert_eq!(r.trees_scanned, 0);
        assert_eq!(r.min_ratio, None);
        assert!(!r.min_beats_path());
    }

    #[test]
    fn minimum_bounds_family_members() {
        for n in [10usize, 12, 13] {
            let r = min_r2_search(n, TreeFilter::default(), DEFAULT_ORDER_LIMIT).unwrap();
            let min = r.min_ratio.clone().unwrap();
            let mut family = vec![FamilySpec::Path(n), FamilySpec::Star(n)];
            let arms = n - 1;
            for a in 1..arms {
                for b in a..arms {
                    if a + b < arms {
                        family.push(FamilySpec::Spider(a, b, arms - a - b));
                    }
                }
            }
            if n == 12 {
                family.push(FamilySpec::Quipu(vec![2, 3, 3]));
            }
            for spec in family {
                let g = spec.build().unwrap();
                let r2 = ratio_rk(&g, 2, DEFAULT_BUDGET)
                    .unwrap()
                    .r2()
                    .unwrap()
                    .clone();
                assert!(min <= r2, "{spec} beats the minimum at n = {n}");
            }
        }
    }

    #[test]
    fn theorem1_small_orders() {
        let c = verify_theorem1_trees(4, DEFAULT_ORDER_LIMIT).unwrap();
        assert!(c.holds && c.unique);
        assert_eq!(c.star_r1, ExactRational::new(3, 9));
        assert!(
            verify_theorem1_trees(8, DEFAULT_ORDER_LIMIT)
                .unwrap()
                .unique
        );
    }

    #[test]
    fn buckley_small() {
        let b = check_buckley(9).unwrap();
        assert!(b.passed());
        assert_eq!(b.trees_checked, 1 + 1 + 2 + 3 + 6 + 11 + 23 + 47);
    }

    #[test]
    fn accumulator_merge_is_order_independent() {
        let trees: Vec<Graph> = FreeTrees::new(9).unwrap().iter().collect();
        let mut parts = Vec::new();
        for chunk in trees.chunks(7) {
            let mut acc = MinAccumulator::default();
            for t in chunk {
                let (w2, w) = second_order_wiener(t).unwrap();
                acc.offer(w2, w, t).unwrap();
            }
            parts.push(acc);
        }
        let forward = parts
            .iter()
            .cloned()
            .fold(MinAccumulator::default(), MinAccumulator::merge);
        let backward = parts
            .into_iter()
            .rev()
            .fold(MinAccumulator::default(), MinAccumulator::merge);
        let mut a = forward.witnesses;
        let mut b = backward.witnesses;
        a.sort();
        b.sort();
        assert_eq!(forward.best, backward.best);
        assert_eq!(a, b);
    }
}
