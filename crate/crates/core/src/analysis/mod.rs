//! Ratio reports, threshold scans and exhaustive searches.

mod ratio;
mod search;
mod theorems;
mod verify;

pub use ratio::{beats_path, ratio_rk, PathComparison, RatioReport};
pub use search::{
    check_buckley, min_r2_search, verify_theorem1_trees, BuckleyCheck, MinimizerReport,
    Theorem1Check, DEFAULT_ORDER_LIMIT,
};
pub use theorems::{
    lemma4_deviation, theorem5_scan, threshold_scan, verify_theorem5, Lemma4Deviation, ScanFamily,
    Theorem5Check, ThresholdReport, ThresholdRow,
};
pub use verify::{all_passed, buckley, deviations, lemmas, paper_numbers, thm1, thm4, thm5, Check};
