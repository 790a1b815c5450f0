mod common;

use std::collections::BTreeSet;

use common::{full_prufer_classes, oracle_classes};

use wiener_core::enumeration::{canonical_code, free_trees, CanonicalCode, FreeTrees};
use wiener_core::io::write_graph6;

const A000055: [usize; 12] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];

fn generated_classes(n: usize) -> BTreeSet<CanonicalCode> {
    let trees = free_trees(n).unwrap();
    let codes: BTreeSet<CanonicalCode> = trees.iter().map(|t| canonical_code(t).unwrap()).collect();
    assert_eq!(
        codes.len(),
        trees.len(),
        "duplicate isomorphism class at n = {n}"
    );
    codes
}

#[test]
fn counts_match_prufer_oracle() {
    for n in 3..=10 {
        let oracle = oracle_classes(n);
        assert_eq!(oracle.len(), A000055[n - 1], "oracle count n = {n}");
        assert_eq!(generated_classes(n), oracle, "n = {n}");
    }
}

#[test]
fn sorted_subset_reaches_every_class() {
    for n in 3..=8 {
        assert_eq!(oracle_classes(n), full_prufer_classes(n), "n = {n}");
    }
}

#[test]
fn larger_counts() {
    for n in 11..=12 {
        assert_eq!(generated_classes(n).len(), A000055[n - 1]);
    }
}

#[test]
fn every_output_is_a_tree_of_the_right_order() {
    for n in 1..=11 {
        for t in FreeTrees::new(n).unwrap().iter() {
            assert_eq!(t.order(), n);
            assert!(t.is_tree());
        }
    }
}

#[test]
fn reruns_are_byte_identical() {
    let dump = |n| {
        free_trees(n)
            .unwrap()
            .iter()
            .map(|t| write_graph6(t) + "\n")
            .collect::<String>()
    };
    for n in [7, 10, 12] {
        assert_eq!(dump(n), dump(n));
    }
}

#[test]
fn canonical_codes_rebuild_the_same_class() {
    for t in free_trees(10).unwrap() {
        let code = canonical_code(&t).unwrap();
        let back = code.to_tree().unwrap();
        assert_eq!(canonical_code(&back).unwrap(), code);
        let parsed: CanonicalCode = code.to_string().parse().unwrap();
        assert_eq!(parsed, code);
    }
}
