//! Prüfer-sequence oracle for free-tree enumeration.
#![allow(dead_code)]

use std::collections::BTreeSet;

use wiener_core::enumeration::{canonical_code, CanonicalCode};
use wiener_core::Graph;

pub fn prufer_tree(n: usize, seq: &[usize]) -> Graph {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, edges).unwrap()
}

/// Calls `f` on every Prüfer sequence whose label multiplicities are
/// non-increasing in the label. Each tree is isomorphic to one with such a
/// labeling (sort vertices by degree), so every class is reached.
pub fn sorted_degree_sequences(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn counts(
        n: usize,
        label: usize,
        left: usize,
        cap: usize,
        out: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if left == 0 {
            permutations(out, &mut Vec::new(), f);
            return;
        }
        if label == n {
            return;
        }
        for c in (1..=cap.min(left)).rev() {
            out.push(c);
            counts(n, label + 1, left - c, c, out, f);
            out.pop();
        }
    }
    // Distinct orderings of the multiset {label i repeated counts[i] times}.
    fn permutations(counts: &mut Vec<usize>, seq: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if counts.iter().all(|&c| c == 0) {
            f(seq);
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                seq.push(i);
                permutations(counts, seq, f);
                seq.pop();
                counts[i] += 1;
            }
        }
    }
    counts(n, 0, n - 2, n - 2, &mut Vec::new(), f);
}

pub fn oracle_classes(n: usize) -> BTreeSet<CanonicalCode> {
    let mut seen = BTreeSet::new();
    sorted_degree_sequences(n, &mut |seq| {
        seen.insert(canonical_code(&prufer_tree(n, seq)).unwrap());
    });
    seen
}

pub fn full_prufer_classes(n: usize) -> BTreeSet<CanonicalCode> {
    let mut seen = BTreeSet::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        seen.insert(canonical_code(&prufer_tree(n, &seq)).unwrap());
        let mut i = 0;
        while i < seq.len() && seq[i] == n - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            return seen;
        }
        seq[i] += 1;
    }
}
