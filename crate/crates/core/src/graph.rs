//! Simple undirected graphs, the line-graph operator and exact Wiener indices.
//!
//! Distances are computed by breadth-first search from every vertex. Graphs in
//! this crate are unweighted and sparse, so repeated BFS beats any dense
//! all-pairs method and needs only `O(n)` scratch per source.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default vertex limit for iterated line graph construction.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// BFS sources are split across threads only above this order.
const PARALLEL_BFS_THRESHOLD: usize = 512;

/// A simple undirected graph stored as sorted adjacency lists.
///
/// Immutable after construction. Every constructor checks symmetry, range,
/// absence of loops and of duplicate edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// The graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Builds a graph of order `n` from an edge list.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { index: x, order: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adjacency })
    }

    /// Trusted constructor; lists must already be sorted and symmetric.
    pub(crate) fn from_sorted_adjacency(adjacency: Vec<Vec<usize>>) -> Self {
        debug_assert!(adjacency.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        Graph { adjacency }
    }

    /// Builds a tree from a parent array; `parents[0]` is ignored (the root).
    pub(crate) fn from_parents(parents: &[usize]) -> Self {
        let mut adjacency = vec![Vec::new(); parents.len()];
        for (v, &p) in parents.iter().enumerate().skip(1) {
            adjacency[p].push(v);
            adjacency[v].push(p);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { adjacency }
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn size(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Degrees in non-decreasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        degrees.sort_unstable();
        degrees
    }

    /// The empty graph is not connected.
    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    pub fn is_tree(&self) -> bool {
        self.order() >= 1 && self.size() + 1 == self.order() && self.is_connected()
    }

    /// Σ_v C(deg(v), 2), the edge count of the line graph.
    pub fn line_graph_size(&self) -> u128 {
        self.adjacency
            .iter()
            .map(|l| {
                let d = l.len() as u128;
                d * d.saturating_sub(1) / 2
            })
            .sum()
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.order();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::OutOfRange("relabeling is not a permutation".into()));
            }
        }
        if perm.len() != n {
            return Err(Error::OutOfRange("relabeling is not a permutation".into()));
        }
        Graph::from_edges(n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }
}

/// The line graph of `g`.
///
/// Vertex `i` of the result is the `i`-th edge of `g` in lexicographic order of
/// its endpoint pair.
pub fn line_graph(g: &Graph) -> Graph {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    let mut m = 0;
    for (u, v) in g.edges() {
        incident[u].push(m);
        incident[v].push(m);
        m += 1;
    }
    let mut adjacency = vec![Vec::new(); m];
    for edges in &incident {
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                adjacency[e].push(f);
                adjacency[f].push(e);
            }
        }
    }
    // Two distinct edges of a simple graph share at most one endpoint.
    for list in &mut adjacency {
        list.sort_unstable();
    }
    Graph::from_sorted_adjacency(adjacency)
}

/// `L^k(g)`, failing once a graph about to be built would exceed `budget`
/// vertices or edges.
pub fn iterated_line_graph(g: &Graph, k: usize, budget: usize) -> Result<Graph> {
    let mut current = g.clone();
    for _ in 0..k {
        check_budget(&current, budget)?;
        current = line_graph(&current);
    }
    Ok(current)
}

pub(crate) fn check_budget(g: &Graph, budget: usize) -> Result<()> {
    let vertices = g.size() as u128;
    if vertices > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "vertices",
            needed: vertices,
            limit: budget,
        });
    }
    let edges = g.line_graph_size();
    if edges > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "edges",
            needed: edges,
            limit: budget,
        });
    }
    Ok(())
}

/// An exact Wiener index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WienerValue(pub u128);

impl WienerValue {
    pub fn get(self) -> u128 {
        self.0
    }
}

impl fmt::Display for WienerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u128> for WienerValue {
    fn from(v: u128) -> Self {
        WienerValue(v)
    }
}

// Serialized as a decimal string so JSON consumers never round it.
impl Serialize for WienerValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for WienerValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map(WienerValue).map_err(serde::de::Error::custom)
    }
}

/// Sum of distances over unordered vertex pairs of a connected graph.
pub fn wiener_index(g: &Graph) -> Result<WienerValue> {
    let n = g.order();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let total = if n >= PARALLEL_BFS_THRESHOLD {
        (0..n)
            .into_par_iter()
            .map_init(
                || BfsScratch::new(n),
                |scratch, s| scratch.distance_sum(g, s),
            )
            .try_reduce(|| 0u128, |a, b| a.checked_add(b).ok_or(Error::Overflow))?
    } else {
        let mut scratch = BfsScratch::new(n);
        let mut total = 0u128;
        for s in 0..n {
            total = total
                .checked_add(scratch.distance_sum(g, s)?)
                .ok_or(Error::Overflow)?;
        }
        total
    };
    // Every unordered pair was counted from both ends.
    Ok(WienerValue(total / 2))
}

struct BfsScratch {
    dist: Vec<u32>,
    queue: VecDeque<usize>,
}

impl BfsScratch {
    fn new(n: usize) -> Self {
        BfsScratch {
            dist: vec![u32::MAX; n],
            queue: VecDeque::with_capacity(n),
        }
    }

    /// Σ_v d(source, v), or `Disconnected` if some vertex is unreachable.
    fn distance_sum(&mut self, g: &Graph, source: usize) -> Result<u128> {
        self.dist.fill(u32::MAX);
        self.dist[source] = 0;
        self.queue.clear();
        self.queue.push_back(source);
        let mut reached = 1usize;
        let mut sum = 0u128;
        while let Some(u) = self.queue.pop_front() {
            let next = self.dist[u] + 1;
            for &v in g.neighbors(u) {
                if self.dist[v] == u32::MAX {
                    self.dist[v] = next;
                    sum += next as u128;
                    reached += 1;
                    self.queue.push_back(v);
                }
            }
        }
        if reached != g.order() {
            return Err(Error::Disconnected);
        }
        Ok(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn star(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (0, i))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { index: 2, order: 2 })
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn line_graph_small_cases() {
        assert_eq!(line_graph(&path(4)), path(3));
        assert_eq!(line_graph(&star(4)), complete(3));
        let c5 = line_graph(&cycle(5));
        assert_eq!(c5.order(), 5);
        assert_eq!(c5.degree_sequence(), vec![2; 5]);
        assert!(c5.is_connected());
        assert_eq!(line_graph(&Graph::empty(0)), Graph::empty(0));
        assert_eq!(line_graph(&Graph::empty(3)), Graph::empty(0));
    }

    #[test]
    fn iterated_identity_and_paths() {
        let g = star(5);
        assert_eq!(iterated_line_graph(&g, 0, 10).unwrap(), g);
        assert_eq!(iterated_line_graph(&path(5), 2, 100).unwrap(), path(3));
        assert_eq!(iterated_line_graph(&star(4), 2, 100).unwrap(), complete(3));
    }

    #[test]
    fn budget_guard_trips_on_complete_graphs() {
        let err = iterated_line_graph(&complete(12), 3, 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn wiener_small_cases() {
        assert_eq!(wiener_index(&path(4)).unwrap(), WienerValue(10));
        assert_eq!(wiener_index(&path(1)).unwrap(), WienerValue(0));
        for n in 1..10 {
            let expected = (n * (n - 1) / 2) as u128;
            assert_eq!(wiener_index(&complete(n)).unwrap(), WienerValue(expected));
        }
        assert_eq!(wiener_index(&Graph::empty(0)), Err(Error::EmptyGraph));
        assert_eq!(wiener_index(&Graph::empty(2)), Err(Error::Disconnected));
    }

    #[test]
    fn wiener_parallel_path_matches_formula() {
        let n = 2000u128;
        let w = wiener_index(&path(n as usize)).unwrap();
        assert_eq!(w.get(), (n - 1) * n * (n + 1) / 6);
    }

    #[test]
    fn connectivity_and_degrees() {
        assert!(path(3).is_connected());
        assert!(!Graph::empty(2).is_connected());
        assert!(!Graph::empty(0).is_connected());
        assert_eq!(star(4).degree_sequence(), vec![1, 1, 1, 3]);
    }

    #[test]
    fn wiener_value_serializes_as_string() {
        let json = serde_json::to_string(&WienerValue(1428)).unwrap();
        assert_eq!(json, "\"1428\"");
        let back: WienerValue = serde_json::from_str(&json).unwrap();
        assert_eq!(back, WienerValue(1428));
    }
}
