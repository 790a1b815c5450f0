//! Free tree enumeration and canonical codes.
//!
//! Every free tree has either a unique centroid, all of whose branches have
//! fewer than `n/2` vertices, or two adjacent centroids splitting the tree
//! into two halves of `n/2` vertices. The generator walks both cases:
//!
//! * unique centroid: a root plus a multiset of rooted trees of total size
//!   `n-1`, each of size at most `⌊(n-1)/2⌋`;
//! * bicentroid: an unordered pair of rooted trees of size `n/2`.
//!
//! Rooted trees come from a catalog in which every isomorphism class of
//! rooted tree appears exactly once, so multisets of catalog indices stand
//! for distinct trees. A multiset is stored as a non-increasing index
//! sequence. Indices grow with subtree size, and the single vertex is index
//! 0, so any remainder can always be completed and the walk never dead-ends
//! when no degree bound is set.
//!
//! Work units are the choices of the largest root branch (plus one unit for
//! the bicentroid trees); each unit is enumerated independently.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

const NO_PARENT: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct RootedShape {
    size: u32,
    /// Preorder parent array, `parents[0] == NO_PARENT`.
    parents: Vec<u32>,
    /// Max vertex degree once the root gains an edge to a parent.
    hung_max_degree: u32,
    /// Degree-3 vertices once the root gains an edge to a parent.
    hung_degree3: u32,
}

/// Every rooted tree up to a given size, once per isomorphism class, indexed
/// in non-decreasing order of size.
#[derive(Debug)]
struct RootedCatalog {
    shapes: Vec<RootedShape>,
    /// `first_of_size[s]` is the first index of size `s`; has `max_size + 2` entries.
    first_of_size: Vec<usize>,
}

impl RootedCatalog {
    fn build(max_size: usize) -> RootedCatalog {
        let mut catalog = RootedCatalog {
            shapes: Vec::new(),
            first_of_size: vec![0, 0],
        };
        for size in 1..=max_size {
            let mut new_shapes = Vec::new();
            if size == 1 {
                new_shapes.push(catalog.assemble(&[]));
            } else {
                let allowed = vec![true; catalog.shapes.len()];
                let mut walk = MultisetWalk::new(
                    &catalog,
                    &allowed,
                    (size - 1) as u32,
                    usize::MAX,
                    catalog.shapes.len() - 1,
                    Vec::new(),
                );
                while let Some(seq) = walk.next_sequence() {
                    new_shapes.push(catalog.assemble(seq));
                }
            }
            catalog.shapes.extend(new_shapes);
            catalog.first_of_size.push(catalog.shapes.len());
        }
        catalog
    }

    fn assemble(&self, children: &[u32]) -> RootedShape {
        let mut parents = vec![NO_PARENT];
        let mut hung_max_degree = children.len() as u32 + 1;
        let mut hung_degree3 = u32::from(children.len() == 2);
        for &c in children {
            let child = &self.shapes[c as usize];
            let offset = parents.len() as u32;
            parents.extend(child.parents.iter().map(
                |&p| {
                    if p == NO_PARENT {
                        0
                    } else {
                        p + offset
                    }
                },
            ));
            hung_max_degree = hung_max_degree.max(child.hung_max_degree);
            hung_degree3 += child.hung_degree3;
        }
        RootedShape {
            size: parents.len() as u32,
            parents,
            hung_max_degree,
            hung_degree3,
        }
    }

    fn size(&self, idx: u32) -> u32 {
        self.shapes[idx as usize].size
    }

    /// Largest index whose shape has at most `size` vertices.
    fn last_with_size_at_most(&self, size: u32) -> Option<usize> {
        let s = (size as usize).min(self.first_of_size.len() - 2);
        self.first_of_size[s + 1].checked_sub(1)
    }
}

/// Walks non-increasing index sequences whose sizes sum to `target`.
struct MultisetWalk<'a> {
    catalog: &'a RootedCatalog,
    allowed: &'a [bool],
    target: u32,
    max_parts: usize,
    max_index: usize,
    fixed: usize,
    seq: Vec<u32>,
    /// `prefix[i]` is the total size of `seq[..i]`.
    prefix: Vec<u32>,
    started: bool,
    done: bool,
}

impl<'a> MultisetWalk<'a> {
    fn new(
        catalog: &'a RootedCatalog,
        allowed: &'a [bool],
        target: u32,
        max_parts: usize,
        max_index: usize,
        fixed: Vec<u32>,
    ) -> Self {
        let mut prefix = vec![0];
        for &i in &fixed {
            let last = *prefix.last().unwrap();
            prefix.push(last + catalog.size(i));
        }
        let done = *prefix.last().unwrap() > target || fixed.len() > max_parts;
        MultisetWalk {
            catalog,
            allowed,
            target,
            max_parts,
            max_index,
            fixed: fixed.len(),
            seq: fixed,
            prefix,
            started: false,
            done,
        }
    }

    fn remaining(&self, pos: usize) -> u32 {
        self.target - self.prefix[pos]
    }

    /// Largest admissible index `< below` for position `pos`.
    fn choose(&self, pos: usize, below: usize) -> Option<u32> {
        let rem = self.remaining(pos);
        let slots = self.max_parts - pos;
        let top = below.min(self.catalog.last_with_size_at_most(rem)? + 1);
        for idx in (0..top).rev() {
            let size = self.catalog.size(idx as u32);
            // Sizes only shrink from here on, so the slot bound is final.
            if (rem as u64) > (slots as u64).saturating_mul(size as u64) {
                return None;
            }
            if self.allowed[idx] {
                return Some(idx as u32);
            }
        }
        None
    }

    fn push(&mut self, idx: u32) {
        let last = *self.prefix.last().unwrap();
        self.seq.push(idx);
        self.prefix.push(last + self.catalog.size(idx));
    }

    fn pop(&mut self) {
        self.seq.pop();
        self.prefix.pop();
    }

    /// Greedy completion; false if stuck.
    fn fill(&mut self) -> bool {
        while self.remaining(self.seq.len()) > 0 {
            let pos = self.seq.len();
            if pos >= self.max_parts {
                return false;
            }
            let below = match self.seq.last() {
                Some(&p) if pos > 0 => p as usize + 1,
                _ => self.max_index + 1,
            };
            match self.choose(pos, below) {
                Some(idx) => self.push(idx),
                None => return false,
            }
        }
        true
    }

    /// Replaces the last free entry by the next smaller admissible one.
    fn step_back(&mut self) -> bool {
        while self.seq.len() > self.fixed {
            let pos = self.seq.len() - 1;
            let current = self.seq[pos];
            self.pop();
            if let Some(idx) = self.choose(pos, current as usize) {
                self.push(idx);
                return true;
            }
        }
        false
    }

    fn next_sequence(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.fill() {
                return Some(&self.seq);
            }
        }
        loop {
            if !self.step_back() {
                self.done = true;
                return None;
            }
            if self.fill() {
                return Some(&self.seq);
            }
        }
    }
}

/// Degree constraints on enumerated trees. Upper bounds prune the generator;
/// lower bounds are checked per tree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeFilter {
    /// Δ(T) ≤ this.
    pub max_degree: Option<usize>,
    /// Δ(T) ≥ this.
    pub min_max_degree: Option<usize>,
    /// At most this many vertices of degree 3.
    pub max_degree3: Option<usize>,
    /// At least this many vertices of degree 3.
    pub min_degree3: Option<usize>,
}

impl TreeFilter {
    pub fn is_empty(&self) -> bool {
        *self == TreeFilter::default()
    }

    pub fn accepts_profile(&self, max_degree: usize, degree3: usize) -> bool {
        self.max_degree.is_none_or(|d| max_degree <= d)
            && self.min_max_degree.is_none_or(|d| max_degree >= d)
            && self.max_degree3.is_none_or(|d| degree3 <= d)
            && self.min_degree3.is_none_or(|d| degree3 >= d)
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        let degree3 = (0..g.order()).filter(|&v| g.degree(v) == 3).count();
        self.accepts_profile(g.max_degree(), degree3)
    }

    fn allows_shape(&self, shape: &RootedShape) -> bool {
        self.max_degree
            .is_none_or(|d| shape.hung_max_degree as usize <= d)
            && self
                .max_degree3
                .is_none_or(|d| shape.hung_degree3 as usize <= d)
    }

    /// Human-readable class description used in reports.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(d) = self.min_max_degree {
            parts.push(format!("Δ ≥ {d}"));
        }
        if let Some(d) = self.max_degree {
            parts.push(format!("Δ ≤ {d}"));
        }
        if let Some(d) = self.min_degree3 {
            parts.push(format!("≥ {d} vertices of degree 3"));
        }
        if let Some(d) = self.max_degree3 {
            parts.push(format!("≤ {d} vertices of degree 3"));
        }
        if parts.is_empty() {
            "all trees".to_string()
        } else {
            format!("trees with {}", parts.join(", "))
        }
    }
}

/// One independently enumerable slice of the free trees of an order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WorkUnit {
    /// The one-vertex tree.
    Single,
    /// Unique-centroid trees whose largest root branch is catalog entry `first`.
    Centroid { first: u32 },
    /// All bicentroid trees.
    Bicentroid,
}

/// The free trees of order `n`, optionally filtered by degree.
#[derive(Clone, Debug)]
pub struct FreeTrees {
    n: usize,
    filter: TreeFilter,
    catalog: Arc<RootedCatalog>,
    allowed: Arc<Vec<bool>>,
}

impl FreeTrees {
    pub fn new(n: usize) -> Result<FreeTrees> {
        FreeTrees::with_filter(n, TreeFilter::default())
    }

    pub fn with_filter(n: usize, filter: TreeFilter) -> Result<FreeTrees> {
        if n < 1 {
            return Err(Error::OutOfRange("free trees need n >= 1".into()));
        }
        if n > u32::MAX as usize / 2 {
            return Err(Error::OutOfRange(format!("order {n} is too large")));
        }
        let catalog = RootedCatalog::build(n / 2);
        let allowed = catalog
            .shapes
            .iter()
            .map(|s| filter.allows_shape(s))
            .collect();
        Ok(FreeTrees {
            n,
            filter,
            catalog: Arc::new(catalog),
            allowed: Arc::new(allowed),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn filter(&self) -> &TreeFilter {
        &self.filter
    }

    /// Disjoint work units covering every tree, in emission order.
    pub fn units(&self) -> Vec<WorkUnit> {
        if self.n == 1 {
            return vec![WorkUnit::Single];
        }
        let mut units = Vec::new();
        let half = ((self.n - 1) / 2) as u32;
        if let Some(last) = self.catalog.last_with_size_at_most(half) {
            if half >= 1 {
                units.extend(
                    (0..=last as u32)
                        .rev()
                        .filter(|&i| self.allowed[i as usize])
                        .map(|first| WorkUnit::Centroid { first }),
                );
            }
        }
        if self.n.is_multiple_of(2) {
            units.push(WorkUnit::Bicentroid);
        }
        units
    }

    /// Trees of one work unit, in deterministic order.
    pub fn unit_trees(&self, unit: WorkUnit) -> UnitTrees<'_> {
        UnitTrees {
            trees: self,
            state: match unit {
                WorkUnit::Single => UnitState::Single(false),
                WorkUnit::Centroid { first } => UnitState::Centroid(self.centroid_walk(first)),
                WorkUnit::Bicentroid => UnitState::Bicentroid(self.bicentroid_pairs()),
            },
        }
    }

    /// All trees, in deterministic order.
    pub fn iter(&self) -> impl Iterator<Item = Graph> + '_ {
        self.units()
            .into_iter()
            .flat_map(move |u| self.unit_trees(u))
    }

    fn centroid_walk(&self, first: u32) -> MultisetWalk<'_> {
        MultisetWalk::new(
            &self.catalog,
            &self.allowed,
            (self.n - 1) as u32,
            self.filter.max_degree.unwrap_or(usize::MAX),
            first as usize,
            vec![first],
        )
    }

    fn bicentroid_pairs(&self) -> std::vec::IntoIter<(u32, u32)> {
        let half = (self.n / 2) as u32;
        let lo = self.catalog.first_of_size[half as usize];
        let hi = self.catalog.first_of_size[half as usize + 1];
        let mut pairs = Vec::new();
        for larger in (lo..hi).rev() {
            if !self.allowed[larger] {
                continue;
            }
            for smaller in (lo..=larger).rev() {
                if self.allowed[smaller] {
                    pairs.push((larger as u32, smaller as u32));
                }
            }
        }
        pairs.into_iter()
    }

    fn root_with_branches(&self, branches: &[u32]) -> Option<Graph> {
        let mut max_degree = branches.len();
        let mut degree3 = usize::from(branches.len() == 3);
        for &b in branches {
            let s = &self.catalog.shapes[b as usize];
            max_degree = max_degree.max(s.hung_max_degree as usize);
            degree3 += s.hung_degree3 as usize;
        }
        if !self.filter.accepts_profile(max_degree, degree3) {
            return None;
        }
        let mut parents = vec![0usize];
        for &b in branches {
            self.append_shape(&mut parents, b, 0);
        }
        Some(Graph::from_parents(&parents))
    }

    fn joined_pair(&self, larger: u32, smaller: u32) -> Option<Graph> {
        let a = &self.catalog.shapes[larger as usize];
        let b = &self.catalog.shapes[smaller as usize];
        let max_degree = a.hung_max_degree.max(b.hung_max_degree) as usize;
        let degree3 = (a.hung_degree3 + b.hung_degree3) as usize;
        if !self.filter.accepts_profile(max_degree, degree3) {
            return None;
        }
        let mut parents: Vec<usize> = a
            .parents
            .iter()
            .map(|&p| if p == NO_PARENT { 0 } else { p as usize })
            .collect();
        self.append_shape(&mut parents, smaller, 0);
        Some(Graph::from_parents(&parents))
    }

    fn append_shape(&self, parents: &mut Vec<usize>, idx: u32, attach: usize) {
        let offset = parents.len();
        parents.extend(self.catalog.shapes[idx as usize].parents.iter().map(|&p| {
            if p == NO_PARENT {
                attach
            } else {
                p as usize + offset
            }
        }));
    }
}

enum UnitState<'a> {
    Single(bool),
    Centroid(MultisetWalk<'a>),
    Bicentroid(std::vec::IntoIter<(u32, u32)>),
}

/// Iterator over the trees of one work unit.
pub struct UnitTrees<'a> {
    trees: &'a FreeTrees,
    state: UnitState<'a>,
}

impl Iterator for UnitTrees<'_> {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            match &mut self.state {
                UnitState::Single(done) => {
                    if std::mem::replace(done, true) {
                        return None;
                    }
                    let g = Graph::empty(1);
                    if self.trees.filter.accepts(&g) {
                        return Some(g);
                    }
                }
                UnitState::Centroid(walk) => {
                    let seq = walk.next_sequence()?;
                    if let Some(g) = self.trees.root_with_branches(seq) {
                        return Some(g);
                    }
                }
                UnitState::Bicentroid(pairs) => {
                    let (a, b) = pairs.next()?;
                    if let Some(g) = self.trees.joined_pair(a, b) {
                        return Some(g);
                    }
                }
            }
        }
    }
}

/// All free trees of order `n`.
pub fn free_trees(n: usize) -> Result<Vec<Graph>> {
    Ok(FreeTrees::new(n)?.iter().collect())
}

/// Number of rooted trees with `n` vertices, from the catalog.
pub fn rooted_tree_count(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let c = RootedCatalog::build(n);
    c.first_of_size[n + 1] - c.first_of_size[n]
}

/// Isomorphism-invariant encoding of a tree: the balanced-parenthesis string
/// of the tree rooted at its center, children in canonical order. For a
/// bicentral tree the smaller of the two rootings is used.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Rebuilds a tree with this code (vertices in preorder).
    pub fn to_tree(&self) -> Result<Graph> {
        let mut parents: Vec<usize> = Vec::with_capacity(self.0.len() / 2);
        let mut stack: Vec<usize> = Vec::new();
        for (i, &b) in self.0.iter().enumerate() {
            match b {
                b'(' => {
                    let v = parents.len();
                    parents.push(stack.last().copied().unwrap_or(0));
                    if v > 0 && stack.is_empty() {
                        return Err(parse_code_err(i));
                    }
                    stack.push(v);
                }
                b')' => {
                    stack.pop().ok_or_else(|| parse_code_err(i))?;
                }
                _ => return Err(parse_code_err(i)),
            }
        }
        if !stack.is_empty() || parents.is_empty() {
            return Err(parse_code_err(self.0.len()));
        }
        Ok(Graph::from_parents(&parents))
    }
}

fn parse_code_err(offset: usize) -> Error {
    Error::Parse {
        offset,
        message: "malformed canonical code".into(),
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.0).expect("codes are ASCII"))
    }
}

impl std::str::FromStr for CanonicalCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let code = CanonicalCode(s.as_bytes().to_vec());
        code.to_tree()?;
        Ok(code)
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Canonical code of a tree; errors on anything that is not a tree.
pub fn canonical_code(t: &Graph) -> Result<CanonicalCode> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let centers = tree_centers(t);
    let code = centers
        .iter()
        .map(|&c| rooted_code(t, c))
        .min()
        .expect("a tree has one or two centers");
    Ok(CanonicalCode(code))
}

/// Centers by repeated leaf removal.
fn tree_centers(t: &Graph) -> Vec<usize> {
    let n = t.order();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &u in t.neighbors(leaf) {
                degree[u] -= 1;
                if degree[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Parenthesis code of `t` rooted at `root`. Subtree classes get integer
/// labels ordered by (height, sorted child labels), which is an intrinsic
/// order on rooted trees; children are written in increasing label order.
fn rooted_code(t: &Graph, root: usize) -> Vec<u8> {
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    order.push(root);
    parent[root] = root;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in t.neighbors(u) {
            if parent[v] == usize::MAX {
                parent[v] = u;
                order.push(v);
            }
        }
    }
    let mut height = vec![0usize; n];
    for &v in order.iter().rev() {
        if v != root {
            let p = parent[v];
            height[p] = height[p].max(height[v] + 1);
        }
    }
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in &order[1..] {
        kids[parent[v]].push(v);
    }

    let max_height = height[root];
    let mut by_height: Vec<Vec<usize>> = vec![Vec::new(); max_height + 1];
    for v in 0..n {
        by_height[height[v]].push(v);
    }
    let mut label = vec![0usize; n];
    let mut next_label = 0;
    for level in &by_height {
        let mut keyed: Vec<(Vec<usize>, usize)> = level
            .iter()
            .map(|&v| {
                let mut key: Vec<usize> = kids[v].iter().map(|&c| label[c]).collect();
                key.sort_unstable();
                (key, v)
            })
            .collect();
        keyed.sort_unstable();
        let mut prev: Option<&Vec<usize>> = None;
        for (key, v) in &keyed {
            if prev != Some(key) {
                next_label += 1;
                prev = Some(key);
            }
            label[*v] = next_label;
        }
    }

    let mut code = Vec::with_capacity(2 * n);
    let mut stack: Vec<(usize, Vec<usize>, usize)> = Vec::new();
    let sorted_children = |v: usize| {
        let mut cs = kids[v].clone();
        cs.sort_by_key(|&c| label[c]);
        cs
    };
    code.push(b'(');
    stack.push((root, sorted_children(root), 0));
    while let Some((_, cs, next)) = stack.last_mut() {
        if *next < cs.len() {
            let c = cs[*next];
            *next += 1;
            code.push(b'(');
            stack.push((c, sorted_children(c), 0));
        } else {
            code.push(b')');
            stack.pop();
        }
    }
    code
}
