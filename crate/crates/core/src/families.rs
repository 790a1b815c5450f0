//! Constructors for the parametric graph families.
//!
//! Labeling convention, shared by every tree family: the spine comes first
//! (for a spider, the centre alone), indexed in path order; pendant arms
//! follow in spine order, each listed from the vertex next to the spine out
//! to the tip.

use std::fmt;
use std::str::FromStr;

use crate::error::{out_of_range, Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path(usize),
    Star(usize),
    Complete(usize),
    /// `K_{1,3}` with its edges subdivided into paths of lengths `a, b, c`.
    Spider(usize, usize, usize),
    /// Open quipu: spine `u_0 … u_{k+1}` with a pendant path of `h[i-1]`
    /// vertices at each `u_i`, `1 ≤ i ≤ k`.
    Quipu(Vec<usize>),
    /// `Q(a; a, …, a)`.
    BalancedQuipu(usize),
    /// The balanced quipu with both end spine edges subdivided into paths of
    /// length `a`.
    SubdividedQuipu(usize),
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Path(n) if *n < 1 => Err(out_of_range("path needs n >= 1")),
            FamilySpec::Star(n) if *n < 2 => Err(out_of_range("star needs n >= 2")),
            FamilySpec::Complete(n) if *n < 1 => Err(out_of_range("complete needs n >= 1")),
            FamilySpec::Spider(a, b, c) if *a.min(b).min(c) < 1 => {
                Err(out_of_range("spider needs a, b, c >= 1"))
            }
            FamilySpec::Quipu(h) if h.is_empty() => Err(out_of_range("quipu needs k >= 1")),
            FamilySpec::Quipu(h) if h.contains(&0) => {
                Err(out_of_range("quipu arm lengths must be >= 1"))
            }
            FamilySpec::BalancedQuipu(a) | FamilySpec::SubdividedQuipu(a) if *a < 2 => {
                Err(out_of_range("quipu parameter a must be >= 2"))
            }
            _ => Ok(()),
        }
    }

    /// Order of `build(self)`, without building it.
    pub fn order(&self) -> Result<usize> {
        self.validate()?;
        Ok(match self {
            FamilySpec::Path(n) | FamilySpec::Star(n) | FamilySpec::Complete(n) => *n,
            FamilySpec::Spider(a, b, c) => a + b + c + 1,
            FamilySpec::Quipu(h) => h.len() + 2 + h.iter().sum::<usize>(),
            FamilySpec::BalancedQuipu(a) => a * a + a + 2,
            FamilySpec::SubdividedQuipu(a) => a * a + 3 * a,
        })
    }

    pub fn is_tree(&self) -> bool {
        !matches!(self, FamilySpec::Complete(n) if *n > 2)
    }

    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        let g = match self {
            FamilySpec::Path(n) => caterpillar(*n, &[]),
            FamilySpec::Star(n) => Graph::from_edges(*n, (1..*n).map(|i| (0, i)))?,
            FamilySpec::Complete(n) => {
                Graph::from_edges(*n, (0..*n).flat_map(|u| (u + 1..*n).map(move |v| (u, v))))?
            }
            FamilySpec::Spider(a, b, c) => {
                let mut b_ = TreeBuilder::new(1);
                for len in [*a, *b, *c] {
                    b_.arm(0, len);
                }
                b_.finish()
            }
            FamilySpec::Quipu(h) => {
                let arms: Vec<(usize, usize)> =
                    h.iter().enumerate().map(|(i, &len)| (i + 1, len)).collect();
                caterpillar(h.len() + 2, &arms)
            }
            FamilySpec::BalancedQuipu(a) => {
                let arms: Vec<(usize, usize)> = (1..=*a).map(|i| (i, *a)).collect();
                caterpillar(a + 2, &arms)
            }
            FamilySpec::SubdividedQuipu(a) => {
                // Spine of 3a vertices: u_0, a-1 subdivision vertices, u_1..u_a,
                // a-1 subdivision vertices, u_{a+1}. u_i sits at index a-1+i.
                let arms: Vec<(usize, usize)> = (1..=*a).map(|i| (a - 1 + i, *a)).collect();
                caterpillar(3 * a, &arms)
            }
        };
        debug_assert_eq!(g.order(), self.order()?);
        Ok(g)
    }
}

pub fn build(spec: &FamilySpec) -> Result<Graph> {
    spec.build()
}

pub fn spec_order(spec: &FamilySpec) -> Result<usize> {
    spec.order()
}

/// A path of `spine` vertices with `(spine index, arm length)` pendant paths.
fn caterpillar(spine: usize, arms: &[(usize, usize)]) -> Graph {
    let mut b = TreeBuilder::new(spine);
    for v in 1..spine {
        b.edge(v - 1, v);
    }
    for &(at, len) in arms {
        b.arm(at, len);
    }
    b.finish()
}

struct TreeBuilder {
    order: usize,
    edges: Vec<(usize, usize)>,
}

impl TreeBuilder {
    fn new(order: usize) -> Self {
        TreeBuilder {
            order,
            edges: Vec::new(),
        }
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    fn arm(&mut self, at: usize, len: usize) {
        let mut prev = at;
        for _ in 0..len {
            let v = self.order;
            self.order += 1;
            self.edge(prev, v);
            prev = v;
        }
    }

    fn finish(self) -> Graph {
        Graph::from_edges(self.order, self.edges).expect("family constructors emit simple graphs")
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Star(n) => write!(f, "star:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::Spider(a, b, c) => write!(f, "spider:{a},{b},{c}"),
            FamilySpec::Quipu(h) => {
                let arms: Vec<String> = h.iter().map(ToString::to_string).collect();
                write!(f, "quipu:{};{}", h.len(), arms.join(","))
            }
            FamilySpec::BalancedQuipu(a) => write!(f, "qa:{a}"),
            FamilySpec::SubdividedQuipu(a) => write!(f, "ua:{a}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses `path:22`, `star:22`, `complete:8`, `spider:7,7,7`,
    /// `quipu:3;4,5,6`, `qa:5` and `ua:5`.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |offset: usize, message: String| Error::Parse { offset, message };
        let (tag, args) = s
            .split_once(':')
            .ok_or_else(|| parse_err(0, format!("expected <family>:<params>, got {s:?}")))?;
        let args_offset = tag.len() + 1;
        let number = |text: &str, at: usize| -> Result<usize> {
            text.trim()
                .parse()
                .map_err(|_| parse_err(at, format!("invalid integer {text:?}")))
        };
        let list = |text: &str, base: usize| -> Result<Vec<usize>> {
            let mut out = Vec::new();
            let mut at = base;
            for part in text.split(',') {
                out.push(number(part, at)?);
                at += part.len() + 1;
            }
            Ok(out)
        };
        let spec = match tag.trim() {
            "path" => FamilySpec::Path(number(args, args_offset)?),
            "star" => FamilySpec::Star(number(args, args_offset)?),
            "complete" => FamilySpec::Complete(number(args, args_offset)?),
            "qa" => FamilySpec::BalancedQuipu(number(args, args_offset)?),
            "ua" => FamilySpec::SubdividedQuipu(number(args, args_offset)?),
            "spider" => match list(args, args_offset)?.as_slice() {
                &[a, b, c] => FamilySpec::Spider(a, b, c),
                _ => return Err(parse_err(args_offset, "spider takes three lengths".into())),
            },
            "quipu" => {
                let (k, h) = args.split_once(';').ok_or_else(|| {
                    parse_err(args_offset, "quipu takes <k>;<h1>,...,<hk>".into())
                })?;
                let k = number(k, args_offset)?;
                let h = list(h, args_offset + args.find(';').unwrap_or(0) + 1)?;
                if h.len() != k {
                    return Err(parse_err(
                        args_offset,
                        format!("quipu declares k = {k} but lists {} arms", h.len()),
                    ));
                }
                FamilySpec::Quipu(h)
            }
            other => return Err(parse_err(0, format!("unknown family {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}
