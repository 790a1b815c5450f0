//! Exact Wiener indices of iterated line graphs, closed forms for the path,
//! spider and quipu families, free tree enumeration, and exhaustive searches
//! for trees minimizing `W(L²(T)) / W(T)`.

pub mod analysis;
pub mod closed_forms;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod rational;

pub use error::{Error, Result};
pub use graph::{
    iterated_line_graph, line_graph, wiener_index, Graph, WienerValue, DEFAULT_BUDGET,
};
pub use rational::{ExactRational, SignedWiener};
