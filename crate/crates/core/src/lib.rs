//! Deciding `F -> (P3, Cn)` and computing restricted size Ramsey numbers
//! `r*(P3, Cn)` by exhaustive search.
//!
//! A red/blue colouring of `F` without a red `P3` has a matching as its red
//! class, so `F -> (P3, Cn)` on `n` vertices holds exactly when `F - M` is
//! Hamiltonian for every maximal matching `M`. The crate builds that test on
//! top of a small-graph toolkit: bit-row graphs, graph6 I/O, canonical
//! labeling, Hamiltonicity engines and an isomorph-free generator.

pub mod arrowing;
pub mod canon;
pub mod cli;
pub mod fixtures;
pub mod generator;
pub mod graph;
pub mod graph6;
pub mod hamilton;
pub mod search;

pub use arrowing::{decide_arrowing_cycle, decide_arrowing_path, Mode};
pub use canon::{are_isomorphic, canonical_form, canonical_labeling, CanonicalForm};
pub use graph::{Edge, Graph, GraphError, MAX_ORDER};
