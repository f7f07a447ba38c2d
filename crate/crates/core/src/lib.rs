//! Exact and heuristic clique-cover parameters of small graphs, set
//! intersection representations, qualitatively independent partition
//! families, and the closed-form bounds that sandwich them.
//!
//! The crate is organized around one pipeline:
//!
//! - [`graph`] builds simple undirected graphs (notably complete
//!   multipartite graphs) and enumerates their cliques;
//! - [`solver`] computes minimum clique covers and partitions under the
//!   count and weight objectives by branch and bound;
//! - [`representation`] converts between clique covers and set
//!   intersection representations, with a brute-force intersection-number
//!   oracle for cross-checking the solver;
//! - [`qi`] constructs and verifies families of qualitatively independent
//!   d-partitions (random, Latin-square based, completed partial ones)
//!   and maps them to covers of complete multipartite graphs;
//! - [`bounds`] evaluates the classical upper bounds and the
//!   Bollobás/Jensen lower-bound chain step by step.
//!
//! Everything is deterministic: solvers break ties lexicographically and
//! random constructions are seeded.
//!
//! ```
//! use scc_core::graph::Graph;
//! use scc_core::representation::cover_to_representation;
//! use scc_core::solver::{solve_cover, CoverMode, Objective};
//!
//! // the complete tripartite graph with parts of size 2
//! let g = Graph::complete_multipartite(&[2, 2, 2])?;
//! let result = solve_cover(&g, Objective::Weight, CoverMode::Cover)?;
//! assert_eq!(result.optimum, 12);
//!
//! // the optimal cover doubles as a set intersection representation
//! let r = cover_to_representation(&g, &result.witness)?;
//! assert_eq!(r.weight(), 12);
//! # Ok::<(), scc_core::Error>(())
//! ```

pub mod bitset;
pub mod bounds;
pub mod graph;
pub mod qi;
pub mod representation;
pub mod solver;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Instance exceeds a configured scale or enumeration budget.
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    /// Requested a construction outside the implemented range.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
