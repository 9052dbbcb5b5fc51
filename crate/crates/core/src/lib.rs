//! Solvers for Bounded P-Block Vertex Deletion.
//!
//! Given a graph `G`, a block-hereditary class `P` of biconnected graphs and
//! integers `d` and `k`, the problem asks for at most `k` vertices whose
//! deletion leaves a graph in which every block with an edge has at most `d`
//! vertices and belongs to `P`.
//!
//! The crate offers several independent routes to an answer:
//!
//! * [`branch::solve`], a bounded search tree over small obstructions that
//!   finishes with a reduction to Subset Feedback Vertex Set;
//! * [`compression::solve_complete_block`] and [`compression::solve_cactus`],
//!   iterative compression for cliques and cycles respectively;
//! * [`kernel::kernelize`], a polynomial kernel, and [`kernel::approximate`];
//! * [`oracle::brute_force`], exhaustive search used as ground truth.

pub mod blocks;
pub mod branch;
pub mod clustering;
pub mod compression;
pub mod error;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod io;
pub mod kernel;
pub mod oracle;
pub mod pclass;
pub mod sfvs;

pub use blocks::{block_decomposition, BlockDecomposition};
pub use branch::{Instance, Outcome, Solution, SolveStats};
pub use error::{Error, Result};
pub use graph::{Graph, Mutation, Vertex};
pub use pclass::{is_in_phi, ClassKind, PClassSpec};
