//! Solvers for the Snow Team family of digraph clearing problems.
//!
//! The crate decides whether snow ploughs starting at given bases can clear
//! roads so that all facilities end up connected. It provides randomized
//! fixed-parameter pipelines built on tree pattern embedding and multilinear
//! monomial detection over `GF(2^64)[Z_2^k]`, exact brute-force oracles used
//! for cross-validation, and the Set Cover gadget used for hardness.
//!
//! ```
//! use snowteam::{digraph::parse_instance, solvers::{solve_st, SolveParams}, Answer};
//!
//! let inst = parse_instance("st 3 2\nv 0 1 1\nv 1 0 0\nv 2 1 0\na 0 1\na 1 2\n").unwrap();
//! let report = solve_st(&inst, &SolveParams::default()).unwrap();
//! assert_eq!(report.answer, Answer::Yes);
//! ```

pub mod algebra;
pub mod cli;
pub mod digraph;
pub mod exact;
pub mod gadgets;
pub mod gen;
pub mod selftest;
pub mod solvers;
pub mod tpe;
pub mod trees;
mod util;

pub use digraph::{Instance, SolutionWalks, Walk};
pub use solvers::{Answer, SolveParams, SolveReport};
