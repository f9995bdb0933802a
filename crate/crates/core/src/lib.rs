//! Skolem-type sequences over arbitrary position sets and difference
//! multisets: necessary conditions, exhaustive decision and counting,
//! the extremal constructions, and the link with permutation
//! displacement patterns.
//!
//! ```
//! use skolem::{render, DiffMultiset, Solver};
//!
//! let a: DiffMultiset = "2 3 5 6".parse().unwrap();
//! let w = Solver::perfect(&a).unwrap().decide().unwrap();
//! println!("{}", render(&w).unwrap());
//! ```

pub mod conditions;
pub mod constructions;
pub mod displacement;
pub mod enumeration;
mod error;
pub mod model;
mod perm;
pub mod solver;

pub use conditions::ConditionReport;
pub use error::{Error, Result};
pub use model::{
    as_involution, max_diagonal_load, pairing_from_involution, render, reverse, validate,
    DiffMultiset, Pairing, PositionSet, SequenceText,
};
pub use perm::Permutation;
pub use solver::{Solver, Tally};
