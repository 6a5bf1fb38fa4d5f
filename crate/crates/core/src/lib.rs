//! Hardness hierarchies for CNF clause-sets.
//!
//! The crate computes generalised unit-clause propagation `r_k` and the
//! measures built on it (hardness, p-hardness, w-hardness, symmetric width),
//! prime implicates, minimal premise sets and doping, the tree
//! representation of saturated minimally unsatisfiable clause-sets of
//! deficiency one, trigger hypergraphs with exact transversal and matching
//! numbers, and k-base compilation with the usual knowledge-compilation
//! queries.
//!
//! Everything is exact. Exhaustive procedures take a [`Limits`] and fail with
//! [`Error::CapExceeded`] instead of running away; internally clause-sets are
//! packed into 128-bit masks, so at most 128 variables are supported.
//!
//! ```
//! use cnf_hierarchy::{ClauseSet, hardness};
//!
//! let f = ClauseSet::from_lits(&[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]).unwrap();
//! assert_eq!(hardness::hd(&f, &Default::default()).unwrap().value, 2);
//! ```

pub mod clause;
pub mod compile;
pub mod dimacs;
pub mod error;
pub mod experiment;
pub mod hardness;
pub mod limits;
pub mod mpsdope;
pub mod oracle;
mod packed;
pub mod primes;
pub mod propagation;
mod sat;
pub mod trees;
pub mod trigger;

pub use clause::{
    resolve, Classification, Clause, ClauseSet, Lit, Measures, PartialAssignment, Var,
};
pub use dimacs::{emit_dimacs, parse_dimacs};
pub use error::{Error, Result};
pub use limits::Limits;
