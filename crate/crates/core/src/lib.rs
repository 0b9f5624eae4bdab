//! Causal ordering of self-contained systems of equations.
//!
//! A [`Structure`] records which variables each equation mentions. When it
//! is complete (as many equations as variables, every subset of `k`
//! equations touching at least `k` variables), each equation can be
//! assigned one of its own variables bijectively. Reading every other
//! variable of an equation as a cause of the assigned one gives the direct
//! dependencies; their transitive closure is the causal ordering, which does
//! not depend on which assignment was chosen.
//!
//! [`nayak`] computes the ordering in polynomial time through a maximum
//! bipartite matching. [`simon`] implements the classical recursion over
//! minimal complete substructures, which is exponential and serves as a
//! cross-check and as a demonstration of the hardness of that route.
//!
//! ```
//! use causord::{fixtures, nayak};
//!
//! let s = fixtures::coupled();
//! let ordering = nayak::causal_ordering(&s)?;
//! assert_eq!(ordering.edge_count(), 18);
//! assert!(ordering.strongly_coupled(3, 4));
//! # Ok::<(), causord::Error>(())
//! ```

pub mod bipartite;
pub mod budget;
pub mod cli;
mod error;
pub mod export;
pub mod fixtures;
pub mod nayak;
pub mod simon;
pub mod structure;

pub use budget::Budget;
pub use error::{Error, Result};
pub use structure::{Structure, ValidationReport};
