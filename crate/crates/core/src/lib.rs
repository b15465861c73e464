//! Computational workbench for left I-orders in finite inverse semigroups.
//!
//! Semigroups are Cayley tables over `0..n`; `table[x][y]` is `xy`. The
//! modules follow the order of a typical run: structure of `Q` (`green`,
//! `inverse`), subsets of `Q` (`iorder`), the abstract conditions on
//! `(S, R′, ≤_l)` (`axioms`), the rebuilt semigroup (`quotient`), the ample
//! specialisation (`ample`) and the end-to-end runs (`pipeline`).

pub mod ample;
pub mod axioms;
pub mod bicyclic;
pub mod bitset;
pub mod catalog;
pub mod check;
pub mod error;
pub mod green;
pub mod inverse;
pub mod io;
pub mod iorder;
pub mod pipeline;
pub mod quotient;
pub mod relation;
pub mod report;
pub mod semigroup;

pub use error::{AnalysisError, FormatError, InverseError, SemigroupError};
pub use semigroup::{ElementSubset, FiniteSemigroup};
