//! Exact subdiscriminants of polynomials and matrices.
//!
//! The crate evaluates the `k`-subdiscriminants `sDisc_k` from roots, from
//! symmetric-function expressions, and from matrices; classifies eigenvalue
//! multiplicity; builds the exterior-power covariant of trace-adjusted matrix
//! powers together with weighted sum-of-squares certificates derived from it;
//! and computes the orthogonal-group dimension bounds on the number of squares.

pub mod covariant;
pub mod error;
pub mod exactmath;
pub mod idealcheck;
pub mod repdim;
pub mod subdisc;
pub mod symfun;

pub use error::{Error, Result};
