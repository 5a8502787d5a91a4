//! Exact computer algebra for Drinfeld double quantum groups of simply-laced
//! type: a rewriting kernel for PBW/triangular normal forms, braid group
//! symmetries, Heisenberg quotients, skew derivations and Hopf pairings, a
//! triangular bar-involution solver producing the double (= dual) canonical
//! basis, and closed-form rank-1 quiver-variety combinatorics used as an
//! independent oracle.
//!
//! All arithmetic is exact: coefficients live in Z[v^{1/2}, v^{-1/2}] or its
//! fraction field. There is no floating point anywhere.

pub mod algebra;
pub mod canonical;
pub mod cartan;
pub mod coeff;
pub mod error;
pub mod operators;
pub mod rankone;
pub mod verify;

pub use error::{Error, Result};
pub(crate) mod linalg;
