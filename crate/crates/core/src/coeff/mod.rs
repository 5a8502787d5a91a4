//! Exact arithmetic in Z[v^{1/2}, v^{-1/2}] and its fraction field, together
//! with balanced q-integers, q-factorials and q-binomial coefficients.

mod laurent;
mod qcomb;
mod ratfunc;

pub use laurent::LaurentHalf;
pub use qcomb::{qbinom, qfact, qint, verify_binomial_identities, BinomialReport};
pub use ratfunc::RatFunc;
