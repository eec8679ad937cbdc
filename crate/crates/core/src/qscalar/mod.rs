//! Exact scalars in ℚ(q) and the q-combinatorics built on them.

mod laurent;
mod parse;
mod polygcd;
mod qcomb;
mod scalar;

pub use laurent::LaurentPoly;
pub use parse::parse_scalar;
pub use qcomb::{qbinom, qbinom_poly, qfactorial, qfactorial_poly, qint, qint_poly, Parity};
pub use scalar::{canonical_equal, QScalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
