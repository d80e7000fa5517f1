//! Exact coefficient rings: Laurent polynomials over `Z` and the Frobenius
//! algebra `Z[X]/X^3`.

mod frobenius;
mod laurent;

pub use frobenius::{FrobeniusElement, FrobeniusTensor};
pub use laurent::LaurentPoly;
