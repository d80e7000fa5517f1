//! The quantum sl(3) link invariant and its categorification.
//!
//! Closed webs are evaluated with the loop, digon and square skein rules.
//! Their homology is built from foams: closed foams evaluate to integers, the
//! group attached to a web is spanned by foams from the empty web modulo the
//! kernel of the evaluation pairing, and the cube of flattenings of a link
//! diagram assembles these groups into a bigraded integer chain complex.

pub mod algebra;
pub mod cli;
pub mod complex;
pub mod diagram;
mod error;
pub mod foam;
pub mod web;
pub mod webhom;

pub use algebra::{FrobeniusElement, LaurentPoly};
pub use complex::{BigradedHomology, GradedChainComplex};
pub use diagram::LinkDiagram;
pub use error::{Error, Result};
pub use foam::{FoamMovie, PreFoam};
pub use web::Web;
pub use webhom::{IntMatrix, WebBasis};
