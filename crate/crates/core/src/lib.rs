//! Test ideals τ(𝔞^t) of ideals in polynomial rings over F_p, F-pure
//! thresholds and F-jumping numbers, with a Newton-polyhedron cross-check for
//! monomial ideals.

pub mod error;
pub mod fp_algebra;
pub mod frobenius;
pub mod jumping;
pub mod newton_toric;
pub mod test_ideal;

pub use error::{Error, Result};
