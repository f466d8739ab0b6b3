//! Coulomb-problem expectation values through Hahn polynomials, plus the
//! special-function and quadrature machinery used to check them.

pub mod angular;
pub mod error;
pub mod hydrogen_nr;
pub mod hydrogen_rel;
pub mod laguerre_integrals;
pub mod oracle;
pub mod orthopoly;
pub mod specfun;
pub mod units;
pub mod verify;

pub use error::{Error, Result};
pub use num_rational::BigRational;
