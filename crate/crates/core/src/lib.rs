//! Exact symbolic and Fock-space computations for super-diffeomorphism
//! algebras and their trajectory-oscillator representations.

pub mod error;
pub mod fock;
pub mod gauge;
pub mod graded_symbolic;
pub mod mode_algebra;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Coeff, Gq, Rat};
