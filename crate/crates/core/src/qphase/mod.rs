//! Deformation parameters `q_ab` and the exact scalar ring built over them.

mod coeff;
mod context;
mod phase;
mod scalar;

pub use coeff::{rat, Coeff, Rational};
pub use context::{DeformationContext, MAX_DIM};
pub use phase::PhaseMonomial;
pub use scalar::{ExactScalar, ScalarDisplay};
