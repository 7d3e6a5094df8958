//! Exact symbolic calculus on twisted quantum Euclidean planes and spheres.

pub mod chern;
pub mod error;
pub mod expr;
pub mod haar;
pub mod ncalg;
pub mod oracle;
pub mod qphase;
pub mod random;
pub mod sphere;
pub mod suite;
pub mod tensor;

pub use error::{Error, Result};
