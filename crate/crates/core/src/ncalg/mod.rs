//! Normal ordering for coordinates and differentials of the twisted plane.

mod element;
mod monomial;

pub use element::{Ctx, Element};
pub use monomial::{Generator, Monomial};
