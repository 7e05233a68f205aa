//! Exact scalar tower: arbitrary-precision rationals, real quadratic
//! extensions Q(√d) and Gaussian rationals Q(i).
//!
//! All values carry a unique canonical form, so structural equality is value
//! equality and values can be deduplicated with ordinary `Eq`/`Ord`/`Hash`.
//! No predicate in this module consults floating point.

mod gauss;
mod quadext;
mod rational;

pub use gauss::GaussRational;
pub use quadext::QuadExt;
pub use rational::{scale_to_coprime_integers, Rational};
