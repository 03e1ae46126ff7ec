//! Exact genus-0 Gromov-Witten invariants of zero loci in projective space.
//!
//! Two independent routes compute the same numbers:
//!
//! * [`localization`] sums torus fixed-point contributions over the moduli
//!   of stable maps to `P^r`, twisted by the bundle whose section cuts out
//!   the zero locus;
//! * [`mirror`] expands the hypergeometric series of the bundle, applies the
//!   mirror change of variables and reads invariants off the `J`-function.
//!
//! [`schubert`] adds a third, classical route for lines, and [`instanton`]
//! turns invariants into instanton numbers through the multiple-cover
//! formula. Everything is exact rational arithmetic.

pub mod cohomology;
pub mod error;
pub mod geometry;
pub mod instanton;
pub mod localization;
pub mod mirror;
pub mod orchestrator;
pub mod schubert;
pub mod series;

pub use error::{Error, Result};
