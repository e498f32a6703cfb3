//! Exact computational toolkit for bricks over finite-dimensional bound
//! quiver algebras: Auslander-Reiten translates, support tau-tilting
//! mutation with brick labels, King stability, Schofield semi-invariants,
//! g-vector fans and E-invariants, plus a finite-field census harness for
//! brick-Brauer-Thrall experiments.
//!
//! All arithmetic is exact: rationals or prime fields, never floats.

pub mod scalar;
pub mod matrix;
pub mod poly;
pub mod quiver;
pub mod algebra;
pub mod rep;
pub mod decompose;
pub mod ar;
pub mod sttilt;
pub mod stability;
pub mod census;
pub mod io;

pub use algebra::{AlgebraDescription, AlgebraError, BoundAlgebra, StandardKind};
pub use quiver::{Quiver, QuiverError};
pub use rep::{HomSpace, RepError, Representation};
pub use scalar::{Field, PrimeField, Rationals, ScalarDomain};
