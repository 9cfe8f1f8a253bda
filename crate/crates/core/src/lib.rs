//! Statistical-symmetry constructions for finite-dimensional quantum theory.
//!
//! Everything here works on finite structures so each claim can be checked
//! by exhaustive computation:
//!
//! - [`group`]: finite groups, right actions on finite parameter spaces,
//!   orbits, permissible parameters and invariant measures.
//! - [`statmodel`]: finite statistical models, sufficiency and completeness,
//!   the expectation operator and its unitary factor.
//! - [`hilbert`]: regular representations, the spaces of functions of a
//!   parameter, indicator bases, multiplication operators and irreducible
//!   decompositions.
//! - [`qubit`]: Bloch-vector effect calculus, test parametrization of effects
//!   and the Born formula.
//! - [`measurement`]: density matrices, operator-valued measures and the
//!   projection update.

pub mod error;
pub mod group;
pub mod hilbert;
pub mod json;
pub mod linalg;
pub mod measurement;
pub mod qubit;
pub mod statmodel;

pub use error::{Error, Result};
