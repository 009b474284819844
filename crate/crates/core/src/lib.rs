//! Exact tooling for Z2,2-graded Lie algebras.
//!
//! A Z2,2-graded Lie algebra splits into four subspaces `L00 ⊕ L01 ⊕ L10 ⊕ L11`
//! labelled by two-bit degrees. The bracket of two homogeneous elements is a
//! commutator or an anticommutator depending on the parity of the dot product
//! of their degrees, and the algebra obeys sign-twisted Jacobi identities.
//!
//! The crate is organised bottom-up:
//!
//! - [`grading`]: degree arithmetic and the bracket-kind rule.
//! - [`algebra`]: generators, exact structure constants, closure and
//!   antisymmetry checks.
//! - [`jacobi`]: the generalized Jacobi identities and their shape census.
//! - [`matrix`]: dense rational matrices with exact row reduction.
//! - [`structure`]: the coefficient-matrix description of a grading of
//!   `u(1,1)`, its constraint relations, and conversion to and from algebras.
//! - [`solver`]: a staged search for coefficient sets.
//! - [`catalog`]: built-in golden data.
//! - [`oscillator`]: truncated Fock-space realizations by parabose and
//!   parafermi operators.
//! - [`format`]: the JSON interchange formats.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod format;
pub mod grading;
pub mod jacobi;
pub mod matrix;
pub mod oscillator;
pub mod rational;
pub mod report;
pub mod solver;
pub mod structure;

pub use algebra::{Generator, GradedAlgebra, LinComb};
pub use error::{Error, Result};
pub use grading::{BracketKind, Degree};
pub use matrix::RatMatrix;
pub use rational::Rational;
pub use report::VerificationReport;
pub use structure::CoefficientSet;
