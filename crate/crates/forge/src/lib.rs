//! An exact kernel for computational commutative algebra over ℚ and prime
//! fields, with a verification layer for a family of codimension-3 perfect
//! ideals of Cohen-Macaulay type 2 with five generators.
//!
//! The kernel layers are:
//!
//! * [`field`] / [`monomial`] / [`ring`] — exact coefficients, monomial
//!   orders, sparse multivariate polynomials;
//! * [`groebner`] — normal forms, Buchberger's algorithm, reduced bases,
//!   ideal and radical membership;
//! * [`ideal_ops`] — elimination, intersection, colon ideals, dimension,
//!   Hilbert functions;
//! * [`modgb`] / [`complexes`] — module Gröbner bases, syzygies, graded
//!   matrices, minimal free resolutions, the Buchsbaum-Eisenbud exactness
//!   checker and multiplication lifts;
//! * [`corpus`] — the explicit five-generator family, its deformation and
//!   linkage chains, with one-call verification;
//! * [`apolarity`] — Macaulay inverse systems and the pencils-of-quartics
//!   experiment;
//! * [`script`] — the scripting surface used by the `forge` binary.

pub mod apolarity;
pub mod complexes;
pub mod corpus;
pub mod field;
pub mod fmatrix;
pub mod groebner;
pub mod ideal_ops;
pub mod modgb;
pub mod monomial;
pub mod parse;
pub mod ring;
pub mod script;

use thiserror::Error;

/// Errors surfaced by kernel operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("monomial length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ideal is improper (contains a unit)")]
    ImproperIdeal,
    #[error("not homogeneous under the total grading: {0}")]
    NotHomogeneous(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("complex is not minimal: {0}")]
    NotMinimal(String),
    #[error("lifting failed (complex not exact?): {0}")]
    LiftFailed(String),
    #[error("characteristic {0} too small, need 0 or > {1}")]
    CharacteristicTooSmall(u64, u64),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
