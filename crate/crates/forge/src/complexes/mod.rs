//! Graded matrices, chain complexes, syzygies, free resolutions, Betti
//! tables, the Buchsbaum-Eisenbud exactness checker and multiplication
//! lifts.

mod dg;
mod exactness;
mod matrix;
mod resolution;

pub use dg::{lift_multiplication, tor_trivial, MultiplicationLift};
pub use exactness::{be_exactness, ExactnessOptions, ExactnessReport, GradeEvidence};
pub use matrix::{ChainComplex, PolyMatrix};
pub use resolution::{free_resolution, minimize_complex, syzygies, BettiColumn, BettiTable};
