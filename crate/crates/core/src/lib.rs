//! Exact computations with L∞ (strongly homotopy Lie) structures on small
//! ℤ₂-graded vector spaces.
//!
//! An L∞ structure on `W` is an odd codifferential on the reduced symmetric
//! coalgebra `S(W)`. Coderivations are identified with `Hom(S(W), W)`, the
//! direct product of the spaces `L_n = Hom(S^n(W), W)`, and all arithmetic is
//! carried out over the rationals with no rounding anywhere.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats and the
//! command-line front end live in the `linfty` crate.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod automorphism;
pub mod calculus;
pub mod cochain;
pub mod cohomology;
mod error;
pub mod expr;
pub mod extension;
pub mod families;
pub mod graded;
pub mod linalg;
pub mod moduli;
pub mod rational;

pub use automorphism::{conjugate_linear, exp_automorphism, ExpAutomorphism, LinearAutomorphism};
pub use calculus::{bracket, evaluate, is_codifferential, lift, SquareZero, SymElement};
pub use cochain::{BasisCochain, Cochain, LInfinityStructure};

pub use error::{Error, Result};
pub use expr::{format_cochain, parse_cochain};
pub use graded::{
    koszul_sign, symmetric_basis, unshuffles, GradedDim, GradedSpace, MultiIndex, Parity,
    SignedWord,
};

pub use rational::Rational;
pub use cohomology::{
    coboundary, cohomology, deformation_directions, CohomologyReport, DegreeBlockMatrix,
    DegreeCohomology,
};
pub use moduli::{
    canonical_form, jump_neighbors, linearly_equivalent, variety_check, DegreeNCoefficients,
    FamilyTag,
};
pub use extension::{
    equivext_check, replay, solve_step, standard_form, EquivextReport, ExtensionProblem, Move,
    StandardForm, StepOutcome,
};
