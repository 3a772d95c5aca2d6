//! Exact-arithmetic computation of monopole Floer homology groups for mapping
//! tori of finite-order Riemann-surface automorphisms with quotient the
//! projective line.
//!
//! The pipeline runs entirely over the rationals and cyclotomic fields:
//!
//! 1. [`surface`] turns a cyclic curve `y^d = f(x)` (or raw fixed-point
//!    rotation data) into ramification data and a genus.
//! 2. [`gspin`] evaluates the equivariant spin character of the lifted
//!    automorphism as an exact element of `Q(zeta_d)` and inverts it to the
//!    eigenvalue spectrum of the action on holomorphic sections.
//! 3. [`floer`] builds the explicit Floer chain complex over the circle of
//!    reducible solutions: truncated `U`-towers over Morse critical points,
//!    monomial differentials, signs and an optional holonomy weight.
//! 4. [`homology`] computes the graded `U`-module homology by exact linear
//!    algebra and cross-checks it against closed-form answers.
//!
//! [`hyperelliptic`] and [`torsion`] cover the order-2 census and the
//! decategorified Alexander-polynomial checks; [`selftest`] bundles the
//! acceptance criteria so they can run both under `cargo test` and from the
//! command line.

pub mod exactnum;
pub mod exec;
pub mod floer;
pub mod gspin;
pub mod homology;
pub mod hyperelliptic;
pub mod linalg;
pub mod sampling;
pub mod selftest;
pub mod surface;
pub mod torsion;

pub use exactnum::{CyclotomicNumber, NumError, Rational};
pub use floer::{FloerComplex, GradedFloerComplex, LocalSystem};
pub use gspin::{SignedEigen, Spectrum, SpectrumEntry};
pub use homology::{ClosedFormSummary, GradedModuleDecomp, Parity};
pub use surface::{CyclicCurve, RamificationData};
