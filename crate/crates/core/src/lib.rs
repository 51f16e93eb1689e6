//! Computational workbench for three notions of positivity on the
//! centralizer `X` of a principal nilpotent element.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootsys`] and [`weyl`]: finite root data, Weyl group elements, cosets.
//! * [`affine`]: translation labels and the affine/quantum Schubert dictionary.
//! * [`qchev`]: quantum Chevalley multiplication and full structure constants
//!   of the quantum cohomology of `G/B` at specialised quantum parameters.
//! * [`pfsolve`]: the Perron-Frobenius point of a fibre and its certificates.
//! * [`totpos`]: exact matrix-level total positivity (minors, wiring diagrams,
//!   embeddings, the centralizer chart).
//! * [`repwt`]: weight systems and the multiplicity lemmas.
//! * [`suite`]: deterministic verification suites with JSON reports.

pub mod affine;
pub mod error;
pub mod matrix;
pub mod pfsolve;
pub mod poly;
pub mod qchev;
pub mod rat;
pub mod repwt;
pub mod rootsys;
pub mod suite;
pub mod totpos;
pub mod weyl;

pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use rat::Rat;
pub use rootsys::{ParabolicData, RootSystem, TypeLetter};
pub use weyl::{WeylElement, WeylGroup};
