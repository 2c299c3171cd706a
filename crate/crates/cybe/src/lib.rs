//! Exact-arithmetic verification and construction of rational solutions of
//! the classical Yang-Baxter equation (CYBE) with spectral parameters.
//!
//! Everything is computed over the Gaussian rationals with structural
//! equality — no floating point, no orthonormalization, no symbolic
//! division that could leave a remainder. The crate is organized bottom-up:
//!
//! - [`scalar`], [`matrix`]: exact numbers and dense linear algebra;
//! - [`algebra`]: Lie algebras by structure constants, bilinear forms,
//!   representations, cobrackets, classical doubles;
//! - [`loop_alg`]: Laurent-polynomial vectors and the current-algebra
//!   bracket;
//! - [`ooperator`]: finitely-supported operators on loop spaces and the
//!   finite-window checks for their defining identities;
//! - [`rmatrix`]: two-variable r-matrices in pole-plus-polynomial form, the
//!   CYBE expansion with cleared denominators, and the induced cobracket;
//! - [`constructors`]: verified builders that turn checked operators into
//!   r-matrices;
//! - [`constant_ops`]: the companion identities for constant (parameter
//!   free) operators and r-matrices;
//! - [`format`], [`report`]: JSON interchange and structured verdicts.

pub mod algebra;
pub mod constant_ops;
pub mod constructors;
pub mod error;
pub mod format;
pub mod loop_alg;
pub mod matrix;
pub mod ooperator;
pub mod report;
pub mod rmatrix;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
