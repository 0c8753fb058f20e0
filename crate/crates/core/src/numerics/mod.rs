// Copyright 2026 The Paradox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Dense complex linear algebra for the small matrices that occur when a
//! sentence system is quantized (dimension at most 64).
//!
//! Everything here works on plain row-major storage. The matrix functions
//! (`principal_log_unitary`, `exp_hermitian`) are spectral: they decompose
//! their argument with [`eig_normal`] and apply a scalar function to the
//! eigenvalues.

mod eigen;
mod functions;
mod matrix;
mod vector;

pub use eigen::{eig_normal, EigenDecomposition};
pub use functions::{exp_from_spectrum, exp_hermitian, principal_log_unitary};
pub use matrix::{tensor_product, ComplexMatrix};
pub use vector::StateVector;

use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type ComplexScalar = num_complex::Complex64;

/// Largest matrix dimension accepted by the decompositions.
pub const MAX_DIM: usize = 64;

/// Tolerance for algebraic identities on constructed matrices.
pub const ALGEBRA_TOL: f64 = 1e-10;
/// Tolerance for decomposition residuals.
pub const DECOMPOSITION_TOL: f64 = 1e-9;
/// Tolerance for comparisons between independent numerical routes.
pub const ORACLE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("matrix is not normal (max |AA* - A*A| = {0:e})")]
    NormalityViolation(f64),
    #[error("matrix is not unitary (max |U*U - I| = {0:e})")]
    UnitarityViolation(f64),
    #[error("matrix is not Hermitian (max |H - H*| = {0:e})")]
    HermiticityViolation(f64),
    #[error("eigen solver did not converge after {0} sweeps")]
    ConvergenceFailure(usize),
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {0} exceeds the supported maximum of {MAX_DIM}")]
    TooLarge(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite entry in input")]
    NonFinite,
}

/// Shorthand for `ComplexScalar::new`.
#[inline]
pub fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}
