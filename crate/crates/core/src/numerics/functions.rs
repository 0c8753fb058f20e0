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

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{eig_normal, ComplexMatrix, EigenDecomposition, NumericsError, ALGEBRA_TOL};

/// Eigenvalues this close to the unit circle are projected onto it.
const UNIT_CIRCLE_SNAP: f64 = 1e-9;
/// Arguments this close to -pi are moved to +pi, keeping Arg in (-pi, pi].
const BRANCH_CUT_SNAP: f64 = 1e-9;
/// Eigenvalues this close to 1 get a logarithm of exactly zero.
const UNITY_SNAP: f64 = 1e-12;

/// Principal logarithm `L = V diag(ln z_k) V*` of a unitary, with
/// `Arg z_k` in `(-pi, pi]` and `ln 1 = 0` exactly. `i L` is Hermitian.
pub fn principal_log_unitary(u: &ComplexMatrix) -> Result<ComplexMatrix, NumericsError> {
    if !u.is_square() {
        return Err(NumericsError::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    let defect = u.unitarity_defect();
    if !(defect <= ALGEBRA_TOL) {
        return Err(NumericsError::UnitarityViolation(defect));
    }
    let eig = eig_normal(u)?;
    Ok(eig.map_values(principal_log_on_circle))
}

fn principal_log_on_circle(z: Complex64) -> Complex64 {
    let modulus = z.norm();
    let z = if (1.0 - modulus).abs() <= UNIT_CIRCLE_SNAP {
        z / modulus
    } else {
        z
    };
    if (z - Complex64::new(1.0, 0.0)).norm() <= UNITY_SNAP {
        return Complex64::new(0.0, 0.0);
    }
    let mut theta = z.arg();
    if theta <= -PI + BRANCH_CUT_SNAP {
        theta = PI;
    }
    Complex64::new(z.norm().ln(), theta)
}

/// `U(t) = exp(-i h t)` for Hermitian `h`.
pub fn exp_hermitian(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix, NumericsError> {
    if !h.is_square() {
        return Err(NumericsError::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let defect = h.hermiticity_defect();
    if !(defect <= ALGEBRA_TOL) {
        return Err(NumericsError::HermiticityViolation(defect));
    }
    if t == 0.0 {
        return Ok(ComplexMatrix::identity(h.rows()));
    }
    let eig = eig_normal(h)?;
    Ok(exp_from_spectrum(&eig, t))
}

/// `exp(-i h t)` from a precomputed eigendecomposition of Hermitian `h`.
/// Only the real parts of the eigenvalues are used.
pub fn exp_from_spectrum(eig: &EigenDecomposition, t: f64) -> ComplexMatrix {
    if t == 0.0 {
        return ComplexMatrix::identity(eig.dim());
    }
    eig.map_values(|z| {
        let phase = -z.re * t;
        Complex64::new(phase.cos(), phase.sin())
    })
}
