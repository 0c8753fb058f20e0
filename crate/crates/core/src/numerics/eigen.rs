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

//! Eigendecomposition of normal matrices.
//!
//! Two routes are used:
//!
//! * permutation matrices (the discrete inference steps are all of this
//!   form) are diagonalized analytically: every cycle of length `L`
//!   contributes the `L`-th roots of unity with discrete Fourier vectors
//!   supported on the cycle;
//! * anything else goes through cyclic complex Jacobi rotations on the
//!   Hermitian part `(A + A*)/2`. Clusters of (near-)equal eigenvalues of the
//!   Hermitian part are then split using the skew part `(A - A*)/(2i)`,
//!   which commutes with the Hermitian part whenever `A` is normal.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ComplexMatrix, NumericsError, MAX_DIM};

const NORMALITY_TOL: f64 = 1e-9;
const MAX_SWEEPS: usize = 100;
/// Relative gap below which Hermitian-part eigenvalues are treated as one cluster.
const CLUSTER_TOL: f64 = 1e-8;

/// Eigenvalues and orthonormal eigenvectors (as columns) of a normal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    values: Vec<Complex64>,
    vectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `V f(diag(values)) V*` for a scalar function `f`.
    pub fn map_values<F>(&self, f: F) -> ComplexMatrix
    where
        F: Fn(Complex64) -> Complex64,
    {
        let n = self.dim();
        let mapped: Vec<Complex64> = self.values.iter().map(|&z| f(z)).collect();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .filter(|&k| mapped[k] != Complex64::new(0.0, 0.0))
                .map(|k| v[(i, k)] * mapped[k] * v[(j, k)].conj())
                .sum()
        })
    }

    /// `V diag(values) V*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_values(|z| z)
    }
}

/// Diagonalizes a normal matrix of dimension at most [`MAX_DIM`].
pub fn eig_normal(a: &ComplexMatrix) -> Result<EigenDecomposition, NumericsError> {
    if !a.is_square() {
        return Err(NumericsError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() > MAX_DIM {
        return Err(NumericsError::TooLarge(a.rows()));
    }
    if a.as_slice()
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(NumericsError::NonFinite);
    }
    let defect = a.normality_defect();
    if defect > NORMALITY_TOL {
        return Err(NumericsError::NormalityViolation(defect));
    }

    if let Some(perm) = a.as_permutation() {
        return Ok(eig_permutation(&perm));
    }
    eig_jacobi(a)
}

/// `exp(2 pi i k / n)`, exact at multiples of a quarter turn.
fn root_of_unity(k: usize, n: usize) -> Complex64 {
    let k = k % n;
    if (4 * k).is_multiple_of(n) {
        return match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    // Angle taken in (-pi, pi] so that conjugate roots are exact conjugates.
    let theta = if 2 * k <= n {
        2.0 * PI * k as f64 / n as f64
    } else {
        -2.0 * PI * (n - k) as f64 / n as f64
    };
    Complex64::new(theta.cos(), theta.sin())
}

/// `perm[j]` is the image of `e_j`.
fn eig_permutation(perm: &[usize]) -> EigenDecomposition {
    let n = perm.len();
    let mut values = Vec::with_capacity(n);
    let mut vectors = ComplexMatrix::zeros(n, n);
    let mut visited = vec![false; n];
    let mut col = 0;

    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut next = perm[start];
        while next != start {
            visited[next] = true;
            cycle.push(next);
            next = perm[next];
        }

        let len = cycle.len();
        let norm = 1.0 / (len as f64).sqrt();
        for m in 0..len {
            // P v_m = w^m v_m with v_m = sum_k w^{-mk} e_{c_k}, w = exp(2 pi i / len).
            values.push(root_of_unity(m, len));
            for (k, &idx) in cycle.iter().enumerate() {
                let phase = root_of_unity((len - (m * k) % len) % len, len);
                vectors[(idx, col)] = phase * norm;
            }
            col += 1;
        }
    }

    EigenDecomposition { values, vectors }
}

fn eig_jacobi(a: &ComplexMatrix) -> Result<EigenDecomposition, NumericsError> {
    let n = a.rows();
    let adj = a.adjoint();
    let herm = (a + &adj).scale(Complex64::new(0.5, 0.0));
    let skew = (a - &adj).scale(Complex64::new(0.0, -0.5));

    let (herm_values, mut vectors) = jacobi_hermitian(&herm)?;

    let scale = herm_values.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && herm_values[end] - herm_values[end - 1] <= CLUSTER_TOL * scale {
            end += 1;
        }
        if end - start > 1 {
            resolve_cluster(&herm, &skew, &mut vectors, start..end)?;
        }
        start = end;
    }

    let values = (0..n)
        .map(|k| {
            let v = vectors.column(k);
            v.inner(&a.apply(&v).expect("square"))
        })
        .collect();

    Ok(EigenDecomposition { values, vectors })
}

/// Rotates the columns `range` of `vectors` (an approximate invariant
/// subspace of both parts) into joint eigenvectors.
fn resolve_cluster(
    herm: &ComplexMatrix,
    skew: &ComplexMatrix,
    vectors: &mut ComplexMatrix,
    range: std::ops::Range<usize>,
) -> Result<(), NumericsError> {
    let n = vectors.rows();
    let k = range.len();
    let basis = ComplexMatrix::from_fn(n, k, |i, j| vectors[(i, range.start + j)]);
    // The Hermitian part is kept so that a cluster of merely close (not equal)
    // eigenvalues is diagonalized exactly rather than to within the cluster width.
    let combined = herm + skew;
    let restricted = &(&basis.adjoint() * &combined) * &basis;
    let restricted = (&restricted + &restricted.adjoint()).scale(Complex64::new(0.5, 0.0));
    let (_, rotation) = jacobi_hermitian(&restricted)?;
    let rotated = &basis * &rotation;
    for j in 0..k {
        let col = rotated.column(j);
        let col = col.normalized().unwrap_or(col);
        vectors.set_column(range.start + j, &col);
    }
    Ok(())
}

/// Cyclic Jacobi for a Hermitian matrix. Returns ascending eigenvalues and
/// the unitary whose columns are the matching eigenvectors.
fn jacobi_hermitian(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix), NumericsError> {
    let n = m.rows();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let norm = a.frobenius_norm();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= f64::EPSILON * norm {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > f64::EPSILON * norm {
        return Err(NumericsError::ConvergenceFailure(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((values, vectors))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One two-sided rotation annihilating `a[p, q]`; accumulates into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Phase e^{-i phi} turns a[p, q] real, then a real rotation finishes it.
    let phase = (apq / r).conj();
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + 1.0f64.hypot(tau))
    };
    let cs = 1.0 / 1.0f64.hypot(t);
    let sn = t * cs;

    let g_pp = Complex64::new(cs, 0.0);
    let g_pq = Complex64::new(sn, 0.0);
    let g_qp = phase * (-sn);
    let g_qq = phase * cs;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;

        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}
