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

//! Test-only oracles, independent of the spectral code paths under test.

#![allow(dead_code)]

use paradox_core::numerics::{c, ComplexMatrix, ComplexScalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller.
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn random_complex_matrix(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| c(gaussian(rng), gaussian(rng)))
}

/// `(G + G*)/2` for Gaussian `G`.
pub fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = random_complex_matrix(n, rng);
    let h = (&g + &g.adjoint()).scale(c(0.5, 0.0));
    // Force exact Hermiticity.
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            c(h[(i, i)].re, 0.0)
        } else if i < j {
            h[(i, j)]
        } else {
            h[(j, i)].conj()
        }
    })
}

/// Modified Gram-Schmidt on the columns of a Gaussian matrix.
pub fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = random_complex_matrix(n, rng);
    let mut cols: Vec<Vec<ComplexScalar>> = (0..n)
        .map(|j| (0..n).map(|i| g[(i, j)]).collect())
        .collect();
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let (basis, target) = (&done[k], &mut rest[0]);
                let proj: ComplexScalar = basis
                    .iter()
                    .zip(target.iter())
                    .map(|(b, t)| b.conj() * t)
                    .sum();
                for (t, b) in target.iter_mut().zip(basis) {
                    *t -= proj * b;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// `exp(a)` by scaling and squaring with a truncated Taylor series.
pub fn taylor_expm(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let norm = a.frobenius_norm();
    let mut squarings = 0;
    while norm / f64::powi(2.0, squarings) > 0.25 {
        squarings += 1;
    }
    let scaled = a.scale(c(1.0 / f64::powi(2.0, squarings), 0.0));
    let mut result = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=30 {
        term = (&term * &scaled).scale(c(1.0 / k as f64, 0.0));
        result = &result + &term;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// `exp(-i h t)` through the Taylor oracle.
pub fn taylor_evolution(h: &ComplexMatrix, t: f64) -> ComplexMatrix {
    taylor_expm(&h.scale(c(0.0, -t)))
}

pub mod fixtures {
    use std::path::{Path, PathBuf};

    use paradox_core::sentence_dsl::{parse, ParseError};

    fn dir(name: &str) -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/fixtures")
            .join(name)
    }

    fn liar_files(name: &str) -> Vec<(String, String)> {
        let mut files: Vec<_> = std::fs::read_dir(dir(name))
            .expect("fixture directory")
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().is_some_and(|e| e == "liar"))
            .collect();
        files.sort();
        files
            .into_iter()
            .map(|p| {
                let name = p.file_stem().unwrap().to_string_lossy().into_owned();
                (name, std::fs::read_to_string(&p).unwrap())
            })
            .collect()
    }

    pub fn corpus() -> Vec<(String, String)> {
        liar_files("corpus")
    }

    pub fn malformed() -> Vec<(String, String)> {
        liar_files("malformed")
    }

    /// Checks the error against the `# expect: kind key=value ...` header.
    pub fn check_expected_error(text: &str) -> Result<(), String> {
        let header = text
            .lines()
            .next()
            .and_then(|l| l.strip_prefix("# expect: "))
            .ok_or("fixture has no expectation header")?;
        let mut parts = header.split_whitespace();
        let kind = parts.next().ok_or("empty expectation")?;
        let err = match parse(text) {
            Ok(s) => return Err(format!("parsed successfully: {s:?}")),
            Err(e) => e,
        };
        if err.kind() != kind {
            return Err(format!("expected {kind}, got {err:?}"));
        }
        for field in parts {
            let (key, value) = field.split_once('=').ok_or("bad field")?;
            let value: usize = value.parse().map_err(|_| "bad field value")?;
            let actual = match (key, &err) {
                ("line", e) => e.line(),
                ("subject", ParseError::DuplicateSubject { subject, .. })
                | ("subject", ParseError::MissingSubject { subject })
                | ("subject", ParseError::TargetOutOfRange { subject, .. }) => Some(*subject),
                ("target", ParseError::TargetOutOfRange { target, .. }) => Some(*target),
                _ => None,
            };
            if actual != Some(value) {
                return Err(format!(
                    "{key}: expected {value}, got {actual:?} in {err:?}"
                ));
            }
        }
        Ok(())
    }
}
