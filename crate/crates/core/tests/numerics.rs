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

mod common;

use paradox_core::numerics::{
    c, eig_normal, exp_hermitian, principal_log_unitary, tensor_product, ComplexMatrix,
};
use proptest::prelude::*;

#[test]
fn exp_hermitian_matches_taylor_oracle_dim16() {
    let mut rng = common::rng(7);
    for _ in 0..20 {
        let h = common::random_hermitian(16, &mut rng);
        for &t in &[0.37, -1.3, 2.0] {
            let got = exp_hermitian(&h, t).unwrap();
            let want = common::taylor_evolution(&h, t);
            let err = got.max_abs_diff(&want);
            assert!(err <= 1e-8, "t = {t}: err {err:e}");
        }
    }
}

#[test]
fn log_then_exp_reproduces_random_unitaries() {
    let mut rng = common::rng(11);
    for n in [2usize, 3, 5, 8, 16] {
        for _ in 0..10 {
            let u = common::random_unitary(n, &mut rng);
            assert!(u.unitarity_defect() < 1e-13);
            let l = principal_log_unitary(&u).unwrap();
            let il = l.scale(c(0.0, 1.0));
            assert!(il.hermiticity_defect() <= 1e-10);
            let back = common::taylor_expm(&l);
            let err = back.max_abs_diff(&u);
            assert!(err <= 1e-9, "n = {n}: err {err:e}");
            // Same thing through the spectral exponential: exp(L) = exp(-i (iL) * 1).
            let back2 = exp_hermitian(&il, 1.0).unwrap();
            assert!(back2.max_abs_diff(&u) <= 1e-9);
        }
    }
}

#[test]
fn eig_normal_random_unitaries_and_hermitians() {
    let mut rng = common::rng(3);
    for _ in 0..20 {
        for a in [
            common::random_unitary(16, &mut rng),
            common::random_hermitian(16, &mut rng),
        ] {
            let eig = eig_normal(&a).unwrap();
            let v = eig.vectors();
            assert!((&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(16)) <= 1e-9);
            let vd = v * &ComplexMatrix::from_diagonal(eig.values());
            assert!((&a * v).max_abs_diff(&vd) <= 1e-9);
            assert!(eig.reconstruct().max_abs_diff(&a) <= 1e-9);
        }
    }
}

#[test]
fn unitary_eigenvalues_on_circle_hermitian_eigenvalues_real() {
    let mut rng = common::rng(5);
    let u = common::random_unitary(12, &mut rng);
    assert!(eig_normal(&u)
        .unwrap()
        .values()
        .iter()
        .all(|z| (z.norm() - 1.0).abs() <= 1e-9));
    let h = common::random_hermitian(12, &mut rng);
    assert!(eig_normal(&h)
        .unwrap()
        .values()
        .iter()
        .all(|z| z.im.abs() <= 1e-9));
}

#[test]
fn degenerate_unitary_with_conjugate_pairs() {
    // diag(e^{ia}, e^{-ia}, e^{ia}, 1) in a random basis: Hermitian part is
    // triply degenerate at cos(a).
    let mut rng = common::rng(19);
    let q = common::random_unitary(4, &mut rng);
    let a = 0.9f64;
    let d = ComplexMatrix::from_diagonal(&[
        c(a.cos(), a.sin()),
        c(a.cos(), -a.sin()),
        c(a.cos(), a.sin()),
        c(1.0, 0.0),
    ]);
    let u = &(&q * &d) * &q.adjoint();
    let eig = eig_normal(&u).unwrap();
    assert!(eig.reconstruct().max_abs_diff(&u) <= 1e-9);
    let l = principal_log_unitary(&u).unwrap();
    assert!(common::taylor_expm(&l).max_abs_diff(&u) <= 1e-9);
}

fn small_matrix(n: usize, seed: u64) -> ComplexMatrix {
    common::random_complex_matrix(n, &mut common::rng(seed))
}

/// Gaussian-integer entries, so every product in the Kronecker chain is exact.
fn integer_matrix(n: usize, seed: u64) -> ComplexMatrix {
    let m = small_matrix(n, seed);
    ComplexMatrix::from_fn(n, n, |i, j| {
        c((2.0 * m[(i, j)].re).round(), (2.0 * m[(i, j)].im).round())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exp_group_law(seed in any::<u64>(), s in -3.0f64..3.0, t in -3.0f64..3.0, n in 1usize..=8) {
        let h = common::random_hermitian(n, &mut common::rng(seed));
        let a = exp_hermitian(&h, s).unwrap();
        let b = exp_hermitian(&h, t).unwrap();
        let ab = exp_hermitian(&h, s + t).unwrap();
        prop_assert!((&a * &b).max_abs_diff(&ab) <= 1e-9);
    }

    #[test]
    fn log_exp_round_trip(seed in any::<u64>(), n in 1usize..=16) {
        let u = common::random_unitary(n, &mut common::rng(seed));
        let l = principal_log_unitary(&u).unwrap();
        prop_assert!(l.scale(c(0.0, 1.0)).hermiticity_defect() <= 1e-10);
        prop_assert!(common::taylor_expm(&l).max_abs_diff(&u) <= 1e-9);
    }

    #[test]
    fn tensor_associative_and_mixed_product(seed in any::<u64>(), m in 1usize..=3, n in 1usize..=3) {
        let (ia, ib, ie) = (integer_matrix(m, seed), integer_matrix(n, seed ^ 1), integer_matrix(2, seed ^ 4));
        prop_assert_eq!(
            tensor_product(&tensor_product(&ia, &ib), &ie),
            tensor_product(&ia, &tensor_product(&ib, &ie))
        );
        let a = small_matrix(m, seed);
        let b = small_matrix(n, seed ^ 1);
        let cc = small_matrix(m, seed ^ 2);
        let d = small_matrix(n, seed ^ 3);
        let e = small_matrix(2, seed ^ 4);
        let lhs3 = tensor_product(&tensor_product(&a, &b), &e);
        prop_assert!(lhs3.max_abs_diff(&tensor_product(&a, &tensor_product(&b, &e))) <= 1e-12);
        let lhs = &tensor_product(&a, &b) * &tensor_product(&cc, &d);
        let rhs = tensor_product(&(&a * &cc), &(&b * &d));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }
}
