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

//! Hilbert-space models of inference cycles.
//!
//! A cycle of `L` truth tokens becomes `L` orthonormal basis states. The
//! discrete step `U_D` permutes them cyclically, and the Hamiltonian is the
//! generator of that step: `H = (i / tau) ln U_D` with `tau = pi / 2`, so that
//! `exp(-i H tau) = U_D` and inference outcomes sit at `t = n tau`. The
//! initial state is the equal-weight superposition of the cycle states, which
//! is the eigenvalue-zero eigenvector of `H` and hence stationary.
//!
//! Most systems use the flat model in `C^L`. The two-sentence paradox
//! "(1) sentence (2) is false / (2) sentence (1) is true" also has a
//! tensor-product model in `C^4 (x) C^4`, see [`quantize_double_liar_a`].

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::inference::{walk, InferenceError, TruthToken};
use crate::numerics::{
    c, eig_normal, exp_from_spectrum, principal_log_unitary, tensor_product, ComplexMatrix,
    ComplexScalar, EigenDecomposition, NumericsError, StateVector, ALGEBRA_TOL, MAX_DIM,
};
use crate::presets::Preset;
use crate::sentence_dsl::SentenceSystem;

/// Time between consecutive inference outcomes.
pub const TAU: f64 = PI / 2.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantizationError {
    #[error("start token {start} is not on its own cycle (tail of length {tail_len})")]
    StartNotOnCycle { start: TruthToken, tail_len: usize },
    #[error("cycle of length {0} exceeds the supported dimension")]
    CycleTooLong(usize),
    #[error("amplitudes are not normalized (|c_true|^2 + |c_false|^2 = {0})")]
    NotNormalized(f64),
    #[error("sentence ({0}) does not exist in a two-sentence system")]
    UnknownSentence(usize),
    #[error(transparent)]
    Inference(#[from] InferenceError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Row-major flattening of a tensor product of factor spaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorEmbedding {
    factor_dims: Vec<usize>,
}

impl TensorEmbedding {
    pub fn new(factor_dims: Vec<usize>) -> Self {
        assert!(factor_dims.iter().all(|&d| d > 0));
        TensorEmbedding { factor_dims }
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn dim(&self) -> usize {
        self.factor_dims.iter().product()
    }

    /// 1-based flat index of a 1-based multi-index; for two factors of
    /// dimension 4 this is `4 (i - 1) + j`.
    pub fn kappa(&self, multi: &[usize]) -> Option<usize> {
        if multi.len() != self.factor_dims.len() {
            return None;
        }
        let mut flat = 0;
        for (&i, &d) in multi.iter().zip(&self.factor_dims) {
            if i == 0 || i > d {
                return None;
            }
            flat = flat * d + (i - 1);
        }
        Some(flat + 1)
    }

    /// Inverse of [`kappa`](Self::kappa).
    pub fn multi_index(&self, flat: usize) -> Option<Vec<usize>> {
        if flat == 0 || flat > self.dim() {
            return None;
        }
        let mut rest = flat - 1;
        let mut out = vec![0; self.factor_dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.factor_dims).rev() {
            *slot = rest % d + 1;
            rest /= d;
        }
        Some(out)
    }
}

/// Immutable quantized model of one inference cycle.
#[derive(Debug, Clone)]
pub struct QuantumModel {
    sentence_count: usize,
    basis_labels: Vec<TruthToken>,
    /// 0-based index in `C^dim` of the basis state for each cycle position.
    cycle_indices: Vec<usize>,
    psi0: StateVector,
    projectors: Vec<ComplexMatrix>,
    u_discrete: ComplexMatrix,
    hamiltonian: ComplexMatrix,
    spectrum: EigenDecomposition,
    tau: f64,
    embedding: Option<TensorEmbedding>,
}

impl QuantumModel {
    fn build(
        dim: usize,
        sentence_count: usize,
        basis_labels: Vec<TruthToken>,
        cycle_indices: Vec<usize>,
        projectors: Vec<ComplexMatrix>,
        embedding: Option<TensorEmbedding>,
    ) -> Result<Self, QuantizationError> {
        let len = basis_labels.len();
        debug_assert_eq!(cycle_indices.len(), len);
        debug_assert_eq!(projectors.len(), len);

        let mut image: Vec<usize> = (0..dim).collect();
        for k in 0..len {
            image[cycle_indices[k]] = cycle_indices[(k + 1) % len];
        }
        let u_discrete = ComplexMatrix::from_fn(dim, dim, |i, j| {
            if image[j] == i {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });

        let amp = c((1.0 / len as f64).sqrt(), 0.0);
        let mut psi0 = vec![c(0.0, 0.0); dim];
        for &idx in &cycle_indices {
            psi0[idx] = amp;
        }
        let psi0 = StateVector::from_amplitudes(psi0);

        let log = principal_log_unitary(&u_discrete)?;
        let h = log.scale(c(0.0, 1.0 / TAU));
        let hamiltonian = (&h + &h.adjoint()).scale(c(0.5, 0.0));
        let spectrum = eig_normal(&hamiltonian)?;

        Ok(QuantumModel {
            sentence_count,
            basis_labels,
            cycle_indices,
            psi0,
            projectors,
            u_discrete,
            hamiltonian,
            spectrum,
            tau: TAU,
            embedding,
        })
    }

    pub fn dim(&self) -> usize {
        self.psi0.dim()
    }

    /// Number of sentences in the system the model was built from.
    pub fn sentence_count(&self) -> usize {
        self.sentence_count
    }

    pub fn cycle_len(&self) -> usize {
        self.basis_labels.len()
    }

    /// Token labelling each cycle position, in walk order.
    pub fn basis_labels(&self) -> &[TruthToken] {
        &self.basis_labels
    }

    pub fn cycle_indices(&self) -> &[usize] {
        &self.cycle_indices
    }

    /// Basis state of cycle position `k`.
    pub fn cycle_state(&self, k: usize) -> StateVector {
        StateVector::basis(self.dim(), self.cycle_indices[k % self.cycle_len()])
    }

    pub fn position_of(&self, token: TruthToken) -> Option<usize> {
        self.basis_labels.iter().position(|&t| t == token)
    }

    pub fn psi0(&self) -> &StateVector {
        &self.psi0
    }

    /// Projector making `token` hold; `None` if the token is not on the cycle.
    pub fn projector(&self, token: TruthToken) -> Option<&ComplexMatrix> {
        self.position_of(token).map(|k| &self.projectors[k])
    }

    pub fn projectors(&self) -> impl Iterator<Item = (TruthToken, &ComplexMatrix)> {
        self.basis_labels.iter().copied().zip(&self.projectors)
    }

    /// Orthogonal projector onto the span of the cycle states.
    pub fn cycle_projector(&self) -> ComplexMatrix {
        let mut p = ComplexMatrix::zeros(self.dim(), self.dim());
        for &i in &self.cycle_indices {
            p[(i, i)] = c(1.0, 0.0);
        }
        p
    }

    pub fn u_discrete(&self) -> &ComplexMatrix {
        &self.u_discrete
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    pub fn spectrum(&self) -> &EigenDecomposition {
        &self.spectrum
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn embedding(&self) -> Option<&TensorEmbedding> {
        self.embedding.as_ref()
    }

    /// `U(t) = exp(-i H t)`.
    pub fn evolution_at(&self, t: f64) -> ComplexMatrix {
        exp_from_spectrum(&self.spectrum, t)
    }

    /// `U(t) psi` computed in the eigenbasis of `H`, without forming `U(t)`.
    pub fn evolve_state(&self, psi: &StateVector, t: f64) -> StateVector {
        if t == 0.0 {
            return psi.clone();
        }
        let v = self.spectrum.vectors();
        let n = self.dim();
        let coeffs: Vec<ComplexScalar> = (0..n)
            .map(|k| {
                let overlap: ComplexScalar = (0..n).map(|i| v[(i, k)].conj() * psi[i]).sum();
                let phase = -self.spectrum.values()[k].re * t;
                overlap * c(phase.cos(), phase.sin())
            })
            .collect();
        StateVector::from_amplitudes(
            (0..n)
                .map(|i| (0..n).map(|k| v[(i, k)] * coeffs[k]).sum())
                .collect(),
        )
    }
}

struct BasisMap<'a>(&'a [TruthToken]);

impl Serialize for BasisMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, token) in self.0.iter().enumerate() {
            map.serialize_entry(&k.to_string(), token)?;
        }
        map.end()
    }
}

struct ProjectorMap<'a>(&'a QuantumModel);

impl Serialize for ProjectorMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.cycle_len()))?;
        for (token, p) in self.0.projectors() {
            map.serialize_entry(&token.to_string(), p)?;
        }
        map.end()
    }
}

impl Serialize for QuantumModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("QuantumModel", 7)?;
        s.serialize_field("dim", &self.dim())?;
        s.serialize_field("tau", &self.tau)?;
        s.serialize_field("basis", &BasisMap(&self.basis_labels))?;
        s.serialize_field("psi0", &self.psi0)?;
        s.serialize_field("projectors", &ProjectorMap(self))?;
        s.serialize_field("u_discrete", &self.u_discrete)?;
        s.serialize_field("hamiltonian", &self.hamiltonian)?;
        s.end()
    }
}

/// Flat model in `C^L` over the cycle through `start`.
pub fn quantize_cycle(
    system: &SentenceSystem,
    start: TruthToken,
) -> Result<QuantumModel, QuantizationError> {
    let w = walk(system, start)?;
    if w.tail_len() > 0 {
        return Err(QuantizationError::StartNotOnCycle {
            start,
            tail_len: w.tail_len(),
        });
    }
    let len = w.cycle_len();
    if len > MAX_DIM {
        return Err(QuantizationError::CycleTooLong(len));
    }
    let labels = w.cycle().to_vec();
    let projectors = (0..len)
        .map(|k| ComplexMatrix::basis_projector(len, k))
        .collect();
    QuantumModel::build(
        len,
        system.len(),
        labels,
        (0..len).collect(),
        projectors,
        None,
    )
}

/// Local basis of each `C^4` factor: two marker states, then true, then false.
const LOCAL_TRUE: usize = 3;
const LOCAL_FALSE: usize = 4;

/// Tensor-product model of the four-step double liar in `C^4 (x) C^4`.
///
/// The cycle states are `e3(x)e2, e2(x)e4, e4(x)e1, e1(x)e3`, i.e. flat
/// basis vectors `e10, e8, e13, e3`, labelled `1:true, 2:false, 1:false,
/// 2:true`. The truth projectors act on one factor only (`E33 (x) 1`,
/// `E44 (x) 1`, `1 (x) E33`, `1 (x) E44`); `U_D` is the identity outside
/// the cycle span and `H` vanishes there.
pub fn quantize_double_liar_a() -> Result<(QuantumModel, TensorEmbedding), QuantizationError> {
    let embedding = TensorEmbedding::new(vec![4, 4]);
    let system = Preset::DoubleLiarA.system();
    let w = walk(&system, TruthToken::new(1, true))?;
    let labels = w.cycle().to_vec();

    let multi: [[usize; 2]; 4] = [[3, 2], [2, 4], [4, 1], [1, 3]];
    let mut indices = Vec::with_capacity(4);
    for (token, m) in labels.iter().zip(&multi) {
        let local = if token.value { LOCAL_TRUE } else { LOCAL_FALSE };
        debug_assert_eq!(m[token.sentence - 1], local);
        indices.push(embedding.kappa(m).expect("in range") - 1);
    }

    let id4 = ComplexMatrix::identity(4);
    let projectors = labels
        .iter()
        .map(|token| {
            let local = if token.value { LOCAL_TRUE } else { LOCAL_FALSE };
            let e = ComplexMatrix::basis_projector(4, local - 1);
            if token.sentence == 1 {
                tensor_product(&e, &id4)
            } else {
                tensor_product(&id4, &e)
            }
        })
        .collect();

    let model = QuantumModel::build(
        embedding.dim(),
        system.len(),
        labels,
        indices,
        projectors,
        Some(embedding.clone()),
    )?;
    Ok((model, embedding))
}

/// Entangled two-sentence states in `C^2 (x) C^2`, per-factor basis `(T, F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// Mutually affirming sentences: `(TT + FF) / sqrt 2`.
    B,
    /// Mutually denying sentences: `(TF - FT) / sqrt 2`.
    C,
}

pub fn entangled_pair_state(kind: PairKind) -> StateVector {
    let t = StateVector::basis(2, 0);
    let f = StateVector::basis(2, 1);
    let s = c(FRAC_1_SQRT_2, 0.0);
    match kind {
        PairKind::B => t.tensor(&t).add(&f.tensor(&f)).scale(s),
        PairKind::C => t.tensor(&f).add(&f.tensor(&t).scale(c(-1.0, 0.0))).scale(s),
    }
}

/// Truth projector for one sentence of a pair: `diag(1,0) (x) 1` and so on.
pub fn pair_projector(sentence: usize, value: bool) -> Result<ComplexMatrix, QuantizationError> {
    let local = single_liar_projector(value);
    let id = ComplexMatrix::identity(2);
    match sentence {
        1 => Ok(tensor_product(&local, &id)),
        2 => Ok(tensor_product(&id, &local)),
        other => Err(QuantizationError::UnknownSentence(other)),
    }
}

/// `P_true = diag(1, 0)` or `P_false = diag(0, 1)` on `C^2`.
pub fn single_liar_projector(value: bool) -> ComplexMatrix {
    ComplexMatrix::basis_projector(2, if value { 0 } else { 1 })
}

/// `c_true |T> + c_false |F>`; the squared moduli must sum to one.
pub fn single_liar_state(
    c_true: ComplexScalar,
    c_false: ComplexScalar,
) -> Result<StateVector, QuantizationError> {
    let total = c_true.norm_sqr() + c_false.norm_sqr();
    if !((total - 1.0).abs() <= ALGEBRA_TOL) {
        return Err(QuantizationError::NotNormalized(total));
    }
    Ok(StateVector::from_amplitudes(vec![c_true, c_false]))
}
