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

//! Measurement sessions.
//!
//! A session holds one quantized model and a current state. Hypothesizing a
//! truth value projects the state (the outcome is chosen, not drawn);
//! [`Session::measure_sample`] instead draws an outcome with Born
//! probabilities from a seeded generator. Between measurements the state
//! evolves under `U(t)`, and [`Session::release`] puts the system back into
//! its stationary superposition.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::inference::{walk, TruthToken};
use crate::numerics::{c, StateVector};
use crate::presets::Preset;
use crate::quantization::{
    quantize_cycle, quantize_double_liar_a, QuantizationError, QuantumModel,
};
use crate::sentence_dsl::SentenceSystem;

/// Outcomes with squared amplitude at or below this are impossible.
pub const ZERO_PROBABILITY: f64 = 1e-12;
/// Upper bound on rows produced by [`Session::trace`].
pub const MAX_TRACE_ROWS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("hypothesis {token} has zero amplitude in the current state")]
    ZeroAmplitudeOutcome { token: TruthToken },
    #[error("sentence ({sentence}) does not exist (system has {len})")]
    UnknownSentence { sentence: usize, len: usize },
    #[error("duration must be non-negative, got {0}")]
    NegativeDuration(f64),
    #[error("duration must be finite")]
    NonFiniteDuration,
    #[error("bad trace range: {0}")]
    BadRange(String),
    #[error(transparent)]
    Quantization(#[from] QuantizationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    True,
    False,
    /// The state has weight outside both truth projectors of the sentence.
    Indeterminate,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::True => "true",
            Outcome::False => "false",
            Outcome::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EventKind {
    Measure {
        sentence: usize,
        value: bool,
        probability: f64,
    },
    Sample {
        sentence: usize,
        seed: u64,
        outcome: Outcome,
        probability: f64,
    },
    Evolve {
        dt: f64,
    },
    Release,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Event {
    pub at_time: f64,
    #[serde(flatten)]
    pub kind: EventKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleResult {
    pub outcome: Outcome,
    pub probability: f64,
}

/// Mutable simulation state. Single writer: callers serialize access.
#[derive(Debug, Clone)]
pub struct Session {
    model: Arc<QuantumModel>,
    state: StateVector,
    time: f64,
    log: Vec<Event>,
}

/// The model a fresh session for `system` uses: the tensor-product model for
/// the four-step double liar, otherwise the flat model of the cycle reached
/// from `1:true`.
pub fn default_model(system: &SentenceSystem) -> Result<QuantumModel, SimError> {
    if Preset::identify(system) == Some(Preset::DoubleLiarA) {
        return Ok(quantize_double_liar_a()?.0);
    }
    let w = walk(system, TruthToken::new(1, true)).map_err(QuantizationError::from)?;
    Ok(quantize_cycle(system, w.cycle()[0])?)
}

pub fn create_session(system: &SentenceSystem) -> Result<Session, SimError> {
    Ok(Session::new(Arc::new(default_model(system)?)))
}

impl Session {
    /// Fresh session in the model's stationary state at `t = 0`.
    pub fn new(model: Arc<QuantumModel>) -> Self {
        Session {
            state: model.psi0().clone(),
            model,
            time: 0.0,
            log: Vec::new(),
        }
    }

    pub fn model(&self) -> &QuantumModel {
        &self.model
    }

    pub fn shared_model(&self) -> Arc<QuantumModel> {
        Arc::clone(&self.model)
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn log(&self) -> &[Event] {
        &self.log
    }

    fn check_sentence(&self, sentence: usize) -> Result<(), SimError> {
        let len = self.model.sentence_count();
        if sentence == 0 || sentence > len {
            return Err(SimError::UnknownSentence { sentence, len });
        }
        Ok(())
    }

    fn project(&self, token: TruthToken) -> StateVector {
        match self.model.projector(token) {
            Some(p) => p.apply(&self.state).expect("model dimensions agree"),
            None => StateVector::zeros(self.model.dim()),
        }
    }

    fn push(&mut self, kind: EventKind) {
        self.log.push(Event {
            at_time: self.time,
            kind,
        });
    }

    /// Makes `sentence` have `value`: projects and renormalizes, returning
    /// the probability the projection carried. Time does not advance.
    pub fn hypothesize(&mut self, sentence: usize, value: bool) -> Result<f64, SimError> {
        self.check_sentence(sentence)?;
        let token = TruthToken::new(sentence, value);
        let projected = self.project(token);
        let p = projected.norm_sqr();
        if !(p > ZERO_PROBABILITY) {
            return Err(SimError::ZeroAmplitudeOutcome { token });
        }
        self.state = projected.scale(c(1.0 / p.sqrt(), 0.0));
        self.push(EventKind::Measure {
            sentence,
            value,
            probability: p,
        });
        Ok(p)
    }

    /// Born-rule measurement of `{P_true, P_false, 1 - P_true - P_false}`
    /// for one sentence, deterministic in `seed`.
    pub fn measure_sample(&mut self, sentence: usize, seed: u64) -> Result<SampleResult, SimError> {
        self.check_sentence(sentence)?;
        let on_true = self.project(TruthToken::new(sentence, true));
        let on_false = self.project(TruthToken::new(sentence, false));
        let rest = StateVector::from_amplitudes(
            (0..self.state.dim())
                .map(|i| self.state[i] - on_true[i] - on_false[i])
                .collect(),
        );
        let branches = [
            (Outcome::True, on_true),
            (Outcome::False, on_false),
            (Outcome::Indeterminate, rest),
        ];
        let weights: Vec<f64> = branches.iter().map(|(_, v)| v.norm_sqr()).collect();
        let total: f64 = weights.iter().filter(|&&w| w > ZERO_PROBABILITY).sum();

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut r = rng.random::<f64>() * total;
        let mut chosen = None;
        for (k, &w) in weights.iter().enumerate() {
            if w <= ZERO_PROBABILITY {
                continue;
            }
            chosen = Some(k);
            if r < w {
                break;
            }
            r -= w;
        }
        let k = chosen.expect("state is normalized, so some branch has weight");
        let (outcome, vector) = &branches[k];
        let p = weights[k];
        self.state = vector.scale(c(1.0 / p.sqrt(), 0.0));
        let result = SampleResult {
            outcome: *outcome,
            probability: p,
        };
        self.push(EventKind::Sample {
            sentence,
            seed,
            outcome: result.outcome,
            probability: p,
        });
        Ok(result)
    }

    /// `state <- U(dt) state`, `time += dt`.
    pub fn evolve(&mut self, dt: f64) -> Result<(), SimError> {
        if !dt.is_finite() {
            return Err(SimError::NonFiniteDuration);
        }
        if dt < 0.0 {
            return Err(SimError::NegativeDuration(dt));
        }
        let evolved = self.model.evolve_state(&self.state, dt);
        self.state = evolved.normalized().unwrap_or(evolved);
        self.push(EventKind::Evolve { dt });
        self.time += dt;
        Ok(())
    }

    /// Evolves by `steps` whole inference steps.
    pub fn evolve_steps(&mut self, steps: u32) -> Result<(), SimError> {
        self.evolve(f64::from(steps) * self.model.tau())
    }

    /// Back to the stationary superposition at `t = 0`; the log is kept.
    pub fn release(&mut self) {
        self.state = self.model.psi0().clone();
        self.push(EventKind::Release);
        self.time = 0.0;
    }

    /// `|P_token state|^2` for each cycle token, in basis order.
    pub fn probabilities(&self) -> Vec<(TruthToken, f64)> {
        probabilities_of(&self.model, &self.state)
    }

    /// Probabilities on the grid `t0, t0 + dt, ... <= t1`, where `t` is
    /// elapsed time from the current state. The session is not modified.
    pub fn trace(&self, t0: f64, t1: f64, dt: f64) -> Result<TraceTable, SimError> {
        if !(t0.is_finite() && t1.is_finite() && dt.is_finite()) {
            return Err(SimError::BadRange("bounds must be finite".into()));
        }
        if t0 > t1 {
            return Err(SimError::BadRange(format!("t0 = {t0} is after t1 = {t1}")));
        }
        if !(dt > 0.0) {
            return Err(SimError::BadRange(format!("dt = {dt} must be positive")));
        }
        let steps = ((t1 - t0) / dt + 1e-9).floor();
        if steps >= MAX_TRACE_ROWS as f64 {
            return Err(SimError::BadRange(format!(
                "range would produce more than {MAX_TRACE_ROWS} rows"
            )));
        }
        let rows = (0..=steps as usize)
            .map(|k| {
                let t = t0 + k as f64 * dt;
                let psi = self.model.evolve_state(&self.state, t);
                TraceRow {
                    t,
                    probabilities: probabilities_of(&self.model, &psi)
                        .into_iter()
                        .map(|(_, p)| p)
                        .collect(),
                }
            })
            .collect();
        Ok(TraceTable {
            tokens: self.model.basis_labels().to_vec(),
            rows,
        })
    }
}

fn probabilities_of(model: &QuantumModel, psi: &StateVector) -> Vec<(TruthToken, f64)> {
    model
        .projectors()
        .map(|(token, p)| (token, p.apply(psi).expect("dims").norm_sqr()))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub t: f64,
    pub probabilities: Vec<f64>,
}

/// Token probabilities over time. Columns follow the model's basis order.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceTable {
    pub tokens: Vec<TruthToken>,
    pub rows: Vec<TraceRow>,
}

impl TraceTable {
    pub fn column_names(&self) -> Vec<String> {
        std::iter::once("t".to_string())
            .chain(self.tokens.iter().map(TruthToken::column_name))
            .collect()
    }

    /// Column index of `token` within `TraceRow::probabilities`.
    pub fn column_of(&self, token: TruthToken) -> Option<usize> {
        self.tokens.iter().position(|&t| t == token)
    }

    /// Header plus one line per row, LF-terminated, 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = self.column_names().join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format_g12(row.t));
            for &p in &row.probabilities {
                out.push(',');
                out.push_str(&format_g12(p));
            }
            out.push('\n');
        }
        out
    }
}

impl Serialize for TraceTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<f64>> = self
            .rows
            .iter()
            .map(|r| {
                std::iter::once(r.t)
                    .chain(r.probabilities.iter().copied())
                    .collect()
            })
            .collect();
        let mut s = serializer.serialize_struct("TraceTable", 2)?;
        s.serialize_field("columns", &self.column_names())?;
        s.serialize_field("rows", &rows)?;
        s.end()
    }
}

/// `printf("%.12g")`: 12 significant digits, trailing zeros dropped,
/// exponent form outside `1e-4 <= |x| < 1e12`.
pub fn format_g12(x: f64) -> String {
    const PRECISION: i32 = 12;
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let mut out = trim_fraction(mantissa).to_string();
        let _ = write!(out, "e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
        out
    } else {
        let decimals = (PRECISION - 1 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
