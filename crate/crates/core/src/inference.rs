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

//! Classical truth dynamics.
//!
//! Hypothesizing a value for a sentence forces a value on the sentence it
//! talks about: if sentence `i` claims "sentence `j` is `p`" and `i` is
//! taken to be `v`, then `j` must be `v XNOR p`. Iterating this map is the
//! inference walk; brute-force enumeration gives the consistent assignments.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::sentence_dsl::SentenceSystem;

/// Upper bound on system size for [`classify`].
pub const MAX_CLASSIFY: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InferenceError {
    #[error("sentence ({sentence}) does not exist in a system of {len} sentences")]
    UnknownSentence { sentence: usize, len: usize },
    #[error("assignment has {got} values, system has {want} sentences")]
    AssignmentLength { got: usize, want: usize },
    #[error("system of {0} sentences is too large to classify (limit {MAX_CLASSIFY})")]
    TooLarge(usize),
}

/// A sentence together with a hypothesized truth value. Written `"1:true"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthToken {
    pub sentence: usize,
    pub value: bool,
}

impl TruthToken {
    pub fn new(sentence: usize, value: bool) -> Self {
        TruthToken { sentence, value }
    }

    /// CSV-friendly column name, e.g. `p_1_true`.
    pub fn column_name(&self) -> String {
        format!("p_{}_{}", self.sentence, self.value)
    }
}

impl fmt::Display for TruthToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.sentence, self.value)
    }
}

impl FromStr for TruthToken {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (sentence, value) = s
            .split_once([':', '='])
            .ok_or_else(|| format!("expected SENTENCE:VALUE, got {s:?}"))?;
        let sentence = sentence
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("bad sentence index in {s:?}"))?;
        let value = match value.trim().to_ascii_lowercase().as_str() {
            "true" | "t" => true,
            "false" | "f" => false,
            _ => return Err(format!("bad truth value in {s:?}")),
        };
        Ok(TruthToken { sentence, value })
    }
}

impl Serialize for TruthToken {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn check_sentence(system: &SentenceSystem, sentence: usize) -> Result<(), InferenceError> {
    if sentence == 0 || sentence > system.len() {
        return Err(InferenceError::UnknownSentence {
            sentence,
            len: system.len(),
        });
    }
    Ok(())
}

/// One inference step: `(i, v)` with claim `(i -> j, p)` yields `(j, v XNOR p)`.
pub fn infer_step(
    system: &SentenceSystem,
    token: TruthToken,
) -> Result<TruthToken, InferenceError> {
    check_sentence(system, token.sentence)?;
    let claim = system.claim(token.sentence).expect("checked");
    Ok(TruthToken {
        sentence: claim.target,
        value: token.value == claim.asserts_true,
    })
}

/// An eventually periodic inference walk: a tail of tokens never revisited,
/// followed by one full period of the cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    steps: Vec<TruthToken>,
    tail_len: usize,
}

impl Walk {
    pub fn steps(&self) -> &[TruthToken] {
        &self.steps
    }

    pub fn tail_len(&self) -> usize {
        self.tail_len
    }

    pub fn cycle_len(&self) -> usize {
        self.steps.len() - self.tail_len
    }

    pub fn start(&self) -> TruthToken {
        self.steps[0]
    }

    pub fn tail(&self) -> &[TruthToken] {
        &self.steps[..self.tail_len]
    }

    pub fn cycle(&self) -> &[TruthToken] {
        &self.steps[self.tail_len..]
    }

    /// True when the cycle assigns both values to some sentence.
    pub fn is_contradictory(&self) -> bool {
        let cycle = self.cycle();
        cycle
            .iter()
            .any(|t| cycle.contains(&TruthToken::new(t.sentence, !t.value)))
    }
}

impl Serialize for Walk {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Walk", 3)?;
        s.serialize_field("start", &self.start())?;
        s.serialize_field("tail", self.tail())?;
        s.serialize_field("cycle", self.cycle())?;
        s.end()
    }
}

/// Follows [`infer_step`] from `start` until a token repeats. At most `2n`
/// distinct tokens exist, so this takes at most `2n + 1` steps.
pub fn walk(system: &SentenceSystem, start: TruthToken) -> Result<Walk, InferenceError> {
    check_sentence(system, start.sentence)?;
    let mut seen: HashMap<TruthToken, usize> = HashMap::new();
    let mut steps = Vec::new();
    let mut current = start;
    loop {
        if let Some(&first) = seen.get(&current) {
            return Ok(Walk {
                steps,
                tail_len: first,
            });
        }
        seen.insert(current, steps.len());
        steps.push(current);
        current = infer_step(system, current)?;
    }
}

/// Whether `assignment[i - 1]` for every sentence `i` makes all claims hold:
/// for each claim `(i -> j, p)`, `a[i] == (a[j] == p)`.
pub fn check_assignment(
    system: &SentenceSystem,
    assignment: &[bool],
) -> Result<bool, InferenceError> {
    if assignment.len() != system.len() {
        return Err(InferenceError::AssignmentLength {
            got: assignment.len(),
            want: system.len(),
        });
    }
    Ok(system
        .claims()
        .iter()
        .all(|c| assignment[c.subject - 1] == (assignment[c.target - 1] == c.asserts_true)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Exactly one consistent assignment. Cannot arise from single-pointer
    /// claims (each cycle admits zero or two solutions) but is kept as a label.
    Grounded,
    /// More than one.
    Bistable,
    /// None.
    Paradoxical,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Grounded => "grounded",
            Verdict::Bistable => "bistable",
            Verdict::Paradoxical => "paradoxical",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Ordered as binary counting with `true` before `false`, sentence 1 most significant.
    pub consistent_assignments: Vec<Vec<bool>>,
    pub verdict: Verdict,
}

/// Enumerates all `2^n` assignments (`n <= 20`).
pub fn classify(system: &SentenceSystem) -> Result<Classification, InferenceError> {
    let n = system.len();
    if n > MAX_CLASSIFY {
        return Err(InferenceError::TooLarge(n));
    }
    let mut consistent = Vec::new();
    let mut assignment = vec![false; n];
    for mask in 0u32..(1u32 << n) {
        for (i, slot) in assignment.iter_mut().enumerate() {
            *slot = mask & (1 << (n - 1 - i)) == 0;
        }
        if check_assignment(system, &assignment)? {
            consistent.push(assignment.clone());
        }
    }
    let verdict = match consistent.len() {
        0 => Verdict::Paradoxical,
        1 => Verdict::Grounded,
        _ => Verdict::Bistable,
    };
    Ok(Classification {
        consistent_assignments: consistent,
        verdict,
    })
}

/// Walks from every token `(1, true), (1, false), (2, true), ...`.
pub fn all_walks(system: &SentenceSystem) -> Vec<Walk> {
    (1..=system.len())
        .flat_map(|s| [TruthToken::new(s, true), TruthToken::new(s, false)])
        .map(|t| walk(system, t).expect("token in range"))
        .collect()
}

/// JSON shape of a classification, including the walk from every token.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub assignments: Vec<Vec<&'static str>>,
    pub walks: Vec<Walk>,
}

impl ClassificationReport {
    pub fn new(system: &SentenceSystem, classification: &Classification) -> Self {
        ClassificationReport {
            verdict: classification.verdict,
            assignments: classification
                .consistent_assignments
                .iter()
                .map(|a| {
                    a.iter()
                        .map(|&v| if v { "true" } else { "false" })
                        .collect()
                })
                .collect(),
            walks: all_walks(system),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::Preset;

    fn t(sentence: usize, value: bool) -> TruthToken {
        TruthToken::new(sentence, value)
    }

    #[test]
    fn step_examples() {
        let a = Preset::DoubleLiarA.system();
        assert_eq!(infer_step(&a, t(1, false)).unwrap(), t(2, true));
        let b = Preset::DoubleLiarB.system();
        assert_eq!(infer_step(&b, t(1, true)).unwrap(), t(2, true));
        let c = Preset::DoubleLiarC.system();
        assert_eq!(infer_step(&c, t(1, true)).unwrap(), t(2, false));
        assert_eq!(infer_step(&c, t(2, false)).unwrap(), t(1, true));
        assert!(matches!(
            infer_step(&c, t(3, true)),
            Err(InferenceError::UnknownSentence {
                sentence: 3,
                len: 2
            })
        ));
    }

    #[test]
    fn walk_case_a_is_four_cycle() {
        let w = walk(&Preset::DoubleLiarA.system(), t(1, true)).unwrap();
        assert_eq!(w.tail_len(), 0);
        assert_eq!(
            w.cycle(),
            &[t(1, true), t(2, false), t(1, false), t(2, true)]
        );
        assert!(w.is_contradictory());
    }

    #[test]
    fn walk_single_liar_and_b() {
        let w = walk(&Preset::SingleLiar.system(), t(1, true)).unwrap();
        assert_eq!(w.cycle(), &[t(1, true), t(1, false)]);
        let w = walk(&Preset::DoubleLiarB.system(), t(1, false)).unwrap();
        assert_eq!(
            (w.tail_len(), w.cycle()),
            (0, &[t(1, false), t(2, false)][..])
        );
        assert!(!w.is_contradictory());
    }

    #[test]
    fn walk_with_tail() {
        let s = crate::sentence_dsl::parse("(1) sentence (2) is true\n(2) sentence (2) is false")
            .unwrap();
        let w = walk(&s, t(1, true)).unwrap();
        assert_eq!(w.tail(), &[t(1, true)]);
        assert_eq!(w.cycle(), &[t(2, true), t(2, false)]);
    }

    #[test]
    fn assignments() {
        let b = Preset::DoubleLiarB.system();
        assert!(check_assignment(&b, &[true, true]).unwrap());
        let c = Preset::DoubleLiarC.system();
        assert!(check_assignment(&c, &[true, false]).unwrap());
        let a = Preset::DoubleLiarA.system();
        for x in [true, false] {
            for y in [true, false] {
                assert!(!check_assignment(&a, &[x, y]).unwrap());
            }
        }
        assert!(matches!(
            check_assignment(&a, &[true]),
            Err(InferenceError::AssignmentLength { got: 1, want: 2 })
        ));
    }

    #[test]
    fn classification_examples() {
        let a = classify(&Preset::DoubleLiarA.system()).unwrap();
        assert_eq!(a.verdict, Verdict::Paradoxical);
        assert!(a.consistent_assignments.is_empty());
        let b = classify(&Preset::DoubleLiarB.system()).unwrap();
        assert_eq!(b.verdict, Verdict::Bistable);
        assert_eq!(
            b.consistent_assignments,
            vec![vec![true, true], vec![false, false]]
        );
        let c = classify(&Preset::DoubleLiarC.system()).unwrap();
        assert_eq!(
            c.consistent_assignments,
            vec![vec![true, false], vec![false, true]]
        );
        assert_eq!(
            classify(&Preset::SingleLiar.system()).unwrap().verdict,
            Verdict::Paradoxical
        );
        let liar_with_tail =
            crate::sentence_dsl::parse("(1) sentence (2) is true\n(2) sentence (2) is false")
                .unwrap();
        assert_eq!(
            classify(&liar_with_tail).unwrap().verdict,
            Verdict::Paradoxical
        );
        // A liar loop poisons the whole system even next to a truth-teller.
        let mixed = crate::sentence_dsl::parse(
            "(1) sentence (2) is true\n(2) sentence (1) is false\n(3) sentence (3) is true",
        )
        .unwrap();
        assert_eq!(classify(&mixed).unwrap().verdict, Verdict::Paradoxical);
        let two_truth_tellers =
            crate::sentence_dsl::parse("(1) sentence (1) is true\n(2) sentence (2) is true")
                .unwrap();
        assert_eq!(
            classify(&two_truth_tellers)
                .unwrap()
                .consistent_assignments
                .len(),
            4
        );
    }

    #[test]
    fn too_large() {
        let text: String = (1..=21)
            .map(|i| format!("({i}) sentence (1) is true\n"))
            .collect();
        let s = crate::sentence_dsl::parse(&text).unwrap();
        assert_eq!(classify(&s), Err(InferenceError::TooLarge(21)));
    }

    #[test]
    fn report_json() {
        let s = Preset::DoubleLiarB.system();
        let report = ClassificationReport::new(&s, &classify(&s).unwrap());
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["verdict"], "bistable");
        assert_eq!(
            json["assignments"],
            serde_json::json!([["true", "true"], ["false", "false"]])
        );
        assert_eq!(json["walks"].as_array().unwrap().len(), 4);
        assert_eq!(
            json["walks"][0],
            serde_json::json!({"start": "1:true", "tail": [], "cycle": ["1:true", "2:true"]})
        );
    }

    #[test]
    fn token_text() {
        assert_eq!(t(2, false).to_string(), "2:false");
        assert_eq!("2:false".parse::<TruthToken>(), Ok(t(2, false)));
        assert_eq!("1=TRUE".parse::<TruthToken>(), Ok(t(1, true)));
        assert!("x:true".parse::<TruthToken>().is_err());
        assert_eq!(t(1, true).column_name(), "p_1_true");
    }
}
