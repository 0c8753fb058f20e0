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

//! Line-oriented text format for sentence systems.
//!
//! ```text
//! # the double liar
//! (1) sentence (2) is false
//! (2) sentence (1) is true
//! ```
//!
//! One claim per line, keywords are case-insensitive and tokens may be
//! separated by any amount of whitespace. Blank lines and lines whose first
//! non-blank character is `#` are skipped. Indices are 1-based everywhere.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// "Sentence `subject` asserts that sentence `target` is true/false."
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Claim {
    pub subject: usize,
    pub target: usize,
    pub asserts_true: bool,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) sentence ({}) is {}",
            self.subject,
            self.target,
            if self.asserts_true { "true" } else { "false" }
        )
    }
}

/// A validated set of claims with subjects exactly `1..=n`, stored in subject order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SentenceSystem {
    claims: Vec<Claim>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: sentence ({subject}) is defined more than once")]
    DuplicateSubject { subject: usize, line: usize },
    #[error("sentence ({subject}) is missing")]
    MissingSubject { subject: usize },
    #[error(
        "line {line}: sentence ({subject}) refers to sentence ({target}), which does not exist"
    )]
    TargetOutOfRange {
        subject: usize,
        target: usize,
        line: usize,
    },
    #[error("no sentences")]
    EmptySystem,
}

impl ParseError {
    /// Offending line (1-based), when the error is tied to one.
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::MalformedLine { line, .. }
            | ParseError::DuplicateSubject { line, .. }
            | ParseError::TargetOutOfRange { line, .. } => Some(*line),
            ParseError::MissingSubject { .. } | ParseError::EmptySystem => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::MalformedLine { .. } => "malformed_line",
            ParseError::DuplicateSubject { .. } => "duplicate_subject",
            ParseError::MissingSubject { .. } => "missing_subject",
            ParseError::TargetOutOfRange { .. } => "target_out_of_range",
            ParseError::EmptySystem => "empty_system",
        }
    }
}

impl SentenceSystem {
    /// Validates claims given in any order. Line numbers in errors are
    /// positions in `claims`, counted from 1.
    pub fn new(claims: Vec<Claim>) -> Result<Self, ParseError> {
        let numbered = claims
            .into_iter()
            .enumerate()
            .map(|(i, c)| (i + 1, c))
            .collect();
        Self::validate(numbered)
    }

    fn validate(mut numbered: Vec<(usize, Claim)>) -> Result<Self, ParseError> {
        if numbered.is_empty() {
            return Err(ParseError::EmptySystem);
        }
        // Stable: among duplicates the later line is reported.
        numbered.sort_by_key(|(line, c)| (c.subject, *line));
        for pair in numbered.windows(2) {
            if pair[0].1.subject == pair[1].1.subject {
                return Err(ParseError::DuplicateSubject {
                    subject: pair[1].1.subject,
                    line: pair[1].0,
                });
            }
        }
        for (i, (_, claim)) in numbered.iter().enumerate() {
            if claim.subject != i + 1 {
                return Err(ParseError::MissingSubject { subject: i + 1 });
            }
        }
        let n = numbered.len();
        for (line, claim) in &numbered {
            if claim.target == 0 || claim.target > n {
                return Err(ParseError::TargetOutOfRange {
                    subject: claim.subject,
                    target: claim.target,
                    line: *line,
                });
            }
        }
        Ok(SentenceSystem {
            claims: numbered.into_iter().map(|(_, c)| c).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.claims.len()
    }

    /// Always false for a validated system.
    pub fn is_empty(&self) -> bool {
        self.claims.is_empty()
    }

    pub fn claims(&self) -> &[Claim] {
        &self.claims
    }

    /// Claim made by sentence `subject` (1-based).
    pub fn claim(&self, subject: usize) -> Option<&Claim> {
        subject.checked_sub(1).and_then(|i| self.claims.get(i))
    }
}

impl fmt::Display for SentenceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}

impl std::str::FromStr for SentenceSystem {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[derive(Debug, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Int(&'a str),
    Word(&'a str),
}

fn tokenize(line: &str) -> Result<Vec<Token<'_>>, String> {
    let mut tokens = Vec::new();
    let mut rest = line;
    while let Some(ch) = rest.chars().next() {
        if ch.is_whitespace() {
            rest = &rest[ch.len_utf8()..];
        } else if ch == '(' {
            tokens.push(Token::Open);
            rest = &rest[1..];
        } else if ch == ')' {
            tokens.push(Token::Close);
            rest = &rest[1..];
        } else if ch.is_ascii_digit() {
            let end = rest
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len());
            tokens.push(Token::Int(&rest[..end]));
            rest = &rest[end..];
        } else if ch.is_ascii_alphabetic() {
            let end = rest
                .find(|c: char| !c.is_ascii_alphabetic())
                .unwrap_or(rest.len());
            tokens.push(Token::Word(&rest[..end]));
            rest = &rest[end..];
        } else {
            return Err(format!("unexpected character {ch:?}"));
        }
    }
    Ok(tokens)
}

fn describe(token: Option<&Token<'_>>) -> String {
    match token {
        None => "end of line".to_string(),
        Some(Token::Open) => "'('".to_string(),
        Some(Token::Close) => "')'".to_string(),
        Some(Token::Int(s)) => format!("number {s}"),
        Some(Token::Word(w)) => format!("{w:?}"),
    }
}

struct LineParser<'a> {
    tokens: std::iter::Peekable<std::vec::IntoIter<Token<'a>>>,
}

impl<'a> LineParser<'a> {
    fn expect(&mut self, want: Token<'static>, what: &str) -> Result<(), String> {
        match self.tokens.next() {
            Some(t) if t == want => Ok(()),
            other => Err(format!(
                "expected {what}, found {}",
                describe(other.as_ref())
            )),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), String> {
        match self.tokens.next() {
            Some(Token::Word(w)) if w.eq_ignore_ascii_case(word) => Ok(()),
            other => Err(format!(
                "expected keyword '{word}', found {}",
                describe(other.as_ref())
            )),
        }
    }

    fn index(&mut self) -> Result<usize, String> {
        self.expect(Token::Open, "'('")?;
        let value = match self.tokens.next() {
            Some(Token::Int(s)) => s
                .parse::<usize>()
                .map_err(|_| format!("sentence index {s} is too large"))?,
            other => {
                return Err(format!(
                    "expected a sentence index, found {}",
                    describe(other.as_ref())
                ))
            }
        };
        self.expect(Token::Close, "')'")?;
        Ok(value)
    }

    fn truth(&mut self) -> Result<bool, String> {
        match self.tokens.next() {
            Some(Token::Word(w)) if w.eq_ignore_ascii_case("true") => Ok(true),
            Some(Token::Word(w)) if w.eq_ignore_ascii_case("false") => Ok(false),
            other => Err(format!(
                "expected 'true' or 'false', found {}",
                describe(other.as_ref())
            )),
        }
    }

    fn claim(mut self) -> Result<Claim, String> {
        let subject = self.index()?;
        if subject == 0 {
            return Err("sentence indices start at 1".to_string());
        }
        self.keyword("sentence")?;
        let target = self.index()?;
        self.keyword("is")?;
        let asserts_true = self.truth()?;
        if let Some(extra) = self.tokens.next() {
            return Err(format!("unexpected {} after claim", describe(Some(&extra))));
        }
        Ok(Claim {
            subject,
            target,
            asserts_true,
        })
    }
}

/// Parses the text format. The first malformed line wins; structural
/// checks (duplicates, gaps, targets) run only on well-formed input.
pub fn parse(text: &str) -> Result<SentenceSystem, ParseError> {
    let mut numbered = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let malformed = |reason: String| ParseError::MalformedLine {
            line: i + 1,
            reason,
        };
        let tokens = tokenize(trimmed).map_err(malformed)?;
        let parser = LineParser {
            tokens: tokens.into_iter().peekable(),
        };
        let claim = parser.claim().map_err(malformed)?;
        numbered.push((i + 1, claim));
    }
    SentenceSystem::validate(numbered)
}

/// Canonical text: one claim per line in subject order, lowercase, LF-separated,
/// no trailing newline.
pub fn format(system: &SentenceSystem) -> String {
    system
        .claims
        .iter()
        .map(Claim::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}
