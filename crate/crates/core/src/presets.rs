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

//! The four liar systems discussed in the literature this crate models.

use crate::sentence_dsl::{parse, SentenceSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    SingleLiar,
    /// "(1) sentence (2) is false / (2) sentence (1) is true"; four-step cycle.
    DoubleLiarA,
    /// Both sentences affirm each other.
    DoubleLiarB,
    /// Both sentences deny each other.
    DoubleLiarC,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::SingleLiar,
        Preset::DoubleLiarA,
        Preset::DoubleLiarB,
        Preset::DoubleLiarC,
    ];

    pub fn text(self) -> &'static str {
        match self {
            Preset::SingleLiar => "(1) sentence (1) is false",
            Preset::DoubleLiarA => "(1) sentence (2) is false\n(2) sentence (1) is true",
            Preset::DoubleLiarB => "(1) sentence (2) is true\n(2) sentence (1) is true",
            Preset::DoubleLiarC => "(1) sentence (2) is false\n(2) sentence (1) is false",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::SingleLiar => "single-liar",
            Preset::DoubleLiarA => "double-liar-a",
            Preset::DoubleLiarB => "double-liar-b",
            Preset::DoubleLiarC => "double-liar-c",
        }
    }

    pub fn system(self) -> SentenceSystem {
        parse(self.text()).expect("preset text is valid")
    }

    /// The preset equal to `system`, if any (exact claim-by-claim match).
    pub fn identify(system: &SentenceSystem) -> Option<Preset> {
        Self::ALL.into_iter().find(|p| &p.system() == system)
    }
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown preset {s:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_identify_themselves() {
        for p in Preset::ALL {
            assert_eq!(Preset::identify(&p.system()), Some(p));
            assert_eq!(p.name().parse::<Preset>(), Ok(p));
        }
        let other = parse("(1) sentence (2) is true\n(2) sentence (1) is false").unwrap();
        assert_eq!(Preset::identify(&other), None);
    }
}
