//! Word-level polarity from a valence lexicon.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_NEUTRAL_BAND: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolarityLabel {
    Positive,
    Negative,
    Neutral,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Polarity {
    pub label: PolarityLabel,
    pub valence: f64,
}

impl Polarity {
    pub fn is_emotive(&self) -> bool {
        self.label != PolarityLabel::Neutral
    }

    fn classify(valence: f64, band: f64) -> Polarity {
        let label = if valence > band {
            PolarityLabel::Positive
        } else if valence < -band {
            PolarityLabel::Negative
        } else {
            PolarityLabel::Neutral
        };
        Polarity { label, valence }
    }
}

/// Valences in `[-1, 1]` keyed by lowercase word, plus the neutral band.
#[derive(Debug, Clone, PartialEq)]
pub struct SentimentLexicon {
    scores: BTreeMap<String, f64>,
    neutral_band: f64,
}

impl Default for SentimentLexicon {
    fn default() -> Self {
        SentimentLexicon {
            scores: BTreeMap::new(),
            neutral_band: DEFAULT_NEUTRAL_BAND,
        }
    }
}

impl SentimentLexicon {
    pub fn new() -> SentimentLexicon {
        SentimentLexicon::default()
    }

    pub fn with_neutral_band(mut self, band: f64) -> Result<SentimentLexicon> {
        if !(0.0..1.0).contains(&band) {
            return Err(Error::Invalid(format!("neutral band {band} outside [0, 1)")));
        }
        self.neutral_band = band;
        Ok(self)
    }

    pub fn neutral_band(&self) -> f64 {
        self.neutral_band
    }

    pub fn insert(&mut self, word: &str, valence: f64) -> Result<()> {
        if !(-1.0..=1.0).contains(&valence) {
            return Err(Error::Invalid(format!(
                "valence {valence} for {word:?} outside [-1, 1]"
            )));
        }
        self.scores.insert(word.trim().to_lowercase(), valence);
        Ok(())
    }

    pub fn valence(&self, word: &str) -> Option<f64> {
        self.scores.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// Every valence negated; useful for symmetry checks.
    pub fn negated(&self) -> SentimentLexicon {
        SentimentLexicon {
            scores: self.scores.iter().map(|(w, v)| (w.clone(), -v)).collect(),
            neutral_band: self.neutral_band,
        }
    }

    pub fn polarity(&self, word: &str) -> Polarity {
        polarity(word, self)
    }

    /// Parse `word<TAB>valence` lines; `#` starts a comment line.
    pub fn parse(text: &str, origin: &str) -> Result<SentimentLexicon> {
        let mut lexicon = SentimentLexicon::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| Error::malformed(origin, idx + 1, msg);
            let (word, valence) = line
                .split_once('\t')
                .ok_or_else(|| bad("expected word<TAB>valence".into()))?;
            let valence: f64 = valence
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad valence {:?}", valence.trim())))?;
            if !valence.is_finite() || !(-1.0..=1.0).contains(&valence) {
                return Err(bad(format!("valence {valence} outside [-1, 1]")));
            }
            lexicon.insert(word, valence)?;
        }
        Ok(lexicon)
    }

    pub fn load(path: &Path) -> Result<SentimentLexicon> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        SentimentLexicon::parse(&text, &path.display().to_string())
    }
}

/// Unknown words are neutral with valence 0.
pub fn polarity(word: &str, lexicon: &SentimentLexicon) -> Polarity {
    Polarity::classify(lexicon.valence(word).unwrap_or(0.0), lexicon.neutral_band)
}
