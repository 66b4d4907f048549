//! Per-word and per-title stickiness.
//!
//! A word is sticky when it is familiar, novel and emotive at once. The
//! composite is the geometric mean of familiarity and novelty, gated to 0
//! for neutral words when `require_emotive` is set. A title scores the
//! maximum composite over its content words.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::corpus::{familiarity, novelty, Fingerprint, FrequencyModel};
use crate::error::{Error, Result};
use crate::sentiment::{polarity, Polarity, SentimentLexicon, DEFAULT_NEUTRAL_BAND};
use crate::substitution::Thesaurus;
use crate::text::{is_content_word, tokenize, Stopwords, Title, DEFAULT_MIN_LEN};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScoreConfig {
    pub theta_f: f64,
    pub theta_n: f64,
    pub require_emotive: bool,
    pub neutral_band: f64,
    pub min_len: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stopword_path: Option<PathBuf>,
}

impl Default for ScoreConfig {
    fn default() -> Self {
        ScoreConfig {
            theta_f: 0.3,
            theta_n: 0.3,
            require_emotive: true,
            neutral_band: DEFAULT_NEUTRAL_BAND,
            min_len: DEFAULT_MIN_LEN,
            stopword_path: None,
        }
    }
}

impl ScoreConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("theta_f", self.theta_f), ("theta_n", self.theta_n)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Invalid(format!("{name} = {v} outside [0, 1]")));
            }
        }
        if !(0.0..1.0).contains(&self.neutral_band) {
            return Err(Error::Invalid(format!(
                "neutral_band = {} outside [0, 1)",
                self.neutral_band
            )));
        }
        Ok(())
    }

    /// Parse a TOML config; missing keys keep their defaults.
    pub fn from_toml(text: &str) -> Result<ScoreConfig> {
        let config: ScoreConfig =
            toml::from_str(text).map_err(|e| Error::Invalid(format!("config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<ScoreConfig> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = ScoreConfig::from_toml(&text)?;
        // relative stopword paths resolve against the config file
        if let (Some(sw), Some(dir)) = (&config.stopword_path, path.parent()) {
            if sw.is_relative() {
                config.stopword_path = Some(dir.join(sw));
            }
        }
        Ok(config)
    }

    pub fn stopwords(&self) -> Result<Stopwords> {
        match &self.stopword_path {
            Some(path) => Stopwords::load(path),
            None => Ok(Stopwords::english()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StickyScore {
    pub familiarity: f64,
    pub novelty: f64,
    pub polarity: Polarity,
    pub composite: f64,
}

impl StickyScore {
    pub fn new(familiarity: f64, novelty: f64, polarity: Polarity, require_emotive: bool) -> Self {
        StickyScore {
            familiarity,
            novelty,
            polarity,
            composite: composite(familiarity, novelty, polarity, require_emotive),
        }
    }

    /// Familiar, novel and (when required) emotive under `config`.
    pub fn is_sticky(&self, config: &ScoreConfig) -> bool {
        self.familiarity >= config.theta_f
            && self.novelty >= config.theta_n
            && (!config.require_emotive || self.polarity.is_emotive())
    }
}

pub fn composite(familiarity: f64, novelty: f64, polarity: Polarity, require_emotive: bool) -> f64 {
    if require_emotive && !polarity.is_emotive() {
        0.0
    } else {
        (familiarity * novelty).sqrt()
    }
}

/// Everything needed to score words and propose substitutions.
#[derive(Debug, Clone)]
pub struct Resources {
    pub model: FrequencyModel,
    pub lexicon: SentimentLexicon,
    pub thesaurus: Option<Thesaurus>,
    pub stopwords: Stopwords,
    pub config: ScoreConfig,
}

impl Resources {
    pub fn builder() -> ResourcesBuilder {
        ResourcesBuilder::default()
    }

    pub fn word_stickiness(&self, word: &str) -> StickyScore {
        word_stickiness(word, self)
    }

    pub fn is_content_word(&self, token: &crate::text::Token) -> bool {
        is_content_word(token, &self.stopwords, self.config.min_len)
    }

    /// Returns the fingerprint the active filter settings would produce,
    /// when it differs from the model's.
    pub fn fingerprint_mismatch(&self) -> Option<Fingerprint> {
        let active = Fingerprint::new(&self.stopwords, self.config.min_len);
        (active != self.model.fingerprint).then_some(active)
    }

    pub fn thesaurus(&self) -> Result<&Thesaurus> {
        self.thesaurus.as_ref().ok_or(Error::ResourceMissing("thesaurus"))
    }
}

#[derive(Debug, Default)]
pub struct ResourcesBuilder {
    model: Option<FrequencyModel>,
    lexicon: Option<SentimentLexicon>,
    thesaurus: Option<Thesaurus>,
    stopwords: Option<Stopwords>,
    config: Option<ScoreConfig>,
}

impl ResourcesBuilder {
    pub fn model(mut self, model: FrequencyModel) -> Self {
        self.model = Some(model);
        self
    }

    pub fn lexicon(mut self, lexicon: SentimentLexicon) -> Self {
        self.lexicon = Some(lexicon);
        self
    }

    pub fn thesaurus(mut self, thesaurus: Thesaurus) -> Self {
        self.thesaurus = Some(thesaurus);
        self
    }

    pub fn stopwords(mut self, stopwords: Stopwords) -> Self {
        self.stopwords = Some(stopwords);
        self
    }

    pub fn config(mut self, config: ScoreConfig) -> Self {
        self.config = Some(config);
        self
    }

    /// Stopwords default to the config's list (or the shipped English one).
    pub fn build(self) -> Result<Resources> {
        let config = self.config.unwrap_or_default();
        config.validate()?;
        let model = self.model.ok_or(Error::ResourceMissing("frequency model"))?;
        let lexicon = self
            .lexicon
            .ok_or(Error::ResourceMissing("sentiment lexicon"))?
            .with_neutral_band(config.neutral_band)?;
        let stopwords = match self.stopwords {
            Some(sw) => sw,
            None => config.stopwords()?,
        };
        Ok(Resources {
            model,
            lexicon,
            thesaurus: self.thesaurus,
            stopwords,
            config,
        })
    }
}

pub fn word_stickiness(word: &str, resources: &Resources) -> StickyScore {
    StickyScore::new(
        familiarity(word, &resources.model.popularity),
        novelty(word, &resources.model.context),
        polarity(word, &resources.lexicon),
        resources.config.require_emotive,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordScore {
    pub position: usize,
    pub surface: String,
    pub word: String,
    pub score: StickyScore,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TitleReport {
    pub text: String,
    pub words: Vec<WordScore>,
    pub title_score: f64,
}

/// Score every content word of a title.
pub fn score_title(title: &Title, resources: &Resources) -> TitleReport {
    let words: Vec<WordScore> = title
        .tokens
        .iter()
        .filter(|t| resources.is_content_word(t))
        .map(|t| WordScore {
            position: t.position,
            surface: t.surface.clone(),
            word: t.normal.clone(),
            score: word_stickiness(&t.normal, resources),
        })
        .collect();
    let title_score = words
        .iter()
        .map(|w| w.score.composite)
        .fold(0.0, f64::max);
    TitleReport {
        text: title.raw.clone(),
        words,
        title_score,
    }
}

pub fn score_text(text: &str, resources: &Resources) -> TitleReport {
    score_title(&tokenize(text), resources)
}

/// Maximum composite over content words; 0 without content words.
pub fn title_score(title: &Title, resources: &Resources) -> f64 {
    score_title(title, resources).title_score
}
