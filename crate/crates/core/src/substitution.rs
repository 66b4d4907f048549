//! Single-word substitution candidates drawn from a thesaurus.
//!
//! Each candidate swaps exactly one content word of a title for a synonym
//! that is itself sticky. Whether the swap preserves meaning is left to a
//! human reviewer; candidates start out `Pending`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scoring::{word_stickiness, Resources, StickyScore};
use crate::text::{tokenize, Title};

/// Directional synonym map: `original -> replacements`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Thesaurus {
    synonyms: BTreeMap<String, BTreeSet<String>>,
}

fn single_word(word: &str) -> Option<String> {
    let title = tokenize(word);
    match title.tokens.as_slice() {
        [only] if only.span == (0..word.len()) => Some(only.normal.clone()),
        _ => None,
    }
}

impl Thesaurus {
    pub fn new() -> Thesaurus {
        Thesaurus::default()
    }

    /// Add `word -> synonym`. Self-references and entries that are not a
    /// single word are ignored; returns whether the pair was stored.
    pub fn insert(&mut self, word: &str, synonym: &str) -> bool {
        let (Some(word), Some(synonym)) = (single_word(word.trim()), single_word(synonym.trim())) else {
            return false;
        };
        if word == synonym {
            return false;
        }
        self.synonyms.entry(word).or_default().insert(synonym)
    }

    /// Parse `word<TAB>syn1,syn2,...` lines; `#` starts a comment line.
    pub fn parse(text: &str, origin: &str) -> Result<Thesaurus> {
        let mut thesaurus = Thesaurus::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, syns) = line
                .split_once('\t')
                .ok_or_else(|| Error::malformed(origin, idx + 1, "expected word<TAB>synonyms"))?;
            for syn in syns.split(',').filter(|s| !s.trim().is_empty()) {
                thesaurus.insert(word, syn);
            }
        }
        Ok(thesaurus)
    }

    pub fn load(path: &Path) -> Result<Thesaurus> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Thesaurus::parse(&text, &path.display().to_string())
    }

    pub fn synonyms_of(&self, word: &str) -> BTreeSet<String> {
        synonyms_of(word, self)
    }

    pub fn len(&self) -> usize {
        self.synonyms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synonyms.is_empty()
    }
}

pub fn synonyms_of(word: &str, thesaurus: &Thesaurus) -> BTreeSet<String> {
    thesaurus.synonyms.get(word).cloned().unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReviewStatus {
    Pending,
    Accepted,
    Rejected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decision {
    Accepted,
    Rejected,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Accepted => "Accepted",
            Decision::Rejected => "Rejected",
        })
    }
}

impl FromStr for Decision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Decision> {
        match s {
            "Accepted" | "accepted" | "accept" => Ok(Decision::Accepted),
            "Rejected" | "rejected" | "reject" => Ok(Decision::Rejected),
            other => Err(Error::Invalid(format!("unknown decision {other:?}"))),
        }
    }
}

impl From<Decision> for ReviewStatus {
    fn from(d: Decision) -> ReviewStatus {
        match d {
            Decision::Accepted => ReviewStatus::Accepted,
            Decision::Rejected => ReviewStatus::Rejected,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubstitutionCandidate {
    pub title_id: String,
    pub position: usize,
    pub original: String,
    pub replacement: String,
    pub original_score: StickyScore,
    pub replacement_score: StickyScore,
    pub delta: f64,
    pub status: ReviewStatus,
}

impl SubstitutionCandidate {
    /// Ranking order: delta descending, then position, then replacement.
    pub fn rank_cmp(&self, other: &Self) -> Ordering {
        other
            .delta
            .total_cmp(&self.delta)
            .then(self.position.cmp(&other.position))
            .then_with(|| self.replacement.cmp(&other.replacement))
    }
}

/// Propose every sticky synonym of every content word, ranked.
pub fn generate_candidates(title: &Title, resources: &Resources) -> Result<Vec<SubstitutionCandidate>> {
    let thesaurus = resources.thesaurus()?;
    let config = &resources.config;
    let mut candidates = Vec::new();
    for token in title.tokens.iter().filter(|t| resources.is_content_word(t)) {
        let synonyms = synonyms_of(&token.normal, thesaurus);
        if synonyms.is_empty() {
            continue;
        }
        let original_score = word_stickiness(&token.normal, resources);
        for replacement in synonyms {
            let replacement_score = word_stickiness(&replacement, resources);
            if !replacement_score.is_sticky(config) {
                continue;
            }
            candidates.push(SubstitutionCandidate {
                title_id: title.id.clone(),
                position: token.position,
                original: token.normal.clone(),
                replacement,
                original_score,
                replacement_score,
                delta: replacement_score.composite - original_score.composite,
                status: ReviewStatus::Pending,
            });
        }
    }
    candidates.sort_by(SubstitutionCandidate::rank_cmp);
    Ok(candidates)
}

/// Build the treatment variant: one token replaced, casing carried over,
/// every other byte untouched.
pub fn apply_substitution(title: &Title, candidate: &SubstitutionCandidate) -> Result<Title> {
    let token = title
        .tokens
        .get(candidate.position)
        .ok_or(Error::PositionOutOfRange {
            position: candidate.position,
            len: title.tokens.len(),
        })?;
    if candidate.replacement == candidate.original || candidate.replacement == token.normal {
        return Err(Error::IdentityReplacement(candidate.replacement.clone()));
    }
    if token.normal != candidate.original {
        return Err(Error::Invalid(format!(
            "token {} is {:?}, candidate expects {:?}",
            candidate.position, token.normal, candidate.original
        )));
    }
    let mut raw = String::with_capacity(title.raw.len() + candidate.replacement.len());
    raw.push_str(&title.raw[..token.span.start]);
    raw.push_str(&token.casing.apply(&candidate.replacement));
    raw.push_str(&title.raw[token.span.end..]);
    Ok(Title::new(title.id.clone(), raw))
}

/// Record a human verdict on a pending candidate.
pub fn review(candidate: &SubstitutionCandidate, decision: Decision) -> Result<SubstitutionCandidate> {
    if candidate.status != ReviewStatus::Pending {
        return Err(Error::AlreadyReviewed(format!(
            "{}@{}:{}",
            candidate.title_id, candidate.position, candidate.replacement
        )));
    }
    Ok(SubstitutionCandidate {
        status: decision.into(),
        ..candidate.clone()
    })
}
