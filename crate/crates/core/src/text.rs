//! Tokenization, normalization and content-word filtering.
//!
//! Titles are split on Unicode whitespace; each whitespace chunk is then
//! split into runs of word characters (letters, digits, apostrophes,
//! hyphens) with edge hyphens trimmed. Everything between tokens is kept
//! as a separator so the original text can be rebuilt byte-for-byte.

use std::collections::BTreeSet;
use std::fs;
use std::ops::Range;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Minimum content-word length used when nothing else is configured.
pub const DEFAULT_MIN_LEN: usize = 3;

const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords.txt");

/// Letter-case pattern of a token's surface form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Casing {
    Lower,
    Capitalized,
    Upper,
    Mixed,
}

impl Casing {
    pub fn of(word: &str) -> Casing {
        let mut letters = word.chars().filter(|c| c.is_alphabetic());
        let Some(first) = letters.next() else {
            return Casing::Lower;
        };
        let rest: Vec<char> = letters.collect();
        let rest_lower = rest.iter().all(|c| !c.is_uppercase());
        let rest_upper = rest.iter().all(|c| !c.is_lowercase());
        match (first.is_uppercase(), rest_lower, rest_upper) {
            (false, true, _) => Casing::Lower,
            (true, true, _) => Casing::Capitalized,
            (true, false, true) => Casing::Upper,
            _ => Casing::Mixed,
        }
    }

    /// Re-case a lowercase word so it follows this pattern.
    ///
    /// `Mixed` has no well-defined transfer; the word is returned as given.
    pub fn apply(self, word: &str) -> String {
        match self {
            Casing::Lower | Casing::Mixed => word.to_string(),
            Casing::Upper => word.to_uppercase(),
            Casing::Capitalized => {
                let mut chars = word.chars();
                match chars.next() {
                    Some(first) => first.to_uppercase().chain(chars).collect(),
                    None => String::new(),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub normal: String,
    pub position: usize,
    pub casing: Casing,
    /// Byte range of `surface` inside the owning title's raw text.
    pub span: Range<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Title {
    pub id: String,
    pub raw: String,
    pub tokens: Vec<Token>,
}

impl Title {
    pub fn new(id: impl Into<String>, raw: impl Into<String>) -> Title {
        let mut title = tokenize(&raw.into());
        title.id = id.into();
        title
    }

    /// Separators around the tokens: always `tokens.len() + 1` entries.
    pub fn separators(&self) -> Vec<&str> {
        let mut seps = Vec::with_capacity(self.tokens.len() + 1);
        let mut cursor = 0;
        for token in &self.tokens {
            seps.push(&self.raw[cursor..token.span.start]);
            cursor = token.span.end;
        }
        seps.push(&self.raw[cursor..]);
        seps
    }

    /// Interleave separators and surfaces back into a single string.
    pub fn reconstruct(&self) -> String {
        let seps = self.separators();
        let mut out = String::with_capacity(self.raw.len());
        for (sep, token) in seps.iter().zip(&self.tokens) {
            out.push_str(sep);
            out.push_str(&token.surface);
        }
        out.push_str(seps[seps.len() - 1]);
        out
    }

    pub fn normals(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|t| t.normal.as_str())
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '\'' || c == '\u{2019}' || c == '-'
}

/// Tokenize a title. The returned title has an empty id.
pub fn tokenize(raw: &str) -> Title {
    let mut tokens = Vec::new();
    let mut run_start: Option<usize> = None;
    let push_run = |start: usize, end: usize, tokens: &mut Vec<Token>| {
        let run = &raw[start..end];
        let trimmed = run.trim_matches('-');
        if trimmed.is_empty() {
            return;
        }
        let offset = start + (run.len() - run.trim_start_matches('-').len());
        let normal: String = trimmed.to_lowercase().replace('\u{2019}', "'");
        tokens.push(Token {
            surface: trimmed.to_string(),
            normal,
            position: tokens.len(),
            casing: Casing::of(trimmed),
            span: offset..offset + trimmed.len(),
        });
    };
    for (idx, c) in raw.char_indices() {
        if is_word_char(c) {
            run_start.get_or_insert(idx);
        } else if let Some(start) = run_start.take() {
            push_run(start, idx, &mut tokens);
        }
    }
    if let Some(start) = run_start {
        push_run(start, raw.len(), &mut tokens);
    }
    Title {
        id: String::new(),
        raw: raw.to_string(),
        tokens,
    }
}

/// A lowercase stopword set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Stopwords {
    words: BTreeSet<String>,
}

impl Stopwords {
    /// The shipped English list.
    pub fn english() -> Stopwords {
        Stopwords::parse(DEFAULT_STOPWORDS)
    }

    pub fn empty() -> Stopwords {
        Stopwords::default()
    }

    pub fn parse(text: &str) -> Stopwords {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        Stopwords { words }
    }

    pub fn load(path: &Path) -> Result<Stopwords> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Stopwords::parse(&text))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// SHA-256 over the sorted list, newline-joined, as lowercase hex.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        for word in &self.words {
            hasher.update(word.as_bytes());
            hasher.update(b"\n");
        }
        hex::encode(hasher.finalize())
    }
}

impl<S: Into<String>> FromIterator<S> for Stopwords {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Stopwords {
            words: iter.into_iter().map(|s| s.into().to_lowercase()).collect(),
        }
    }
}

/// Meaning-bearing words are the only substitution targets.
pub fn is_content_word(token: &Token, stopwords: &Stopwords, min_len: usize) -> bool {
    !stopwords.contains(&token.normal)
        && token.normal.chars().count() >= min_len
        && token.normal.chars().all(char::is_alphabetic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn normals(raw: &str) -> Vec<String> {
        tokenize(raw).tokens.into_iter().map(|t| t.normal).collect()
    }

    #[test]
    fn splits_and_lowercases() {
        let title = tokenize("End of the library");
        assert_eq!(normals("End of the library"), ["end", "of", "the", "library"]);
        let casings: Vec<Casing> = title.tokens.iter().map(|t| t.casing).collect();
        assert_eq!(
            casings,
            [Casing::Capitalized, Casing::Lower, Casing::Lower, Casing::Lower]
        );
    }

    #[test]
    fn empty_input() {
        assert!(tokenize("").tokens.is_empty());
        assert!(tokenize("   \t ").tokens.is_empty());
    }

    #[test]
    fn strips_boundary_punctuation() {
        assert_eq!(normals("digital ubiquity?"), ["digital", "ubiquity"]);
        assert_eq!(normals("library: does"), ["library", "does"]);
        assert_eq!(normals("(\"quoted\")"), ["quoted"]);
    }

    #[test]
    fn keeps_hyphenated_words_and_trims_edge_hyphens() {
        assert_eq!(normals("well-known -- words -"), ["well-known", "words"]);
        assert_eq!(normals("-lead"), ["lead"]);
    }

    #[test]
    fn casing_classes() {
        assert_eq!(Casing::of("NASA"), Casing::Upper);
        assert_eq!(Casing::of("iPhone"), Casing::Mixed);
        assert_eq!(Casing::of("A"), Casing::Capitalized);
        assert_eq!(Casing::of("2019"), Casing::Lower);
        assert_eq!(Casing::Capitalized.apply("death"), "Death");
        assert_eq!(Casing::Upper.apply("hero"), "HERO");
    }

    #[test]
    fn content_words() {
        let sw = Stopwords::english();
        let title = tokenize("the library of 2019 e-books");
        let flags: Vec<bool> = title
            .tokens
            .iter()
            .map(|t| is_content_word(t, &sw, DEFAULT_MIN_LEN))
            .collect();
        assert_eq!(flags, [false, true, false, false, false]);
        let short = tokenize("art");
        assert!(!is_content_word(&short.tokens[0], &sw, 4));
    }

    #[test]
    fn stopword_file_comments_and_case() {
        let sw = Stopwords::parse("# header\nThe\n\n  of \n");
        assert_eq!(sw.len(), 2);
        assert!(sw.contains("the") && sw.contains("of"));
        assert!(Stopwords::english().len() > 140);
    }

    #[test]
    fn fingerprint_ignores_order() {
        let a: Stopwords = ["b", "a"].into_iter().collect();
        let b: Stopwords = ["a", "b"].into_iter().collect();
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_ne!(a.fingerprint(), Stopwords::empty().fingerprint());
    }

    proptest! {
        #[test]
        fn reconstruction_is_exact(raw in "[a-zA-Z0-9 ,.:;?!'\"()\\-\t]{0,60}|\\PC{0,30}") {
            let title = tokenize(&raw);
            prop_assert_eq!(title.reconstruct(), raw.clone());
            prop_assert_eq!(tokenize(&raw), title.clone());
            for (i, t) in title.tokens.iter().enumerate() {
                prop_assert_eq!(t.position, i);
                prop_assert!(!t.normal.is_empty());
                prop_assert_eq!(&raw[t.span.clone()], t.surface.as_str());
            }
        }

        #[test]
        fn normals_are_clean(raw in "[a-zA-Zéü0-9 ,.:;?!'()\\-]{0,60}") {
            for t in tokenize(&raw).tokens {
                prop_assert_eq!(&t.normal, &t.surface.to_lowercase());
                prop_assert!(t.normal.chars().all(|c| c.is_alphanumeric() || c == '\'' || c == '-'));
                prop_assert!(!t.normal.starts_with('-') && !t.normal.ends_with('-'));
            }
        }
    }
}
