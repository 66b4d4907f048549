//! Frequency models behind the novelty and familiarity scores.
//!
//! The context corpus (e.g. academic titles) yields document frequencies:
//! a word that appears in few context documents is novel. The popularity
//! corpus (e.g. movie keywords with usage counts) yields term counts: a
//! word that is used a lot in popular culture is familiar.
//!
//! Novelty is a smoothed IDF normalized into `[0, 1]`:
//!
//! ```text
//! novelty(w)     = ln((N + 1) / (df(w) + 1)) / ln(N + 1)
//! familiarity(w) = ln(1 + count(w)) / ln(1 + max_count)
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::{tokenize, Stopwords, Title};

/// Document frequencies over the context corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextStats {
    doc_count: u64,
    df: BTreeMap<String, u64>,
}

impl ContextStats {
    pub fn doc_count(&self) -> u64 {
        self.doc_count
    }

    /// Number of context documents containing `word`; 0 when unseen.
    pub fn df(&self, word: &str) -> u64 {
        self.df.get(word).copied().unwrap_or(0)
    }

    pub fn vocabulary_size(&self) -> usize {
        self.df.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.df.iter().map(|(w, &n)| (w.as_str(), n))
    }

    pub fn novelty(&self, word: &str) -> f64 {
        novelty(word, self)
    }

    fn from_parts(doc_count: u64, df: BTreeMap<String, u64>) -> Result<ContextStats> {
        if doc_count == 0 {
            return Err(Error::EmptyCorpus("context model".into()));
        }
        if let Some((w, n)) = df.iter().find(|(_, &n)| n == 0 || n > doc_count) {
            return Err(Error::Invalid(format!(
                "df({w}) = {n} outside 1..={doc_count}"
            )));
        }
        Ok(ContextStats { doc_count, df })
    }
}

/// Occurrence counts over the popularity keyword corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PopStats {
    counts: BTreeMap<String, u64>,
    max_count: u64,
}

impl PopStats {
    pub fn count(&self, word: &str) -> u64 {
        self.counts.get(word).copied().unwrap_or(0)
    }

    pub fn max_count(&self) -> u64 {
        self.max_count
    }

    pub fn vocabulary_size(&self) -> usize {
        self.counts.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(w, &n)| (w.as_str(), n))
    }

    pub fn familiarity(&self, word: &str) -> f64 {
        familiarity(word, self)
    }

    fn from_counts(counts: BTreeMap<String, u64>) -> Result<PopStats> {
        if let Some((w, _)) = counts.iter().find(|(_, &n)| n == 0) {
            return Err(Error::Invalid(format!("count({w}) must be at least 1")));
        }
        let max_count = counts
            .values()
            .copied()
            .max()
            .ok_or_else(|| Error::EmptyCorpus("popularity model".into()))?;
        Ok(PopStats { counts, max_count })
    }
}

pub fn build_context_model(titles: &[Title]) -> Result<ContextStats> {
    if titles.is_empty() {
        return Err(Error::EmptyCorpus("context corpus".into()));
    }
    let mut df: BTreeMap<String, u64> = BTreeMap::new();
    for title in titles {
        let distinct: BTreeSet<&str> = title.normals().collect();
        for word in distinct {
            *df.entry(word.to_string()).or_default() += 1;
        }
    }
    ContextStats::from_parts(titles.len() as u64, df)
}

/// Build popularity counts from `(keyword, count)` entries.
///
/// A missing count means 1. Multi-word keywords are split and every
/// distinct word in the keyword is credited with the keyword's count.
pub fn build_pop_model<S: AsRef<str>>(entries: &[(S, Option<u64>)]) -> Result<PopStats> {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for (keyword, count) in entries {
        let keyword = keyword.as_ref();
        let count = count.unwrap_or(1);
        if count == 0 {
            return Err(Error::Invalid(format!(
                "keyword {keyword:?} has count 0"
            )));
        }
        let title = tokenize(keyword);
        let words: BTreeSet<&str> = title.normals().collect();
        for word in words {
            let slot = counts.entry(word.to_string()).or_default();
            *slot = slot.saturating_add(count);
        }
    }
    if counts.is_empty() {
        return Err(Error::EmptyCorpus("popularity corpus".into()));
    }
    PopStats::from_counts(counts)
}

pub fn novelty(word: &str, ctx: &ContextStats) -> f64 {
    let n = ctx.doc_count as f64;
    let df = ctx.df(word) as f64;
    ((n + 1.0) / (df + 1.0)).ln() / (n + 1.0).ln()
}

pub fn familiarity(word: &str, pop: &PopStats) -> f64 {
    let count = pop.count(word);
    if count == 0 {
        return 0.0;
    }
    (count as f64).ln_1p() / (pop.max_count as f64).ln_1p()
}

/// Read a corpus of titles: one title per line, or JSON records with
/// `id` and `text` fields. Blank lines are skipped. Plain lines get the
/// id `t<line>` (1-based).
pub fn read_titles(path: &Path) -> Result<Vec<Title>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_titles(&text, &path.display().to_string())
}

pub fn parse_titles(text: &str, origin: &str) -> Result<Vec<Title>> {
    #[derive(Deserialize)]
    struct Record {
        id: String,
        text: String,
    }

    let mut titles = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('{') {
            let rec: Record = serde_json::from_str(trimmed)
                .map_err(|e| Error::malformed(origin, lineno, e.to_string()))?;
            titles.push(Title::new(rec.id, rec.text));
        } else {
            titles.push(Title::new(format!("t{lineno}"), line.trim_end_matches('\r')));
        }
    }
    Ok(titles)
}

/// Read `keyword<TAB>count` lines; the count column is optional.
pub fn read_pop_entries(path: &Path) -> Result<Vec<(String, Option<u64>)>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_pop_entries(&text, &path.display().to_string())
}

pub fn parse_pop_entries(text: &str, origin: &str) -> Result<Vec<(String, Option<u64>)>> {
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let (keyword, count) = match line.split_once('\t') {
            Some((k, c)) if !c.trim().is_empty() => {
                let c: u64 = c.trim().parse().map_err(|_| {
                    Error::malformed(origin, idx + 1, format!("bad count {:?}", c.trim()))
                })?;
                if c == 0 {
                    return Err(Error::malformed(origin, idx + 1, "count must be at least 1"));
                }
                (k, Some(c))
            }
            Some((k, _)) => (k, None),
            None => (line, None),
        };
        entries.push((keyword.trim().to_string(), count));
    }
    Ok(entries)
}

pub const MODEL_FORMAT_VERSION: u64 = 1;

/// Content-filter settings the model was compiled alongside.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub stopword_hash: String,
    pub min_len: usize,
}

impl Fingerprint {
    pub fn new(stopwords: &Stopwords, min_len: usize) -> Fingerprint {
        Fingerprint {
            stopword_hash: stopwords.fingerprint(),
            min_len,
        }
    }
}

/// Both frequency models, as stored in a compiled model file (JSON).
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyModel {
    pub context: ContextStats,
    pub popularity: PopStats,
    pub fingerprint: Fingerprint,
}

#[derive(Serialize, Deserialize)]
struct ModelDocument {
    format_version: u64,
    doc_count: u64,
    df: BTreeMap<String, u64>,
    counts: BTreeMap<String, u64>,
    max_count: u64,
    fingerprint: Fingerprint,
}

impl FrequencyModel {
    pub fn to_json(&self) -> String {
        let doc = ModelDocument {
            format_version: MODEL_FORMAT_VERSION,
            doc_count: self.context.doc_count,
            df: self.context.df.clone(),
            counts: self.popularity.counts.clone(),
            max_count: self.popularity.max_count,
            fingerprint: self.fingerprint.clone(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("model serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<FrequencyModel> {
        let version = serde_json::from_str::<serde_json::Value>(text)?
            .get("format_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::Invalid("model file has no format_version".into()))?;
        if version != MODEL_FORMAT_VERSION {
            return Err(Error::UnsupportedFormat(version));
        }
        let doc: ModelDocument = serde_json::from_str(text)?;
        let popularity = PopStats::from_counts(doc.counts)?;
        if popularity.max_count != doc.max_count {
            return Err(Error::Invalid(format!(
                "max_count {} does not match counts (max {})",
                doc.max_count, popularity.max_count
            )));
        }
        Ok(FrequencyModel {
            context: ContextStats::from_parts(doc.doc_count, doc.df)?,
            popularity,
            fingerprint: doc.fingerprint,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<FrequencyModel> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        FrequencyModel::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn titles(texts: &[&str]) -> Vec<Title> {
        texts
            .iter()
            .enumerate()
            .map(|(i, t)| Title::new(format!("d{i}"), *t))
            .collect()
    }

    fn ctx(doc_count: u64, word_df: u64) -> ContextStats {
        let mut df = BTreeMap::new();
        if word_df > 0 {
            df.insert("w".to_string(), word_df);
        }
        ContextStats::from_parts(doc_count, df).unwrap()
    }

    #[test]
    fn document_frequencies() {
        let stats = build_context_model(&titles(&["big data", "big ideas", "small data"])).unwrap();
        assert_eq!(stats.doc_count(), 3);
        assert_eq!(stats.df("big"), 2);
        assert_eq!(stats.df("data"), 2);
        assert_eq!(stats.df("ideas"), 1);
        assert_eq!(stats.df("absent"), 0);

        let single = build_context_model(&titles(&["x"])).unwrap();
        assert_eq!((single.doc_count(), single.df("x")), (1, 1));

        let dup = build_context_model(&titles(&["data data data", "other"])).unwrap();
        assert_eq!(dup.df("data"), 1);
    }

    #[test]
    fn empty_corpora_are_rejected() {
        assert!(matches!(build_context_model(&[]), Err(Error::EmptyCorpus(_))));
        let none: [(&str, Option<u64>); 0] = [];
        assert!(matches!(build_pop_model(&none), Err(Error::EmptyCorpus(_))));
        assert!(matches!(
            build_pop_model(&[("?!", Some(3))]),
            Err(Error::EmptyCorpus(_))
        ));
    }

    #[test]
    fn popularity_counts() {
        let pop = build_pop_model(&[("death", Some(99)), ("hero", Some(9))]).unwrap();
        assert_eq!(pop.max_count(), 99);
        let pop = build_pop_model(&[("death", Some(50)), ("death", Some(49))]).unwrap();
        assert_eq!(pop.count("death"), 99);
        let pop = build_pop_model(&[("Hero", None)]).unwrap();
        assert_eq!(pop.count("hero"), 1);
        assert!(build_pop_model(&[("x", Some(0))]).is_err());
    }

    #[test]
    fn multi_word_keywords_credit_each_word() {
        let entries = [
            ("serial killer", Some(7)),
            ("killer", Some(2)),
            ("serial serial", Some(1)),
        ];
        let pop = build_pop_model(&entries).unwrap();
        // brute force: sum counts of keywords whose word set contains w
        for word in ["serial", "killer"] {
            let expected: u64 = entries
                .iter()
                .filter(|(k, _)| k.split(' ').any(|p| p == word))
                .map(|(_, c)| c.unwrap())
                .sum();
            assert_eq!(pop.count(word), expected);
        }
        assert_eq!(pop.count("serial"), 8);
        assert_eq!(pop.count("killer"), 9);
    }

    #[test]
    fn novelty_values() {
        assert_eq!(novelty("w", &ctx(9, 0)), 1.0);
        assert_eq!(novelty("w", &ctx(9, 9)), 0.0);
        assert!((novelty("w", &ctx(9, 4)) - 0.301_029_995_663_981_2).abs() < 1e-12);
        assert_eq!(novelty("other", &ctx(9, 4)), 1.0);
    }

    #[test]
    fn familiarity_values() {
        let pop = build_pop_model(&[("top", Some(99)), ("mid", Some(9))]).unwrap();
        assert_eq!(familiarity("unknown", &pop), 0.0);
        assert_eq!(familiarity("top", &pop), 1.0);
        assert!((familiarity("mid", &pop) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn parse_corpus_files() {
        let titles = parse_titles("Big data\n\n{\"id\":\"j1\",\"text\":\"Small ideas\"}\n", "mem").unwrap();
        assert_eq!(titles.len(), 2);
        assert_eq!(titles[0].id, "t1");
        assert_eq!(titles[1].id, "j1");
        assert_eq!(titles[1].raw, "Small ideas");
        let err = parse_titles("{\"id\":1}\n", "mem").unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 1, .. }));

        let entries = parse_pop_entries("death\t99\nhero\n\nserial killer\t\n", "mem").unwrap();
        assert_eq!(
            entries,
            vec![
                ("death".to_string(), Some(99)),
                ("hero".to_string(), None),
                ("serial killer".to_string(), None)
            ]
        );
        let err = parse_pop_entries("ok\t1\nbad\tx\n", "mem").unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 2, .. }));
    }

    #[test]
    fn model_file_round_trip_and_version_guard() {
        let model = FrequencyModel {
            context: build_context_model(&titles(&["big data", "small data"])).unwrap(),
            popularity: build_pop_model(&[("death", Some(3))]).unwrap(),
            fingerprint: Fingerprint::new(&Stopwords::english(), 3),
        };
        let json = model.to_json();
        assert!(json.contains("\"format_version\": 1"));
        assert_eq!(FrequencyModel::from_json(&json).unwrap(), model);

        let v2 = json.replace("\"format_version\": 1", "\"format_version\": 2");
        assert!(matches!(FrequencyModel::from_json(&v2), Err(Error::UnsupportedFormat(2))));
        let bad_max = json.replace("\"max_count\": 3", "\"max_count\": 4");
        assert!(FrequencyModel::from_json(&bad_max).is_err());
    }

    proptest! {
        #[test]
        fn order_independent(docs in prop::collection::vec("[a-d]{1,2}( [a-d]{1,2}){0,4}", 1..8)) {
            let forward = build_context_model(&titles(&docs.iter().map(String::as_str).collect::<Vec<_>>())).unwrap();
            let mut rev = docs.clone();
            rev.reverse();
            let backward = build_context_model(&titles(&rev.iter().map(String::as_str).collect::<Vec<_>>())).unwrap();
            prop_assert_eq!(forward, backward);
        }
    }
}
