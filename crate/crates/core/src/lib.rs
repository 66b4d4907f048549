//! Find and place "sticky words" in short texts such as article titles.
//!
//! A sticky word is familiar (frequent in a popular-culture keyword
//! corpus), novel (rare in the context corpus the text lives in) and
//! emotive (non-neutral in a valence lexicon). The crate scores words on
//! those three attributes, proposes single-word thesaurus substitutions
//! that raise a title's stickiness, tracks human accept/reject decisions
//! in an append-only journal, and provides the two-sample statistics used
//! to compare original and rewritten titles in an A/B test.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```bash
//! cargo run -p sticky-words --example frequency_model
//! cargo run -p sticky-words --example score_words
//! cargo run -p sticky-words --example rewrite_titles
//! cargo run -p sticky-words --example ab_statistics
//! cargo run -p sticky-words --example review_session
//! cargo run -p sticky-words --example review_server
//! ```

pub mod cli;
pub mod corpus;
pub mod error;
pub mod experiment;
pub mod review;
pub mod scoring;
pub mod sentiment;
pub mod stats;
pub mod substitution;
pub mod text;

pub use corpus::{ContextStats, FrequencyModel, PopStats};
pub use error::{Error, Result};
pub use scoring::{Resources, ScoreConfig, StickyScore};
pub use sentiment::{Polarity, PolarityLabel, SentimentLexicon};
pub use substitution::{Decision, ReviewStatus, SubstitutionCandidate, Thesaurus};
pub use text::{tokenize, Stopwords, Title, Token};
