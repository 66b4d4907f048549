// Familiarity, novelty and polarity combined into a stickiness score
// for individual words and whole titles.
//
// cargo run --example score_words -- "The end of the library"

use std::error::Error;
use std::path::PathBuf;

use sticky_words::corpus::{build_context_model, build_pop_model, read_pop_entries, read_titles, Fingerprint};
use sticky_words::scoring::score_text;
use sticky_words::{FrequencyModel, Resources, ScoreConfig, SentimentLexicon, Stopwords};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn resources(config: ScoreConfig) -> Result<Resources, Box<dyn Error>> {
    let model = FrequencyModel {
        context: build_context_model(&read_titles(&fixture("context_titles.txt"))?)?,
        popularity: build_pop_model(&read_pop_entries(&fixture("pop_keywords.tsv"))?)?,
        fingerprint: Fingerprint::new(&Stopwords::english(), config.min_len),
    };
    Ok(Resources::builder()
        .model(model)
        .lexicon(SentimentLexicon::load(&fixture("lexicon.tsv"))?)
        .config(config)
        .build()?)
}

pub fn run_with(title: &str) -> Result<(), Box<dyn Error>> {
    let strict = resources(ScoreConfig::default())?;
    for word in ["death", "hero", "murder", "leader", "end"] {
        let s = strict.word_stickiness(word);
        println!(
            "{word:<8} f={:.3} n={:.3} {:?} ({:+.2}) composite={:.3} sticky={}",
            s.familiarity,
            s.novelty,
            s.polarity.label,
            s.polarity.valence,
            s.composite,
            s.is_sticky(&strict.config)
        );
    }

    // neutral words only count when the emotive gate is off
    let relaxed = resources(ScoreConfig {
        require_emotive: false,
        ..ScoreConfig::default()
    })?;
    for (name, res) in [("emotive only", &strict), ("any polarity", &relaxed)] {
        let report = score_text(title, res);
        println!("\n{name}: {:?} scores {:.4}", report.text, report.title_score);
        for w in &report.words {
            println!("  #{:<2} {:<12} {:.4}", w.position, w.word, w.score.composite);
        }
    }
    Ok(())
}

pub fn run() -> Result<(), Box<dyn Error>> {
    run_with("The end of the library: a murder mystery")
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    match std::env::args().nth(1) {
        Some(title) => run_with(&title),
        None => run(),
    }
}
