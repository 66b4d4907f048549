// Build the two frequency tables from a title corpus and a keyword list,
// then round-trip them through the on-disk model format.
//
// cargo run --example frequency_model

use std::error::Error;
use std::path::PathBuf;

use sticky_words::corpus::{build_context_model, build_pop_model, read_pop_entries, read_titles, Fingerprint};
use sticky_words::{FrequencyModel, Stopwords};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn run() -> Result<(), Box<dyn Error>> {
    let titles = read_titles(&fixture("context_titles.txt"))?;
    let keywords = read_pop_entries(&fixture("pop_keywords.tsv"))?;

    let model = FrequencyModel {
        context: build_context_model(&titles)?,
        popularity: build_pop_model(&keywords)?,
        fingerprint: Fingerprint::new(&Stopwords::english(), 3),
    };
    println!(
        "{} titles, {} distinct words; {} keyword words, top count {}",
        model.context.doc_count(),
        model.context.vocabulary_size(),
        model.popularity.vocabulary_size(),
        model.popularity.max_count()
    );

    println!("{:<14} {:>4} {:>8} {:>8} {:>12}", "word", "df", "novelty", "count", "familiarity");
    for word in ["the", "library", "end", "death", "murder", "serial", "zeppelin"] {
        println!(
            "{:<14} {:>4} {:>8.4} {:>8} {:>12.4}",
            word,
            model.context.df(word),
            model.context.novelty(word),
            model.popularity.count(word),
            model.popularity.familiarity(word)
        );
    }

    let dir = tempfile::tempdir()?;
    let path = dir.path().join("model.json");
    model.save(&path)?;
    let reloaded = FrequencyModel::load(&path)?;
    assert_eq!(reloaded.context.df("library"), model.context.df("library"));
    assert_eq!(reloaded.fingerprint, model.fingerprint);
    println!("saved and reloaded {} bytes", std::fs::metadata(&path)?.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
