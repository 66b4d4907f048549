// Propose single-word swaps for each title and apply the best one.
//
// cargo run --example rewrite_titles

use std::error::Error;
use std::path::PathBuf;

use sticky_words::corpus::{build_context_model, build_pop_model, read_pop_entries, read_titles, Fingerprint};
use sticky_words::substitution::{apply_substitution, generate_candidates};
use sticky_words::{FrequencyModel, Resources, SentimentLexicon, Stopwords, Thesaurus, Title};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn run() -> Result<(), Box<dyn Error>> {
    let model = FrequencyModel {
        context: build_context_model(&read_titles(&fixture("context_titles.txt"))?)?,
        popularity: build_pop_model(&read_pop_entries(&fixture("pop_keywords.tsv"))?)?,
        fingerprint: Fingerprint::new(&Stopwords::english(), 3),
    };
    let resources = Resources::builder()
        .model(model)
        .lexicon(SentimentLexicon::load(&fixture("lexicon.tsv"))?)
        .thesaurus(Thesaurus::load(&fixture("thesaurus.tsv"))?)
        .build()?;

    let mut titles = read_titles(&fixture("golden_titles.txt"))?;
    titles.push(Title::new("extra", "A quiet afternoon"));

    for title in &titles {
        println!("[{}] {}", title.id, title.raw);
        let candidates = generate_candidates(title, &resources)?;
        if candidates.is_empty() {
            println!("    no sticky synonyms found\n");
            continue;
        }
        for c in candidates.iter().take(3) {
            println!(
                "    #{} {} -> {}  ({:.3} -> {:.3}, delta {:+.3})",
                c.position, c.original, c.replacement, c.original_score.composite, c.replacement_score.composite, c.delta
            );
        }
        let rewritten = apply_substitution(title, &candidates[0])?;
        println!("    => {}\n", rewritten.raw);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
