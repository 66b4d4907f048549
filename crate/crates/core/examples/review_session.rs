// A reviewer accepts or rejects candidate rewrites; decisions are
// journaled so a restarted store picks up where it left off.
//
// cargo run --example review_session

use std::error::Error;
use std::path::PathBuf;
use std::sync::Arc;

use sticky_words::corpus::{build_context_model, build_pop_model, read_pop_entries, read_titles, Fingerprint};
use sticky_words::review::{dataset_tsv, ReviewStore};
use sticky_words::{Decision, FrequencyModel, Resources, ReviewStatus, SentimentLexicon, Stopwords, Thesaurus};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn run() -> Result<(), Box<dyn Error>> {
    let model = FrequencyModel {
        context: build_context_model(&read_titles(&fixture("context_titles.txt"))?)?,
        popularity: build_pop_model(&read_pop_entries(&fixture("pop_keywords.tsv"))?)?,
        fingerprint: Fingerprint::new(&Stopwords::english(), 3),
    };
    let resources = Arc::new(
        Resources::builder()
            .model(model)
            .lexicon(SentimentLexicon::load(&fixture("lexicon.tsv"))?)
            .thesaurus(Thesaurus::load(&fixture("thesaurus.tsv"))?)
            .build()?,
    );
    let dir = tempfile::tempdir()?;

    let session_id = {
        let mut store = ReviewStore::open(dir.path(), Arc::clone(&resources))?;
        let session = store.create_session(read_titles(&fixture("golden_titles.txt"))?)?;
        let id = session.session_id.clone();
        // accept the top candidate of each title, reject the rest
        let plan: Vec<(String, Decision)> = session
            .candidates
            .iter()
            .scan(String::new(), |last_title, c| {
                let first = *last_title != c.candidate.title_id;
                *last_title = c.candidate.title_id.clone();
                Some((c.candidate_id.clone(), if first { Decision::Accepted } else { Decision::Rejected }))
            })
            .collect();
        for (candidate_id, decision) in plan.iter().take(plan.len() - 1) {
            store.record_decision(&id, candidate_id, *decision)?;
        }
        println!("{id}: {} decisions recorded before the restart", plan.len() - 1);
        id
    };

    let store = ReviewStore::open(dir.path(), resources)?;
    let session = store.session(&session_id)?;
    let pending = session.candidates_with(Some(ReviewStatus::Pending));
    println!("after reopening: {} still pending", pending.len());
    for c in pending {
        println!("  {} {} -> {}", c.candidate_id, c.candidate.original, c.candidate.replacement);
    }
    print!("\n{}", dataset_tsv(&store.export_dataset(&session_id)?));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
