// Serve the review API over HTTP until Ctrl-C.
//
// cargo run --example review_server -- 127.0.0.1:8470
// curl -s localhost:8470/api/score?text=The%20end
// curl -s -XPOST localhost:8470/api/sessions -H 'content-type: application/json' \
//      -d '{"titles": ["The end of the library"]}'

use std::error::Error;
use std::path::PathBuf;
use std::sync::Arc;

use sticky_words::corpus::{build_context_model, build_pop_model, read_pop_entries, read_titles, Fingerprint};
use sticky_words::review::{serve, AppState, ReviewStore, DEFAULT_LISTEN};
use sticky_words::{FrequencyModel, Resources, SentimentLexicon, Stopwords, Thesaurus};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

#[tokio::main]
async fn main() -> Result<(), Box<dyn Error>> {
    let listen = std::env::args().nth(1).unwrap_or_else(|| DEFAULT_LISTEN.to_string());
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

    // nothing is persisted: sessions live only as long as the process
    let store = ReviewStore::in_memory(Arc::new(resources));
    let listener = tokio::net::TcpListener::bind(&listen).await?;
    println!("listening on http://{}", listener.local_addr()?);
    serve(listener, AppState::new(store), async {
        let _ = tokio::signal::ctrl_c().await;
    })
    .await?;
    Ok(())
}
