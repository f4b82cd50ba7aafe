//! Trains small models and serves them over HTTP.
//!
//! cargo run --example service [ADDR]
//! curl -s --data-binary 'il porte le livre.' http://127.0.0.1:8080/tag

use std::sync::Arc;

use classica::interface::{service, Annotator};
use classica::models::{train_lemmatizer, train_tagger, TrainConfig};
use classica::synthetic::{generate_corpus, split_at_fraction};

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let addr = std::env::args().nth(1).unwrap_or_else(|| "127.0.0.1:8080".into()).parse()?;
    let corpus = generate_corpus(42, 5000);
    let (train, dev) = split_at_fraction(&corpus, 0.9);
    let tagger = train_tagger(&train, &dev, &TrainConfig::default())?;
    let lemmatizer = train_lemmatizer(&train, &Default::default())?;
    let annotator = Arc::new(Annotator::new(tagger, Some(lemmatizer)));
    println!("{}", annotator.text_to_tsv("il porte le livre."));
    println!("listening on {addr}; Ctrl-C stops");
    service::serve(annotator, addr, service::DEFAULT_BODY_LIMIT).await?;
    Ok(())
}
