//! Writes generated plays as TEI documents with matching gold annotations,
//! ready for `classica ingest` and `classica sample`.
//!
//! cargo run --example synthetic_play -- OUT_DIR [seed]

use std::path::PathBuf;

use classica::interface::save_corpus;
use classica::synthetic::{generate_corpus, split_at_fraction, to_tei, PlayHeader};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().ok_or("usage: synthetic_play OUT_DIR [seed]")?);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(11);
    std::fs::create_dir_all(&dir)?;

    let corpus = generate_corpus(seed, 8800);
    let (first, second) = split_at_fraction(&corpus, 0.5);
    let plays = [
        (PlayHeader { id: "dorante", title: "Dorante ou le Jardin", author: "Anonyme", year: 1665 }, first),
        (PlayHeader { id: "celimene", title: "Célimène", author: "Anonyme", year: 1672 }, second),
    ];
    for (k, (header, play)) in plays.iter().enumerate() {
        std::fs::write(dir.join(format!("{}.xml", header.id)), to_tei(play, header, seed + k as u64))?;
        save_corpus(play, dir.join(format!("{}.gold.tsv", header.id)))?;
        let n: usize = play.iter().map(Vec::len).sum();
        println!("{}: {} sentences, {n} tokens", header.id, play.len());
    }
    Ok(())
}
