//! Trains the suffix-rule lemmatizer on generated data, with the toy lexicon
//! backing known forms, and lemmatizes a few unseen words.

use std::path::Path;

use classica::lexicon::load_lexicon;
use classica::models::train_lemmatizer;
use classica::synthetic::generate_corpus;
use classica::PosTag;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lexicon = load_lexicon(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/toy_lexicon.tsv"))?;
    let train = generate_corpus(3, 4000);
    let model = train_lemmatizer(&train, &lexicon)?;
    let mut rules: Vec<_> = model.rules().iter().filter(|r| !r.pos.is_punctuation()).collect();
    rules.sort_by(|a, b| b.count.cmp(&a.count));
    println!("{} suffix rules; the most frequent:", model.rules().len());
    for r in rules.into_iter().take(5) {
        println!("  -{:<6} {:<8} strip {} append {:?} ({}x)", r.suffix, r.pos, r.rewrite.strip, r.rewrite.append, r.count);
    }
    for (form, pos) in [
        ("chantait", PosTag::VerCjg),
        ("belles", PosTag::AdjQua),
        ("plorinaient", PosTag::VerCjg),
        ("grouchesses", PosTag::NomCom),
        ("Dorante", PosTag::NomPro),
        ("Porte", PosTag::NomCom),
    ] {
        println!("{form:<12} {pos:<8} -> {}", model.lemmatize(form, pos));
    }
    Ok(())
}
