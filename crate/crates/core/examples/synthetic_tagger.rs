//! Trains the tagger on a generated corpus and compares it with the
//! most-frequent-tag baseline on held-out sentences.
//!
//! cargo run --release --example synthetic_tagger [seed]

use std::time::Instant;

use classica::models::{train_tagger, MostFrequentTag, TrainConfig};
use classica::synthetic::{generate_corpus, split_at_fraction};
use classica::Sentence;

fn accuracy(test: &[Sentence], tag: impl Fn(&[&str]) -> Vec<classica::PosTag>) -> f64 {
    let (mut ok, mut n) = (0, 0);
    for s in test {
        let forms: Vec<&str> = s.iter().map(|t| t.form.as_str()).collect();
        for (p, t) in tag(&forms).into_iter().zip(s) {
            n += 1;
            ok += usize::from(Some(p) == t.pos);
        }
    }
    100.0 * ok as f64 / n as f64
}

fn main() {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let corpus = generate_corpus(seed, 5000);
    let (train, rest) = split_at_fraction(&corpus, 0.8);
    let (dev, test) = split_at_fraction(&rest, 0.5);

    let start = Instant::now();
    let model = train_tagger(&train, &dev, &TrainConfig::default()).expect("training");
    println!("trained in {:.1?}", start.elapsed());
    for (i, run) in model.runs.iter().enumerate() {
        let marker = if i == model.selected_run { "*" } else { " " };
        let curve: Vec<String> = run.dev_accuracy.iter().map(|a| format!("{:.3}", a)).collect();
        println!("{marker} seed {} best epoch {}: {}", run.seed, run.best_epoch, curve.join(" "));
    }

    let baseline = MostFrequentTag::train(&train);
    let ours = accuracy(&test, |f| model.tag(f));
    let base = accuracy(&test, |f| baseline.tag(f));
    println!("held-out accuracy: tagger {ours:.2}, baseline {base:.2}, gain {:+.2}", ours - base);
}
