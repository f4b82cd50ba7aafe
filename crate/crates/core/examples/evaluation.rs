//! Scores predictions by token class, by century and channel, against a
//! baseline, and lists the most frequent confusions.

use std::collections::BTreeMap;

use classica::corpus::Task;
use classica::eval::{accuracy_report, classify_tokens, confusion_matrix, delta_report, grouped_report, render_confusions, EvalSample, GroupAxis};
use classica::ingest::{Channel, PlayMetadata};
use classica::models::{train_tagger, MostFrequentTag, TrainConfig};
use classica::synthetic::{generate_corpus, split_at_fraction};
use classica::{AnnotatedToken, Corpus, PosTag};

fn tagged(corpus: &[Vec<AnnotatedToken>], tag: impl Fn(&[&str]) -> Vec<PosTag>) -> Corpus {
    corpus
        .iter()
        .map(|s| {
            let forms: Vec<&str> = s.iter().map(|t| t.form.as_str()).collect();
            forms.iter().zip(tag(&forms)).map(|(f, p)| AnnotatedToken::new(*f).with_pos(p)).collect()
        })
        .collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let corpus = generate_corpus(17, 3000);
    let (train, rest) = split_at_fraction(&corpus, 0.7);
    let (dev, test) = split_at_fraction(&rest, 0.3);
    let model = train_tagger(&train, &dev, &TrainConfig { restarts: 2, ..TrainConfig::default() })?;
    let baseline = MostFrequentTag::train(&train);

    let pred = tagged(&test, |f| model.tag(f));
    let base = tagged(&test, |f| baseline.tag(f));
    let classes = classify_tokens(&train, &test, Task::Pos)?;
    println!("{}", accuracy_report(&test, &pred, &classes, Task::Pos)?);

    // four pretend samples from two centuries and both channels
    let quarter = test.len() / 4;
    let ids = ["a", "b", "c", "d"];
    let mut metadata = BTreeMap::new();
    for (i, id) in ids.iter().enumerate() {
        let mut m = PlayMetadata::default().with_date(if i < 2 { 1660 } else { 1760 });
        m.channel = Some(if i % 2 == 0 { Channel::Theatre } else { Channel::Other });
        metadata.insert(id.to_string(), m);
    }
    let samples = |p: &Corpus| -> Vec<(String, Corpus, Corpus)> {
        (0..4)
            .map(|i| {
                let r = i * quarter..if i == 3 { test.len() } else { (i + 1) * quarter };
                (ids[i].to_string(), test[r.clone()].to_vec(), p[r].to_vec())
            })
            .collect()
    };
    let axes = [GroupAxis::Century, GroupAxis::Channel];
    let grid = |p: &Corpus| {
        let owned = samples(p);
        let view: Vec<EvalSample<'_>> = owned.iter().map(|(id, g, p)| EvalSample { id, gold: g, pred: p }).collect();
        grouped_report(&view, &metadata, Task::Pos, &axes)
    };
    let ours = grid(&pred)?;
    println!("{ours}");
    println!("{}", delta_report(&grid(&base)?, &ours)?);
    print!("{}", render_confusions(&confusion_matrix(&test, &base, Task::Pos, 5)?));
    Ok(())
}
