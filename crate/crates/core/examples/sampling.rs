//! Three-tier cut of a play and the balance check of an out-of-domain set.
//!
//! cargo run --example sampling [TOKENS]

use classica::ingest::{AuthorGender, Channel, PlayMetadata};
use classica::sampling::{minimum_length, three_tier_split, validate_balance, BalanceConfig, BalanceSample, TierSizes};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10_000);
    let sizes = TierSizes::default();
    println!("shortest accepted play: {} tokens", minimum_length(sizes));
    match three_tier_split(n, sizes) {
        Ok(t) => println!("{n} tokens: train {:?}, dev {:?}, test {:?}", t.train, t.dev, t.test),
        Err(e) => println!("{e}"),
    }

    // one century, nine theatre samples instead of ten, one short sample
    let mut metadata = Vec::new();
    for i in 0..20 {
        let mut m = PlayMetadata::default().with_date(1650 + i);
        m.channel = Some(if i < 9 { Channel::Theatre } else { Channel::Other });
        m.author_gender = if i % 2 == 0 { AuthorGender::Male } else { AuthorGender::Female };
        metadata.push((format!("s{i}"), m, if i == 7 { 55 } else { 100 }));
    }
    let samples: Vec<BalanceSample<'_>> = metadata
        .iter()
        .map(|(id, m, n)| BalanceSample { id, metadata: m, token_count: *n })
        .collect();
    let report = validate_balance(&samples, &BalanceConfig::default()).expect("complete metadata");
    for v in &report.violations {
        println!("{} (century {}): {} vs {}", v.rule, v.century, v.observed, v.expected);
    }
}
