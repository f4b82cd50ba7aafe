//! Positional train/dev/test sampling of plays, and the balance rules an
//! out-of-domain evaluation corpus has to satisfy.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use serde::Serialize;
use thiserror::Error;

use crate::ingest::{AuthorGender, Channel, PlayMetadata};

pub const DEFAULT_TRAIN: usize = 2000;
pub const DEFAULT_DEV: usize = 100;
pub const DEFAULT_TEST: usize = 100;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("play of {token_count} tokens is too short: {first} {first_range:?} overlaps {second} {second_range:?}")]
    Overlap {
        token_count: usize,
        first: &'static str,
        first_range: Range<usize>,
        second: &'static str,
        second_range: Range<usize>,
    },
    #[error("play of {token_count} tokens cannot hold a {tier} tier of {size} tokens")]
    TooShort {
        token_count: usize,
        tier: &'static str,
        size: usize,
    },
}

/// Token ranges of the three tiers of one play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub play_id: String,
    pub train: Range<usize>,
    pub dev: Range<usize>,
    pub test: Range<usize>,
}

/// Tier sizes in tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TierSizes {
    pub train: usize,
    pub dev: usize,
    pub test: usize,
}

impl Default for TierSizes {
    fn default() -> Self {
        TierSizes {
            train: DEFAULT_TRAIN,
            dev: DEFAULT_DEV,
            test: DEFAULT_TEST,
        }
    }
}

fn overlaps(a: &Range<usize>, b: &Range<usize>) -> bool {
    a.start < b.end && b.start < a.end
}

/// First `train` tokens, the `dev` tokens around the midpoint, the last `test` tokens.
pub fn three_tier_split(token_count: usize, sizes: TierSizes) -> Result<Tiers, SplitError> {
    for (tier, size) in [("train", sizes.train), ("dev", sizes.dev), ("test", sizes.test)] {
        if size > token_count {
            return Err(SplitError::TooShort {
                token_count,
                tier,
                size,
            });
        }
    }
    let train = 0..sizes.train;
    let dev_start = (token_count - sizes.dev) / 2;
    let dev = dev_start..dev_start + sizes.dev;
    let test = token_count - sizes.test..token_count;
    let tiers = [("train", &train), ("dev", &dev), ("test", &test)];
    for (i, (first, a)) in tiers.iter().enumerate() {
        for (second, b) in &tiers[i + 1..] {
            if overlaps(a, b) {
                return Err(SplitError::Overlap {
                    token_count,
                    first,
                    first_range: (*a).clone(),
                    second,
                    second_range: (*b).clone(),
                });
            }
        }
    }
    Ok(Tiers { train, dev, test })
}

/// The three ranges without a play id attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiers {
    pub train: Range<usize>,
    pub dev: Range<usize>,
    pub test: Range<usize>,
}

impl Tiers {
    /// The train, dev and test slices of `items`.
    pub fn slice<'a, T>(&self, items: &'a [T]) -> (&'a [T], &'a [T], &'a [T]) {
        (
            &items[self.train.clone()],
            &items[self.dev.clone()],
            &items[self.test.clone()],
        )
    }

    pub fn for_play(self, play_id: impl Into<String>) -> Split {
        Split {
            play_id: play_id.into(),
            train: self.train,
            dev: self.dev,
            test: self.test,
        }
    }
}

/// Shortest play the given sizes accept.
pub fn minimum_length(sizes: TierSizes) -> usize {
    (sizes.train..)
        .find(|&n| three_tier_split(n, sizes).is_ok())
        .expect("a long enough play always splits")
}

// ---------------------------------------------------------------------------
// Balance validation

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BalanceError {
    #[error("sample `{sample}` has no {field}")]
    MissingField { sample: String, field: &'static str },
}

/// Tolerances of the balance rules, as fractions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceConfig {
    pub samples_per_channel: usize,
    pub sample_tokens: usize,
    pub tau_gender: f64,
    pub tau_size: f64,
}

impl Default for BalanceConfig {
    fn default() -> Self {
        BalanceConfig {
            samples_per_channel: 10,
            sample_tokens: 100,
            tau_gender: 0.25,
            tau_size: 0.25,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BalanceRule {
    /// 10 theatre and 10 other samples per century.
    ChannelSplit,
    /// Comparable token totals for male and female authors per century.
    GenderTokens,
    /// Every sample is roughly 100 tokens long.
    SampleSize,
}

impl BalanceRule {
    pub fn id(self) -> &'static str {
        match self {
            BalanceRule::ChannelSplit => "channel_split",
            BalanceRule::GenderTokens => "gender_tokens",
            BalanceRule::SampleSize => "sample_size",
        }
    }
}

impl fmt::Display for BalanceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub rule: BalanceRule,
    pub century: u32,
    pub sample: Option<String>,
    pub observed: String,
    pub expected: String,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ChannelCounts {
    pub theatre: usize,
    pub other: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GenderTokens {
    pub male: usize,
    pub female: usize,
    pub unknown: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BalanceReport {
    pub samples_by_century: BTreeMap<u32, ChannelCounts>,
    pub tokens_by_gender: BTreeMap<u32, GenderTokens>,
    pub violations: Vec<Violation>,
}

impl BalanceReport {
    pub fn is_balanced(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One out-of-domain sample as seen by the validator.
#[derive(Debug, Clone)]
pub struct BalanceSample<'a> {
    pub id: &'a str,
    pub metadata: &'a PlayMetadata,
    pub token_count: usize,
}

pub fn validate_balance(
    samples: &[BalanceSample<'_>],
    config: &BalanceConfig,
) -> Result<BalanceReport, BalanceError> {
    struct Entry<'a> {
        id: &'a str,
        channel: Channel,
        gender: AuthorGender,
        tokens: usize,
    }
    let mut by_century: BTreeMap<u32, Vec<Entry<'_>>> = BTreeMap::new();
    for s in samples {
        let missing = |field| BalanceError::MissingField {
            sample: s.id.to_string(),
            field,
        };
        let century = s.metadata.century.ok_or_else(|| missing("century"))?;
        let channel = s.metadata.channel.ok_or_else(|| missing("channel"))?;
        by_century.entry(century).or_default().push(Entry {
            id: s.id,
            channel,
            gender: s.metadata.author_gender,
            tokens: s.token_count,
        });
    }

    let mut report = BalanceReport::default();
    let lo = config.sample_tokens as f64 * (1.0 - config.tau_size);
    let hi = config.sample_tokens as f64 * (1.0 + config.tau_size);
    for (&century, entries) in &by_century {
        let mut counts = ChannelCounts::default();
        let mut genders = GenderTokens::default();
        for e in entries {
            match e.channel {
                Channel::Theatre => counts.theatre += 1,
                Channel::Other => counts.other += 1,
            }
            match e.gender {
                AuthorGender::Male => genders.male += e.tokens,
                AuthorGender::Female => genders.female += e.tokens,
                AuthorGender::Unknown => genders.unknown += e.tokens,
            }
        }

        let want = config.samples_per_channel;
        if counts.theatre != want || counts.other != want {
            report.violations.push(Violation {
                rule: BalanceRule::ChannelSplit,
                century,
                sample: None,
                observed: format!("{} theatre / {} other", counts.theatre, counts.other),
                expected: format!("{want} theatre / {want} other"),
                tolerance: None,
            });
        }

        let gendered = genders.male + genders.female;
        let imbalance = if gendered == 0 {
            1.0
        } else {
            genders.male.abs_diff(genders.female) as f64 / gendered as f64
        };
        if imbalance > config.tau_gender {
            report.violations.push(Violation {
                rule: BalanceRule::GenderTokens,
                century,
                sample: None,
                observed: format!(
                    "{} male / {} female tokens (imbalance {imbalance:.3})",
                    genders.male, genders.female
                ),
                expected: "equal male and female token totals".to_string(),
                tolerance: Some(config.tau_gender),
            });
        }

        for e in entries {
            let n = e.tokens as f64;
            if n < lo || n > hi {
                report.violations.push(Violation {
                    rule: BalanceRule::SampleSize,
                    century,
                    sample: Some(e.id.to_string()),
                    observed: format!("{} tokens", e.tokens),
                    expected: format!("{} tokens", config.sample_tokens),
                    tolerance: Some(config.tau_size),
                });
            }
        }

        report.samples_by_century.insert(century, counts);
        report.tokens_by_gender.insert(century, genders);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn split_examples() {
        let s = three_tier_split(10_000, TierSizes::default()).unwrap();
        assert_eq!((s.train, s.dev, s.test), (0..2000, 4950..5050, 9900..10_000));

        let s = three_tier_split(4100, TierSizes::default()).unwrap();
        assert_eq!((s.train, s.dev, s.test), (0..2000, 2000..2100, 4000..4100));

        match three_tier_split(2200, TierSizes::default()) {
            Err(SplitError::Overlap {
                first: "train",
                second: "dev",
                second_range,
                ..
            }) => assert_eq!(second_range, 1050..1150),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            three_tier_split(50, TierSizes::default()),
            Err(SplitError::TooShort { tier: "train", .. })
        ));
        assert_eq!(minimum_length(TierSizes::default()), 4100);
    }

    proptest! {
        #[test]
        fn split_is_deterministic(n in 4100usize..50_000) {
            let a = three_tier_split(n, TierSizes::default()).unwrap();
            prop_assert_eq!(a, three_tier_split(n, TierSizes::default()).unwrap());
        }
    }
}
