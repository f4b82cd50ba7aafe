//! Evaluation: token classes, accuracy reports, grouped grids, deltas and confusions.

mod classes;
mod confusion;
mod grid;
mod report;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::corpus::{AnnotatedToken, Sentence, Task};

pub use classes::{classify_tokens, TokenClass, TokenClassIndex};
pub use confusion::{confusion_matrix, render_confusions, ConfusionEntry};
pub use grid::{delta_report, grouped_report, DeltaReport, EvalSample, GroupAxis, GroupedReport, SignedPercent};
pub use report::{accuracy_report, EvalReport};

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("{corpus} token {position} ({form:?}) has no {task} annotation")]
    MissingTarget {
        corpus: &'static str,
        position: usize,
        form: String,
        task: Task,
    },
    #[error("gold and predicted corpora diverge at token {position}: gold {gold:?}, predicted {pred:?}")]
    Misaligned {
        position: usize,
        gold: String,
        pred: String,
    },
    #[error("token classes cover {classes} tokens but the gold corpus has {tokens}")]
    ClassCount { classes: usize, tokens: usize },
    #[error("sample {sample}: missing {field} metadata")]
    MissingMetadata { sample: String, field: &'static str },
    #[error("sample {0} has no metadata row")]
    UnknownSample(String),
    #[error("reports differ in their {what}: {left} vs {right}")]
    AxisMismatch {
        what: &'static str,
        left: String,
        right: String,
    },
}

/// A percentage stored in hundredths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Percent(pub i64);

impl Percent {
    /// `correct / support × 100`, rounded half-up to hundredths; `None` when support is 0.
    pub fn ratio(correct: usize, support: usize) -> Option<Percent> {
        if support == 0 {
            return None;
        }
        let (c, s) = (correct as i128, support as i128);
        Some(Percent(((c * 20000 + s) / (2 * s)) as i64))
    }

    pub fn hundredths(self) -> i64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 100.0
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let v = self.0.abs();
        write!(f, "{sign}{}.{:02}", v / 100, v % 100)
    }
}

impl Serialize for Percent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_f64())
    }
}

/// Text for an optional percentage, `NA` when absent.
pub fn percent_or_na(p: Option<Percent>) -> String {
    p.map_or_else(|| "NA".to_string(), |p| p.to_string())
}

/// Correct predictions over a support.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Accuracy {
    pub correct: usize,
    pub support: usize,
}

impl Accuracy {
    pub fn add(&mut self, correct: bool) {
        self.support += 1;
        if correct {
            self.correct += 1;
        }
    }

    pub fn merge(&mut self, other: Accuracy) {
        self.correct += other.correct;
        self.support += other.support;
    }

    pub fn percent(&self) -> Option<Percent> {
        Percent::ratio(self.correct, self.support)
    }
}

fn flatten(corpus: &[Sentence]) -> Vec<&AnnotatedToken> {
    corpus.iter().flatten().collect()
}

/// Token pairs of two corpora that must have the same forms in the same order.
fn align<'a>(
    gold: &'a [Sentence],
    pred: &'a [Sentence],
) -> Result<Vec<(&'a AnnotatedToken, &'a AnnotatedToken)>, EvalError> {
    let g = flatten(gold);
    let p = flatten(pred);
    for i in 0..g.len().max(p.len()) {
        let gf = g.get(i).map(|t| t.form.as_str());
        let pf = p.get(i).map(|t| t.form.as_str());
        if gf != pf {
            return Err(EvalError::Misaligned {
                position: i,
                gold: gf.unwrap_or("<end of corpus>").to_string(),
                pred: pf.unwrap_or("<end of corpus>").to_string(),
            });
        }
    }
    Ok(g.into_iter().zip(p).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percent_rounding() {
        assert_eq!(Percent::ratio(4143, 4181).unwrap().to_string(), "99.09");
        assert_eq!(Percent::ratio(46, 64).unwrap().to_string(), "71.88");
        assert_eq!(Percent::ratio(840, 857).unwrap().to_string(), "98.02");
        assert_eq!(Percent::ratio(8, 14).unwrap().to_string(), "57.14");
        assert_eq!(Percent::ratio(9, 10).unwrap().to_string(), "90.00");
        assert_eq!(Percent::ratio(1, 1).unwrap().to_string(), "100.00");
        assert_eq!(Percent::ratio(0, 0), None);
        assert_eq!(Percent(-30).to_string(), "-0.30");
        assert_eq!(percent_or_na(None), "NA");
    }
}
