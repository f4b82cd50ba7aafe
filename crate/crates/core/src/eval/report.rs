use std::fmt;

use serde::Serialize;
use serde_json::json;

use super::{align, percent_or_na, Accuracy, EvalError, Percent, TokenClassIndex};
use crate::corpus::{Sentence, Task};

pub const CLASS_NAMES: [&str; 4] = ["all", "unknown tokens", "ambiguous tokens", "unknown targets"];

/// Accuracy by token class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvalReport {
    pub task: Task,
    pub all: Accuracy,
    pub unknown_tokens: Accuracy,
    pub ambiguous_tokens: Accuracy,
    pub unknown_targets: Accuracy,
}

impl EvalReport {
    /// Classes in display order.
    pub fn classes(&self) -> [(&'static str, Accuracy); 4] {
        [
            (CLASS_NAMES[0], self.all),
            (CLASS_NAMES[1], self.unknown_tokens),
            (CLASS_NAMES[2], self.ambiguous_tokens),
            (CLASS_NAMES[3], self.unknown_targets),
        ]
    }

    pub fn percents(&self) -> [Option<Percent>; 4] {
        self.classes().map(|(_, a)| a.percent())
    }

    /// One JSON object per class.
    pub fn json_lines(&self) -> String {
        let mut out = String::new();
        for (name, acc) in self.classes() {
            let record = json!({
                "task": self.task,
                "class": name,
                "accuracy": acc.percent(),
                "correct": acc.correct,
                "support": acc.support,
            });
            out.push_str(&record.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "task: {}", self.task)?;
        writeln!(f, "tokens: {}", self.all.support)?;
        writeln!(f)?;
        writeln!(f, "class\taccuracy\tsupport")?;
        for (name, acc) in self.classes() {
            writeln!(f, "{name}\t{}\t{}", percent_or_na(acc.percent()), acc.support)?;
        }
        Ok(())
    }
}

/// Scores `pred` against `gold` for every token class. A prediction missing the
/// task's annotation counts as wrong.
pub fn accuracy_report(
    gold: &[Sentence],
    pred: &[Sentence],
    classes: &TokenClassIndex,
    task: Task,
) -> Result<EvalReport, EvalError> {
    let pairs = align(gold, pred)?;
    if classes.classes.len() != pairs.len() {
        return Err(EvalError::ClassCount {
            classes: classes.classes.len(),
            tokens: pairs.len(),
        });
    }
    let mut report = EvalReport {
        task,
        all: Accuracy::default(),
        unknown_tokens: Accuracy::default(),
        ambiguous_tokens: Accuracy::default(),
        unknown_targets: Accuracy::default(),
    };
    for (i, ((g, p), class)) in pairs.into_iter().zip(&classes.classes).enumerate() {
        let expected = g.target(task).ok_or_else(|| EvalError::MissingTarget {
            corpus: "gold",
            position: i,
            form: g.form.clone(),
            task,
        })?;
        let ok = p.target(task).as_deref() == Some(expected.as_str());
        report.all.add(ok);
        if class.unknown_form {
            report.unknown_tokens.add(ok);
        }
        if class.ambiguous {
            report.ambiguous_tokens.add(ok);
        }
        if class.unknown_target {
            report.unknown_targets.add(ok);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::AnnotatedToken;
    use crate::eval::{classify_tokens, TokenClass};

    fn lemmas(pairs: &[(&str, &str)]) -> Vec<Sentence> {
        vec![pairs.iter().map(|(f, l)| AnnotatedToken::new(*f).with_lemma(*l)).collect()]
    }

    #[test]
    fn nine_of_ten() {
        let gold = lemmas(&[("a", "a"); 10]);
        let mut pred = gold.clone();
        pred[0][3].lemma = Some("b".into());
        let classes = classify_tokens(&gold, &gold, Task::Lemma).unwrap();
        let r = accuracy_report(&gold, &pred, &classes, Task::Lemma).unwrap();
        assert_eq!(percent_or_na(r.all.percent()), "90.00");
        assert_eq!(r.unknown_tokens.percent(), None);
        assert!(r.to_string().contains("unknown tokens\tNA\t0"));
        assert_eq!(r.json_lines().lines().count(), 4);
    }

    #[test]
    fn misalignment_names_position() {
        let gold = lemmas(&[("a", "a"), ("b", "b")]);
        let pred = lemmas(&[("a", "a"), ("c", "c")]);
        let classes = TokenClassIndex {
            task: Task::Lemma,
            classes: vec![TokenClass::default(); 2],
        };
        let err = accuracy_report(&gold, &pred, &classes, Task::Lemma).unwrap_err();
        assert!(matches!(err, EvalError::Misaligned { position: 1, .. }));
        assert!(err.to_string().contains("\"b\"") && err.to_string().contains("\"c\""));
        let short = lemmas(&[("a", "a")]);
        assert!(matches!(
            accuracy_report(&gold, &short, &classes, Task::Lemma),
            Err(EvalError::Misaligned { position: 1, .. })
        ));
    }
}
