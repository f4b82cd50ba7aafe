use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::{flatten, EvalError};
use crate::corpus::{Sentence, Task};

/// How an evaluation token relates to the training data.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TokenClass {
    /// The form never occurs in training (case-sensitive).
    pub unknown_form: bool,
    /// The form occurs in training with at least two distinct targets.
    pub ambiguous: bool,
    /// The gold target never occurs in training.
    pub unknown_target: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TokenClassIndex {
    pub task: Task,
    pub classes: Vec<TokenClass>,
}

fn require_target(
    task: Task,
    corpus: &'static str,
    position: usize,
    token: &crate::corpus::AnnotatedToken,
) -> Result<String, EvalError> {
    token.target(task).ok_or_else(|| EvalError::MissingTarget {
        corpus,
        position,
        form: token.form.clone(),
        task,
    })
}

/// Classifies every gold token against the training corpus.
pub fn classify_tokens(train: &[Sentence], gold: &[Sentence], task: Task) -> Result<TokenClassIndex, EvalError> {
    let mut targets_by_form: HashMap<&str, BTreeSet<String>> = HashMap::new();
    let mut targets: HashSet<String> = HashSet::new();
    for (i, token) in flatten(train).into_iter().enumerate() {
        let target = require_target(task, "training", i, token)?;
        targets.insert(target.clone());
        targets_by_form.entry(token.form.as_str()).or_default().insert(target);
    }
    let mut classes = Vec::new();
    for (i, token) in flatten(gold).into_iter().enumerate() {
        let target = require_target(task, "gold", i, token)?;
        let seen = targets_by_form.get(token.form.as_str());
        classes.push(TokenClass {
            unknown_form: seen.is_none(),
            ambiguous: seen.is_some_and(|t| t.len() >= 2),
            unknown_target: !targets.contains(&target),
        });
    }
    Ok(TokenClassIndex { task, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::AnnotatedToken;
    use crate::tagset::PosTag;

    fn tok(form: &str, lemma: &str) -> AnnotatedToken {
        AnnotatedToken::new(form).with_lemma(lemma)
    }

    #[test]
    fn classes() {
        let train = vec![vec![tok("le", "le"), tok("le", "il"), tok("a", "avoir"), tok("b", "b")]];
        let gold = vec![vec![tok("a", "avoir"), tok("c", "c"), tok("le", "le"), tok("b", "zzz")]];
        let idx = classify_tokens(&train, &gold, Task::Lemma).unwrap();
        let c = &idx.classes;
        assert_eq!(c[0], TokenClass::default());
        assert!(c[1].unknown_form && c[1].unknown_target && !c[1].ambiguous);
        assert!(c[2].ambiguous && !c[2].unknown_form);
        assert!(c[3].unknown_target && !c[3].unknown_form);
    }

    #[test]
    fn case_sensitive_forms() {
        let train = vec![vec![tok("le", "le")]];
        let gold = vec![vec![tok("Le", "le")]];
        let idx = classify_tokens(&train, &gold, Task::Lemma).unwrap();
        assert!(idx.classes[0].unknown_form);
        assert!(!idx.classes[0].unknown_target);
    }

    #[test]
    fn missing_column_is_an_error() {
        let train = vec![vec![tok("le", "le")]];
        let gold = vec![vec![tok("le", "le")]];
        assert!(matches!(
            classify_tokens(&train, &gold, Task::Pos),
            Err(EvalError::MissingTarget { corpus: "training", .. })
        ));
        let tagged = vec![vec![tok("le", "le").with_pos(PosTag::DetDef)]];
        assert!(classify_tokens(&tagged, &tagged, Task::Pos).is_ok());
    }
}
