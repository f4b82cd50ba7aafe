use std::collections::HashMap;

use serde::Serialize;

use super::{align, EvalError};
use crate::corpus::{Sentence, Task};

/// Errors made on one expected value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfusionEntry {
    pub expected: String,
    pub total_errors: usize,
    /// Wrong predictions, most frequent first, ties in order of first occurrence.
    pub predictions: Vec<(String, usize)>,
}

/// The `top_k` expected values with the most errors. Ties keep the order in
/// which each value was first mispredicted. Missing predictions show as `_`.
pub fn confusion_matrix(
    gold: &[Sentence],
    pred: &[Sentence],
    task: Task,
    top_k: usize,
) -> Result<Vec<ConfusionEntry>, EvalError> {
    let mut entries: Vec<ConfusionEntry> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for (i, (g, p)) in align(gold, pred)?.into_iter().enumerate() {
        let expected = g.target(task).ok_or_else(|| EvalError::MissingTarget {
            corpus: "gold",
            position: i,
            form: g.form.clone(),
            task,
        })?;
        let got = p.target(task).unwrap_or_else(|| "_".to_string());
        if got == expected {
            continue;
        }
        let k = *index.entry(expected.clone()).or_insert_with(|| {
            entries.push(ConfusionEntry {
                expected,
                total_errors: 0,
                predictions: Vec::new(),
            });
            entries.len() - 1
        });
        let entry = &mut entries[k];
        entry.total_errors += 1;
        match entry.predictions.iter_mut().find(|(p, _)| *p == got) {
            Some((_, n)) => *n += 1,
            None => entry.predictions.push((got, 1)),
        }
    }
    // stable sorts keep first-occurrence order among ties
    for e in &mut entries {
        e.predictions.sort_by(|a, b| b.1.cmp(&a.1));
    }
    entries.sort_by(|a, b| b.total_errors.cmp(&a.total_errors));
    entries.truncate(top_k);
    Ok(entries)
}

/// Tab-separated listing; extra predictions go on continuation lines.
pub fn render_confusions(entries: &[ConfusionEntry]) -> String {
    let mut out = String::from("Expected\tTot. Err.\tPred.\tPred. times\n");
    for e in entries {
        for (i, (p, n)) in e.predictions.iter().enumerate() {
            if i == 0 {
                out.push_str(&format!("{}\t{}\t{p}\t{n}\n", e.expected, e.total_errors));
            } else {
                out.push_str(&format!("\t\t{p}\t{n}\n"));
            }
        }
    }
    out
}
