//! Weight storage for averaged perceptrons.
//!
//! Training keeps integer weights and the lazily accumulated sums needed for
//! averaging, so averaged values are exact up to the final division.

use std::collections::HashMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Integer weights `rows × labels` with running averages.
#[derive(Debug, Clone)]
pub struct AveragedTable {
    labels: usize,
    weights: Vec<Vec<i64>>,
    accumulated: Vec<Vec<i64>>,
    /// Number of training instances seen, plus one.
    step: i64,
}

impl AveragedTable {
    pub fn new(rows: usize, labels: usize) -> Self {
        AveragedTable {
            labels,
            weights: vec![vec![0; labels]; rows],
            accumulated: vec![vec![0; labels]; rows],
            step: 1,
        }
    }

    pub fn rows(&self) -> usize {
        self.weights.len()
    }

    #[inline]
    pub fn weight(&self, row: usize, label: usize) -> i64 {
        self.weights[row][label]
    }

    #[inline]
    pub fn update(&mut self, row: usize, label: usize, delta: i64) {
        self.weights[row][label] += delta;
        self.accumulated[row][label] += self.step * delta;
    }

    /// Marks the end of one training instance.
    pub fn tick(&mut self) {
        self.step += 1;
    }

    /// Sum of current weights over `rows` for every label.
    pub fn scores(&self, rows: &[usize]) -> Vec<f64> {
        let mut out = vec![0i64; self.labels];
        for &r in rows {
            for (o, w) in out.iter_mut().zip(&self.weights[r]) {
                *o += w;
            }
        }
        out.into_iter().map(|v| v as f64).collect()
    }

    /// Weights averaged over every instance seen so far.
    pub fn averaged(&self) -> Vec<Vec<f64>> {
        let c = self.step as f64;
        self.weights
            .iter()
            .zip(&self.accumulated)
            .map(|(w, u)| {
                w.iter()
                    .zip(u)
                    .map(|(&w, &u)| w as f64 - u as f64 / c)
                    .collect()
            })
            .collect()
    }
}

/// Named rows of float weights, one entry per label. Serialized sorted by name.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WeightTable {
    rows: Vec<(String, Vec<f64>)>,
    index: HashMap<String, usize>,
}

impl WeightTable {
    /// Builds a table from named rows, dropping all-zero rows.
    pub fn from_rows(rows: impl IntoIterator<Item = (String, Vec<f64>)>) -> Self {
        let mut rows: Vec<(String, Vec<f64>)> = rows
            .into_iter()
            .filter(|(_, w)| w.iter().any(|&x| x != 0.0))
            .collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        let index = rows
            .iter()
            .enumerate()
            .map(|(i, (name, _))| (name.clone(), i))
            .collect();
        WeightTable { rows, index }
    }

    pub fn get(&self, name: &str) -> Option<&[f64]> {
        self.index.get(name).map(|&i| self.rows[i].1.as_slice())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Summed weights of `features` for each of `labels` labels. Unknown names are ignored.
    pub fn scores<S: AsRef<str>>(&self, features: &[S], labels: usize) -> Vec<f64> {
        let mut out = vec![0.0; labels];
        for f in features {
            if let Some(w) = self.get(f.as_ref()) {
                for (o, x) in out.iter_mut().zip(w) {
                    *o += x;
                }
            }
        }
        out
    }
}

impl Serialize for WeightTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<(String, Vec<f64>)>::deserialize(deserializer)?;
        Ok(WeightTable::from_rows(rows))
    }
}

/// Index of the highest score; the lowest index wins ties.
pub fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn averaging_matches_explicit_mean() {
        // Three instances: update after the first and third.
        let mut t = AveragedTable::new(1, 2);
        t.update(0, 0, 1);
        t.tick();
        t.tick();
        t.update(0, 1, 3);
        t.tick();
        // States: [0,0] initially, then [1,0], [1,0], [1,3]; the mean covers all four.
        assert_eq!(t.averaged()[0], vec![0.75, 0.75]);
    }

    #[test]
    fn weight_table_sorted_and_pruned() {
        let t = WeightTable::from_rows(vec![
            ("b".to_string(), vec![1.0, 0.0]),
            ("a".to_string(), vec![0.0, 0.0]),
            ("c".to_string(), vec![0.0, -2.0]),
        ]);
        assert_eq!(t.len(), 2);
        assert!(t.get("a").is_none());
        assert_eq!(t.scores(&["b", "c", "zzz"], 2), vec![1.0, -2.0]);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"[["b",[1.0,0.0]],["c",[0.0,-2.0]]]"#);
        assert_eq!(serde_json::from_str::<WeightTable>(&json).unwrap(), t);
    }

    #[test]
    fn argmax_prefers_first() {
        assert_eq!(argmax(&[1.0, 3.0, 3.0]), 1);
        assert_eq!(argmax(&[0.0]), 0);
    }
}
