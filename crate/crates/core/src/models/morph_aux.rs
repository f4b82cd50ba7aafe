//! One multiclass averaged perceptron per morphological feature.
//!
//! Used to fill in morphology for tokens the lexicon projection leaves unknown.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::features::token_features;
use super::perceptron::{argmax, AveragedTable, WeightTable};
use super::tagger::TrainConfig;
use super::ModelError;
use crate::corpus::Sentence;
use crate::tagset::{Gender, Mode, Morph, MorphBundle, MorphFeatures, Number, Person, PosTag, Tense};

/// Label meaning "feature absent".
pub const NONE_LABEL: &str = "_";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphField {
    Mode,
    Tense,
    Person,
    Number,
    Gender,
    Case,
}

impl MorphField {
    pub const ALL: [MorphField; 6] = [
        MorphField::Mode,
        MorphField::Tense,
        MorphField::Person,
        MorphField::Number,
        MorphField::Gender,
        MorphField::Case,
    ];

    fn get(self, f: &MorphFeatures) -> Option<String> {
        match self {
            MorphField::Mode => f.mode.map(|v| v.code().to_string()),
            MorphField::Tense => f.tense.map(|v| v.code().to_string()),
            MorphField::Person => f.person.map(|v| v.code().to_string()),
            MorphField::Number => f.number.map(|v| v.code().to_string()),
            MorphField::Gender => f.gender.map(|v| v.code().to_string()),
            MorphField::Case => f.case.clone(),
        }
    }

    fn set(self, f: &mut MorphFeatures, label: &str) {
        if label == NONE_LABEL {
            return;
        }
        match self {
            MorphField::Mode => f.mode = Mode::from_code(label),
            MorphField::Tense => f.tense = Tense::from_code(label),
            MorphField::Person => f.person = Person::from_code(label),
            MorphField::Number => f.number = Number::from_code(label),
            MorphField::Gender => f.gender = Gender::from_code(label),
            MorphField::Case => f.case = Some(label.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldClassifier {
    pub field: MorphField,
    pub labels: Vec<String>,
    weights: WeightTable,
}

impl FieldClassifier {
    fn predict(&self, features: &[String]) -> &str {
        if self.labels.len() == 1 {
            return &self.labels[0];
        }
        &self.labels[argmax(&self.weights.scores(features, self.labels.len()))]
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MorphClassifiers {
    pub classifiers: Vec<FieldClassifier>,
}

fn instance_features(forms: &[&str], i: usize, pos: PosTag) -> Vec<String> {
    let mut f = token_features(forms, i);
    f.push(format!("pos={}", pos.code()));
    f
}

fn gold_features(morph: &Morph) -> Option<MorphFeatures> {
    match morph {
        Morph::Bundle(MorphBundle::Features(f)) => Some(f.clone()),
        Morph::Bundle(MorphBundle::Invariable) => Some(MorphFeatures::default()),
        _ => None,
    }
}

/// Trains a classifier for every feature that has at least one labelled token.
/// Tokens whose morphology is unknown or erroneous, or that lack a POS tag, are skipped.
pub fn train_morph_aux(train: &[Sentence], config: &TrainConfig) -> Result<MorphClassifiers, ModelError> {
    let mut feature_index: HashMap<String, usize> = HashMap::new();
    let mut feature_names: Vec<String> = Vec::new();
    let mut instances: Vec<(Vec<usize>, MorphFeatures)> = Vec::new();
    for sentence in train {
        let forms: Vec<&str> = sentence.iter().map(|t| t.form.as_str()).collect();
        for (i, token) in sentence.iter().enumerate() {
            let (Some(pos), Some(gold)) = (token.pos, gold_features(&token.morph)) else {
                continue;
            };
            let ids = instance_features(&forms, i, pos)
                .into_iter()
                .map(|f| {
                    *feature_index.entry(f.clone()).or_insert_with(|| {
                        feature_names.push(f);
                        feature_names.len() - 1
                    })
                })
                .collect();
            instances.push((ids, gold));
        }
    }

    let mut classifiers = Vec::new();
    for (k, field) in MorphField::ALL.into_iter().enumerate() {
        let gold: Vec<String> = instances
            .iter()
            .map(|(_, f)| field.get(f).unwrap_or_else(|| NONE_LABEL.to_string()))
            .collect();
        let labels: Vec<String> = gold.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if labels.is_empty() || (field == MorphField::Case && labels == [NONE_LABEL]) {
            continue;
        }
        if labels.len() == 1 {
            log::warn!("morphology field {field:?} has a single label {:?}; predicting it constantly", labels[0]);
            classifiers.push(FieldClassifier {
                field,
                labels,
                weights: WeightTable::default(),
            });
            continue;
        }
        let label_index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let targets: Vec<usize> = gold.iter().map(|g| label_index[g.as_str()]).collect();
        let mut table = AveragedTable::new(feature_names.len(), labels.len());
        let mut order: Vec<usize> = (0..instances.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(k as u64));
        for _ in 0..config.epochs.max(1) {
            order.shuffle(&mut rng);
            for &i in &order {
                let feats = &instances[i].0;
                let pred = argmax(&table.scores(feats));
                let target = targets[i];
                if pred != target {
                    for &f in feats {
                        table.update(f, target, 1);
                        table.update(f, pred, -1);
                    }
                }
                table.tick();
            }
        }
        let weights = WeightTable::from_rows(feature_names.iter().cloned().zip(table.averaged()));
        classifiers.push(FieldClassifier { field, labels, weights });
    }
    Ok(MorphClassifiers { classifiers })
}

impl MorphClassifiers {
    pub fn is_empty(&self) -> bool {
        self.classifiers.is_empty()
    }

    /// Predicted bundle for every token of a tagged sentence.
    pub fn predict(&self, forms: &[&str], tags: &[PosTag]) -> Vec<MorphBundle> {
        (0..forms.len())
            .map(|i| {
                let feats = instance_features(forms, i, tags[i]);
                let mut out = MorphFeatures::default();
                for c in &self.classifiers {
                    c.field.set(&mut out, c.predict(&feats));
                }
                MorphBundle::Features(out)
            })
            .collect()
    }
}
