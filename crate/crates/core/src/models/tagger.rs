//! Linear-chain averaged-perceptron POS tagger.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::early_stop::{EarlyStopping, Progress};
use super::features::sentence_features;
use super::morph_aux::{train_morph_aux, MorphClassifiers};
use super::perceptron::{AveragedTable, WeightTable};
use super::viterbi::viterbi;
use super::ModelError;
use crate::corpus::Sentence;
use crate::tagset::PosTag;

pub const TAGGER_FORMAT: &str = "classica-tagger";
pub const TAGGER_VERSION: u32 = 1;

/// Training hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub seed: u64,
    pub epochs: usize,
    pub patience: usize,
    /// Minimum absolute gain in dev accuracy (a fraction) that counts as progress.
    pub threshold: f64,
    /// Models trained with seeds `seed..seed + restarts`; the best on dev is kept.
    pub restarts: usize,
    /// Also train the per-feature morphology classifiers.
    pub aux: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            seed: 42,
            epochs: 20,
            patience: 6,
            threshold: 0.001,
            restarts: 5,
            aux: false,
        }
    }
}

/// What happened during one restart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingRun {
    pub seed: u64,
    /// Accuracy of the averaged model on dev after each epoch.
    pub dev_accuracy: Vec<f64>,
    /// Epoch (0-based) whose averaged weights were kept.
    pub best_epoch: usize,
    /// Score used to compare restarts: dev accuracy, or train accuracy without dev.
    pub selection_score: f64,
    pub stopped_early: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggerModel {
    format: String,
    version: u32,
    pub tags: Vec<PosTag>,
    pub config: TrainConfig,
    pub runs: Vec<TrainingRun>,
    pub selected_run: usize,
    /// Score of starting a sentence with each tag.
    start: Vec<f64>,
    /// `transitions[prev][cur]`.
    transitions: Vec<Vec<f64>>,
    emissions: WeightTable,
    pub morph: Option<MorphClassifiers>,
}

struct Prepared {
    tags: Vec<PosTag>,
    feature_names: Vec<String>,
    train: Vec<(Vec<Vec<usize>>, Vec<usize>)>,
    dev: Vec<(Vec<Vec<usize>>, Vec<Option<usize>>)>,
}

struct Snapshot {
    emissions: Vec<Vec<f64>>,
    start: Vec<f64>,
    transitions: Vec<Vec<f64>>,
}

impl Snapshot {
    fn take(emissions: &AveragedTable, transitions: &AveragedTable) -> Self {
        let mut trans = transitions.averaged();
        let start = trans.remove(0);
        Snapshot {
            emissions: emissions.averaged(),
            start,
            transitions: trans,
        }
    }

    fn decode(&self, feats: &[Vec<usize>]) -> Vec<usize> {
        let tags = self.start.len();
        let lattice: Vec<Vec<f64>> = feats
            .iter()
            .map(|fs| {
                let mut s = vec![0.0; tags];
                for &f in fs {
                    for (o, w) in s.iter_mut().zip(&self.emissions[f]) {
                        *o += w;
                    }
                }
                s
            })
            .collect();
        viterbi(&lattice, &self.start, &self.transitions)
    }

    fn accuracy<'a, G>(&self, data: impl Iterator<Item = (&'a Vec<Vec<usize>>, G)>) -> f64
    where
        G: Iterator<Item = Option<usize>>,
    {
        let (mut correct, mut total) = (0usize, 0usize);
        for (feats, gold) in data {
            let pred = self.decode(feats);
            for (p, g) in pred.into_iter().zip(gold) {
                total += 1;
                if g == Some(p) {
                    correct += 1;
                }
            }
        }
        if total == 0 {
            0.0
        } else {
            correct as f64 / total as f64
        }
    }
}

fn forms(sentence: &Sentence) -> Vec<&str> {
    sentence.iter().map(|t| t.form.as_str()).collect()
}

fn prepare(train: &[Sentence], dev: &[Sentence]) -> Result<Prepared, ModelError> {
    let mut tag_set = BTreeSet::new();
    for (s, sentence) in train.iter().enumerate() {
        for (t, token) in sentence.iter().enumerate() {
            let pos = token.pos.ok_or(ModelError::MissingAnnotation {
                layer: "POS",
                sentence: s,
                token: t,
            })?;
            tag_set.insert(pos);
        }
    }
    if tag_set.is_empty() {
        return Err(ModelError::EmptyTrain);
    }
    let tags: Vec<PosTag> = tag_set.into_iter().collect();
    let tag_index: HashMap<PosTag, usize> = tags.iter().enumerate().map(|(i, &t)| (t, i)).collect();

    let mut feature_index: HashMap<String, usize> = HashMap::new();
    let mut feature_names = Vec::new();
    let mut prepared_train = Vec::new();
    for sentence in train.iter().filter(|s| !s.is_empty()) {
        let feats = sentence_features(&forms(sentence))
            .into_iter()
            .map(|fs| {
                fs.into_iter()
                    .map(|f| {
                        *feature_index.entry(f.clone()).or_insert_with(|| {
                            feature_names.push(f);
                            feature_names.len() - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let gold = sentence
            .iter()
            .map(|t| tag_index[&t.pos.expect("checked above")])
            .collect();
        prepared_train.push((feats, gold));
    }

    let mut unseen = BTreeSet::new();
    let mut prepared_dev = Vec::new();
    for (s, sentence) in dev.iter().enumerate().filter(|(_, s)| !s.is_empty()) {
        let feats = sentence_features(&forms(sentence))
            .into_iter()
            .map(|fs| fs.iter().filter_map(|f| feature_index.get(f).copied()).collect())
            .collect();
        let mut gold = Vec::with_capacity(sentence.len());
        for (t, token) in sentence.iter().enumerate() {
            let pos = token.pos.ok_or(ModelError::MissingAnnotation {
                layer: "POS",
                sentence: s,
                token: t,
            })?;
            let idx = tag_index.get(&pos).copied();
            if idx.is_none() {
                unseen.insert(pos);
            }
            gold.push(idx);
        }
        prepared_dev.push((feats, gold));
    }
    if !unseen.is_empty() {
        let list: Vec<&str> = unseen.iter().map(|t| t.code()).collect();
        log::warn!(
            "dev tags absent from training ({}); those tokens always count as errors",
            list.join(", ")
        );
    }
    Ok(Prepared {
        tags,
        feature_names,
        train: prepared_train,
        dev: prepared_dev,
    })
}

fn train_run(data: &Prepared, seed: u64, config: &TrainConfig) -> (Snapshot, TrainingRun) {
    let n_tags = data.tags.len();
    let mut emissions = AveragedTable::new(data.feature_names.len(), n_tags);
    // row 0 is the sentence start
    let mut transitions = AveragedTable::new(n_tags + 1, n_tags);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..data.train.len()).collect();
    let mut stopping = EarlyStopping::new(config.threshold, config.patience);
    let mut best: Option<(Snapshot, usize, f64)> = None;
    let mut dev_accuracy = Vec::new();
    let mut stopped_early = false;
    let has_dev = !data.dev.is_empty();

    for epoch in 0..config.epochs.max(1) {
        order.shuffle(&mut rng);
        for &i in &order {
            let (feats, gold) = &data.train[i];
            let lattice: Vec<Vec<f64>> = feats.iter().map(|f| emissions.scores(f)).collect();
            let start: Vec<f64> = (0..n_tags).map(|t| transitions.weight(0, t) as f64).collect();
            let trans: Vec<Vec<f64>> = (1..=n_tags)
                .map(|r| (0..n_tags).map(|t| transitions.weight(r, t) as f64).collect())
                .collect();
            let pred = viterbi(&lattice, &start, &trans);
            if pred != *gold {
                for (pos, (&g, &p)) in gold.iter().zip(&pred).enumerate() {
                    if g != p {
                        for &f in &feats[pos] {
                            emissions.update(f, g, 1);
                            emissions.update(f, p, -1);
                        }
                    }
                    let gold_prev = if pos == 0 { 0 } else { gold[pos - 1] + 1 };
                    let pred_prev = if pos == 0 { 0 } else { pred[pos - 1] + 1 };
                    if (gold_prev, g) != (pred_prev, p) {
                        transitions.update(gold_prev, g, 1);
                        transitions.update(pred_prev, p, -1);
                    }
                }
            }
            emissions.tick();
            transitions.tick();
        }

        let snapshot = Snapshot::take(&emissions, &transitions);
        if has_dev {
            let acc = snapshot.accuracy(
                data.dev
                    .iter()
                    .map(|(f, g)| (f, g.iter().copied())),
            );
            dev_accuracy.push(acc);
            let progress = stopping.observe(acc);
            if progress == Progress::Improved {
                best = Some((snapshot, epoch, acc));
            }
            if progress == Progress::Stop {
                stopped_early = epoch + 1 < config.epochs;
                break;
            }
        } else {
            best = Some((snapshot, epoch, 0.0));
        }
    }

    let (snapshot, best_epoch, mut score) = best.expect("at least one epoch runs");
    if !has_dev {
        score = snapshot.accuracy(
            data.train
                .iter()
                .map(|(f, g)| (f, g.iter().map(|&x| Some(x)))),
        );
    }
    let run = TrainingRun {
        seed,
        dev_accuracy,
        best_epoch,
        selection_score: score,
        stopped_early,
    };
    (snapshot, run)
}

/// Trains `config.restarts` taggers and keeps the one scoring best on `dev`.
/// With an empty `dev`, every run lasts `config.epochs` and train accuracy decides.
pub fn train_tagger(
    train: &[Sentence],
    dev: &[Sentence],
    config: &TrainConfig,
) -> Result<TaggerModel, ModelError> {
    let data = prepare(train, dev)?;
    let mut runs = Vec::new();
    let mut best: Option<(Snapshot, usize)> = None;
    for r in 0..config.restarts.max(1) {
        let seed = config.seed.wrapping_add(r as u64);
        let (snapshot, run) = train_run(&data, seed, config);
        log::info!(
            "restart {r} (seed {seed}): best epoch {}, score {:.4}",
            run.best_epoch,
            run.selection_score
        );
        let better = match &best {
            None => true,
            Some((_, i)) => run.selection_score > runs_score(&runs, *i),
        };
        runs.push(run);
        if better {
            best = Some((snapshot, runs.len() - 1));
        }
    }
    let (snapshot, selected_run) = best.expect("at least one restart");
    let emissions = WeightTable::from_rows(
        data.feature_names
            .iter()
            .cloned()
            .zip(snapshot.emissions),
    );
    let morph = if config.aux {
        Some(train_morph_aux(train, config)?)
    } else {
        None
    };
    Ok(TaggerModel {
        format: TAGGER_FORMAT.to_string(),
        version: TAGGER_VERSION,
        tags: data.tags,
        config: config.clone(),
        runs,
        selected_run,
        start: snapshot.start,
        transitions: snapshot.transitions,
        emissions,
        morph,
    })
}

fn runs_score(runs: &[TrainingRun], i: usize) -> f64 {
    runs[i].selection_score
}

impl TaggerModel {
    /// Emission scores of each token for each tag, in `self.tags` order.
    pub fn emission_scores(&self, forms: &[&str]) -> Vec<Vec<f64>> {
        sentence_features(forms)
            .iter()
            .map(|fs| self.emissions.scores(fs, self.tags.len()))
            .collect()
    }

    pub fn start_scores(&self) -> &[f64] {
        &self.start
    }

    pub fn transition_scores(&self) -> &[Vec<f64>] {
        &self.transitions
    }

    /// Decodes one sentence.
    pub fn tag(&self, forms: &[&str]) -> Vec<PosTag> {
        viterbi_decode(self, forms)
    }

    pub fn to_json(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("tagger model serializes")
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self, ModelError> {
        let model: TaggerModel = serde_json::from_slice(bytes)?;
        if model.format != TAGGER_FORMAT || model.version != TAGGER_VERSION {
            return Err(ModelError::Format(format!(
                "expected {TAGGER_FORMAT} v{TAGGER_VERSION}, found {} v{}",
                model.format, model.version
            )));
        }
        Ok(model)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), ModelError> {
        super::write_file(path.as_ref(), &self.to_json())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ModelError> {
        TaggerModel::from_json(&super::read_file(path.as_ref())?)
    }
}

/// Highest-scoring tag sequence under `model`; ties go to the tag earlier in
/// the model's inventory.
pub fn viterbi_decode(model: &TaggerModel, forms: &[&str]) -> Vec<PosTag> {
    let lattice = model.emission_scores(forms);
    viterbi(&lattice, &model.start, &model.transitions)
        .into_iter()
        .map(|i| model.tags[i])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::AnnotatedToken;

    fn sentence(pairs: &[(&str, PosTag)]) -> Sentence {
        pairs
            .iter()
            .map(|(f, p)| AnnotatedToken::new(*f).with_pos(*p))
            .collect()
    }

    #[test]
    fn learns_a_single_sentence() {
        let s = sentence(&[
            ("Il", PosTag::ProPer),
            ("le", PosTag::ProPer),
            ("donne", PosTag::VerCjg),
            ("à", PosTag::Pre),
            ("la", PosTag::DetDef),
            ("dame", PosTag::NomCom),
            (".", PosTag::PonFrt),
        ]);
        let config = TrainConfig {
            restarts: 1,
            epochs: 5,
            ..TrainConfig::default()
        };
        let model = train_tagger(std::slice::from_ref(&s), &[], &config).unwrap();
        let forms: Vec<&str> = s.iter().map(|t| t.form.as_str()).collect();
        let gold: Vec<PosTag> = s.iter().map(|t| t.pos.unwrap()).collect();
        assert_eq!(model.tag(&forms), gold);
        assert!(model.tag(&[]).is_empty());
    }

    #[test]
    fn rejects_empty_or_untagged_training() {
        assert!(matches!(
            train_tagger(&[], &[], &TrainConfig::default()),
            Err(ModelError::EmptyTrain)
        ));
        let untagged = vec![vec![AnnotatedToken::new("x")]];
        assert!(matches!(
            train_tagger(&untagged, &[], &TrainConfig::default()),
            Err(ModelError::MissingAnnotation { .. })
        ));
    }

    #[test]
    fn json_round_trip_and_version_check() {
        let s = sentence(&[("oui", PosTag::AdvGen), ("!", PosTag::PonFrt)]);
        let config = TrainConfig {
            restarts: 2,
            epochs: 2,
            ..TrainConfig::default()
        };
        let model = train_tagger(&[s.clone()], &[s], &config).unwrap();
        let bytes = model.to_json();
        let back = TaggerModel::from_json(&bytes).unwrap();
        assert_eq!(back, model);
        assert_eq!(back.to_json(), bytes);
        let tampered = String::from_utf8(bytes)
            .unwrap()
            .replace("\"version\":1", "\"version\":99");
        assert!(matches!(
            TaggerModel::from_json(tampered.as_bytes()),
            Err(ModelError::Format(_))
        ));
    }
}
