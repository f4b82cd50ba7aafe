//! Trainable taggers, morphology classifiers and lemmatizer.

pub mod baseline;
pub mod early_stop;
pub mod features;
pub mod lemmatizer;
pub mod morph_aux;
pub mod perceptron;
pub mod tagger;
pub mod viterbi;

use std::path::Path;

pub use baseline::MostFrequentTag;
pub use early_stop::{EarlyStopping, Progress};
pub use lemmatizer::{train_lemmatizer, CasePolicy, LemmatizerModel};
pub use morph_aux::{train_morph_aux, MorphClassifiers, MorphField};
pub use tagger::{train_tagger, viterbi_decode, TaggerModel, TrainConfig, TrainingRun};
pub use viterbi::{sequence_score, viterbi};

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("model file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("model file: {0}")]
    Format(String),
    #[error("training data has no tokens")]
    EmptyTrain,
    #[error("sentence {sentence}, token {token}: missing {layer}")]
    MissingAnnotation {
        layer: &'static str,
        sentence: usize,
        token: usize,
    },
}

fn read_file(path: &Path) -> Result<Vec<u8>, ModelError> {
    std::fs::read(path).map_err(|source| ModelError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), ModelError> {
    std::fs::write(path, bytes).map_err(|source| ModelError::Io {
        path: path.display().to_string(),
        source,
    })
}
