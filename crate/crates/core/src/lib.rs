//! Toolkit for building and evaluating annotated corpora of classical French:
//! TEI speech extraction and tokenization, positional sampling, CATTEX and
//! Morphalou tag mapping, lexicon-driven morphology projection, lemma
//! normalization, an averaged-perceptron tagger with a suffix-rule
//! lemmatizer, and the evaluation reports (token classes, grouped
//! out-of-domain grids, deltas, confusions).

pub mod annotate;
pub mod corpus;
pub mod eval;
pub mod ingest;
pub mod interface;
pub mod lexicon;
pub mod models;
pub mod sampling;
pub mod synthetic;
pub mod tagset;

pub use corpus::{AnnotatedToken, Corpus, Sentence, Task};
pub use tagset::{Morph, MorphBundle, PosTag};
