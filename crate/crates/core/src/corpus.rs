//! Annotated tokens and the corpus containers shared by every stage.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::tagset::{Morph, PosTag};

/// One token with its annotation layers. Missing layers (`_` in files) are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnnotatedToken {
    pub form: String,
    pub lemma: Option<String>,
    pub pos: Option<PosTag>,
    pub morph: Morph,
}

impl AnnotatedToken {
    /// A bare token: no lemma, no POS, empty morphology.
    pub fn new(form: impl Into<String>) -> Self {
        AnnotatedToken {
            form: form.into(),
            lemma: None,
            pos: None,
            morph: Morph::default(),
        }
    }

    pub fn with_lemma(mut self, lemma: impl Into<String>) -> Self {
        self.lemma = Some(lemma.into());
        self
    }

    pub fn with_pos(mut self, pos: PosTag) -> Self {
        self.pos = Some(pos);
        self
    }

    pub fn with_morph(mut self, morph: Morph) -> Self {
        self.morph = morph;
        self
    }

    /// The value this token carries for `task`, if annotated.
    pub fn target(&self, task: Task) -> Option<String> {
        match task {
            Task::Lemma => self.lemma.clone(),
            Task::Pos => self.pos.map(|p| p.code().to_string()),
            Task::Morph => Some(self.morph.serialize()),
        }
    }
}

pub type Sentence = Vec<AnnotatedToken>;

/// Sentences (or segments) in document order.
pub type Corpus = Vec<Sentence>;

/// Iterates the tokens of a corpus in order.
pub fn tokens(corpus: &[Sentence]) -> impl Iterator<Item = &AnnotatedToken> {
    corpus.iter().flatten()
}

pub fn token_count(corpus: &[Sentence]) -> usize {
    corpus.iter().map(Vec::len).sum()
}

/// The annotation layer an evaluation or classifier is concerned with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Lemma,
    Pos,
    Morph,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Lemma => "lemma",
            Task::Pos => "pos",
            Task::Morph => "morph",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lemma" => Ok(Task::Lemma),
            "pos" => Ok(Task::Pos),
            "morph" => Ok(Task::Morph),
            other => Err(format!("unknown task `{other}` (expected lemma, pos or morph)")),
        }
    }
}
