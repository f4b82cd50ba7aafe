//! Text → annotated TSV, shared by the `tag` command and the HTTP service.

use crate::annotate::Projector;
use crate::corpus::{AnnotatedToken, Corpus, Sentence};
use crate::ingest::{normalize_chars, segment_sentences, tokenize, NormalizationPolicy};
use crate::lexicon::Lexicon;
use crate::models::{LemmatizerModel, TaggerModel};
use crate::tagset::Morph;

use super::tsv::corpus_to_string;

/// Loaded models, immutable once built.
#[derive(Debug, Clone)]
pub struct Annotator {
    pub tagger: TaggerModel,
    pub lemmatizer: Option<LemmatizerModel>,
    pub policy: NormalizationPolicy,
    empty_lexicon: Lexicon,
}

impl Annotator {
    pub fn new(tagger: TaggerModel, lemmatizer: Option<LemmatizerModel>) -> Self {
        Annotator {
            tagger,
            lemmatizer,
            policy: NormalizationPolicy::default(),
            empty_lexicon: Lexicon::default(),
        }
    }

    fn lexicon(&self) -> &Lexicon {
        self.lemmatizer
            .as_ref()
            .map_or(&self.empty_lexicon, LemmatizerModel::lexicon)
    }

    /// Tags, lemmatizes and projects morphology. Tokens the lexicon cannot
    /// analyse get the morphology classifiers' prediction when the tagger has them.
    pub fn annotate_forms(&self, forms: &[&str]) -> Sentence {
        let tags = self.tagger.tag(forms);
        let projector = Projector::new(self.lexicon());
        let aux = self
            .tagger
            .morph
            .as_ref()
            .filter(|m| !m.is_empty())
            .map(|m| m.predict(forms, &tags));
        forms
            .iter()
            .zip(&tags)
            .enumerate()
            .map(|(i, (&form, &pos))| {
                let mut token = AnnotatedToken::new(form).with_pos(pos);
                token.lemma = self.lemmatizer.as_ref().map(|l| l.lemmatize(form, pos));
                let (morph, path) = projector.project_token(&token);
                token.morph = match (&aux, path.is_unknown()) {
                    (Some(pred), true) => Morph::Bundle(pred[i].clone()),
                    _ => morph,
                };
                token
            })
            .collect()
    }

    /// Re-annotates the forms of an existing corpus, keeping its sentence breaks.
    pub fn annotate_corpus(&self, corpus: &[Sentence]) -> Corpus {
        corpus
            .iter()
            .map(|s| {
                let forms: Vec<&str> = s.iter().map(|t| t.form.as_str()).collect();
                self.annotate_forms(&forms)
            })
            .collect()
    }

    /// Normalizes, tokenizes and segments raw text, then annotates it.
    pub fn annotate_text(&self, text: &str) -> Corpus {
        let tokens = tokenize(&normalize_chars(text, &self.policy));
        segment_sentences(tokens, |t| t.as_str())
            .iter()
            .map(|s| {
                let forms: Vec<&str> = s.iter().map(String::as_str).collect();
                self.annotate_forms(&forms)
            })
            .collect()
    }

    pub fn text_to_tsv(&self, text: &str) -> String {
        corpus_to_string(&self.annotate_text(text))
    }
}
