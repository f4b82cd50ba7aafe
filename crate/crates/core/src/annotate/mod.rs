//! Morphology projection from the lexicon and the lemma normalization rules.

mod projection;
mod rules;

pub use crate::corpus::AnnotatedToken;
pub use projection::{project_morphology, ProjectionPath, Projector};
pub use rules::{apply_lemma_rules, LemmaRule, RuleError, RuleSet};
