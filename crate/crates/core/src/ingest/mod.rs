//! Turning TEI plays into token streams: speech extraction, character
//! normalization and tokenization, plus the per-corpus metadata sidecar.

mod metadata;
mod normalize;
mod tei;
mod tokenize;

use thiserror::Error;

pub use metadata::{
    century_label, century_of_year, read_metadata_csv, write_metadata_csv, AuthorGender, Channel,
    MetadataError, MetadataTable, PlayMetadata, VerseOrProse,
};
pub use normalize::{normalize_chars, LigatureLexicon, NormalizationPolicy};
pub use tei::{parse_play, SpeechExtractor};
pub use tokenize::{is_sentence_final, segment_sentences, tokenize, PUNCTUATION};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("malformed markup at line {line}, column {column}: {message}")]
    Markup {
        line: u32,
        column: u32,
        message: String,
    },
    #[error("document contains no character speech")]
    EmptyPlay,
}

/// A play reduced to its character speeches.
#[derive(Debug, Clone, PartialEq)]
pub struct Play {
    pub id: String,
    pub metadata: PlayMetadata,
    /// One entry per character turn, markup stripped.
    pub speeches: Vec<String>,
}

/// A token of a play, positioned from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub position: usize,
    pub play_id: String,
}

impl Play {
    /// Normalizes and tokenizes every speech; positions run over the whole play.
    pub fn tokens(&self, policy: &NormalizationPolicy) -> Vec<Token> {
        self.speeches
            .iter()
            .flat_map(|speech| tokenize(&normalize_chars(speech, policy)))
            .enumerate()
            .map(|(position, text)| Token {
                text,
                position,
                play_id: self.id.clone(),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_contiguous_across_speeches() {
        let play = Play {
            id: "p".into(),
            metadata: PlayMetadata::default(),
            speeches: vec!["Bonjour, Monsieur.".into(), "l'amour".into()],
        };
        let tokens = play.tokens(&NormalizationPolicy::default());
        let texts: Vec<&str> = tokens.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(texts, ["Bonjour", ",", "Monsieur", ".", "l'", "amour"]);
        for (i, t) in tokens.iter().enumerate() {
            assert_eq!(t.position, i);
            assert_eq!(t.play_id, "p");
        }
    }
}
