//! The annotation TSV format: header `form\tlemma\tPOS\tmorph`, one token per
//! line, a blank line between sentences, `_` for an absent value.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::corpus::{AnnotatedToken, Corpus, Sentence};
use crate::tagset::{Morph, PosTag};

pub const HEADER: &str = "form\tlemma\tPOS\tmorph";
pub const ABSENT: &str = "_";

#[derive(Debug, thiserror::Error)]
pub enum TsvError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("line 1: expected header {HEADER:?}, found {found:?}")]
    MissingHeader { found: String },
    #[error("line {line}: expected 4 tab-separated columns, found {found}")]
    Columns { line: usize, found: usize },
    #[error("line {line}, column {column}: {reason}")]
    Field {
        line: usize,
        column: &'static str,
        reason: String,
    },
}

impl TsvError {
    fn io(source: io::Error) -> Self {
        TsvError::Io {
            path: "<stream>".to_string(),
            source,
        }
    }

    fn at(self, path: &Path) -> Self {
        match self {
            TsvError::Io { source, .. } => TsvError::Io {
                path: path.display().to_string(),
                source,
            },
            other => other,
        }
    }
}

fn parse_line(line: &str, number: usize) -> Result<AnnotatedToken, TsvError> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 4 {
        return Err(TsvError::Columns {
            line: number,
            found: cols.len(),
        });
    }
    if cols[0].is_empty() {
        return Err(TsvError::Field {
            line: number,
            column: "form",
            reason: "empty form".to_string(),
        });
    }
    let field_err = |column, reason: String| TsvError::Field {
        line: number,
        column,
        reason,
    };
    let lemma = match cols[1] {
        ABSENT => None,
        "" => return Err(field_err("lemma", "empty value; use _".to_string())),
        l => Some(l.to_string()),
    };
    let pos = match cols[2] {
        ABSENT => None,
        p => Some(p.parse::<PosTag>().map_err(|e| field_err("POS", e.to_string()))?),
    };
    let morph = Morph::parse(cols[3]).map_err(|e| field_err("morph", e.to_string()))?;
    Ok(AnnotatedToken {
        form: cols[0].to_string(),
        lemma,
        pos,
        morph,
    })
}

/// Streams sentences out of an annotation TSV.
pub struct TsvReader<R> {
    lines: io::Lines<R>,
    line: usize,
    header_checked: bool,
    done: bool,
}

impl<R: BufRead> TsvReader<R> {
    pub fn new(reader: R) -> Self {
        TsvReader {
            lines: reader.lines(),
            line: 0,
            header_checked: false,
            done: false,
        }
    }

    fn next_line(&mut self) -> Option<Result<String, TsvError>> {
        let line = self.lines.next()?;
        self.line += 1;
        Some(
            line.map(|l| l.strip_suffix('\r').map(str::to_string).unwrap_or(l))
                .map_err(TsvError::io),
        )
    }

    fn read_sentence(&mut self) -> Result<Option<Sentence>, TsvError> {
        if !self.header_checked {
            self.header_checked = true;
            let header = match self.next_line() {
                None => String::new(),
                Some(l) => l?,
            };
            let header = header.strip_prefix('\u{feff}').unwrap_or(&header);
            if header != HEADER {
                return Err(TsvError::MissingHeader {
                    found: header.to_string(),
                });
            }
        }
        let mut sentence = Vec::new();
        while let Some(line) = self.next_line() {
            let line = line?;
            if line.trim().is_empty() {
                if sentence.is_empty() {
                    continue;
                }
                return Ok(Some(sentence));
            }
            sentence.push(parse_line(&line, self.line)?);
        }
        Ok(if sentence.is_empty() { None } else { Some(sentence) })
    }
}

impl<R: BufRead> Iterator for TsvReader<R> {
    type Item = Result<Sentence, TsvError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.read_sentence() {
            Ok(Some(s)) => Some(Ok(s)),
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

pub fn read_corpus_from<R: BufRead>(reader: R) -> Result<Corpus, TsvError> {
    TsvReader::new(reader).collect()
}

pub fn read_corpus(path: impl AsRef<Path>) -> Result<Corpus, TsvError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| TsvError::io(e).at(path))?;
    read_corpus_from(BufReader::new(file)).map_err(|e| e.at(path))
}

pub fn parse_corpus(text: &str) -> Result<Corpus, TsvError> {
    read_corpus_from(text.as_bytes())
}

/// Whether `text` starts with the annotation header.
pub fn looks_like_tsv(text: &str) -> bool {
    let first = text.lines().next().unwrap_or("");
    let first = first.strip_prefix('\u{feff}').unwrap_or(first);
    first.trim_end_matches('\r') == HEADER
}

fn field(value: &str) -> Result<&str, io::Error> {
    if value.contains(['\t', '\n', '\r']) {
        return Err(io::Error::new(
            io::ErrorKind::InvalidData,
            format!("field {value:?} contains a tab or line break"),
        ));
    }
    Ok(value)
}

/// Writes sentences one at a time.
pub struct TsvWriter<W: Write> {
    out: W,
    first: bool,
}

impl<W: Write> TsvWriter<W> {
    pub fn new(mut out: W) -> io::Result<Self> {
        writeln!(out, "{HEADER}")?;
        Ok(TsvWriter { out, first: true })
    }

    pub fn write_sentence(&mut self, sentence: &[AnnotatedToken]) -> io::Result<()> {
        if sentence.is_empty() {
            return Ok(());
        }
        if !self.first {
            writeln!(self.out)?;
        }
        self.first = false;
        for t in sentence {
            writeln!(
                self.out,
                "{}\t{}\t{}\t{}",
                field(&t.form)?,
                field(t.lemma.as_deref().unwrap_or(ABSENT))?,
                t.pos.map_or(ABSENT, PosTag::code),
                t.morph.serialize()
            )?;
        }
        Ok(())
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

pub fn write_corpus<W: Write>(corpus: &[Sentence], out: W) -> io::Result<()> {
    let mut w = TsvWriter::new(out)?;
    for s in corpus {
        w.write_sentence(s)?;
    }
    w.finish().map(drop)
}

pub fn corpus_to_string(corpus: &[Sentence]) -> String {
    let mut buf = Vec::new();
    write_corpus(corpus, &mut buf).expect("fields written by this crate contain no tabs");
    String::from_utf8(buf).expect("utf-8 in, utf-8 out")
}

pub fn save_corpus(corpus: &[Sentence], path: impl AsRef<Path>) -> Result<(), TsvError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| TsvError::io(e).at(path))?;
    write_corpus(corpus, BufWriter::new(file)).map_err(|e| TsvError::io(e).at(path))
}

/// Reads a one-token-per-line file; blank lines separate sentences.
pub fn parse_token_lines(text: &str) -> Corpus {
    let mut corpus = Vec::new();
    let mut sentence = Vec::new();
    for line in text.lines() {
        let token = line.trim();
        if token.is_empty() {
            if !sentence.is_empty() {
                corpus.push(std::mem::take(&mut sentence));
            }
        } else {
            sentence.push(AnnotatedToken::new(token));
        }
    }
    if !sentence.is_empty() {
        corpus.push(sentence);
    }
    corpus
}

/// A corpus from either an annotation TSV or a one-token-per-line file.
pub fn parse_tokens_or_tsv(text: &str) -> Result<Corpus, TsvError> {
    if looks_like_tsv(text) {
        parse_corpus(text)
    } else {
        Ok(parse_token_lines(text))
    }
}

/// Token-per-line text, blank line between sentences.
pub fn token_lines(corpus: &[Sentence]) -> String {
    let mut out = String::new();
    for (i, s) in corpus.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for t in s {
            out.push_str(&t.form);
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tagset::MorphBundle;
    use proptest::prelude::*;

    #[test]
    fn reads_single_token() {
        let c = parse_corpus("form\tlemma\tPOS\tmorph\nle\tle\tDETdef\t_\n").unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0][0].lemma.as_deref(), Some("le"));
        assert_eq!(c[0][0].pos, Some(PosTag::DetDef));
        assert_eq!(c[0][0].morph, Morph::Bundle(MorphBundle::empty()));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_corpus("form\tlemma\tPOS\tmorph\nle\tle\tDETdef\t_\n\nla\tle\tDETdef\n").unwrap_err();
        assert!(matches!(err, TsvError::Columns { line: 4, found: 3 }));
        assert!(matches!(parse_corpus("le\tle\tDETdef\t_\n"), Err(TsvError::MissingHeader { .. })));
        assert!(matches!(parse_corpus(""), Err(TsvError::MissingHeader { .. })));
        let err = parse_corpus("form\tlemma\tPOS\tmorph\nle\tle\tXYZ\t_\n").unwrap_err();
        assert!(matches!(err, TsvError::Field { line: 2, column: "POS", .. }));
    }

    #[test]
    fn tolerates_extra_blank_lines_and_crlf() {
        let c = parse_corpus("form\tlemma\tPOS\tmorph\r\n\r\na\t_\t_\tunknown\r\n\n\n\nb\t_\t_\t_\n\n").unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0][0].morph, Morph::Unknown);
        assert_eq!(corpus_to_string(&c), "form\tlemma\tPOS\tmorph\na\t_\t_\tunknown\n\nb\t_\t_\t_\n");
    }

    #[test]
    fn token_lines_round_trip() {
        let c = parse_tokens_or_tsv("Il\nvient\n.\n\nMais\n").unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(token_lines(&c), "Il\nvient\n.\n\nMais\n");
    }

    fn line_strategy() -> impl Strategy<Value = String> {
        let form = "[a-zA-Zéœ'.,-]{1,8}";
        let lemma = prop_oneof![Just("_".to_string()), "[a-zé+]{1,8}"];
        let pos = prop::sample::select(PosTag::ALL.iter().map(|p| p.code()).chain(["_"]).collect::<Vec<_>>());
        let morph = prop::sample::select(vec!["_", "unknown", "MORPH=inv", "MODE=ind|TEMPS=pst|PERS.=3|NOMB.=s", "NOMB.=p|GENRE=f"]);
        (form, lemma, pos, morph).prop_map(|(f, l, p, m)| format!("{f}\t{l}\t{p}\t{m}"))
    }

    proptest! {
        #[test]
        fn canonical_files_round_trip(sentences in prop::collection::vec(prop::collection::vec(line_strategy(), 1..6), 0..6)) {
            let mut text = format!("{HEADER}\n");
            let body: Vec<String> = sentences.iter().map(|s| s.join("\n") + "\n").collect();
            text.push_str(&body.join("\n"));
            let corpus = parse_corpus(&text).unwrap();
            prop_assert_eq!(corpus_to_string(&corpus), text);
        }
    }
}
