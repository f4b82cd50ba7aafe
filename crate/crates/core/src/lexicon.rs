//! Inflected-form lexicon in the Morphalou mould, and the proper-name list.
//!
//! Lexicon files are four-column UTF-8 TSV:
//!
//! ```text
//! # form	lemma	category	flexion values
//! chante	chanter	Verbe	indicative;present;thirdPerson;singular
//! ```
//!
//! The name list holds one proper-name lemma per line. Both accept `#` comments.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tagset::{MappingTables, MorphBundle, MorphalouCategory};

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("lexicon line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub form: String,
    pub lemma: String,
    pub category: MorphalouCategory,
    /// Morphalou flexion values, e.g. `indicative`, `thirdPerson`.
    pub morph_source_values: Vec<String>,
}

impl LexiconEntry {
    pub fn bundle(&self, tables: &MappingTables) -> MorphBundle {
        tables.bundle_from_flexions(self.morph_source_values.iter().map(String::as_str))
    }
}

/// Entries indexed by exact form and by lowercased form, plus proper names.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(from = "LexiconData", into = "LexiconData")]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    exact: HashMap<String, Vec<usize>>,
    lowercase: HashMap<String, Vec<usize>>,
    names: BTreeSet<String>,
}

#[derive(Serialize, Deserialize)]
struct LexiconData {
    entries: Vec<LexiconEntry>,
    names: BTreeSet<String>,
}

impl From<LexiconData> for Lexicon {
    fn from(data: LexiconData) -> Self {
        let mut lexicon = Lexicon::from_entries(data.entries);
        lexicon.names = data.names;
        lexicon
    }
}

impl From<Lexicon> for LexiconData {
    fn from(lexicon: Lexicon) -> Self {
        LexiconData {
            entries: lexicon.entries,
            names: lexicon.names,
        }
    }
}

impl PartialEq for Lexicon {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries && self.names == other.names
    }
}

fn content_lines<R: BufRead>(reader: R) -> impl Iterator<Item = io::Result<(usize, String)>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(e)),
        Ok(line) => {
            let line = line.trim_end_matches('\r').to_string();
            if line.trim().is_empty() || line.starts_with('#') {
                None
            } else {
                Some(Ok((i + 1, line)))
            }
        }
    })
}

fn open(path: &Path) -> Result<BufReader<File>, LexiconError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| LexiconError::Io {
            path: path.display().to_string(),
            source,
        })
}

/// Reads a lexicon TSV file, validating values against the built-in tables.
pub fn load_lexicon(path: impl AsRef<Path>) -> Result<Lexicon, LexiconError> {
    let path = path.as_ref();
    Lexicon::read(open(path)?, MappingTables::builtin()).map_err(|e| match e {
        LexiconError::Io { source, .. } => LexiconError::Io {
            path: path.display().to_string(),
            source,
        },
        other => other,
    })
}

/// Reads a one-name-per-line file.
pub fn load_names(path: impl AsRef<Path>) -> Result<BTreeSet<String>, LexiconError> {
    let path = path.as_ref();
    let io_err = |source| LexiconError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut names = BTreeSet::new();
    for line in content_lines(open(path)?) {
        let (_, line) = line.map_err(io_err)?;
        names.insert(line.trim().to_string());
    }
    Ok(names)
}

impl Lexicon {
    pub fn from_entries(entries: impl IntoIterator<Item = LexiconEntry>) -> Self {
        let mut lexicon = Lexicon::default();
        let mut seen = HashSet::new();
        for entry in entries {
            if seen.insert(entry.clone()) {
                lexicon.push(entry);
            }
        }
        lexicon
    }

    fn push(&mut self, entry: LexiconEntry) {
        let idx = self.entries.len();
        self.exact.entry(entry.form.clone()).or_default().push(idx);
        self.lowercase
            .entry(entry.form.to_lowercase())
            .or_default()
            .push(idx);
        self.entries.push(entry);
    }

    /// Parses lexicon TSV. Identical rows are kept once; file order is preserved.
    pub fn read<R: BufRead>(reader: R, tables: &MappingTables) -> Result<Self, LexiconError> {
        let mut entries = Vec::new();
        for line in content_lines(reader) {
            let (line_no, line) = line.map_err(|source| LexiconError::Io {
                path: "<input>".to_string(),
                source,
            })?;
            let malformed = |reason: String| LexiconError::Malformed {
                line: line_no,
                reason,
            };
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 4 {
                return Err(malformed(format!("expected 4 columns, found {}", cols.len())));
            }
            if cols[0].is_empty() || cols[1].is_empty() {
                return Err(malformed("empty form or lemma".to_string()));
            }
            let category: MorphalouCategory =
                cols[2].parse().map_err(|e| malformed(format!("{e}")))?;
            let values: Vec<String> = cols[3]
                .split(';')
                .map(str::trim)
                .filter(|v| !v.is_empty())
                .map(str::to_string)
                .collect();
            if let Some(bad) = values.iter().find(|v| !tables.is_known_flexion(v)) {
                return Err(malformed(format!("unknown flexion value `{bad}`")));
            }
            entries.push(LexiconEntry {
                form: cols[0].to_string(),
                lemma: cols[1].to_string(),
                category,
                morph_source_values: values,
            });
        }
        Ok(Lexicon::from_entries(entries))
    }

    pub fn write<W: Write>(&self, mut writer: W) -> io::Result<()> {
        for e in &self.entries {
            writeln!(
                writer,
                "{}\t{}\t{}\t{}",
                e.form,
                e.lemma,
                e.category,
                e.morph_source_values.join(";")
            )?;
        }
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> io::Result<()> {
        let mut file = io::BufWriter::new(File::create(path)?);
        self.write(&mut file)?;
        file.flush()
    }

    pub fn with_names(mut self, names: impl IntoIterator<Item = String>) -> Self {
        self.names.extend(names);
        self
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn names(&self) -> &BTreeSet<String> {
        &self.names
    }

    pub fn is_name(&self, lemma: &str) -> bool {
        self.names.contains(lemma)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exact-case matches; when there are none and `fallback_lowercase` is
    /// set, entries whose lowercased form equals the lowercased query.
    pub fn lookup(&self, form: &str, fallback_lowercase: bool) -> Vec<&LexiconEntry> {
        if let Some(idx) = self.exact.get(form) {
            return idx.iter().map(|&i| &self.entries[i]).collect();
        }
        if fallback_lowercase {
            if let Some(idx) = self.lowercase.get(&form.to_lowercase()) {
                return idx.iter().map(|&i| &self.entries[i]).collect();
            }
        }
        Vec::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Lexicon, LexiconError> {
        Lexicon::read(text.as_bytes(), MappingTables::builtin())
    }

    const FIXTURE: &str = "# toy\nchante\tchanter\tVerbe\tindicative;present;thirdPerson;singular\n";

    #[test]
    fn loads_and_looks_up() {
        let lex = parse(FIXTURE).unwrap();
        assert_eq!(lex.len(), 1);
        assert_eq!(lex.lookup("chante", true).len(), 1);
        assert_eq!(lex.lookup("Chante", true).len(), 1);
        assert!(lex.lookup("Chante", false).is_empty());
        assert!(lex.lookup("zzz", true).is_empty());
        assert_eq!(
            lex.lookup("chante", true)[0].morph_source_values,
            ["indicative", "present", "thirdPerson", "singular"]
        );
    }

    #[test]
    fn empty_file_misses() {
        let lex = parse("").unwrap();
        assert!(lex.is_empty());
        assert!(lex.lookup("chante", true).is_empty());
    }

    #[test]
    fn rejects_bad_rows_with_line_numbers() {
        let bad = "chante\tchanter\tVerbe\tpresent\n# c\nchat\tchat\tVerb\tsingular\n";
        assert!(matches!(parse(bad), Err(LexiconError::Malformed { line: 3, .. })));
        let bad_value = "chat\tchat\tNom commun\tsingulier\n";
        assert!(matches!(parse(bad_value), Err(LexiconError::Malformed { line: 1, .. })));
        let short = "chat\tchat\tNom commun\n";
        assert!(matches!(parse(short), Err(LexiconError::Malformed { line: 1, .. })));
    }

    #[test]
    fn deduplicates_and_keeps_order() {
        let text = "le\tle\tDéterminant\tmasculine;singular\n\
                    le\til\tPronom\tthirdPerson;masculine;singular\n\
                    le\tle\tDéterminant\tmasculine;singular\n";
        let lex = parse(text).unwrap();
        let hits: Vec<&str> = lex.lookup("le", true).iter().map(|e| e.lemma.as_str()).collect();
        assert_eq!(hits, ["le", "il"]);
    }

    #[test]
    fn exact_case_wins_over_fallback() {
        let text = "Franc\tFranc\tNom commun\tsingular\nfranc\tfranc\tAdjectif qualificatif\tsingular\n";
        let lex = parse(text).unwrap();
        assert_eq!(lex.lookup("Franc", true)[0].lemma, "Franc");
        assert_eq!(lex.lookup("franc", true).len(), 1);
        assert_eq!(lex.lookup("FRANC", true).len(), 2);
    }

    #[test]
    fn save_load_identity() {
        let text = "chante\tchanter\tVerbe\tindicative;present;thirdPerson;singular\n\
                    vite\tvite\tAdverbe\tinvariable\n\
                    être\têtre\tVerbe\tinfinitive\n\
                    x\tx\tNom commun\t\n";
        let lex = parse(text).unwrap();
        let mut out = Vec::new();
        lex.write(&mut out).unwrap();
        assert_eq!(parse(std::str::from_utf8(&out).unwrap()).unwrap(), lex);
        let json = serde_json::to_string(&lex.clone().with_names(["Harpagon".to_string()])).unwrap();
        let back: Lexicon = serde_json::from_str(&json).unwrap();
        assert!(back.is_name("Harpagon"));
        assert_eq!(back.lookup("Chante", true).len(), 1);
    }
}
