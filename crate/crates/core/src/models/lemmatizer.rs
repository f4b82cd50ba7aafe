//! Lexicon lookup backed by suffix rewrite rules learned from training pairs.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::corpus::Sentence;
use crate::lexicon::Lexicon;
use crate::tagset::{MappingTables, PosTag};

pub const LEMMATIZER_FORMAT: &str = "classica-lemmatizer";
pub const LEMMATIZER_VERSION: u32 = 1;
pub const MAX_SUFFIX: usize = 6;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CasePolicy {
    /// Lowercase forms before rules and fallback, except proper nouns.
    #[default]
    LowercaseExceptProperNouns,
    Preserve,
}

/// Remove `strip` trailing chars, then append `append`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rewrite {
    pub strip: usize,
    pub append: String,
}

impl Rewrite {
    /// Shortest rewrite turning `form` into `lemma` once their common prefix is set aside.
    pub fn between(form: &str, lemma: &str) -> Rewrite {
        let common = form
            .chars()
            .zip(lemma.chars())
            .take_while(|(a, b)| a == b)
            .count();
        Rewrite {
            strip: form.chars().count() - common,
            append: lemma.chars().skip(common).collect(),
        }
    }

    pub fn apply(&self, form: &str) -> Option<String> {
        let n = form.chars().count();
        if self.strip > n {
            return None;
        }
        let mut out: String = form.chars().take(n - self.strip).collect();
        out.push_str(&self.append);
        Some(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuffixRule {
    pub suffix: String,
    pub pos: PosTag,
    pub rewrite: Rewrite,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmatizerModel {
    rules: Vec<SuffixRule>,
    index: HashMap<(String, PosTag), Vec<usize>>,
    lemma_counts: BTreeMap<String, usize>,
    lexicon: Lexicon,
    pub case_policy: CasePolicy,
}

#[derive(Serialize, Deserialize)]
struct LemmatizerData {
    format: String,
    version: u32,
    case_policy: CasePolicy,
    rules: Vec<SuffixRule>,
    lemma_counts: BTreeMap<String, usize>,
    lexicon: Lexicon,
}

fn suffix_chars(s: &str, n: usize) -> &str {
    let count = s.chars().count();
    let start = s.char_indices().nth(count - n).map_or(s.len(), |(i, _)| i);
    &s[start..]
}

impl LemmatizerModel {
    fn new(
        rules: Vec<SuffixRule>,
        lemma_counts: BTreeMap<String, usize>,
        lexicon: Lexicon,
        case_policy: CasePolicy,
    ) -> Self {
        let mut index: HashMap<(String, PosTag), Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            index.entry((r.suffix.clone(), r.pos)).or_default().push(i);
        }
        // best first: frequency, then longer strip, then append text
        for ids in index.values_mut() {
            ids.sort_by(|&a, &b| {
                let (ra, rb) = (&rules[a], &rules[b]);
                rb.count
                    .cmp(&ra.count)
                    .then(rb.rewrite.strip.cmp(&ra.rewrite.strip))
                    .then(ra.rewrite.append.cmp(&rb.rewrite.append))
            });
        }
        LemmatizerModel {
            rules,
            index,
            lemma_counts,
            lexicon,
            case_policy,
        }
    }

    fn normalize_case(&self, form: &str, pos: PosTag) -> String {
        match self.case_policy {
            CasePolicy::LowercaseExceptProperNouns if pos != PosTag::NomPro => form.to_lowercase(),
            _ => form.to_string(),
        }
    }

    pub fn rules(&self) -> &[SuffixRule] {
        &self.rules
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    /// Best learned rewrite for `form` under `pos`, longest suffix first.
    pub fn rule_for(&self, form: &str, pos: PosTag) -> Option<&SuffixRule> {
        let form = self.normalize_case(form, pos);
        let n = form.chars().count();
        (1..=n.min(MAX_SUFFIX)).rev().find_map(|len| {
            self.index
                .get(&(suffix_chars(&form, len).to_string(), pos))
                .map(|ids| &self.rules[ids[0]])
        })
    }

    fn from_lexicon(&self, form: &str, pos: PosTag) -> Option<String> {
        let category = MappingTables::builtin().cattex_to_morphalou(pos).ok()?;
        let mut lemmas: Vec<&str> = self
            .lexicon
            .lookup(form, true)
            .into_iter()
            .filter(|e| e.category == category)
            .map(|e| e.lemma.as_str())
            .collect();
        lemmas.sort_unstable();
        lemmas.dedup();
        // most frequent in training; the sort makes ties lexicographic
        let mut best: Option<(&str, usize)> = None;
        for lemma in lemmas {
            let c = self.lemma_counts.get(lemma).copied().unwrap_or(0);
            if best.is_none_or(|(_, bc)| c > bc) {
                best = Some((lemma, c));
            }
        }
        best.map(|(l, _)| l.to_string())
    }

    pub fn lemmatize(&self, form: &str, pos: PosTag) -> String {
        if pos == PosTag::NomPro && self.lexicon.is_name(form) {
            return form.to_string();
        }
        if let Some(lemma) = self.from_lexicon(form, pos) {
            return lemma;
        }
        let normalized = self.normalize_case(form, pos);
        if let Some(rule) = self.rule_for(form, pos) {
            if let Some(lemma) = rule.rewrite.apply(&normalized) {
                return lemma;
            }
        }
        normalized
    }

    pub fn to_json(&self) -> Vec<u8> {
        let data = LemmatizerData {
            format: LEMMATIZER_FORMAT.to_string(),
            version: LEMMATIZER_VERSION,
            case_policy: self.case_policy,
            rules: self.rules.clone(),
            lemma_counts: self.lemma_counts.clone(),
            lexicon: self.lexicon.clone(),
        };
        serde_json::to_vec(&data).expect("lemmatizer serializes")
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self, ModelError> {
        let data: LemmatizerData = serde_json::from_slice(bytes)?;
        if data.format != LEMMATIZER_FORMAT || data.version != LEMMATIZER_VERSION {
            return Err(ModelError::Format(format!(
                "expected {LEMMATIZER_FORMAT} v{LEMMATIZER_VERSION}, found {} v{}",
                data.format, data.version
            )));
        }
        Ok(LemmatizerModel::new(data.rules, data.lemma_counts, data.lexicon, data.case_policy))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), ModelError> {
        super::write_file(path.as_ref(), &self.to_json())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ModelError> {
        LemmatizerModel::from_json(&super::read_file(path.as_ref())?)
    }
}

/// Learns suffix rules from every (form, lemma, POS) triple of `train`.
pub fn train_lemmatizer(train: &[Sentence], lexicon: &Lexicon) -> Result<LemmatizerModel, ModelError> {
    train_lemmatizer_with(train, lexicon, CasePolicy::default())
}

pub fn train_lemmatizer_with(
    train: &[Sentence],
    lexicon: &Lexicon,
    case_policy: CasePolicy,
) -> Result<LemmatizerModel, ModelError> {
    let mut counts: BTreeMap<(String, PosTag, Rewrite), usize> = BTreeMap::new();
    let mut lemma_counts: BTreeMap<String, usize> = BTreeMap::new();
    let shell = LemmatizerModel::new(Vec::new(), BTreeMap::new(), Lexicon::default(), case_policy);
    for (s, sentence) in train.iter().enumerate() {
        for (t, token) in sentence.iter().enumerate() {
            let missing = |layer| ModelError::MissingAnnotation { layer, sentence: s, token: t };
            let lemma = token.lemma.as_deref().ok_or_else(|| missing("lemma"))?;
            let pos = token.pos.ok_or_else(|| missing("POS"))?;
            *lemma_counts.entry(lemma.to_string()).or_default() += 1;
            let form = shell.normalize_case(&token.form, pos);
            let n = form.chars().count();
            let rewrite = Rewrite::between(&form, lemma);
            for len in rewrite.strip.max(1)..=n.min(MAX_SUFFIX) {
                let key = (suffix_chars(&form, len).to_string(), pos, rewrite.clone());
                *counts.entry(key).or_default() += 1;
            }
        }
    }
    let rules = counts
        .into_iter()
        .map(|((suffix, pos, rewrite), count)| SuffixRule { suffix, pos, rewrite, count })
        .collect();
    Ok(LemmatizerModel::new(rules, lemma_counts, lexicon.clone(), case_policy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::AnnotatedToken;
    use crate::lexicon::LexiconEntry;
    use crate::tagset::MorphalouCategory;

    fn tok(form: &str, lemma: &str, pos: PosTag) -> AnnotatedToken {
        AnnotatedToken::new(form).with_lemma(lemma).with_pos(pos)
    }

    #[test]
    fn rewrite_extraction() {
        assert_eq!(Rewrite::between("aimerions", "aimer"), Rewrite { strip: 4, append: String::new() });
        assert_eq!(Rewrite::between("yeux", "œil"), Rewrite { strip: 4, append: "œil".into() });
        assert_eq!(Rewrite::between("été", "être").apply("été").as_deref(), Some("être"));
    }

    #[test]
    fn suffix_rule_generalizes() {
        let train = vec![vec![tok("aimerions", "aimer", PosTag::VerCjg)]];
        let model = train_lemmatizer(&train, &Lexicon::default()).unwrap();
        assert_eq!(model.lemmatize("chanterions", PosTag::VerCjg), "chanter");
        assert_eq!(model.rule_for("chanterions", PosTag::VerCjg).unwrap().suffix, "erions");
        assert_eq!(model.lemmatize("chanterions", PosTag::NomCom), "chanterions");
        assert_eq!(model.lemmatize("xyzzy", PosTag::VerCjg), "xyzzy");
        assert_eq!(model.lemmatize("Xyzzy", PosTag::AdvGen), "xyzzy");
        assert_eq!(model.lemmatize("Paris", PosTag::NomPro), "Paris");
    }

    #[test]
    fn lexicon_then_frequency() {
        let entry = |lemma: &str| LexiconEntry {
            form: "est".into(),
            lemma: lemma.into(),
            category: MorphalouCategory::Verbe,
            morph_source_values: vec![],
        };
        let lexicon = Lexicon::from_entries(vec![entry("être"), entry("ester")])
            .with_names(["Rome".to_string()]);
        let empty = train_lemmatizer(&[], &lexicon).unwrap();
        assert_eq!(empty.lemmatize("est", PosTag::VerCjg), "ester");
        let train = vec![vec![tok("suis", "être", PosTag::VerCjg)]];
        let model = train_lemmatizer(&train, &lexicon).unwrap();
        assert_eq!(model.lemmatize("est", PosTag::VerCjg), "être");
        assert_eq!(model.lemmatize("Est", PosTag::VerCjg), "être");
        // category mismatch skips the lexicon
        assert_eq!(model.lemmatize("est", PosTag::NomCom), "est");
        assert_eq!(model.lemmatize("Rome", PosTag::NomPro), "Rome");
    }

    #[test]
    fn json_round_trip() {
        let train = vec![vec![tok("chantait", "chanter", PosTag::VerCjg), tok("belles", "beau", PosTag::AdjQua)]];
        let model = train_lemmatizer(&train, &Lexicon::default()).unwrap();
        let bytes = model.to_json();
        let back = LemmatizerModel::from_json(&bytes).unwrap();
        assert_eq!(back, model);
        assert_eq!(back.to_json(), bytes);
        assert_eq!(back.lemmatize("dansait", PosTag::VerCjg), "danser");
    }
}
