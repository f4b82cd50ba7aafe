use std::collections::{BTreeSet, HashSet};
use std::io::{self, BufRead};
use std::path::Path;
use std::sync::LazyLock;

use thiserror::Error;

use crate::corpus::AnnotatedToken;
use crate::tagset::PosTag;

const DEFAULT_RULES_TSV: &str = include_str!("../../data/lemma_rules.tsv");

static DEFAULT_RULES: LazyLock<RuleSet> = LazyLock::new(|| {
    RuleSet::read(DEFAULT_RULES_TSV.as_bytes()).expect("built-in lemma rules are valid")
});

#[derive(Debug, Error)]
pub enum RuleError {
    #[error("rule file: {0}")]
    Io(#[from] io::Error),
    #[error("rule file line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

/// Rewrites the lemma of tokens matching every given column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaRule {
    pub rule_id: String,
    pub match_form: Option<BTreeSet<String>>,
    pub match_lemma: Option<BTreeSet<String>>,
    pub match_pos: Option<BTreeSet<PosTag>>,
    pub replacement_lemma: String,
}

impl LemmaRule {
    pub fn matches(&self, token: &AnnotatedToken) -> bool {
        if let Some(forms) = &self.match_form {
            if !forms.contains(&token.form) {
                return false;
            }
        }
        if let Some(lemmas) = &self.match_lemma {
            match &token.lemma {
                Some(l) if lemmas.contains(l) => {}
                _ => return false,
            }
        }
        if let Some(tags) = &self.match_pos {
            match token.pos {
                Some(p) if tags.contains(&p) => {}
                _ => return false,
            }
        }
        true
    }
}

/// Ordered rules; file order decides precedence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleSet {
    rules: Vec<LemmaRule>,
}

fn column(value: &str) -> Option<BTreeSet<String>> {
    if value == "*" {
        None
    } else {
        Some(value.split('|').map(str::to_string).collect())
    }
}

impl RuleSet {
    /// The built-in normalization rules.
    pub fn default_rules() -> &'static RuleSet {
        &DEFAULT_RULES
    }

    pub fn new(rules: Vec<LemmaRule>) -> Self {
        RuleSet { rules }
    }

    pub fn rules(&self) -> &[LemmaRule] {
        &self.rules
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, RuleError> {
        let file = std::fs::File::open(path)?;
        RuleSet::read(io::BufReader::new(file))
    }

    /// Columns: rule_id, match_form, match_lemma, match_pos, replacement_lemma.
    pub fn read<R: BufRead>(reader: R) -> Result<Self, RuleError> {
        let mut rules = Vec::new();
        let mut ids = HashSet::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim_end_matches('\r');
            let line_no = i + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = |reason: String| RuleError::Malformed {
                line: line_no,
                reason,
            };
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 5 {
                return Err(malformed(format!("expected 5 columns, found {}", cols.len())));
            }
            if cols.iter().any(|c| c.is_empty()) {
                return Err(malformed("empty column (use `*` for no constraint)".to_string()));
            }
            let match_pos = match column(cols[3]) {
                None => None,
                Some(codes) => Some(
                    codes
                        .iter()
                        .map(|c| c.parse::<PosTag>())
                        .collect::<Result<BTreeSet<_>, _>>()
                        .map_err(|e| malformed(e.to_string()))?,
                ),
            };
            let rule = LemmaRule {
                rule_id: cols[0].to_string(),
                match_form: column(cols[1]),
                match_lemma: column(cols[2]),
                match_pos,
                replacement_lemma: cols[4].to_string(),
            };
            if rule.match_form.is_none() && rule.match_lemma.is_none() && rule.match_pos.is_none() {
                return Err(malformed("rule constrains nothing".to_string()));
            }
            if !ids.insert(rule.rule_id.clone()) {
                return Err(malformed(format!("duplicate rule id `{}`", rule.rule_id)));
            }
            rules.push(rule);
        }
        Ok(RuleSet { rules })
    }

    /// The first rule matching `token`.
    pub fn find(&self, token: &AnnotatedToken) -> Option<&LemmaRule> {
        self.rules.iter().find(|r| r.matches(token))
    }

    /// One pass: at most one rewrite, by the first matching rule.
    pub fn apply(&self, token: &AnnotatedToken) -> AnnotatedToken {
        let mut out = token.clone();
        if let Some(rule) = self.find(token) {
            out.lemma = Some(rule.replacement_lemma.clone());
        }
        out
    }
}

/// [`RuleSet::apply`] as a free function.
pub fn apply_lemma_rules(token: &AnnotatedToken, rules: &RuleSet) -> AnnotatedToken {
    rules.apply(token)
}
