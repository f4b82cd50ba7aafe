use std::collections::HashMap;
use std::sync::{Arc, LazyLock};

use unicode_normalization::UnicodeNormalization;

const LIGATURES_TXT: &str = include_str!("../../data/ligatures.txt");

static BUILTIN_LIGATURES: LazyLock<Arc<LigatureLexicon>> =
    LazyLock::new(|| Arc::new(LigatureLexicon::parse(LIGATURES_TXT)));

/// Words spelled with `œ`, indexed by their decomposed lowercase spelling.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LigatureLexicon {
    by_decomposed: HashMap<String, Vec<char>>,
}

impl LigatureLexicon {
    /// One word per line; `#` comments and blank lines ignored.
    pub fn parse(text: &str) -> Self {
        let mut by_decomposed = HashMap::new();
        for word in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let composed: Vec<char> = word.nfc().flat_map(char::to_lowercase).collect();
            if !composed.contains(&'œ') {
                continue;
            }
            let decomposed: String = composed
                .iter()
                .flat_map(|&c| if c == 'œ' { vec!['o', 'e'] } else { vec![c] })
                .collect();
            by_decomposed.insert(decomposed, composed);
        }
        LigatureLexicon { by_decomposed }
    }

    pub fn builtin() -> Arc<LigatureLexicon> {
        BUILTIN_LIGATURES.clone()
    }

    pub fn len(&self) -> usize {
        self.by_decomposed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_decomposed.is_empty()
    }

    /// Rewrites one alphabetic word, keeping the case of every letter.
    fn compose_word(&self, word: &[char], out: &mut String) {
        let lower: Option<String> = word
            .iter()
            .map(|c| {
                let mut l = c.to_lowercase();
                match (l.next(), l.next()) {
                    (Some(x), None) => Some(x),
                    _ => None,
                }
            })
            .collect();
        let Some(target) = lower.and_then(|l| self.by_decomposed.get(&l)) else {
            out.extend(word);
            return;
        };
        let mut j = 0;
        for &c in target {
            if c == 'œ' {
                out.push(if word[j].is_uppercase() { 'Œ' } else { 'œ' });
                j += 2;
            } else {
                out.push(word[j]);
                j += 1;
            }
        }
    }
}

/// Character normalization switches. All are on by default.
#[derive(Debug, Clone)]
pub struct NormalizationPolicy {
    /// Rewrite `oe` to `œ` in the words of `ligatures`.
    pub compose_ligatures: bool,
    /// Map U+2019 to U+0027.
    pub unify_apostrophes: bool,
    /// Apply Unicode canonical composition (NFC).
    pub compose_unicode: bool,
    pub ligatures: Arc<LigatureLexicon>,
}

impl Default for NormalizationPolicy {
    fn default() -> Self {
        NormalizationPolicy {
            compose_ligatures: true,
            unify_apostrophes: true,
            compose_unicode: true,
            ligatures: LigatureLexicon::builtin(),
        }
    }
}

/// Applies `policy` to `text`. Never changes letter case.
pub fn normalize_chars(text: &str, policy: &NormalizationPolicy) -> String {
    let mut s: String = if policy.compose_unicode {
        text.nfc().collect()
    } else {
        text.to_string()
    };
    if policy.unify_apostrophes {
        s = s.replace('\u{2019}', "'");
    }
    if policy.compose_ligatures && !policy.ligatures.is_empty() {
        let mut out = String::with_capacity(s.len());
        let mut word: Vec<char> = Vec::new();
        for c in s.chars() {
            if c.is_alphabetic() {
                word.push(c);
            } else {
                if !word.is_empty() {
                    policy.ligatures.compose_word(&word, &mut out);
                    word.clear();
                }
                out.push(c);
            }
        }
        if !word.is_empty() {
            policy.ligatures.compose_word(&word, &mut out);
        }
        s = out;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn policy() -> NormalizationPolicy {
        NormalizationPolicy::default()
    }

    #[test]
    fn composes_listed_ligatures() {
        assert_eq!(normalize_chars("coeur", &policy()), "cœur");
        assert_eq!(normalize_chars("cœur", &policy()), "cœur");
        assert_eq!(normalize_chars("Mon Coeur, ma soeur", &policy()), "Mon Cœur, ma sœur");
        assert_eq!(normalize_chars("OEIL d'oeil", &policy()), "ŒIL d'œil");
        assert_eq!(normalize_chars("moelle coexister", &policy()), "moelle coexister");
    }

    #[test]
    fn apostrophes_and_switches() {
        assert_eq!(normalize_chars("l\u{2019}amour", &policy()), "l'amour");
        let off = NormalizationPolicy {
            compose_ligatures: false,
            unify_apostrophes: false,
            compose_unicode: false,
            ..policy()
        };
        assert_eq!(normalize_chars("l\u{2019}coeur", &off), "l\u{2019}coeur");
    }

    #[test]
    fn composes_unicode() {
        assert_eq!(normalize_chars("e\u{301}te\u{301}", &policy()), "été");
        assert_eq!(normalize_chars("co\u{308}eur", &policy()), "cöeur");
    }

    proptest! {
        #[test]
        fn idempotent(s in "[a-zA-ZœŒéèêëç'’ ,.oe\u{301}]{0,40}") {
            let once = normalize_chars(&s, &policy());
            prop_assert_eq!(normalize_chars(&once, &policy()), once);
        }

        #[test]
        fn case_preserved(s in "[a-zA-Z ]{0,40}") {
            let out = normalize_chars(&s, &policy());
            let upper_in = s.chars().filter(|c| c.is_uppercase()).count();
            let upper_out = out.chars().filter(|c| c.is_uppercase()).count();
            prop_assert!(upper_out <= upper_in);
            prop_assert_eq!(out.to_lowercase().replace('œ', "oe"), s.to_lowercase());
        }
    }
}
