/// Characters always split off as one-character tokens.
pub const PUNCTUATION: &[char] = &[
    '.', ',', ';', ':', '!', '?', '«', '»', '"', '(', ')', '—', '…',
];

/// Apostrophe words that are not elisions.
const UNELIDED: &[&str] = &["aujourd'hui", "prud'homme", "prud'hommes"];

/// Pronouns detached from a verb at the hyphen (`donnez-le`, `a-t-il`).
const HYPHEN_CLITICS: &[&str] = &[
    "je", "tu", "il", "ils", "elle", "elles", "on", "ce", "le", "la", "les", "lui", "leur", "moi",
    "toi", "nous", "vous", "en", "y", "t",
];

/// Splits normalized text into tokens.
///
/// Splits on whitespace, detaches [`PUNCTUATION`], splits elisions after the
/// apostrophe (`l'amour` → `l'` `amour`) and detaches hyphenated clitic
/// pronouns with their hyphen (`donnez-le` → `donnez` `-le`). Case is never
/// touched and the concatenated tokens equal the input without whitespace.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        let mut start = 0;
        for (i, c) in chunk.char_indices() {
            if PUNCTUATION.contains(&c) {
                push_word(&chunk[start..i], &mut tokens);
                tokens.push(c.to_string());
                start = i + c.len_utf8();
            }
        }
        push_word(&chunk[start..], &mut tokens);
    }
    tokens
}

fn push_word(word: &str, out: &mut Vec<String>) {
    if word.is_empty() {
        return;
    }
    let mut parts: Vec<&str> = word.split_inclusive('\'').collect();
    let mut merged: Vec<String> = Vec::with_capacity(parts.len());
    let mut i = 0;
    while i < parts.len() {
        if i + 1 < parts.len() {
            let joined = format!("{}{}", parts[i], parts[i + 1]);
            if UNELIDED.contains(&joined.to_lowercase().as_str()) {
                merged.push(joined);
                i += 2;
                continue;
            }
        }
        merged.push(parts[i].to_string());
        i += 1;
    }
    parts.clear();
    for part in &merged {
        split_clitics(part, out);
    }
}

fn split_clitics(word: &str, out: &mut Vec<String>) {
    let mut tail = Vec::new();
    let mut rest = word;
    while let Some(p) = rest.rfind('-') {
        if p == 0 {
            break;
        }
        let clitic = &rest[p + 1..];
        if HYPHEN_CLITICS.contains(&clitic.to_lowercase().as_str()) {
            tail.push(&rest[p..]);
            rest = &rest[..p];
        } else {
            break;
        }
    }
    out.push(rest.to_string());
    out.extend(tail.into_iter().rev().map(str::to_string));
}

pub fn is_sentence_final(token: &str) -> bool {
    matches!(token, "." | "!" | "?" | "…")
}

/// Groups tokens into sentences ending at sentence-final punctuation.
/// Closing quotes and parentheses that follow stay with the sentence they close.
pub fn segment_sentences<T, F>(tokens: Vec<T>, form: F) -> Vec<Vec<T>>
where
    F: Fn(&T) -> &str,
{
    let mut sentences = Vec::new();
    let mut current = Vec::new();
    let mut closing = false;
    for token in tokens {
        let f = form(&token);
        if closing && !(is_sentence_final(f) || f == "»" || f == ")") {
            sentences.push(std::mem::take(&mut current));
            closing = false;
        }
        if is_sentence_final(f) {
            closing = true;
        }
        current.push(token);
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    sentences
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(tokenize("l'amour"), ["l'", "amour"]);
        assert_eq!(tokenize("Bonjour, Monsieur."), ["Bonjour", ",", "Monsieur", "."]);
        assert!(tokenize("").is_empty());
        assert!(tokenize("  \n ").is_empty());
    }

    #[test]
    fn clitics_and_exceptions() {
        assert_eq!(tokenize("Donnez-le-moi !"), ["Donnez", "-le", "-moi", "!"]);
        assert_eq!(tokenize("a-t-il"), ["a", "-t", "-il"]);
        assert_eq!(tokenize("peut-être"), ["peut-être"]);
        assert_eq!(tokenize("aujourd'hui"), ["aujourd'hui"]);
        assert_eq!(tokenize("Aujourd'hui qu'il"), ["Aujourd'hui", "qu'", "il"]);
        assert_eq!(tokenize("c'est-à-dire"), ["c'", "est-à-dire"]);
        assert_eq!(tokenize("«Quoi?»"), ["«", "Quoi", "?", "»"]);
        assert_eq!(tokenize("-le"), ["-le"]);
    }

    #[test]
    fn segments_after_final_punctuation() {
        let toks = tokenize("Il vient. « Oui ! » Non… fin");
        let sentences = segment_sentences(toks, |t| t.as_str());
        assert_eq!(
            sentences,
            vec![
                vec!["Il", "vient", "."],
                vec!["«", "Oui", "!", "»"],
                vec!["Non", "…"],
                vec!["fin"],
            ]
        );
    }

    proptest! {
        #[test]
        fn reversible(s in "[a-zA-Zé'’ .,;:!?«»\"()—…\\-]{0,60}") {
            let tokens = tokenize(&s);
            let joined: String = tokens.concat();
            let stripped: String = s.chars().filter(|c| !c.is_whitespace()).collect();
            prop_assert_eq!(joined, stripped);
            for t in &tokens {
                prop_assert!(!t.is_empty());
                prop_assert!(!t.chars().any(char::is_whitespace));
                prop_assert!(s.contains(t.as_str()));
            }
        }
    }
}
