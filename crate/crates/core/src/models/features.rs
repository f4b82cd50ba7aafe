//! Observation feature templates shared by the tagger and the morphology
//! classifiers. Tag-history features live in the tagger's transition table.

const BOS: &str = "<s>";
const EOS: &str = "</s>";

fn prefix(s: &str, n: usize) -> Option<&str> {
    let end = s.char_indices().nth(n).map(|(i, _)| i);
    match end {
        Some(i) => Some(&s[..i]),
        // exactly n chars
        None if s.chars().count() == n => Some(s),
        None => None,
    }
}

fn suffix(s: &str, n: usize) -> Option<&str> {
    let count = s.chars().count();
    if count < n {
        return None;
    }
    let start = s.char_indices().nth(count - n).map_or(s.len(), |(i, _)| i);
    Some(&s[start..])
}

/// Feature strings for the token at `i`.
pub fn token_features(forms: &[&str], i: usize) -> Vec<String> {
    let form = forms[i];
    let lower = form.to_lowercase();
    let mut feats = Vec::with_capacity(20);
    feats.push("bias".to_string());
    feats.push(format!("w={form}"));
    feats.push(format!("lw={lower}"));
    for n in 1..=4 {
        if let Some(s) = suffix(&lower, n) {
            feats.push(format!("s{n}={s}"));
        }
    }
    for n in 1..=3 {
        if let Some(p) = prefix(&lower, n) {
            feats.push(format!("p{n}={p}"));
        }
    }
    if form.chars().any(|c| c.is_ascii_digit()) {
        feats.push("digit".to_string());
    }
    if form.contains('-') {
        feats.push("hyphen".to_string());
    }
    if form.chars().next().is_some_and(char::is_uppercase) {
        feats.push("cap".to_string());
    }
    if form.chars().any(char::is_alphabetic)
        && form.chars().filter(|c| c.is_alphabetic()).all(char::is_uppercase)
    {
        feats.push("allcaps".to_string());
    }
    for offset in [-2isize, -1, 1, 2] {
        let j = i as isize + offset;
        let ctx = if j < 0 {
            BOS.to_string()
        } else if j as usize >= forms.len() {
            EOS.to_string()
        } else {
            forms[j as usize].to_lowercase()
        };
        feats.push(format!("w{offset:+}={ctx}"));
    }
    feats
}

/// Features of every token of a sentence.
pub fn sentence_features(forms: &[&str]) -> Vec<Vec<String>> {
    (0..forms.len()).map(|i| token_features(forms, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn templates() {
        let feats = token_features(&["Donnez", "-le", "2"], 0);
        for f in ["bias", "w=Donnez", "lw=donnez", "s1=z", "s4=nnez"] {
            assert!(feats.contains(&f.to_string()), "{f} missing from {feats:?}");
        }
        assert!(feats.contains(&"p3=don".to_string()));
        assert!(feats.contains(&"cap".to_string()));
        assert!(!feats.contains(&"allcaps".to_string()));
        assert!(feats.contains(&"w-2=<s>".to_string()));
        assert!(feats.contains(&"w+1=-le".to_string()));
        assert!(feats.contains(&"w+2=2".to_string()));
        let mid = token_features(&["Donnez", "-le", "2"], 1);
        assert!(mid.contains(&"hyphen".to_string()));
        assert!(mid.contains(&"w+2=</s>".to_string()));
        let last = token_features(&["Donnez", "-le", "2"], 2);
        assert!(last.contains(&"digit".to_string()));
        assert!(!last.iter().any(|f| f.starts_with("s2=")));
    }

    #[test]
    fn multibyte_affixes() {
        assert_eq!(suffix("été", 2), Some("té"));
        assert_eq!(prefix("œil", 1), Some("œ"));
        assert_eq!(prefix("œil", 3), Some("œil"));
        assert_eq!(prefix("œil", 4), None);
        let f = token_features(&["ÉTÉ"], 0);
        assert!(f.contains(&"allcaps".to_string()));
    }
}
