//! Seeded template-grammar corpus for exercising the tagger and lemmatizer.
//!
//! Twelve tags. Determiners and object clitics share forms (`le`, `la`,
//! `les`), some nouns double as verbs (`porte`, `garde`) and open-class
//! words are drawn from a Zipf-like distribution over invented stems, so a
//! held-out slice contains unseen forms that only suffixes and context can
//! resolve.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{AnnotatedToken, Corpus, Sentence};
use crate::tagset::PosTag;

/// The tags the generator emits.
pub const TAGS: [PosTag; 12] = [
    PosTag::DetDef,
    PosTag::NomCom,
    PosTag::NomPro,
    PosTag::VerCjg,
    PosTag::ProPer,
    PosTag::AdjQua,
    PosTag::Pre,
    PosTag::AdvGen,
    PosTag::ConCoo,
    PosTag::ConSub,
    PosTag::PonFrt,
    PosTag::PonFbl,
];

const ONSETS: &[&str] = &["b", "ch", "d", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v", "br", "gr", "pl", "tr"];
const VOWELS: &[&str] = &["a", "e", "i", "o", "ou", "u", "ai", "é"];

const NAMES: &[&str] = &[
    "Dorante", "Célimène", "Orgon", "Elmire", "Valère", "Mariane", "Cléante", "Damis", "Dorine", "Alceste",
    "Philinte", "Oronte", "Arsinoé", "Éraste", "Lucile",
];

/// (form, lemma)
const DETERMINERS: &[(&str, &str)] = &[("le", "le"), ("la", "le"), ("les", "le")];
const SUBJECTS: &[(&str, &str)] = &[("il", "il"), ("elle", "il"), ("je", "je"), ("nous", "nous"), ("ils", "il")];
const OBJECTS: &[(&str, &str)] = &[("le", "il"), ("la", "il"), ("les", "il"), ("lui", "il")];
const PREPOSITIONS: &[&str] = &["à", "de", "dans", "sur", "avec", "pour", "sans"];
const COORDINATORS: &[&str] = &["et", "mais", "ou"];
const SUBORDINATORS: &[&str] = &["que", "si", "quand"];
const ADVERBS: &[&str] = &["bien", "toujours", "jamais", "ici", "encore", "trop"];
/// Forms that are nouns after a determiner and verbs after a subject.
const NOUN_VERBS: &[(&str, &str, &str)] = &[
    ("porte", "porte", "porter"),
    ("garde", "garde", "garder"),
    ("marche", "marche", "marcher"),
    ("ferme", "ferme", "fermer"),
    ("change", "change", "changer"),
    ("livre", "livre", "livrer"),
];

const NOUN_SUFFIXES: &[&str] = &["age", "eur", "ion", "esse", "ette", "ure"];
const ADJ_SUFFIXES: &[&str] = &["eux", "able", "ique", "ant"];
const VERB_ENDINGS: &[&str] = &["e", "ent", "ait", "aient", "a", "ons"];

struct Vocabulary {
    nouns: Vec<String>,
    adjectives: Vec<String>,
    verb_stems: Vec<String>,
    adverbs: Vec<String>,
}

fn stem(rng: &mut ChaCha8Rng) -> String {
    let syllables = rng.random_range(1..=2);
    let mut s = String::new();
    for _ in 0..syllables {
        s.push_str(ONSETS[rng.random_range(0..ONSETS.len())]);
        s.push_str(VOWELS[rng.random_range(0..VOWELS.len())]);
    }
    s.push_str(ONSETS[rng.random_range(0..ONSETS.len())]);
    s
}

fn unique_words(rng: &mut ChaCha8Rng, n: usize, suffixes: &[&str]) -> Vec<String> {
    let mut out = Vec::with_capacity(n);
    let mut seen = std::collections::HashSet::new();
    while out.len() < n {
        let w = format!("{}{}", stem(rng), suffixes[rng.random_range(0..suffixes.len())]);
        if seen.insert(w.clone()) {
            out.push(w);
        }
    }
    out
}

impl Vocabulary {
    fn new(rng: &mut ChaCha8Rng) -> Self {
        Vocabulary {
            nouns: unique_words(rng, 300, NOUN_SUFFIXES),
            adjectives: unique_words(rng, 120, ADJ_SUFFIXES),
            verb_stems: unique_words(rng, 150, &[""]),
            adverbs: unique_words(rng, 40, &["ement"]),
        }
    }
}

/// Zipf-like index into a list of `n` items.
struct Zipf(WeightedIndex<f64>);

impl Zipf {
    fn new(n: usize) -> Self {
        Zipf(WeightedIndex::new((0..n).map(|i| 1.0 / (i as f64 + 1.0))).expect("non-empty"))
    }
}

struct Generator {
    rng: ChaCha8Rng,
    vocab: Vocabulary,
    nouns: Zipf,
    adjectives: Zipf,
    verbs: Zipf,
    adverbs: Zipf,
}

impl Generator {
    fn push(&self, out: &mut Sentence, form: &str, lemma: &str, pos: PosTag) {
        out.push(AnnotatedToken::new(form).with_lemma(lemma).with_pos(pos));
    }

    fn pick<'a>(&mut self, items: &'a [&'a str]) -> &'a str {
        items[self.rng.random_range(0..items.len())]
    }

    fn pick_pair(&mut self, items: &'static [(&'static str, &'static str)]) -> (&'static str, &'static str) {
        items[self.rng.random_range(0..items.len())]
    }

    fn noun(&mut self, out: &mut Sentence) {
        if self.rng.random_bool(0.15) {
            let (form, lemma, _) = NOUN_VERBS[self.rng.random_range(0..NOUN_VERBS.len())];
            self.push(out, form, lemma, PosTag::NomCom);
        } else {
            let w = self.vocab.nouns[self.nouns.0.sample(&mut self.rng)].clone();
            let plural = self.rng.random_bool(0.3);
            let form = if plural { format!("{w}s") } else { w.clone() };
            self.push(out, &form, &w, PosTag::NomCom);
        }
    }

    fn adjective(&mut self, out: &mut Sentence) {
        let w = self.vocab.adjectives[self.adjectives.0.sample(&mut self.rng)].clone();
        self.push(out, &w, &w, PosTag::AdjQua);
    }

    fn verb(&mut self, out: &mut Sentence) {
        if self.rng.random_bool(0.15) {
            let (form, _, lemma) = NOUN_VERBS[self.rng.random_range(0..NOUN_VERBS.len())];
            self.push(out, form, lemma, PosTag::VerCjg);
        } else {
            let stem = self.vocab.verb_stems[self.verbs.0.sample(&mut self.rng)].clone();
            let ending = self.pick(VERB_ENDINGS);
            self.push(out, &format!("{stem}{ending}"), &format!("{stem}er"), PosTag::VerCjg);
        }
    }

    fn adverb(&mut self, out: &mut Sentence) {
        if self.rng.random_bool(0.5) {
            let a = self.pick(ADVERBS);
            self.push(out, a, a, PosTag::AdvGen);
        } else {
            let w = self.vocab.adverbs[self.adverbs.0.sample(&mut self.rng)].clone();
            self.push(out, &w, &w, PosTag::AdvGen);
        }
    }

    fn noun_phrase(&mut self, out: &mut Sentence) {
        if self.rng.random_bool(0.15) {
            let n = self.pick(NAMES);
            self.push(out, n, n, PosTag::NomPro);
            return;
        }
        let (d, l) = self.pick_pair(DETERMINERS);
        self.push(out, d, l, PosTag::DetDef);
        match self.rng.random_range(0..4) {
            0 => {
                self.adjective(out);
                self.noun(out);
            }
            1 => {
                self.noun(out);
                self.adjective(out);
            }
            _ => self.noun(out),
        }
    }

    fn verb_phrase(&mut self, out: &mut Sentence) {
        match self.rng.random_range(0..6) {
            0 => self.verb(out),
            1 | 2 => {
                self.verb(out);
                self.noun_phrase(out);
            }
            3 => {
                self.verb(out);
                let p = self.pick(PREPOSITIONS);
                self.push(out, p, p, PosTag::Pre);
                self.noun_phrase(out);
            }
            4 => {
                let (o, l) = self.pick_pair(OBJECTS);
                self.push(out, o, l, PosTag::ProPer);
                self.verb(out);
            }
            _ => {
                self.verb(out);
                self.adverb(out);
            }
        }
    }

    fn clause(&mut self, out: &mut Sentence) {
        if self.rng.random_bool(0.5) {
            let (s, l) = self.pick_pair(SUBJECTS);
            self.push(out, s, l, PosTag::ProPer);
        } else {
            self.noun_phrase(out);
        }
        self.verb_phrase(out);
    }

    fn sentence(&mut self) -> Sentence {
        let mut out = Vec::new();
        self.clause(&mut out);
        match self.rng.random_range(0..5) {
            0 => {
                let c = self.pick(COORDINATORS);
                self.push(&mut out, c, c, PosTag::ConCoo);
                self.clause(&mut out);
            }
            1 => {
                let c = self.pick(SUBORDINATORS);
                self.push(&mut out, c, c, PosTag::ConSub);
                self.clause(&mut out);
            }
            2 => {
                self.push(&mut out, ",", ",", PosTag::PonFbl);
                self.clause(&mut out);
            }
            _ => {}
        }
        let end = self.pick(&[".", ".", ".", "!", "?"]);
        self.push(&mut out, end, end, PosTag::PonFrt);
        out
    }
}

/// Whole sentences totalling at least `min_tokens` tokens, fully lemmatized and tagged.
pub fn generate_corpus(seed: u64, min_tokens: usize) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vocab = Vocabulary::new(&mut rng);
    let mut g = Generator {
        nouns: Zipf::new(vocab.nouns.len()),
        adjectives: Zipf::new(vocab.adjectives.len()),
        verbs: Zipf::new(vocab.verb_stems.len()),
        adverbs: Zipf::new(vocab.adverbs.len()),
        vocab,
        rng,
    };
    let mut corpus = Vec::new();
    let mut n = 0;
    while n < min_tokens {
        let s = g.sentence();
        n += s.len();
        corpus.push(s);
    }
    corpus
}

/// Splits sentences so the first part holds about `fraction` of the tokens.
pub fn split_at_fraction(corpus: &[Sentence], fraction: f64) -> (Corpus, Corpus) {
    let total: usize = corpus.iter().map(Vec::len).sum();
    let target = (total as f64 * fraction).round() as usize;
    let mut seen = 0;
    let mut cut = corpus.len();
    for (i, s) in corpus.iter().enumerate() {
        if seen >= target {
            cut = i;
            break;
        }
        seen += s.len();
    }
    (corpus[..cut].to_vec(), corpus[cut..].to_vec())
}

/// Header fields of a generated play.
#[derive(Debug, Clone)]
pub struct PlayHeader<'a> {
    pub id: &'a str,
    pub title: &'a str,
    pub author: &'a str,
    pub year: i32,
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders `corpus` as a TEI play, one to three sentences per speech, with
/// speaker labels and stage directions that ingestion must drop. Tokenizing the
/// speeches gives back exactly the corpus forms.
pub fn to_tei(corpus: &[Sentence], header: &PlayHeader<'_>, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <TEI xmlns=\"http://www.tei-c.org/ns/1.0\" xml:id=\"{}\">\n\
         <teiHeader><fileDesc><titleStmt><title>{}</title><author>{}</author></titleStmt>\n\
         <publicationStmt><p>Generated.</p></publicationStmt>\n\
         <sourceDesc><bibl><date when=\"{}\">{}</date></bibl></sourceDesc></fileDesc>\n\
         <profileDesc><textClass><keywords><term type=\"genre\">comédie</term></keywords></textClass></profileDesc>\n\
         </teiHeader>\n<text><body>\n<div type=\"act\" n=\"1\"><head>ACTE I</head>\n",
        escape(header.id),
        escape(header.title),
        escape(header.author),
        header.year,
        header.year
    );
    let mut i = 0;
    let mut turn = 0;
    while i < corpus.len() {
        if rng.random_bool(0.1) {
            out.push_str("<stage>Il sort un moment.</stage>\n");
        }
        let n = rng.random_range(1..=3).min(corpus.len() - i);
        let speaker = NAMES[turn % 4].to_uppercase();
        out.push_str(&format!("<sp><speaker>{speaker}</speaker>"));
        for s in &corpus[i..i + n] {
            let mut line = String::new();
            for t in s {
                let glued = matches!(t.form.as_str(), "." | "," | "!" | "?");
                if !line.is_empty() && !glued {
                    line.push(' ');
                }
                line.push_str(&t.form);
            }
            out.push_str(&format!("<p>{}</p>", escape(&line)));
        }
        out.push_str("</sp>\n");
        i += n;
        turn += 1;
    }
    out.push_str("</div>\n</body></text>\n</TEI>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn deterministic_and_uses_all_tags() {
        let a = generate_corpus(7, 2000);
        assert_eq!(a, generate_corpus(7, 2000));
        assert_ne!(a, generate_corpus(8, 2000));
        let n: usize = a.iter().map(Vec::len).sum();
        assert!(n >= 2000 && n < 2100);
        let tags: BTreeSet<PosTag> = a.iter().flatten().filter_map(|t| t.pos).collect();
        assert_eq!(tags, TAGS.into_iter().collect());
    }

    #[test]
    fn tei_round_trips_through_ingestion() {
        use crate::ingest::{parse_play, NormalizationPolicy};
        let c = generate_corpus(3, 600);
        let header = PlayHeader {
            id: "essai",
            title: "Essai",
            author: "Anonyme",
            year: 1667,
        };
        let play = parse_play(&to_tei(&c, &header, 3)).unwrap();
        assert_eq!(play.id, "essai");
        assert_eq!(play.metadata.century, Some(17));
        let forms: Vec<String> = play.tokens(&NormalizationPolicy::default()).into_iter().map(|t| t.text).collect();
        let want: Vec<String> = c.iter().flatten().map(|t| t.form.clone()).collect();
        assert_eq!(forms, want);
    }

    #[test]
    fn split_keeps_sentences_whole() {
        let c = generate_corpus(1, 1000);
        let (a, b) = split_at_fraction(&c, 0.8);
        assert_eq!(a.len() + b.len(), c.len());
        let n: usize = a.iter().map(Vec::len).sum();
        assert!((800..830).contains(&n));
    }
}
