//! Applies the built-in lemma normalization rules, or a rule file given on
//! the command line.

use classica::annotate::RuleSet;
use classica::{AnnotatedToken, PosTag};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let loaded;
    let rules = match std::env::args().nth(1) {
        Some(path) => {
            loaded = RuleSet::load(path)?;
            &loaded
        }
        None => RuleSet::default_rules(),
    };
    let tokens = [
        ("baronne", "baronne", PosTag::NomCom),
        ("elles", "elle", PosTag::ProPer),
        ("aux", "à", PosTag::PreDetDef),
        ("des", "de", PosTag::PreDetDef),
        ("des", "de", PosTag::DetNdf),
        ("celui", "il", PosTag::ProDem),
        ("mienne", "mienne", PosTag::ProPos),
        ("hôtesse", "hôtesse", PosTag::NomCom),
        ("vers", "ver", PosTag::Pre),
    ];
    for (form, lemma, pos) in tokens {
        let t = AnnotatedToken::new(form).with_lemma(lemma).with_pos(pos);
        let rule = rules.find(&t).map_or("-", |r| r.rule_id.as_str());
        let out = rules.apply(&t);
        println!("{form:<8} {pos:<10} {lemma:<8} -> {:<8} [{rule}]", out.lemma.unwrap_or_default());
    }
    Ok(())
}
