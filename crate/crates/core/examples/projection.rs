//! Projects lexicon morphology onto POS-tagged tokens and reports which path
//! each token took.
//!
//! cargo run --example projection [LEXICON.tsv]

use std::path::PathBuf;

use classica::annotate::Projector;
use classica::lexicon::load_lexicon;
use classica::{AnnotatedToken, PosTag};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/toy_lexicon.tsv"));
    let lexicon = load_lexicon(&path)?.with_names(["Dorante".to_string()]);
    let projector = Projector::new(&lexicon);
    let sentence = [
        ("Dorante", PosTag::NomPro),
        ("ferme", PosTag::VerCjg),
        ("la", PosTag::DetDef),
        ("porte", PosTag::NomCom),
        ("du", PosTag::PreDetDef),
        ("jardin", PosTag::NomCom),
        ("et", PosTag::ConCoo),
        ("chante", PosTag::VerCjg),
        (",", PosTag::PonFbl),
        ("hélas", PosTag::Inj),
        ("!", PosTag::PonFrt),
    ];
    for (form, pos) in sentence {
        let token = AnnotatedToken::new(form).with_pos(pos);
        let (morph, how) = projector.project_token(&token);
        println!("{form:<8} {pos:<10} {:<36} {how:?}", morph.to_string());
    }
    Ok(())
}
