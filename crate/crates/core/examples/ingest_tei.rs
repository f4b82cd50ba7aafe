//! Extracts character speech from a TEI play, normalizes and tokenizes it.
//!
//! cargo run --example ingest_tei [PLAY.xml]

use classica::ingest::{parse_play, segment_sentences, NormalizationPolicy};

const DEMO: &str = r#"<TEI xmlns="http://www.tei-c.org/ns/1.0" xml:id="demo">
<teiHeader><fileDesc><titleStmt><title>Le Misanthrope</title><author>Molière</author></titleStmt>
<sourceDesc><bibl><date when="1666"/></bibl></sourceDesc></fileDesc></teiHeader>
<text><body><div type="act"><head>ACTE I</head>
<stage>Philinte, Alceste.</stage>
<sp><speaker>PHILINTE</speaker><l>Qu'est-ce donc ? Qu'avez-vous ?</l></sp>
<sp><speaker>ALCESTE</speaker><l>Laissez-moi, je vous prie.</l></sp>
<sp><speaker>PHILINTE</speaker><l>Mais encor, dites-moi, quelle bizarrerie...</l></sp>
</div></body></text></TEI>"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEMO.to_string(),
    };
    let play = parse_play(&text)?;
    let m = &play.metadata;
    println!("{}: {} ({:?}), century {:?}", play.id, m.title, m.date, m.century);
    println!("{} speeches", play.speeches.len());

    let tokens = play.tokens(&NormalizationPolicy::default());
    println!("{} tokens", tokens.len());
    for sentence in segment_sentences(tokens, |t| t.text.as_str()).iter().take(5) {
        let forms: Vec<&str> = sentence.iter().map(|t| t.text.as_str()).collect();
        println!("  {}", forms.join(" | "));
    }
    Ok(())
}
