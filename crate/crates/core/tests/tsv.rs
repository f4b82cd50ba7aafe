use classica::interface::tsv::{corpus_to_string, parse_corpus, TsvError};
use classica::synthetic::generate_corpus;
use classica::tagset::{Morph, MorphBundle};
use classica::corpus::token_count;

#[test]
fn thousand_tokens_round_trip() {
    let mut corpus = generate_corpus(77, 1000);
    assert!(token_count(&corpus) >= 1000);
    // vary the optional layers
    for (i, t) in corpus.iter_mut().flatten().enumerate() {
        match i % 7 {
            0 => t.lemma = None,
            1 => t.morph = Morph::Unknown,
            2 => t.morph = Morph::Bundle(MorphBundle::Invariable),
            3 => t.morph = Morph::parse("MODE=ind|TEMPS=pst|PERS.=3|NOMB.=s").unwrap(),
            4 => t.pos = None,
            _ => {}
        }
    }
    let text = corpus_to_string(&corpus);
    assert_eq!(parse_corpus(&text).unwrap(), corpus);
    assert_eq!(corpus_to_string(&parse_corpus(&text).unwrap()), text);
    let crlf = text.replace('\n', "\r\n");
    assert_eq!(parse_corpus(&crlf).unwrap(), corpus);
}

#[test]
fn malformed_input_is_located() {
    match parse_corpus("form\tlemma\tPOS\tmorph\nla\tle\tDETdef\n") {
        Err(TsvError::Columns { line, found }) => assert_eq!((line, found), (2, 3)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_corpus("la\tle\tDETdef\t_\n"), Err(TsvError::MissingHeader { .. })));
    assert!(matches!(
        parse_corpus("form\tlemma\tPOS\tmorph\nla\tle\tDETdef\tGENRE=q\n"),
        Err(TsvError::Field { line: 2, .. })
    ));
}
