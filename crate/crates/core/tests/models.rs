use classica::models::{train_lemmatizer, train_tagger, LemmatizerModel, TaggerModel, TrainConfig};
use classica::synthetic::{generate_corpus, split_at_fraction};
use classica::Sentence;

fn data() -> (Vec<Sentence>, Vec<Sentence>, Vec<Sentence>) {
    let corpus = generate_corpus(21, 2500);
    let (train, rest) = split_at_fraction(&corpus, 0.8);
    let (dev, test) = split_at_fraction(&rest, 0.5);
    (train, dev, test)
}

#[test]
fn tagger_survives_save_and_load() {
    let (train, dev, test) = data();
    let config = TrainConfig {
        restarts: 2,
        aux: true,
        ..TrainConfig::default()
    };
    let model = train_tagger(&train, &dev, &config).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tagger.json");
    model.save(&path).unwrap();
    let loaded = TaggerModel::load(&path).unwrap();
    assert_eq!(loaded.to_json(), model.to_json());
    for s in &test {
        let forms: Vec<&str> = s.iter().map(|t| t.form.as_str()).collect();
        assert_eq!(loaded.tag(&forms), model.tag(&forms));
    }
    assert_eq!(loaded.runs.len(), 2);
}

#[test]
fn tagger_without_dev_runs_fixed_epochs() {
    let (train, _, _) = data();
    let config = TrainConfig {
        restarts: 1,
        epochs: 4,
        ..TrainConfig::default()
    };
    let model = train_tagger(&train, &[], &config).unwrap();
    assert!(!model.runs[0].stopped_early);
}

#[test]
fn lemmatizer_survives_save_and_load() {
    let (train, _, test) = data();
    let model = train_lemmatizer(&train, &Default::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lemmatizer.json");
    model.save(&path).unwrap();
    let loaded = LemmatizerModel::load(&path).unwrap();
    assert_eq!(loaded.to_json(), model.to_json());
    for t in test.iter().flatten() {
        let pos = t.pos.unwrap();
        assert_eq!(loaded.lemmatize(&t.form, pos), model.lemmatize(&t.form, pos));
    }
}

#[test]
fn load_rejects_foreign_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    std::fs::write(&path, b"{\"format\":\"something-else\",\"version\":1}").unwrap();
    assert!(TaggerModel::load(&path).is_err());
    assert!(LemmatizerModel::load(&path).is_err());
    assert!(TaggerModel::load(dir.path().join("missing.json")).is_err());
}
