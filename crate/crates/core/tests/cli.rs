use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_classica"))
        .args(args)
        .env_remove("CLASSICA_MODELS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited")
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["eval", "--task", "pos"])), 1);
    // models default to $CLASSICA_MODELS, which is unset here
    assert_eq!(code(&run(&["tag", "--in", "x.txt"])), 1);
}

#[test]
fn data_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tsv");
    std::fs::write(&bad, "form\tlemma\tPOS\tmorph\nle\tle\tNOPE\t_\n").unwrap();
    let out = run(&["normalize", "--in", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("NOPE"));

    let missing = dir.path().join("missing.tsv");
    assert_eq!(code(&run(&["normalize", "--in", missing.to_str().unwrap()])), 2);

    let broken = dir.path().join("broken.xml");
    std::fs::write(&broken, "<TEI><sp><l>Bonjour</sp></TEI>").unwrap();
    let out_dir = dir.path().join("out");
    assert_eq!(code(&run(&["ingest", broken.to_str().unwrap(), "--out-dir", out_dir.to_str().unwrap()])), 2);
}

#[test]
fn refuses_to_overwrite_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.tsv");
    let text = "form\tlemma\tPOS\tmorph\nla\tla\tDETdef\t_\n";
    std::fs::write(&input, text).unwrap();
    let p = input.to_str().unwrap();
    assert_eq!(code(&run(&["normalize", "--in", p, "--out", p])), 1);
    assert_eq!(std::fs::read_to_string(&input).unwrap(), text);
}

#[test]
fn normalize_and_project() {
    let out = run(&["normalize", "--in", fixture("projection_input.tsv").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("form\tlemma\tPOS\tmorph\n"));
    assert!(text.contains("la\tle\tDETdef\t_"));

    let out = run(&[
        "project",
        "--lexicon",
        fixture("toy_lexicon.tsv").to_str().unwrap(),
        "--names",
        fixture("toy_names.txt").to_str().unwrap(),
        "--in",
        fixture("projection_input.tsv").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let want = std::fs::read_to_string(fixture("projection_expected.tsv")).unwrap();
    let got = String::from_utf8(out.stdout).unwrap();
    let morphs = |s: &str| s.lines().map(|l| l.rsplit('\t').next().unwrap_or("").to_string()).collect::<Vec<_>>();
    assert_eq!(morphs(&got), morphs(&want));
}

#[test]
fn sample_rejects_short_plays() {
    let dir = tempfile::tempdir().unwrap();
    let short = dir.path().join("court.tokens");
    std::fs::write(&short, "Bonjour\n.\n").unwrap();
    let out = run(&["sample", short.to_str().unwrap(), "--out-dir", dir.path().join("s").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("court"));
}

#[test]
fn confusions_match_listing() {
    let out = run(&[
        "confusions",
        "--task",
        "lemma",
        "--gold",
        fixture("confusion_gold.tsv").to_str().unwrap(),
        "--pred",
        fixture("confusion_pred.tsv").to_str().unwrap(),
        "--top",
        "14",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        std::fs::read_to_string(fixture("confusion_expected.tsv")).unwrap()
    );
}

fn write_samples(dir: &Path, size_of: impl Fn(&str) -> usize) -> Vec<String> {
    let meta = std::fs::read_to_string(fixture("balance_metadata.csv")).unwrap();
    let mut paths = Vec::new();
    for line in meta.lines().skip(1) {
        let id = line.split(',').next().unwrap();
        let path = dir.join(format!("{id}.tokens"));
        std::fs::write(&path, "mot\n".repeat(size_of(id))).unwrap();
        paths.push(path.to_str().unwrap().to_string());
    }
    paths
}

#[test]
fn validate_balance_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let meta = fixture("balance_metadata.csv");
    let mut args = vec!["validate-balance".to_string(), "--metadata".into(), meta.to_str().unwrap().into()];
    args.extend(write_samples(dir.path(), |_| 100));
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = run(&argv);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("no violations"));

    let bad = tempfile::tempdir().unwrap();
    let mut args = vec![
        "validate-balance".to_string(),
        "--json".into(),
        "--metadata".into(),
        meta.to_str().unwrap().into(),
    ];
    args.extend(write_samples(bad.path(), |id| if id == "s18_4" { 40 } else { 100 }));
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = run(&argv);
    assert_eq!(code(&out), 2);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let violations = report["violations"].as_array().unwrap();
    assert_eq!(violations.len(), 1);
    assert_eq!(violations[0]["rule"], "sample_size");
    assert_eq!(violations[0]["sample"], "s18_4");
}
