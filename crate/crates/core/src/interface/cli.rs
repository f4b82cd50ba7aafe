//! Command-line dispatcher. Exit status 0 on success, 1 on usage errors,
//! 2 on data errors; diagnostics go to stderr.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::pipeline::Annotator;
use super::service::{self, DEFAULT_BODY_LIMIT};
use super::tsv::{corpus_to_string, looks_like_tsv, parse_corpus, parse_tokens_or_tsv, token_lines};
use crate::annotate::{Projector, RuleSet};
use crate::corpus::{token_count, AnnotatedToken, Corpus, Sentence, Task};
use crate::eval::{
    accuracy_report, classify_tokens, confusion_matrix, delta_report, grouped_report, render_confusions,
    EvalSample, GroupAxis, GroupedReport,
};
use crate::ingest::{
    parse_play, read_metadata_csv, segment_sentences, write_metadata_csv, MetadataTable, NormalizationPolicy,
};
use crate::lexicon::{load_lexicon, load_names, Lexicon};
use crate::models::{train_lemmatizer, train_tagger, LemmatizerModel, TaggerModel, TrainConfig};
use crate::sampling::{three_tier_split, validate_balance, BalanceConfig, BalanceReport, BalanceSample, TierSizes};

pub const MODELS_ENV: &str = "CLASSICA_MODELS";
pub const TAGGER_FILE: &str = "tagger.json";
pub const LEMMATIZER_FILE: &str = "lemmatizer.json";

#[derive(Debug, Parser)]
#[command(name = "classica", version, about = "Corpus building, tagging and evaluation for classical French")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract character speech from TEI plays and tokenize it.
    Ingest(IngestArgs),
    /// Cut each play into train, dev and test tiers.
    Sample(SampleArgs),
    /// Fill the morph column from a lexicon.
    Project(ProjectArgs),
    /// Apply lemma normalization rules.
    Normalize(NormalizeArgs),
    /// Train the POS tagger.
    TrainTagger(TrainTaggerArgs),
    /// Train the lemmatizer.
    TrainLemmatizer(TrainLemmatizerArgs),
    /// Annotate plain text or a TSV with the trained models.
    Tag(TagArgs),
    /// Fill the lemma column of a POS-tagged TSV.
    Lemmatize(LemmatizeArgs),
    /// Score predictions against gold annotations.
    Eval(EvalArgs),
    /// List the most frequent errors.
    Confusions(ConfusionArgs),
    /// Check the composition of an out-of-domain sample set.
    ValidateBalance(BalanceArgs),
    /// Run the HTTP annotation service.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TokenFormat {
    Tokens,
    Tsv,
}

#[derive(Debug, Args)]
struct IngestArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    out_dir: PathBuf,
    /// Write the metadata found in the TEI headers to this CSV.
    #[arg(long)]
    metadata_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "tokens")]
    format: TokenFormat,
    #[arg(long)]
    no_ligatures: bool,
    #[arg(long)]
    keep_apostrophes: bool,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    metadata: Option<PathBuf>,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, default_value_t = 2000)]
    train_size: usize,
    #[arg(long, default_value_t = 100)]
    dev_size: usize,
    #[arg(long, default_value_t = 100)]
    test_size: usize,
}

#[derive(Debug, Args)]
struct ProjectArgs {
    #[arg(long)]
    lexicon: PathBuf,
    #[arg(long)]
    names: Option<PathBuf>,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Do not retry lookups in lowercase.
    #[arg(long)]
    exact_case: bool,
}

#[derive(Debug, Args)]
struct NormalizeArgs {
    /// Rule file; the built-in rules otherwise.
    #[arg(long)]
    rules: Option<PathBuf>,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TrainTaggerArgs {
    #[arg(long, required = true, num_args = 1..)]
    train: Vec<PathBuf>,
    #[arg(long, num_args = 1..)]
    dev: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    epochs: usize,
    #[arg(long, default_value_t = 6)]
    patience: usize,
    #[arg(long, default_value_t = 0.001)]
    threshold: f64,
    #[arg(long, default_value_t = 5)]
    restarts: usize,
    /// Also train per-feature morphology classifiers.
    #[arg(long)]
    aux: bool,
}

#[derive(Debug, Args)]
struct TrainLemmatizerArgs {
    #[arg(long, required = true, num_args = 1..)]
    train: Vec<PathBuf>,
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long)]
    names: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Tagger model; defaults to tagger.json in $CLASSICA_MODELS.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Lemmatizer model; defaults to lemmatizer.json in $CLASSICA_MODELS when present.
    #[arg(long)]
    lemmatizer: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TagArgs {
    #[command(flatten)]
    models: ModelArgs,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LemmatizeArgs {
    /// Lemmatizer model; defaults to lemmatizer.json in $CLASSICA_MODELS.
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Jsonl,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, value_parser = parse_task)]
    task: Task,
    #[arg(long, required = true, num_args = 1..)]
    train: Vec<PathBuf>,
    #[arg(long, required = true, num_args = 1..)]
    gold: Vec<PathBuf>,
    #[arg(long, required = true, num_args = 1..)]
    pred: Vec<PathBuf>,
    /// Predictions of a reference system; reports the improvement over it.
    #[arg(long, num_args = 1..)]
    baseline: Vec<PathBuf>,
    #[arg(long)]
    metadata: Option<PathBuf>,
    /// Comma-separated axes: century, channel. The first one spans the columns.
    #[arg(long, value_delimiter = ',')]
    group: Vec<GroupAxis>,
    #[arg(long)]
    confusions: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ConfusionArgs {
    #[arg(long, value_parser = parse_task)]
    task: Task,
    #[arg(long, required = true, num_args = 1..)]
    gold: Vec<PathBuf>,
    #[arg(long, required = true, num_args = 1..)]
    pred: Vec<PathBuf>,
    #[arg(long, default_value_t = 10)]
    top: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BalanceArgs {
    #[arg(long)]
    metadata: PathBuf,
    /// Sample files (TSV or one token per line), named after their metadata id.
    #[arg(required = true)]
    samples: Vec<PathBuf>,
    #[arg(long, default_value_t = 0.25)]
    tau_gender: f64,
    #[arg(long, default_value_t = 0.25)]
    tau_size: f64,
    #[arg(long, default_value_t = 10)]
    samples_per_channel: usize,
    #[arg(long, default_value_t = 100)]
    sample_tokens: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ServeArgs {
    #[command(flatten)]
    models: ModelArgs,
    #[arg(long, default_value = "127.0.0.1:8080")]
    bind: SocketAddr,
    #[arg(long, default_value_t = DEFAULT_BODY_LIMIT)]
    max_body: usize,
}

fn parse_task(s: &str) -> Result<Task, String> {
    s.parse::<Task>().map_err(|e| e.to_string())
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Data(e.to_string())
    }
}

type Outcome = Result<(), CliError>;

/// Runs the command line `args` (program name first) and returns the exit status.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Ingest(a) => ingest(a),
        Command::Sample(a) => sample(a),
        Command::Project(a) => project(a),
        Command::Normalize(a) => normalize(a),
        Command::TrainTagger(a) => train_tagger_cmd(a),
        Command::TrainLemmatizer(a) => train_lemmatizer_cmd(a),
        Command::Tag(a) => tag(a),
        Command::Lemmatize(a) => lemmatize(a),
        Command::Eval(a) => eval(a),
        Command::Confusions(a) => confusions(a),
        Command::ValidateBalance(a) => balance(a),
        Command::Serve(a) => serve(a),
    }
}

// ---------------------------------------------------------------------------
// helpers

fn read_text(path: &Path) -> Result<String, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    String::from_utf8(bytes).map_err(|_| CliError::Data(format!("{}: not valid UTF-8", path.display())))
}

fn read_tsv(path: &Path) -> Result<Corpus, CliError> {
    parse_corpus(&read_text(path)?).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn read_tsvs(paths: &[PathBuf]) -> Result<Corpus, CliError> {
    let mut corpus = Vec::new();
    for p in paths {
        corpus.extend(read_tsv(p)?);
    }
    Ok(corpus)
}

fn write_text(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (a.canonicalize(), b.canonicalize()) {
        (Ok(x), Ok(y)) => x == y,
        _ => a == b,
    }
}

/// Writes to `out`, or stdout when absent. Refuses to overwrite an input.
fn emit(out: Option<&Path>, inputs: &[&Path], text: &str) -> Outcome {
    match out {
        Some(path) => {
            if inputs.iter().any(|i| same_file(i, path)) {
                return Err(CliError::Usage(format!(
                    "output {} would overwrite an input file",
                    path.display()
                )));
            }
            write_text(path, text)
        }
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn create_dir(path: &Path) -> Outcome {
    std::fs::create_dir_all(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// File name up to its first dot: `tartuffe.test.tsv` → `tartuffe`.
fn play_id(path: &Path) -> String {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    name.split('.').next().unwrap_or_default().to_string()
}

/// File name without its final `.tsv` or `.tokens` extension.
fn sample_id(path: &Path) -> String {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    for ext in [".tsv", ".tokens", ".txt"] {
        if let Some(stem) = name.strip_suffix(ext) {
            return stem.to_string();
        }
    }
    name
}

fn model_path(flag: Option<&PathBuf>, file: &str) -> Option<PathBuf> {
    flag.cloned()
        .or_else(|| std::env::var_os(MODELS_ENV).map(|dir| PathBuf::from(dir).join(file)))
}

fn output_model_path(flag: Option<&PathBuf>, file: &str) -> Result<PathBuf, CliError> {
    model_path(flag, file)
        .ok_or_else(|| CliError::Usage(format!("--out is required when {MODELS_ENV} is not set")))
}

fn load_metadata(path: &Path) -> Result<MetadataTable, CliError> {
    let file = std::fs::File::open(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    read_metadata_csv(file).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn load_lexicon_with_names(lexicon: Option<&PathBuf>, names: Option<&PathBuf>) -> Result<Lexicon, CliError> {
    let mut lex = match lexicon {
        Some(p) => load_lexicon(p)?,
        None => Lexicon::default(),
    };
    if let Some(n) = names {
        lex = lex.with_names(load_names(n)?);
    }
    Ok(lex)
}

fn load_annotator(models: &ModelArgs) -> Result<Annotator, CliError> {
    let tagger_path = model_path(models.model.as_ref(), TAGGER_FILE)
        .ok_or_else(|| CliError::Usage(format!("--model is required when {MODELS_ENV} is not set")))?;
    let tagger = TaggerModel::load(&tagger_path)?;
    let lemmatizer = match &models.lemmatizer {
        Some(p) => Some(LemmatizerModel::load(p)?),
        None => match model_path(None, LEMMATIZER_FILE) {
            Some(p) if p.exists() => Some(LemmatizerModel::load(&p)?),
            _ => None,
        },
    };
    Ok(Annotator::new(tagger, lemmatizer))
}

// ---------------------------------------------------------------------------
// commands

fn ingest(a: IngestArgs) -> Outcome {
    let policy = NormalizationPolicy {
        compose_ligatures: !a.no_ligatures,
        unify_apostrophes: !a.keep_apostrophes,
        ..NormalizationPolicy::default()
    };
    create_dir(&a.out_dir)?;
    let mut metadata = MetadataTable::new();
    for input in &a.inputs {
        let text = read_text(input)?;
        let play = parse_play(&text).map_err(|e| CliError::Data(format!("{}: {e}", input.display())))?;
        let tokens = play.tokens(&policy);
        let corpus: Corpus = segment_sentences(tokens, |t| t.text.as_str())
            .into_iter()
            .map(|s| s.into_iter().map(|t| AnnotatedToken::new(t.text)).collect())
            .collect();
        let (ext, body) = match a.format {
            TokenFormat::Tokens => ("tokens", token_lines(&corpus)),
            TokenFormat::Tsv => ("tsv", corpus_to_string(&corpus)),
        };
        let out = a.out_dir.join(format!("{}.{ext}", play.id));
        if same_file(input, &out) {
            return Err(CliError::Usage(format!("{} would overwrite its input", out.display())));
        }
        write_text(&out, &body)?;
        log::info!("{}: {} tokens -> {}", input.display(), token_count(&corpus), out.display());
        if metadata.insert(play.id.clone(), play.metadata).is_some() {
            return Err(CliError::Data(format!("two inputs share the play id {}", play.id)));
        }
    }
    if let Some(path) = &a.metadata_out {
        let mut buf = Vec::new();
        write_metadata_csv(&metadata, &mut buf)?;
        write_text(path, &String::from_utf8(buf).expect("csv writer emits utf-8"))?;
    }
    Ok(())
}

/// Splits a token range back into the sentences it overlaps.
fn regroup(tokens: &[(usize, &AnnotatedToken)]) -> Corpus {
    let mut out: Corpus = Vec::new();
    let mut last = None;
    for &(sid, tok) in tokens {
        if last != Some(sid) {
            out.push(Vec::new());
            last = Some(sid);
        }
        out.last_mut().expect("pushed above").push(tok.clone());
    }
    out
}

fn sample(a: SampleArgs) -> Outcome {
    let metadata = a.metadata.as_deref().map(load_metadata).transpose()?;
    let sizes = TierSizes {
        train: a.train_size,
        dev: a.dev_size,
        test: a.test_size,
    };
    create_dir(&a.out_dir)?;
    for input in &a.inputs {
        let id = play_id(input);
        if let Some(m) = &metadata {
            if !m.contains_key(&id) {
                return Err(CliError::Data(format!("{}: play {id} is not in the metadata", input.display())));
            }
        }
        let corpus = parse_tokens_or_tsv(&read_text(input)?)
            .map_err(|e| CliError::Data(format!("{}: {e}", input.display())))?;
        let flat: Vec<(usize, &AnnotatedToken)> = corpus
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |t| (i, t)))
            .collect();
        let tiers = three_tier_split(flat.len(), sizes).map_err(|e| CliError::Data(format!("{id}: {e}")))?;
        let (train, dev, test) = tiers.slice(&flat);
        for (tier, tokens) in [("train", train), ("dev", dev), ("test", test)] {
            let out = a.out_dir.join(format!("{id}.{tier}.tsv"));
            if same_file(input, &out) {
                return Err(CliError::Usage(format!("{} would overwrite its input", out.display())));
            }
            write_text(&out, &corpus_to_string(&regroup(tokens)))?;
        }
        log::info!("{id}: {tiers:?}");
    }
    Ok(())
}

fn project(a: ProjectArgs) -> Outcome {
    let lexicon = load_lexicon_with_names(Some(&a.lexicon), a.names.as_ref())?;
    let corpus = read_tsv(&a.input)?;
    let mut projector = Projector::new(&lexicon);
    projector.fallback_lowercase = !a.exact_case;
    let mut paths: BTreeMap<String, usize> = BTreeMap::new();
    let projected: Corpus = corpus
        .iter()
        .map(|s| {
            s.iter()
                .map(|t| {
                    let (morph, path) = projector.project_token(t);
                    *paths.entry(format!("{path:?}")).or_default() += 1;
                    t.clone().with_morph(morph)
                })
                .collect()
        })
        .collect();
    for (path, n) in &paths {
        log::info!("{path}: {n}");
    }
    emit(a.out.as_deref(), &[&a.input], &corpus_to_string(&projected))
}

fn normalize(a: NormalizeArgs) -> Outcome {
    let loaded;
    let rules = match &a.rules {
        Some(p) => {
            loaded = RuleSet::load(p)?;
            &loaded
        }
        None => RuleSet::default_rules(),
    };
    let corpus = read_tsv(&a.input)?;
    let out: Corpus = corpus
        .iter()
        .map(|s| s.iter().map(|t| rules.apply(t)).collect())
        .collect();
    let mut inputs: Vec<&Path> = vec![&a.input];
    if let Some(r) = &a.rules {
        inputs.push(r);
    }
    emit(a.out.as_deref(), &inputs, &corpus_to_string(&out))
}

fn train_tagger_cmd(a: TrainTaggerArgs) -> Outcome {
    let out = output_model_path(a.out.as_ref(), TAGGER_FILE)?;
    let train = read_tsvs(&a.train)?;
    let dev = read_tsvs(&a.dev)?;
    let config = TrainConfig {
        seed: a.seed,
        epochs: a.epochs,
        patience: a.patience,
        threshold: a.threshold,
        restarts: a.restarts,
        aux: a.aux,
    };
    let model = train_tagger(&train, &dev, &config)?;
    let run = &model.runs[model.selected_run];
    eprintln!(
        "selected restart {} (seed {}): epoch {}, score {:.4}",
        model.selected_run, run.seed, run.best_epoch, run.selection_score
    );
    model.save(&out)?;
    Ok(())
}

fn train_lemmatizer_cmd(a: TrainLemmatizerArgs) -> Outcome {
    let out = output_model_path(a.out.as_ref(), LEMMATIZER_FILE)?;
    let lexicon = load_lexicon_with_names(a.lexicon.as_ref(), a.names.as_ref())?;
    let train = read_tsvs(&a.train)?;
    let model = train_lemmatizer(&train, &lexicon)?;
    eprintln!("{} suffix rules", model.rules().len());
    model.save(&out)?;
    Ok(())
}

fn tag(a: TagArgs) -> Outcome {
    let annotator = load_annotator(&a.models)?;
    let text = read_text(&a.input)?;
    let tsv = if looks_like_tsv(&text) {
        let corpus = parse_corpus(&text).map_err(|e| CliError::Data(format!("{}: {e}", a.input.display())))?;
        corpus_to_string(&annotator.annotate_corpus(&corpus))
    } else {
        annotator.text_to_tsv(&text)
    };
    emit(a.out.as_deref(), &[&a.input], &tsv)
}

fn lemmatize(a: LemmatizeArgs) -> Outcome {
    let path = model_path(a.model.as_ref(), LEMMATIZER_FILE)
        .ok_or_else(|| CliError::Usage(format!("--model is required when {MODELS_ENV} is not set")))?;
    let model = LemmatizerModel::load(&path)?;
    let corpus = read_tsv(&a.input)?;
    let mut out: Corpus = Vec::with_capacity(corpus.len());
    for (s, sentence) in corpus.iter().enumerate() {
        let mut lemmatized: Sentence = Vec::with_capacity(sentence.len());
        for (t, token) in sentence.iter().enumerate() {
            let pos = token.pos.ok_or_else(|| {
                CliError::Data(format!(
                    "{}: sentence {}, token {} ({:?}) has no POS tag",
                    a.input.display(),
                    s + 1,
                    t + 1,
                    token.form
                ))
            })?;
            lemmatized.push(token.clone().with_lemma(model.lemmatize(&token.form, pos)));
        }
        out.push(lemmatized);
    }
    emit(a.out.as_deref(), &[&a.input], &corpus_to_string(&out))
}

fn eval(a: EvalArgs) -> Outcome {
    if a.gold.len() != a.pred.len() {
        return Err(CliError::Usage(format!(
            "{} gold files but {} prediction files",
            a.gold.len(),
            a.pred.len()
        )));
    }
    if !a.baseline.is_empty() && a.baseline.len() != a.gold.len() {
        return Err(CliError::Usage("--baseline needs one file per gold file".to_string()));
    }
    if !a.group.is_empty() && a.metadata.is_none() {
        return Err(CliError::Usage("--group needs --metadata".to_string()));
    }
    let train = read_tsvs(&a.train)?;
    let golds: Vec<Corpus> = a.gold.iter().map(|p| read_tsv(p)).collect::<Result<_, _>>()?;
    let preds: Vec<Corpus> = a.pred.iter().map(|p| read_tsv(p)).collect::<Result<_, _>>()?;
    let bases: Vec<Corpus> = a.baseline.iter().map(|p| read_tsv(p)).collect::<Result<_, _>>()?;
    let gold: Corpus = golds.concat();
    let pred: Corpus = preds.concat();
    let classes = classify_tokens(&train, &gold, a.task)?;
    let report = accuracy_report(&gold, &pred, &classes, a.task)?;

    let mut out = String::new();
    match a.format {
        ReportFormat::Text => out.push_str(&report.to_string()),
        ReportFormat::Jsonl => out.push_str(&report.json_lines()),
    }
    if !bases.is_empty() {
        let base = accuracy_report(&gold, &bases.concat(), &classes, a.task)?;
        let delta = delta_report(&GroupedReport::from(&base), &GroupedReport::from(&report))?;
        out.push_str(&section(a.format, &delta.to_string(), &delta.json_lines()));
    }
    if let Some(meta_path) = &a.metadata {
        if !a.group.is_empty() {
            let metadata = load_metadata(meta_path)?;
            let ids: Vec<String> = a.gold.iter().map(|p| sample_id(p)).collect();
            let build = |preds: &[Corpus]| {
                let samples: Vec<EvalSample<'_>> = (0..preds.len())
                    .map(|i| EvalSample {
                        id: &ids[i],
                        gold: &golds[i],
                        pred: &preds[i],
                    })
                    .collect();
                grouped_report(&samples, &metadata, a.task, &a.group)
            };
            let grid = build(&preds)?;
            out.push_str(&section(a.format, &grid.to_string(), &grid.json_lines()));
            if !bases.is_empty() {
                let delta = delta_report(&build(&bases)?, &grid)?;
                out.push_str(&section(a.format, &delta.to_string(), &delta.json_lines()));
            }
        }
    }
    if let Some(k) = a.confusions {
        let entries = confusion_matrix(&gold, &pred, a.task, k)?;
        let json: String = entries
            .iter()
            .map(|e| serde_json::to_string(e).expect("entries serialize") + "\n")
            .collect();
        out.push_str(&section(a.format, &render_confusions(&entries), &json));
    }
    let inputs: Vec<&Path> = a.gold.iter().chain(&a.pred).chain(&a.train).map(PathBuf::as_path).collect();
    emit(a.out.as_deref(), &inputs, &out)
}

fn section(format: ReportFormat, text: &str, jsonl: &str) -> String {
    match format {
        ReportFormat::Text => format!("\n{text}"),
        ReportFormat::Jsonl => jsonl.to_string(),
    }
}

fn confusions(a: ConfusionArgs) -> Outcome {
    if a.gold.len() != a.pred.len() {
        return Err(CliError::Usage("one prediction file per gold file is required".to_string()));
    }
    let gold = read_tsvs(&a.gold)?;
    let pred = read_tsvs(&a.pred)?;
    let entries = confusion_matrix(&gold, &pred, a.task, a.top)?;
    let inputs: Vec<&Path> = a.gold.iter().chain(&a.pred).map(PathBuf::as_path).collect();
    emit(a.out.as_deref(), &inputs, &render_confusions(&entries))
}

fn render_balance(report: &BalanceReport) -> String {
    let mut out = String::from("century\ttheatre\tother\tmale tokens\tfemale tokens\tunknown tokens\n");
    for (century, counts) in &report.samples_by_century {
        let g = report.tokens_by_gender.get(century).cloned().unwrap_or_default();
        let _ = writeln!(
            out,
            "{century}\t{}\t{}\t{}\t{}\t{}",
            counts.theatre, counts.other, g.male, g.female, g.unknown
        );
    }
    out.push('\n');
    if report.is_balanced() {
        out.push_str("no violations\n");
    } else {
        out.push_str("rule\tcentury\tsample\tobserved\texpected\ttolerance\n");
        for v in &report.violations {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                v.rule,
                v.century,
                v.sample.as_deref().unwrap_or("-"),
                v.observed,
                v.expected,
                v.tolerance.map_or("-".to_string(), |t| t.to_string())
            );
        }
    }
    out
}

fn balance(a: BalanceArgs) -> Outcome {
    let metadata = load_metadata(&a.metadata)?;
    let mut counted = Vec::new();
    for path in &a.samples {
        let id = sample_id(path);
        let corpus = parse_tokens_or_tsv(&read_text(path)?)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        let meta = metadata
            .get(&id)
            .or_else(|| metadata.get(&play_id(path)))
            .ok_or_else(|| CliError::Data(format!("{}: sample {id} is not in the metadata", path.display())))?;
        counted.push((id, meta, token_count(&corpus)));
    }
    let samples: Vec<BalanceSample<'_>> = counted
        .iter()
        .map(|(id, meta, n)| BalanceSample {
            id,
            metadata: meta,
            token_count: *n,
        })
        .collect();
    let config = BalanceConfig {
        samples_per_channel: a.samples_per_channel,
        sample_tokens: a.sample_tokens,
        tau_gender: a.tau_gender,
        tau_size: a.tau_size,
    };
    let report = validate_balance(&samples, &config)?;
    let text = if a.json {
        serde_json::to_string_pretty(&report)? + "\n"
    } else {
        render_balance(&report)
    };
    emit(None, &[], &text)?;
    if report.is_balanced() {
        Ok(())
    } else {
        Err(CliError::Data(format!("{} balance violation(s)", report.violations.len())))
    }
}

fn serve(a: ServeArgs) -> Outcome {
    let annotator = Arc::new(load_annotator(&a.models)?);
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    eprintln!("serving on http://{}", a.bind);
    runtime.block_on(service::serve(annotator, a.bind, a.max_body))?;
    Ok(())
}
