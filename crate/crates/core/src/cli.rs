//! Command-line front end: `build-model`, `analyze`, `optimize`, `stats`
//! and `serve`.
//!
//! Exit codes: 0 success, 2 resource error, 3 empty or invalid corpus,
//! 4 malformed data, 5 service startup failure. Every resource path can
//! also be given through a `STICKY_*` environment variable.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::corpus::{build_context_model, build_pop_model, read_pop_entries, read_titles, Fingerprint, FrequencyModel};
use crate::error::Error;
use crate::experiment::{analyze_experiment, read_response_log};
use crate::review::http::{serve, AppState};
use crate::review::{ReviewStore, DEFAULT_LISTEN};
use crate::scoring::{score_text, Resources, ScoreConfig, TitleReport};
use crate::sentiment::{PolarityLabel, SentimentLexicon};
use crate::substitution::{apply_substitution, generate_candidates, SubstitutionCandidate, Thesaurus};
use crate::text::{Stopwords, Title};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_CORPUS: i32 = 3;
pub const EXIT_MALFORMED: i32 = 4;
pub const EXIT_SERVICE: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "sticky", version, about = "Score and rewrite titles with sticky words")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile the context and popularity corpora into a model file.
    BuildModel(BuildModelArgs),
    /// Score every content word of a title.
    Analyze(AnalyzeArgs),
    /// Propose ranked single-word substitutions for a file of titles.
    Optimize(OptimizeArgs),
    /// Selection and evaluation statistics for a response log.
    Stats(StatsArgs),
    /// Run the review service.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// TOML config with theta_f, theta_n, require_emotive, neutral_band,
    /// min_len, stopword_path.
    #[arg(long, env = "STICKY_CONFIG")]
    pub config: Option<PathBuf>,
    #[arg(long, env = "STICKY_STOPWORDS")]
    pub stopwords: Option<PathBuf>,
    #[arg(long)]
    pub min_len: Option<usize>,
    #[arg(long)]
    pub theta_f: Option<f64>,
    #[arg(long)]
    pub theta_n: Option<f64>,
    #[arg(long)]
    pub require_emotive: Option<bool>,
    #[arg(long)]
    pub neutral_band: Option<f64>,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<ScoreConfig, CliError> {
        let mut config = match &self.config {
            Some(path) => {
                require_file(path)?;
                ScoreConfig::load(path).map_err(CliError::resource)?
            }
            None => ScoreConfig::default(),
        };
        if let Some(sw) = &self.stopwords {
            config.stopword_path = Some(sw.clone());
        }
        if let Some(v) = self.min_len {
            config.min_len = v;
        }
        if let Some(v) = self.theta_f {
            config.theta_f = v;
        }
        if let Some(v) = self.theta_n {
            config.theta_n = v;
        }
        if let Some(v) = self.require_emotive {
            config.require_emotive = v;
        }
        if let Some(v) = self.neutral_band {
            config.neutral_band = v;
        }
        config.validate().map_err(CliError::resource)?;
        if let Some(sw) = &config.stopword_path {
            require_file(sw)?;
        }
        Ok(config)
    }
}

#[derive(Debug, Args)]
pub struct BuildModelArgs {
    /// Context corpus: one title per line, or JSON records {id, text}.
    #[arg(long, env = "STICKY_CONTEXT")]
    pub context: PathBuf,
    /// Popularity corpus: keyword<TAB>count per line.
    #[arg(long, env = "STICKY_POP")]
    pub pop: PathBuf,
    #[arg(long, env = "STICKY_MODEL")]
    pub out: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Args)]
pub struct ResourceArgs {
    #[arg(long, env = "STICKY_MODEL")]
    pub model: PathBuf,
    #[arg(long, env = "STICKY_LEXICON")]
    pub lexicon: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub resources: ResourceArgs,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    pub title: String,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub resources: ResourceArgs,
    #[arg(long, env = "STICKY_THESAURUS")]
    pub thesaurus: PathBuf,
    /// `json` writes one candidate record per line.
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    #[arg(long, env = "STICKY_OUT")]
    pub out: Option<PathBuf>,
    /// Titles: one per line, or JSON records {id, text}.
    pub titles: PathBuf,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Item numbers (1-based, matching item_k columns) to reverse-code.
    #[arg(long, value_delimiter = ',')]
    pub reverse_items: Vec<usize>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    #[arg(long, env = "STICKY_OUT")]
    pub out: Option<PathBuf>,
    pub responses: PathBuf,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[command(flatten)]
    pub resources: ResourceArgs,
    #[arg(long, env = "STICKY_THESAURUS")]
    pub thesaurus: PathBuf,
    /// Directory holding sessions.jsonl and journal.tsv.
    #[arg(long, env = "STICKY_DATA_DIR", default_value = "review-data")]
    pub data_dir: PathBuf,
    #[arg(long, env = "STICKY_LISTEN", default_value = DEFAULT_LISTEN)]
    pub listen: String,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> CliError {
        CliError {
            code,
            message: message.into(),
        }
    }

    /// Errors while loading models, lexicons, thesauri and configs.
    fn resource(e: Error) -> CliError {
        let code = match e {
            Error::EmptyCorpus(_) => EXIT_CORPUS,
            _ => EXIT_RESOURCE,
        };
        CliError::new(code, e.to_string())
    }

    /// Errors while reading a corpus to compile.
    fn corpus(e: Error) -> CliError {
        let code = match e {
            Error::Io { .. } => EXIT_RESOURCE,
            _ => EXIT_CORPUS,
        };
        CliError::new(code, e.to_string())
    }

    /// Errors in user data (titles, responses).
    fn data(e: Error) -> CliError {
        let code = match e {
            Error::Io { .. } | Error::ResourceMissing(_) => EXIT_RESOURCE,
            Error::EmptyCorpus(_) => EXIT_CORPUS,
            _ => EXIT_MALFORMED,
        };
        CliError::new(code, e.to_string())
    }
}

fn require_file(path: &Path) -> Result<(), CliError> {
    if path.is_file() {
        Ok(())
    } else {
        Err(CliError::new(
            EXIT_RESOURCE,
            format!("{}: no such file", path.display()),
        ))
    }
}

fn write_output(out: &mut dyn Write, target: Option<&Path>, text: &str) -> Result<(), CliError> {
    match target {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::new(EXIT_RESOURCE, format!("{}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::new(EXIT_RESOURCE, format!("stdout: {e}"))),
    }
}

fn load_resources(args: &ResourceArgs, thesaurus: Option<&Path>, err: &mut dyn Write) -> Result<Resources, CliError> {
    require_file(&args.model)?;
    require_file(&args.lexicon)?;
    if let Some(t) = thesaurus {
        require_file(t)?;
    }
    let config = args.config.resolve()?;
    let mut builder = Resources::builder()
        .model(FrequencyModel::load(&args.model).map_err(CliError::resource)?)
        .lexicon(SentimentLexicon::load(&args.lexicon).map_err(CliError::resource)?)
        .config(config);
    if let Some(t) = thesaurus {
        builder = builder.thesaurus(Thesaurus::load(t).map_err(CliError::resource)?);
    }
    let resources = builder.build().map_err(CliError::resource)?;
    if resources.fingerprint_mismatch().is_some() {
        let _ = writeln!(
            err,
            "warning: stopwords/min_len differ from those recorded in {}",
            args.model.display()
        );
    }
    Ok(resources)
}

fn cmd_build_model(args: &BuildModelArgs, out: &mut dyn Write) -> Result<(), CliError> {
    require_file(&args.context)?;
    require_file(&args.pop)?;
    let config = args.config.resolve()?;
    let stopwords: Stopwords = config.stopwords().map_err(CliError::resource)?;
    let titles = read_titles(&args.context).map_err(CliError::corpus)?;
    let context = build_context_model(&titles).map_err(CliError::corpus)?;
    let entries = read_pop_entries(&args.pop).map_err(CliError::corpus)?;
    let popularity = build_pop_model(&entries).map_err(CliError::corpus)?;
    let model = FrequencyModel {
        context,
        popularity,
        fingerprint: Fingerprint::new(&stopwords, config.min_len),
    };
    model.save(&args.out).map_err(CliError::resource)?;
    let summary = format!(
        "doc_count: {}\ncontext_vocabulary: {}\npopularity_vocabulary: {}\nmax_count: {}\nwrote {}\n",
        model.context.doc_count(),
        model.context.vocabulary_size(),
        model.popularity.vocabulary_size(),
        model.popularity.max_count(),
        args.out.display()
    );
    write_output(out, None, &summary)
}

fn polarity_name(label: PolarityLabel) -> &'static str {
    match label {
        PolarityLabel::Positive => "positive",
        PolarityLabel::Negative => "negative",
        PolarityLabel::Neutral => "neutral",
    }
}

pub fn render_title_report(report: &TitleReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<4}{:<18}{:>12}{:>10}{:>10}{:>9}{:>11}",
        "pos", "word", "familiarity", "novelty", "polarity", "valence", "composite"
    );
    for w in &report.words {
        let _ = writeln!(
            s,
            "{:<4}{:<18}{:>12.4}{:>10.4}{:>10}{:>9.3}{:>11.4}",
            w.position,
            w.word,
            w.score.familiarity,
            w.score.novelty,
            polarity_name(w.score.polarity.label),
            w.score.polarity.valence,
            w.score.composite
        );
    }
    let _ = writeln!(s, "title_score: {:.4}", report.title_score);
    s
}

fn cmd_analyze(args: &AnalyzeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let resources = load_resources(&args.resources, None, err)?;
    let report = score_text(&args.title, &resources);
    let text = match args.format {
        Format::Table => render_title_report(&report),
        Format::Json => {
            let mut j = serde_json::to_string_pretty(&report).expect("report serializes");
            j.push('\n');
            j
        }
    };
    write_output(out, None, &text)
}

#[derive(Serialize)]
struct CandidateLine<'a> {
    rank: usize,
    original_text: &'a str,
    treatment_text: &'a str,
    #[serde(flatten)]
    candidate: &'a SubstitutionCandidate,
}

pub fn optimize_titles(titles: &[Title], resources: &Resources, format: Format) -> Result<String, Error> {
    let mut s = String::new();
    for title in titles {
        let candidates = generate_candidates(title, resources)?;
        if format == Format::Table {
            let _ = writeln!(s, "[{}] {}", title.id, title.raw);
            if candidates.is_empty() {
                let _ = writeln!(s, "    (no candidates)");
            }
        }
        for (rank, candidate) in candidates.iter().enumerate() {
            let treatment = apply_substitution(title, candidate)?;
            match format {
                Format::Table => {
                    let _ = writeln!(
                        s,
                        "  {:>2}. pos {:<3}{} -> {}  delta {:+.4}  ({:.4} -> {:.4})\n      {}",
                        rank + 1,
                        candidate.position,
                        candidate.original,
                        candidate.replacement,
                        candidate.delta,
                        candidate.original_score.composite,
                        candidate.replacement_score.composite,
                        treatment.raw
                    );
                }
                Format::Json => {
                    let line = CandidateLine {
                        rank: rank + 1,
                        original_text: &title.raw,
                        treatment_text: &treatment.raw,
                        candidate,
                    };
                    s.push_str(&serde_json::to_string(&line).expect("candidate serializes"));
                    s.push('\n');
                }
            }
        }
    }
    Ok(s)
}

fn cmd_optimize(args: &OptimizeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let resources = load_resources(&args.resources, Some(&args.thesaurus), err)?;
    require_file(&args.titles)?;
    let titles = read_titles(&args.titles).map_err(CliError::data)?;
    let text = optimize_titles(&titles, &resources, args.format).map_err(CliError::data)?;
    write_output(out, args.out.as_deref(), &text)
}

fn cmd_stats(args: &StatsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    require_file(&args.responses)?;
    let responses = read_response_log(&args.responses).map_err(CliError::data)?;
    let mut reverse = BTreeSet::new();
    for &k in &args.reverse_items {
        if k == 0 {
            return Err(CliError::new(EXIT_MALFORMED, "item numbers start at 1"));
        }
        reverse.insert(k - 1);
    }
    let report = analyze_experiment(&responses, &reverse).map_err(CliError::data)?;
    let text = match args.format {
        Format::Table => report.render_table(),
        Format::Json => report.to_json() + "\n",
    };
    write_output(out, args.out.as_deref(), &text)
}

fn cmd_serve(args: &ServeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let resources = load_resources(&args.resources, Some(&args.thesaurus), err)?;
    let store = ReviewStore::open(&args.data_dir, Arc::new(resources)).map_err(CliError::resource)?;
    let listener = std::net::TcpListener::bind(&args.listen)
        .map_err(|e| CliError::new(EXIT_SERVICE, format!("cannot listen on {}: {e}", args.listen)))?;
    listener
        .set_nonblocking(true)
        .map_err(|e| CliError::new(EXIT_SERVICE, e.to_string()))?;
    let addr = listener
        .local_addr()
        .map_err(|e| CliError::new(EXIT_SERVICE, e.to_string()))?;
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| CliError::new(EXIT_SERVICE, e.to_string()))?;
    let _ = writeln!(out, "listening on http://{addr}");
    let _ = out.flush();
    runtime
        .block_on(async move {
            let listener = tokio::net::TcpListener::from_std(listener)?;
            let shutdown = async {
                let _ = tokio::signal::ctrl_c().await;
            };
            serve(listener, AppState::new(store), shutdown).await
        })
        .map_err(|e| CliError::new(EXIT_SERVICE, e.to_string()))?;
    let _ = writeln!(out, "shutdown complete");
    Ok(())
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_RESOURCE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::BuildModel(a) => cmd_build_model(a, out),
        Command::Analyze(a) => cmd_analyze(a, out, err),
        Command::Optimize(a) => cmd_optimize(a, out, err),
        Command::Stats(a) => cmd_stats(a, out),
        Command::Serve(a) => cmd_serve(a, out, err),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
