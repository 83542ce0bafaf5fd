use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use metricide::corpus::{load_corpus, validate_file, Corpus, Format, LoadOptions};
use metricide::lexicon::{Dictionary, EmbeddingTable, SynonymLexicon};
use metricide::meta_eval::{analyze, render_tables, AnalysisConfig, QuantStrategy};
use metricide::scorer::{score_corpus, scores_from_tsv, scores_to_tsv, ScoreConfig};
use metricide::stats::{ZeroMethod, DEFAULT_ALPHA};
use metricide::{MetricField, MetricVector64};

const EXIT_WARNINGS: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "metricide",
    version,
    about = "Score NLG outputs and test the metrics against human ratings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a corpus file and print per-system counts.
    Validate(InputArgs),
    /// Compute every metric per instance and write scores.tsv.
    Score(ScoreArgs),
    /// Run the meta-evaluation and write the report.
    Analyze(AnalyzeArgs),
}

#[derive(Args, Serialize)]
struct InputArgs {
    /// Corpus file (CSV or JSON).
    #[arg(long)]
    input: PathBuf,
    /// Corpus format; guessed from the extension when absent.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Skip invalid rows instead of aborting.
    #[arg(long)]
    lenient: bool,
    /// Exit with status 1 when warnings were emitted.
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Serialize)]
struct ResourceArgs {
    /// Word embeddings, one `word v1 v2 ...` per line (needed for sim).
    #[arg(long)]
    embeddings: Option<PathBuf>,
    /// Word list for msp, one word per line. Defaults to the bundled list.
    #[arg(long)]
    dictionary: Option<PathBuf>,
    /// METEOR synonyms, `word: syn1, syn2` per line.
    #[arg(long)]
    synonyms: Option<PathBuf>,
    /// Comma-separated metrics to compute (default: all).
    #[arg(long, value_delimiter = ',')]
    metrics: Option<Vec<String>>,
}

#[derive(Args, Serialize)]
struct ScoreArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    resources: ResourceArgs,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Serialize)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    resources: ResourceArgs,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Reuse scores.tsv from a previous `score` run.
    #[arg(long)]
    scores: Option<PathBuf>,
    /// Add ranking accuracy on quantized scores.
    #[arg(long)]
    quantize: bool,
    #[arg(long, value_enum, default_value_t = QuantArg::Minmax)]
    quant_strategy: QuantArg,
    /// Raw metric values closer than this are tied.
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
    #[arg(long, env = "METRICIDE_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    /// Rank zero differences in the Wilcoxon test (Pratt) instead of dropping them.
    #[arg(long)]
    pratt: bool,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum QuantArg {
    Minmax,
    Eqfreq,
}

impl InputArgs {
    fn format(&self) -> Format {
        match self.format {
            Some(FormatArg::Csv) => Format::Csv,
            Some(FormatArg::Json) => Format::Json,
            None => Format::from_path(&self.input),
        }
    }

    /// Loads the corpus; skipped rows in lenient mode count as warnings.
    fn load(&self) -> Result<(Corpus, usize)> {
        let outcome = load_corpus(&self.input, self.format(), &LoadOptions { lenient: self.lenient })
            .with_context(|| format!("loading {}", self.input.display()))?;
        for issue in &outcome.skipped {
            eprintln!("warning: {issue}");
        }
        Ok((outcome.corpus, outcome.skipped.len()))
    }
}

impl ResourceArgs {
    fn attach(&self, corpus: &mut Corpus) -> Result<ScoreConfig> {
        let mut config = match &self.metrics {
            Some(names) => {
                let fields = names
                    .iter()
                    .filter(|n| !n.trim().is_empty())
                    .map(|n| n.parse::<MetricField>())
                    .collect::<metricide::Result<Vec<_>>>()?;
                ScoreConfig::with_metrics(fields)
            }
            None => ScoreConfig::default(),
        };
        if let Some(p) = &self.embeddings {
            corpus.embeddings = Some(EmbeddingTable::load(p)?);
        }
        corpus.dictionary = Some(match &self.dictionary {
            Some(p) => Dictionary::load(p)?,
            None => Dictionary::bundled(),
        });
        if let Some(p) = &self.synonyms {
            config.synonyms = Some(SynonymLexicon::load(p)?);
        }
        Ok(config)
    }
}

fn score(corpus: &Corpus, config: &ScoreConfig) -> Result<Vec<MetricVector64>> {
    Ok(score_corpus(corpus, config)?)
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn cmd_validate(args: &InputArgs) -> Result<u8> {
    let report = validate_file(&args.input, args.format())?;
    for issue in &report.issues {
        eprintln!("error: {issue}");
    }
    println!("dataset\tsystem\tinstances");
    let mut total = 0;
    for (dataset, systems) in &report.counts {
        for (system, n) in systems {
            println!("{dataset}\t{system}\t{n}");
            total += n;
        }
    }
    println!("total\t\t{total}");
    println!("{} rows, {} errors", report.rows, report.issues.len());
    Ok(if report.is_clean() { 0 } else { EXIT_INPUT })
}

fn cmd_score(args: &ScoreArgs) -> Result<u8> {
    let (mut corpus, skipped) = args.input.load()?;
    let config = args.resources.attach(&mut corpus)?;
    let scores = score(&corpus, &config)?;
    let path = args.out.join("scores.tsv");
    write_atomic(&path, &scores_to_tsv(&corpus, &scores)?)?;
    eprintln!("wrote {} rows to {}", scores.len(), path.display());
    Ok(if args.input.strict && skipped > 0 {
        EXIT_WARNINGS
    } else {
        0
    })
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<u8> {
    let (mut corpus, skipped) = args.input.load()?;
    if !(args.alpha > 0.0 && args.alpha < 1.0) {
        bail!("--alpha must lie in (0, 1)");
    }
    if !(args.epsilon >= 0.0) {
        bail!("--epsilon must be non-negative");
    }
    let scores = match &args.scores {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            scores_from_tsv(&text, &corpus)?
        }
        None => {
            let config = args.resources.attach(&mut corpus)?;
            score(&corpus, &config)?
        }
    };
    let config = AnalysisConfig {
        alpha: args.alpha,
        epsilon: args.epsilon,
        seed: args.seed,
        quantize: args.quantize,
        quant_strategy: match args.quant_strategy {
            QuantArg::Minmax => QuantStrategy::MinMax,
            QuantArg::Eqfreq => QuantStrategy::EqFreq,
        },
        zero_method: if args.pratt {
            ZeroMethod::Pratt
        } else {
            ZeroMethod::Wilcox
        },
        ..AnalysisConfig::default()
    };
    let mut report = analyze(&corpus, &scores, &config)?;
    report.config_echo = serde_json::json!({ "run": args, "analysis": config });

    write_atomic(&args.out.join("scores.tsv"), &scores_to_tsv(&corpus, &scores)?)?;
    for (name, contents) in render_tables(&report)? {
        write_atomic(&args.out.join(name), &contents)?;
    }
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    write_atomic(&args.out.join("report.json"), &json)?;

    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    eprintln!("wrote report to {}", args.out.display());
    let warned = skipped > 0 || !report.warnings.is_empty();
    Ok(if args.input.strict && warned { EXIT_WARNINGS } else { 0 })
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Validate(a) => cmd_validate(a),
        Command::Score(a) => cmd_score(a),
        Command::Analyze(a) => cmd_analyze(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("error")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
