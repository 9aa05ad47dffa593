use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use wlprel::candidates::{candidate_stats, enumerate_pairs, PairPolicy, PolicyMode};
use wlprel::classifier::{train, BaselineModel, LabelInventory, PredictionRecord, TrainConfig};
use wlprel::corpus::{read_jsonl, write_jsonl};
use wlprel::error::EvalError;
use wlprel::eval::{gold_from_corpus, render_report, score, ReportFormat, ScoreOptions};
use wlprel::pipeline::{load_corpus, run_pipeline, stats_sweep, PipelineConfig, OUTPUT_ENV};
use wlprel::sequence::{build_sequences, SequenceConfig, SequenceExample};

#[derive(Parser)]
#[command(
    name = "wlprel",
    version,
    about = "Relation extraction over standoff-annotated protocols"
)]
struct Cli {
    /// Seed for splits, downsampling and shuffling.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    All,
    Step,
    Dist,
}

impl From<PolicyArg> for PolicyMode {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::All => PolicyMode::AllPairs,
            PolicyArg::Step => PolicyMode::SameStep,
            PolicyArg::Dist => PolicyMode::TokenDistance,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReferenceArg {
    All,
    Step,
}

impl ReferenceArg {
    fn policy(self) -> PairPolicy {
        match self {
            ReferenceArg::All => PairPolicy::all_pairs(),
            ReferenceArg::Step => PairPolicy::same_step(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
}

#[derive(Args)]
struct PolicyArgs {
    #[arg(long, value_enum, default_value = "dist")]
    policy: PolicyArg,
    /// Keep pairs with strictly fewer tokens between them.
    #[arg(long, default_value_t = 14)]
    max_dist: usize,
}

impl PolicyArgs {
    fn policy(&self) -> PairPolicy {
        PairPolicy {
            mode: self.policy.into(),
            max_token_distance: self.max_dist,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a standoff directory into a JSON-lines corpus.
    Ingest {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Candidate statistics with a token-distance sweep.
    Stats {
        /// Standoff directory or corpus.jsonl.
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = 30)]
        max_threshold: usize,
        #[arg(long, value_enum, default_value = "step")]
        reference: ReferenceArg,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
    /// Enumerate candidate pairs.
    Candidates {
        #[arg(long)]
        corpus: PathBuf,
        #[command(flatten)]
        policy: PolicyArgs,
        /// Print statistics instead of (or besides) writing pairs.
        #[arg(long)]
        stats: bool,
        #[arg(long, value_enum, default_value = "step")]
        reference: ReferenceArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build classification sequences for candidate pairs.
    Sequences {
        #[arg(long)]
        corpus: PathBuf,
        #[command(flatten)]
        policy: PolicyArgs,
        #[arg(long, default_value_t = 1)]
        window: usize,
        #[arg(long, default_value_t = 100)]
        max_tokens: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train the baseline classifier on a sequences file.
    Train {
        #[arg(long)]
        sequences: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        epochs: Option<usize>,
        #[arg(long)]
        learning_rate: Option<f64>,
        /// NoRelation examples kept per positive; 0 keeps all.
        #[arg(long)]
        negative_ratio: Option<usize>,
    },
    /// Predict relation labels for a sequences file.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(long = "in", alias = "sequences")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score predictions against gold relations.
    Evaluate {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        pred: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
        /// Comma-separated classes scored without direction.
        #[arg(long, value_delimiter = ',')]
        undirected_classes: Vec<String>,
        /// Ignore gold documents with no prediction at all.
        #[arg(long)]
        only_predicted_docs: bool,
    },
    /// Run every stage from a TOML config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory, overriding the config.
        #[arg(long, env = OUTPUT_ENV)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let seed = cli.seed;
    match cli.command {
        Command::Ingest { corpus, out } => {
            let docs = load_corpus(&corpus)?;
            write_jsonl(&out, &docs)?;
            eprintln!("{} documents -> {}", docs.len(), out.display());
        }
        Command::Stats {
            corpus,
            max_threshold,
            reference,
            format,
        } => {
            let docs = load_corpus(&corpus)?;
            let sweep = stats_sweep(&docs, 1..=max_threshold, &reference.policy())?;
            match format {
                FormatArg::Table => print!("{}", sweep.render_table()),
                FormatArg::Json => println!("{}", serde_json::to_string_pretty(&sweep)?),
            }
        }
        Command::Candidates {
            corpus,
            policy,
            stats,
            reference,
            out,
        } => {
            let docs = load_corpus(&corpus)?;
            let policy = policy.policy();
            if let Some(out) = &out {
                let pairs: Vec<_> = docs
                    .iter()
                    .flat_map(|d| enumerate_pairs(d, &policy))
                    .collect();
                write_jsonl(out, &pairs)?;
                eprintln!("{} pairs -> {}", pairs.len(), out.display());
            }
            if stats || out.is_none() {
                let s = candidate_stats(&docs, &policy, &reference.policy())?;
                println!("{}", serde_json::to_string_pretty(&s)?);
                print!("{}", s.render_table());
            }
        }
        Command::Sequences {
            corpus,
            policy,
            window,
            max_tokens,
            out,
        } => {
            let docs = load_corpus(&corpus)?;
            let config = SequenceConfig {
                context_window_n: window,
                max_tokens,
                ..SequenceConfig::default()
            };
            let policy = policy.policy();
            let mut all = Vec::new();
            for doc in &docs {
                all.extend(build_sequences(
                    doc,
                    &enumerate_pairs(doc, &policy),
                    &config,
                )?);
            }
            write_jsonl(&out, &all)?;
            eprintln!("{} sequences -> {}", all.len(), out.display());
        }
        Command::Train {
            sequences,
            out,
            epochs,
            learning_rate,
            negative_ratio,
        } => {
            let examples: Vec<SequenceExample> = read_jsonl(&sequences)?;
            let mut config = TrainConfig::default();
            if let Some(s) = seed {
                config.seed = s;
            }
            if let Some(e) = epochs {
                config.epochs = e;
            }
            if let Some(lr) = learning_rate {
                config.learning_rate = lr;
            }
            if let Some(r) = negative_ratio {
                config.negative_ratio = (r > 0).then_some(r);
            }
            let labels = LabelInventory::from_labels(examples.iter().map(|e| e.label.as_str()));
            let model = train(&examples, &labels, &SequenceConfig::default(), &config)?;
            model.save(&out)?;
            eprintln!(
                "{} classes, {} examples -> {}",
                labels.len(),
                examples.len(),
                out.display()
            );
        }
        Command::Predict { model, input, out } => {
            let model = BaselineModel::load(&model)?;
            let examples: Vec<SequenceExample> = read_jsonl(&input)?;
            let preds: Vec<PredictionRecord> = examples
                .iter()
                .map(|e| model.predict_record(e))
                .collect::<std::result::Result<_, _>>()?;
            write_jsonl(&out, &preds)?;
        }
        Command::Evaluate {
            gold,
            pred,
            format,
            undirected_classes,
            only_predicted_docs,
        } => {
            let mut docs = load_corpus(&gold)?;
            let preds: Vec<PredictionRecord> = read_jsonl(&pred)?;
            if only_predicted_docs {
                let ids: BTreeSet<&str> = preds.iter().map(|p| p.doc_id.as_str()).collect();
                docs.retain(|d| ids.contains(d.doc_id.as_str()));
            }
            let options = ScoreOptions {
                undirected_classes: undirected_classes.into_iter().collect(),
                labels: None,
            };
            let report = score(&preds, &gold_from_corpus(&docs), &options)?;
            let format = match format {
                FormatArg::Table => ReportFormat::Table,
                FormatArg::Json => ReportFormat::Json,
            };
            emit(&render_report(&report, format), None)?;
        }
        Command::Run { config, out } => {
            let mut cfg = PipelineConfig::load(&config)?;
            if let Some(out) = out {
                cfg.output_dir = out;
            }
            if let Some(s) = seed {
                cfg = cfg.with_seed(s);
            }
            let manifest = run_pipeline(&cfg)?;
            let report = cfg.output_dir.join("report.json");
            let report: wlprel::EvalReport = serde_json::from_str(&fs::read_to_string(report)?)?;
            print!("{}", render_report(&report, ReportFormat::Table));
            eprintln!(
                "manifest -> {}",
                cfg.output_dir.join("manifest.json").display()
            );
            for a in &manifest.artifacts {
                eprintln!("  {:<12} {} {}", a.name, &a.sha256[..12], a.path);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<EvalError>().is_some() {
                ExitCode::from(3)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
