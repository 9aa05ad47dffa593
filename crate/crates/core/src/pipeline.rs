//! End-to-end orchestration: ingest → candidates → sequences → train/predict
//! → evaluate, driven by one declarative config and recorded in a manifest.

use std::collections::BTreeSet;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::candidates::{
    candidate_stats, enumerate_pairs, CandidatePair, CandidateStats, PairPolicy,
};
use crate::classifier::{train, LabelInventory, PredictionRecord, TrainConfig};
use crate::corpus::{corpus_files, read_corpus_dir, read_jsonl, write_jsonl, Document};
use crate::error::{CandidateError, CorpusError, StageError};
use crate::eval::{gold_from_corpus, render_report, score, ReportFormat, ScoreOptions};
use crate::sequence::{build_sequences, SequenceConfig, SequenceExample};

pub const OUTPUT_ENV: &str = "WLPREL_OUT";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSection {
    pub dir: PathBuf,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvaluationSection {
    pub undirected_classes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    pub corpus: CorpusSection,
    #[serde(default)]
    pub candidates: PairPolicy,
    #[serde(default)]
    pub sequences: SequenceConfig,
    #[serde(default)]
    pub classifier: TrainConfig,
    #[serde(default)]
    pub evaluation: EvaluationSection,
}

fn default_seed() -> u64 {
    13
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

impl PipelineConfig {
    pub fn new(corpus_dir: impl Into<PathBuf>, output_dir: impl Into<PathBuf>) -> Self {
        Self {
            seed: default_seed(),
            output_dir: output_dir.into(),
            corpus: CorpusSection {
                dir: corpus_dir.into(),
            },
            candidates: PairPolicy::default(),
            sequences: SequenceConfig::default(),
            classifier: TrainConfig::default(),
            evaluation: EvaluationSection::default(),
        }
    }

    pub fn from_toml(text: &str) -> anyhow::Result<Self> {
        Ok(toml::from_str(text)?)
    }

    /// Read a config file; relative paths inside it resolve against its directory.
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let mut config = Self::from_toml(&fs::read_to_string(path)?)?;
        if let Some(base) = path.parent() {
            if config.corpus.dir.is_relative() {
                config.corpus.dir = base.join(&config.corpus.dir);
            }
            if config.output_dir.is_relative() {
                config.output_dir = base.join(&config.output_dir);
            }
        }
        Ok(config)
    }

    /// The seed also drives classifier shuffling.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self.classifier.seed = seed;
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splits {
    /// `directory` when taken from train/dev/test folders, else `seeded`.
    pub source: String,
    pub train: Vec<String>,
    pub dev: Vec<String>,
    pub test: Vec<String>,
}

impl Splits {
    /// Shuffle sorted ids with `seed` and cut 80/10/10; dev and test get at
    /// least one document each once there are three.
    pub fn seeded(doc_ids: &[String], seed: u64) -> Self {
        let mut ids: Vec<String> = doc_ids.to_vec();
        ids.sort();
        ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let n = ids.len();
        let tenth = |n: usize| {
            let k = (n as f64 * 0.1).round() as usize;
            if n >= 3 {
                k.max(1)
            } else {
                k
            }
        };
        let (n_test, n_dev) = (tenth(n), tenth(n));
        let test = ids.split_off(n - n_test);
        let dev = ids.split_off(ids.len() - n_dev);
        let mut s = Self {
            source: "seeded".into(),
            train: ids,
            dev,
            test,
        };
        s.train.sort();
        s.dev.sort();
        s.test.sort();
        s
    }

    pub fn contains(ids: &[String], id: &str) -> bool {
        ids.binary_search_by(|x| x.as_str().cmp(id)).is_ok()
    }
}

/// Read a corpus and decide its splits.
pub fn ingest(dir: &Path, seed: u64) -> Result<(Vec<Document>, Splits), CorpusError> {
    if !dir.is_dir() {
        return Err(CorpusError::MissingDirectory(dir.to_path_buf()));
    }
    let sub = |name: &str| dir.join(name);
    if ["train", "dev", "test"].iter().all(|s| sub(s).is_dir()) {
        let mut docs = Vec::new();
        let mut splits = Splits {
            source: "directory".into(),
            ..Splits::default()
        };
        for (name, ids) in [
            ("train", &mut splits.train),
            ("dev", &mut splits.dev),
            ("test", &mut splits.test),
        ] {
            let part = read_corpus_dir(&sub(name))?;
            ids.extend(part.iter().map(|d| d.doc_id.clone()));
            ids.sort();
            docs.extend(part);
        }
        let mut seen = BTreeSet::new();
        for d in &docs {
            if !seen.insert(&d.doc_id) {
                return Err(CorpusError::DuplicateDocument(d.doc_id.clone()));
            }
        }
        return Ok((docs, splits));
    }
    let docs = read_corpus_dir(dir)?;
    let ids: Vec<String> = docs.iter().map(|d| d.doc_id.clone()).collect();
    Ok((docs, Splits::seeded(&ids, seed)))
}

/// A corpus directory of standoff files or a JSON-lines corpus file.
pub fn load_corpus(path: &Path) -> Result<Vec<Document>, CorpusError> {
    if path.is_dir() {
        read_corpus_dir(path)
    } else {
        read_jsonl(path)
    }
}

pub fn sha256_file(path: &Path) -> std::io::Result<String> {
    let mut file = fs::File::open(path)?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 64 * 1024];
    loop {
        let n = file.read(&mut buf)?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex::encode(hasher.finalize()))
}

/// Digest over every `.txt` / `.ann` pair, keyed by path relative to `dir`.
pub fn corpus_digest(dir: &Path) -> Result<String, CorpusError> {
    let mut hasher = Sha256::new();
    for (txt, ann) in corpus_files(dir)? {
        for path in [txt, ann] {
            let rel = path.strip_prefix(dir).unwrap_or(&path);
            let bytes = fs::read(&path).map_err(|source| CorpusError::Io {
                path: path.clone(),
                source,
            })?;
            hasher.update(rel.to_string_lossy().as_bytes());
            hasher.update([0]);
            hasher.update((bytes.len() as u64).to_le_bytes());
            hasher.update(&bytes);
        }
    }
    Ok(hex::encode(hasher.finalize()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifact {
    pub name: String,
    pub path: String,
    pub sha256: String,
    pub records: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub timestamp: String,
    pub config: PipelineConfig,
    pub corpus_digest: String,
    pub splits: Splits,
    /// Stage outputs in stage order: corpus, candidates, sequences,
    /// predictions, report.
    pub artifacts: Vec<Artifact>,
    pub model: Artifact,
}

impl RunManifest {
    pub fn artifact(&self, name: &str) -> Option<&Artifact> {
        self.artifacts.iter().find(|a| a.name == name)
    }
}

fn artifact(out: &Path, name: &str, file: &str, records: usize) -> std::io::Result<Artifact> {
    Ok(Artifact {
        name: name.to_string(),
        path: file.to_string(),
        sha256: sha256_file(&out.join(file))?,
        records,
    })
}

/// Run every stage and write `manifest.json` next to the artifacts.
pub fn run_pipeline(config: &PipelineConfig) -> Result<RunManifest, StageError> {
    let out = &config.output_dir;
    fs::create_dir_all(out).map_err(|e| StageError::new("setup", e))?;
    config
        .sequences
        .validate()
        .map_err(|e| StageError::new("setup", e))?;

    let (docs, splits) =
        ingest(&config.corpus.dir, config.seed).map_err(|e| StageError::new("ingest", e))?;
    let digest = corpus_digest(&config.corpus.dir).map_err(|e| StageError::new("ingest", e))?;
    write_jsonl(&out.join("corpus.jsonl"), &docs).map_err(|e| StageError::new("ingest", e))?;
    let corpus_art = artifact(out, "corpus", "corpus.jsonl", docs.len())
        .map_err(|e| StageError::new("ingest", e))?;

    let mut pairs: Vec<CandidatePair> = Vec::new();
    let mut sequences: Vec<SequenceExample> = Vec::new();
    for doc in &docs {
        let doc_pairs = enumerate_pairs(doc, &config.candidates);
        sequences.extend(
            build_sequences(doc, &doc_pairs, &config.sequences)
                .map_err(|e| StageError::new("sequences", e))?,
        );
        pairs.extend(doc_pairs);
    }
    write_jsonl(&out.join("candidates.jsonl"), &pairs)
        .map_err(|e| StageError::new("candidates", e))?;
    let cand_art = artifact(out, "candidates", "candidates.jsonl", pairs.len())
        .map_err(|e| StageError::new("candidates", e))?;
    write_jsonl(&out.join("sequences.jsonl"), &sequences)
        .map_err(|e| StageError::new("sequences", e))?;
    let seq_art = artifact(out, "sequences", "sequences.jsonl", sequences.len())
        .map_err(|e| StageError::new("sequences", e))?;

    let (train_set, test_set): (Vec<_>, Vec<_>) = {
        let train_set: Vec<SequenceExample> = sequences
            .iter()
            .filter(|s| Splits::contains(&splits.train, &s.doc_id))
            .cloned()
            .collect();
        let test_set: Vec<SequenceExample> = sequences
            .iter()
            .filter(|s| Splits::contains(&splits.test, &s.doc_id))
            .cloned()
            .collect();
        (train_set, test_set)
    };
    let labels = LabelInventory::from_labels(train_set.iter().map(|s| s.label.as_str()));
    let model = train(&train_set, &labels, &config.sequences, &config.classifier)
        .map_err(|e| StageError::new("train", e))?;
    model
        .save(&out.join("model.json"))
        .map_err(|e| StageError::new("train", e))?;
    let model_art = artifact(out, "model", "model.json", labels.len())
        .map_err(|e| StageError::new("train", e))?;

    let predictions: Vec<PredictionRecord> = test_set
        .iter()
        .map(|s| model.predict_record(s))
        .collect::<Result<_, _>>()
        .map_err(|e| StageError::new("predict", e))?;
    write_jsonl(&out.join("predictions.jsonl"), &predictions)
        .map_err(|e| StageError::new("predict", e))?;
    let pred_art = artifact(out, "predictions", "predictions.jsonl", predictions.len())
        .map_err(|e| StageError::new("predict", e))?;

    let test_docs: Vec<Document> = docs
        .iter()
        .filter(|d| Splits::contains(&splits.test, &d.doc_id))
        .cloned()
        .collect();
    let options = ScoreOptions {
        undirected_classes: config
            .evaluation
            .undirected_classes
            .iter()
            .cloned()
            .collect(),
        labels: None,
    };
    let report = score(&predictions, &gold_from_corpus(&test_docs), &options)
        .map_err(|e| StageError::new("evaluate", e))?;
    fs::write(
        out.join("report.json"),
        render_report(&report, ReportFormat::Json),
    )
    .map_err(|e| StageError::new("evaluate", e))?;
    let report_art = artifact(out, "report", "report.json", report.per_class.len())
        .map_err(|e| StageError::new("evaluate", e))?;

    let manifest = RunManifest {
        timestamp: chrono::Utc::now().to_rfc3339(),
        config: config.clone(),
        corpus_digest: digest,
        splits,
        artifacts: vec![corpus_art, cand_art, seq_art, pred_art, report_art],
        model: model_art,
    };
    let json =
        serde_json::to_string_pretty(&manifest).map_err(|e| StageError::new("manifest", e))?;
    fs::write(out.join("manifest.json"), json + "\n")
        .map_err(|e| StageError::new("manifest", e))?;
    Ok(manifest)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub threshold: usize,
    pub pairs: usize,
    pub gold_retained: usize,
    pub retention: f64,
    pub reduction_vs_reference: f64,
    pub positive_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsSweep {
    pub all_pairs: CandidateStats,
    pub same_step: CandidateStats,
    pub reference: PairPolicy,
    pub sweep: Vec<SweepRow>,
}

/// Candidate statistics for `all` and `step`, plus a token-distance sweep
/// over `thresholds` measured against `reference`.
pub fn stats_sweep(
    docs: &[Document],
    thresholds: impl IntoIterator<Item = usize>,
    reference: &PairPolicy,
) -> Result<StatsSweep, CandidateError> {
    let all = candidate_stats(docs, &PairPolicy::all_pairs(), reference)?;
    let step = candidate_stats(docs, &PairPolicy::same_step(), reference)?;
    let sweep = thresholds
        .into_iter()
        .map(|t| {
            candidate_stats(docs, &PairPolicy::token_distance(t), reference).map(|s| SweepRow {
                threshold: t,
                pairs: s.total_pairs,
                gold_retained: s.gold_relations_retained,
                retention: s.retention,
                reduction_vs_reference: s.reduction_vs_reference,
                positive_rate: s.positive_rate,
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(StatsSweep {
        all_pairs: all,
        same_step: step,
        reference: *reference,
        sweep,
    })
}

impl StatsSweep {
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let a = &self.all_pairs;
        out.push_str(&format!(
            "documents {}  gold relations {}\n",
            a.documents, a.gold_relations_total
        ));
        out.push_str(&format!(
            "all pairs: {} pairs, positive rate {:.4}% (macro {:.4}%)\n",
            a.total_pairs,
            100.0 * a.positive_rate,
            100.0 * a.positive_rate_macro
        ));
        let s = &self.same_step;
        out.push_str(&format!(
            "same step: {} pairs, retention {:.4}, positive rate {:.4}%\n",
            s.total_pairs,
            s.retention,
            100.0 * s.positive_rate
        ));
        out.push_str(&format!(
            "\ntoken distance sweep (gap < threshold, reference {}):\n",
            self.reference
        ));
        out.push_str("threshold     pairs  retained  retention  reduction  positive_rate\n");
        for r in &self.sweep {
            out.push_str(&format!(
                "{:>9} {:>9} {:>9} {:>10.4} {:>10.4} {:>14.6}\n",
                r.threshold,
                r.pairs,
                r.gold_retained,
                r.retention,
                r.reduction_vs_reference,
                r.positive_rate
            ));
        }
        out
    }
}
