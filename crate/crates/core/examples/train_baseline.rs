//! Train the linear baseline on generated protocols and compare it with
//! always predicting the most common relation.
//!
//! cargo run --release --example train_baseline -- [N_PROTOCOLS]

use wlprel::candidates::{enumerate_pairs, PairPolicy};
use wlprel::classifier::{train, LabelInventory, MajorityBaseline, PredictionRecord, TrainConfig};
use wlprel::eval::{gold_from_corpus, render_report, score, ReportFormat, ScoreOptions};
use wlprel::sequence::{build_sequences, SequenceConfig};
use wlprel::synth::{generate_corpus, parse_all, SynthConfig};

fn main() -> anyhow::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(60);
    let docs = parse_all(&generate_corpus(7, n, &SynthConfig::default()))?;
    let (train_docs, test_docs) = docs.split_at(n * 4 / 5);

    let seq = SequenceConfig::default();
    let policy = PairPolicy::default();
    let sequences = |docs: &[wlprel::Document]| -> anyhow::Result<Vec<_>> {
        let mut out = Vec::new();
        for d in docs {
            out.extend(build_sequences(d, &enumerate_pairs(d, &policy), &seq)?);
        }
        Ok(out)
    };
    let train_set = sequences(train_docs)?;
    let test_set = sequences(test_docs)?;

    let labels = LabelInventory::from_labels(train_set.iter().map(|e| e.label.as_str()));
    let model = train(&train_set, &labels, &seq, &TrainConfig::default())?;

    let gold = gold_from_corpus(test_docs);
    let preds: Vec<PredictionRecord> = test_set
        .iter()
        .map(|e| model.predict_record(e))
        .collect::<Result<_, _>>()?;
    let report = score(&preds, &gold, &ScoreOptions::default())?;
    print!("{}", render_report(&report, ReportFormat::Table));

    let majority = MajorityBaseline::fit(&train_set).expect("training data has relations");
    let naive: Vec<PredictionRecord> = test_set
        .iter()
        .map(|e| majority.predict_record(e))
        .collect();
    let naive = score(&naive, &gold, &ScoreOptions::default())?;
    println!(
        "\nmicro-F1 {:.3}, always-{} {:.3}",
        report.micro.f1, majority.label, naive.micro.f1
    );
    Ok(())
}
