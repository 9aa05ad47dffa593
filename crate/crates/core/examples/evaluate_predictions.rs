//! Score a hand-made prediction set, directed and with `Or` treated as
//! symmetric.
//!
//! cargo run --example evaluate_predictions

use std::path::PathBuf;

use indexmap::IndexMap;
use wlprel::classifier::PredictionRecord;
use wlprel::corpus::read_corpus_dir;
use wlprel::eval::{gold_from_corpus, render_report, score, ReportFormat, ScoreOptions};

fn pred(doc: &str, head: &str, tail: &str, label: &str) -> PredictionRecord {
    PredictionRecord {
        doc_id: doc.into(),
        head: head.into(),
        tail: tail.into(),
        predicted: label.into(),
        scores: IndexMap::new(),
    }
}

fn main() -> anyhow::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/protocols");
    let docs: Vec<_> = read_corpus_dir(&dir)?
        .into_iter()
        .filter(|d| d.doc_id == "protocol_102")
        .collect();
    let gold = gold_from_corpus(&docs);

    // Get the first five gold links right, reverse the `Or` link, and add
    // one spurious `Site`.
    let mut preds: Vec<PredictionRecord> = gold
        .iter()
        .take(5)
        .map(|g| pred(&g.doc_id, &g.head, &g.tail, &g.label))
        .collect();
    if let Some(or) = gold.iter().find(|g| g.label == "Or") {
        preds.push(pred(&or.doc_id, &or.tail, &or.head, "Or"));
    }
    let doc = &docs[0];
    let linked = |a: &str, b: &str| gold.iter().any(|g| g.head == a && g.tail == b);
    let spurious = doc
        .entities
        .iter()
        .flat_map(|a| doc.entities.iter().map(move |b| (a, b)))
        .find(|(a, b)| a.entity_id != b.entity_id && !linked(&a.entity_id, &b.entity_id))
        .expect("some pair has no link");
    preds.push(pred(
        &doc.doc_id,
        &spurious.0.entity_id,
        &spurious.1.entity_id,
        "Site",
    ));

    let directed = score(&preds, &gold, &ScoreOptions::default())?;
    println!("directed:");
    print!("{}", render_report(&directed, ReportFormat::Table));

    let options = ScoreOptions {
        undirected_classes: ["Or".to_string()].into(),
        ..ScoreOptions::default()
    };
    let undirected = score(&preds, &gold, &options)?;
    println!("\nwith Or undirected:");
    print!("{}", render_report(&undirected, ReportFormat::Table));
    Ok(())
}
