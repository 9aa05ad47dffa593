//! Turn candidate pairs into classifier input and show one of them.
//!
//! cargo run --example build_sequences -- [DIR]

use std::path::PathBuf;

use wlprel::candidates::{enumerate_pairs, PairPolicy};
use wlprel::corpus::read_corpus_dir;
use wlprel::sequence::{build_sequences, SequenceConfig};

fn main() -> anyhow::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/protocols"));
    let docs = read_corpus_dir(&dir)?;
    let config = SequenceConfig::default();

    let mut all = Vec::new();
    for doc in &docs {
        let pairs = enumerate_pairs(doc, &PairPolicy::default());
        all.extend(build_sequences(doc, &pairs, &config)?);
    }
    let positives = all
        .iter()
        .filter(|s| s.label != wlprel::NO_RELATION)
        .count();
    let longest = all.iter().map(|s| s.tokens.len()).max().unwrap_or(0);
    println!(
        "{} sequences, {positives} labelled, longest {longest} tokens",
        all.len()
    );

    if let Some(ex) = all.iter().find(|s| s.label != wlprel::NO_RELATION) {
        println!("\n{} -> {}", ex.pair_key(), ex.label);
        for (tok, t) in ex.tokens.iter().zip(&ex.type_ids) {
            print!("{tok}/{t} ");
        }
        println!();
        println!("\n{}", serde_json::to_string(ex)?);
    }
    Ok(())
}
