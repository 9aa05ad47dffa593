//! Parse a standoff directory and print what was found in each protocol.
//!
//! cargo run --example parse_corpus -- [DIR]

use std::collections::BTreeMap;
use std::path::PathBuf;

use wlprel::corpus::read_corpus_dir;

fn main() -> anyhow::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/protocols"));
    let docs = read_corpus_dir(&dir)?;

    let mut labels: BTreeMap<&str, usize> = BTreeMap::new();
    for d in &docs {
        println!(
            "{:<14} {:>3} steps {:>4} tokens {:>3} entities {:>3} relations",
            d.doc_id,
            d.steps.len(),
            d.tokens.len(),
            d.entities.len(),
            d.gold_relations.len()
        );
        for r in &d.gold_relations {
            *labels.entry(&r.label).or_default() += 1;
        }
    }

    println!("\nrelation labels:");
    for (label, n) in labels {
        println!("  {label:<20} {n}");
    }

    // One mention in context, to show offsets and token indices line up.
    if let Some(d) = docs.first() {
        let e = &d.entities[d.entities.len() / 2];
        let step = &d.steps[d.step_of_token(e.first_tok)];
        let words: Vec<&str> = d.tokens[step.first..=step.last]
            .iter()
            .map(|t| t.surface.as_str())
            .collect();
        println!(
            "\n{} {} {:?} at chars {}..{}, tokens {}..={}\n  step: {}",
            d.doc_id,
            e.entity_id,
            e.surface,
            e.start,
            e.end,
            e.first_tok,
            e.last_tok,
            words.join(" ")
        );
    }
    Ok(())
}
