//! Compare pair policies: how many candidates each one yields and how much of
//! the gold it keeps.
//!
//! cargo run --example candidate_stats -- [DIR]

use std::path::PathBuf;

use wlprel::candidates::{candidate_stats, PairPolicy};
use wlprel::corpus::read_corpus_dir;
use wlprel::pipeline::stats_sweep;

fn main() -> anyhow::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/protocols"));
    let docs = read_corpus_dir(&dir)?;
    let reference = PairPolicy::same_step();

    for policy in [
        PairPolicy::all_pairs(),
        PairPolicy::same_step(),
        PairPolicy::token_distance(14),
    ] {
        let s = candidate_stats(&docs, &policy, &reference)?;
        println!(
            "{:<10} {:>6} pairs  positive {:>6.2}%  retention {:>6.2}%",
            policy.to_string(),
            s.total_pairs,
            100.0 * s.positive_rate,
            100.0 * s.retention
        );
    }

    println!();
    let sweep = stats_sweep(&docs, [1, 2, 4, 8, 14, 20, 30], &reference)?;
    print!("{}", sweep.render_table());
    Ok(())
}
