//! Generate a corpus, run every stage from one config and print the manifest.
//!
//! cargo run --release --example end_to_end -- [OUT_DIR]

use std::path::PathBuf;

use wlprel::eval::{render_report, EvalReport, ReportFormat};
use wlprel::pipeline::{run_pipeline, PipelineConfig};
use wlprel::synth::{generate_corpus, write_corpus, SynthConfig};

fn main() -> anyhow::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("wlprel-end-to-end"));
    let corpus = out.join("protocols");
    write_corpus(&corpus, &generate_corpus(11, 50, &SynthConfig::default()))?;

    let config = PipelineConfig::from_toml(&format!(
        r#"
        seed = 21
        output_dir = {:?}
        [corpus]
        dir = {:?}
        [classifier]
        epochs = 8
        "#,
        out.join("run"),
        corpus
    ))?;
    let manifest = run_pipeline(&config)?;

    println!(
        "splits: {} train / {} dev / {} test",
        manifest.splits.train.len(),
        manifest.splits.dev.len(),
        manifest.splits.test.len()
    );
    for a in manifest.artifacts.iter().chain([&manifest.model]) {
        println!(
            "{:<12} {:>7} records  {}",
            a.name,
            a.records,
            &a.sha256[..16]
        );
    }
    let report: EvalReport = serde_json::from_str(&std::fs::read_to_string(
        config.output_dir.join("report.json"),
    )?)?;
    println!();
    print!("{}", render_report(&report, ReportFormat::Table));
    Ok(())
}
