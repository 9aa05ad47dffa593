use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use wlprel::pipeline::{ingest, run_pipeline, stats_sweep, PipelineConfig, RunManifest};
use wlprel::synth::{generate_corpus, write_corpus, SynthConfig};
use wlprel::PairPolicy;

fn digest(path: &Path) -> String {
    hex::encode(Sha256::digest(fs::read(path).unwrap()))
}

fn synth_dir(root: &Path, n: usize) -> std::path::PathBuf {
    let dir = root.join("corpus");
    write_corpus(&dir, &generate_corpus(31, n, &SynthConfig::default())).unwrap();
    dir
}

#[test]
fn manifest_lists_every_stage_output() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = synth_dir(tmp.path(), 30);
    let out = tmp.path().join("run");
    let manifest = run_pipeline(&PipelineConfig::new(&corpus, &out)).unwrap();

    let names: Vec<&str> = manifest.artifacts.iter().map(|a| a.name.as_str()).collect();
    assert_eq!(
        names,
        ["corpus", "candidates", "sequences", "predictions", "report"]
    );
    for a in manifest.artifacts.iter().chain([&manifest.model]) {
        assert_eq!(digest(&out.join(&a.path)), a.sha256, "{}", a.name);
    }
    let on_disk: RunManifest =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(on_disk, manifest);
    assert_eq!(
        manifest.splits.train.len() + manifest.splits.dev.len() + manifest.splits.test.len(),
        30
    );
    assert_eq!(manifest.artifact("corpus").unwrap().records, 30);
}

#[test]
fn reruns_reproduce_every_digest() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = synth_dir(tmp.path(), 20);
    let a = run_pipeline(&PipelineConfig::new(&corpus, tmp.path().join("a"))).unwrap();
    let b = run_pipeline(&PipelineConfig::new(&corpus, tmp.path().join("b"))).unwrap();
    assert_eq!(a.corpus_digest, b.corpus_digest);
    assert_eq!(a.splits, b.splits);
    for (x, y) in a.artifacts.iter().zip(&b.artifacts) {
        assert_eq!(x.sha256, y.sha256, "{}", x.name);
    }
    assert_eq!(a.model.sha256, b.model.sha256);

    let c =
        run_pipeline(&PipelineConfig::new(&corpus, tmp.path().join("c")).with_seed(99)).unwrap();
    assert_ne!(a.splits, c.splits);
}

#[test]
fn missing_corpus_fails_at_ingest() {
    let tmp = tempfile::tempdir().unwrap();
    let err = run_pipeline(&PipelineConfig::new(
        tmp.path().join("nope"),
        tmp.path().join("out"),
    ))
    .unwrap_err();
    assert_eq!(err.stage, "ingest");
    assert!(err.to_string().starts_with("ingest stage failed"));
}

#[test]
fn broken_annotation_names_the_stage() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = tmp.path().join("corpus");
    fs::create_dir_all(&corpus).unwrap();
    fs::write(corpus.join("a.txt"), "Add water").unwrap();
    fs::write(corpus.join("a.ann"), "T1\tAction 0 3\tMix\n").unwrap();
    let err = run_pipeline(&PipelineConfig::new(&corpus, tmp.path().join("out"))).unwrap_err();
    assert_eq!(err.stage, "ingest");
    assert!(format!("{:#}", anyhow::Error::from(err)).contains("T1"));
}

#[test]
fn split_directories_are_respected() {
    let tmp = tempfile::tempdir().unwrap();
    let protocols = generate_corpus(8, 9, &SynthConfig::default());
    for (name, part) in [
        ("train", &protocols[..6]),
        ("dev", &protocols[6..7]),
        ("test", &protocols[7..]),
    ] {
        write_corpus(&tmp.path().join(name), part).unwrap();
    }
    let (docs, splits) = ingest(tmp.path(), 0).unwrap();
    assert_eq!(docs.len(), 9);
    assert_eq!(splits.source, "directory");
    assert_eq!(splits.test, ["protocol_007", "protocol_008"]);
}

#[test]
fn bundled_config_runs() {
    let config_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/pipeline.toml");
    let tmp = tempfile::tempdir().unwrap();
    let mut config = PipelineConfig::load(&config_path).unwrap();
    assert!(config.corpus.dir.ends_with("fixtures/protocols"));
    config.output_dir = tmp.path().to_path_buf();
    let manifest = run_pipeline(&config).unwrap();
    assert_eq!(manifest.artifact("corpus").unwrap().records, 6);
    assert!(tmp.path().join("report.json").is_file());
}

#[test]
fn sweep_is_monotone() {
    let docs: Vec<_> = generate_corpus(12, 15, &SynthConfig::default())
        .iter()
        .map(|p| p.parse().unwrap())
        .collect();
    let sweep = stats_sweep(&docs, 1..=30, &PairPolicy::same_step()).unwrap();
    assert_eq!(sweep.sweep.len(), 30);
    for w in sweep.sweep.windows(2) {
        assert!(w[1].pairs >= w[0].pairs);
        assert!(w[1].retention >= w[0].retention);
        assert!(w[1].reduction_vs_reference <= w[0].reduction_vs_reference);
    }
    let last = sweep.sweep.last().unwrap();
    assert!(last.pairs <= sweep.all_pairs.total_pairs);
    let table = sweep.render_table();
    assert!(table.lines().count() > 30);
}
