use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn wlprel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wlprel"))
        .args(args)
        .env_remove("WLPREL_OUT")
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = wlprel(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/protocols")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn stage_by_stage() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = tmp.path().join("corpus.jsonl");
    let seqs = tmp.path().join("seqs.jsonl");
    let model = tmp.path().join("model.json");
    let preds = tmp.path().join("preds.jsonl");

    ok(&["ingest", "--corpus", s(&fixtures()), "--out", s(&corpus)]);
    assert_eq!(fs::read_to_string(&corpus).unwrap().lines().count(), 6);

    let stats = ok(&["stats", "--corpus", s(&corpus), "--max-threshold", "20"]);
    assert!(stats.contains("all pairs:"));
    let json = ok(&["stats", "--corpus", s(&corpus), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["sweep"].as_array().unwrap().len(), 30);

    let cand = ok(&["candidates", "--corpus", s(&corpus), "--policy", "step"]);
    assert!(cand.contains("retention"));

    ok(&["sequences", "--corpus", s(&corpus), "--out", s(&seqs)]);
    ok(&[
        "--seed",
        "3",
        "train",
        "--sequences",
        s(&seqs),
        "--out",
        s(&model),
        "--epochs",
        "2",
    ]);
    ok(&[
        "predict",
        "--model",
        s(&model),
        "--in",
        s(&seqs),
        "--out",
        s(&preds),
    ]);
    assert_eq!(
        fs::read_to_string(&seqs).unwrap().lines().count(),
        fs::read_to_string(&preds).unwrap().lines().count()
    );

    let table = ok(&["evaluate", "--gold", s(&corpus), "--pred", s(&preds)]);
    assert!(table.starts_with("Relation Type"));
    assert!(table.contains("Micro-Avg") && table.contains("Macro-Avg"));
    let json = ok(&[
        "evaluate",
        "--gold",
        s(&corpus),
        "--pred",
        s(&preds),
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["micro"]["f1"].as_f64().unwrap() > 0.0);
}

#[test]
fn duplicate_predictions_fail_evaluation() {
    let tmp = tempfile::tempdir().unwrap();
    let preds = tmp.path().join("dup.jsonl");
    let line =
        r#"{"doc_id":"protocol_101","head":"T1","tail":"T3","predicted":"Acts-On","scores":{}}"#;
    fs::write(&preds, format!("{line}\n{line}\n")).unwrap();
    let out = wlprel(&["evaluate", "--gold", s(&fixtures()), "--pred", s(&preds)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate"));
}

#[test]
fn run_honours_output_env() {
    let tmp = tempfile::tempdir().unwrap();
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/pipeline.toml");
    let out = Command::new(env!("CARGO_BIN_EXE_wlprel"))
        .args(["run", "--config", s(&config)])
        .env("WLPREL_OUT", tmp.path())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(tmp.path().join("manifest.json").is_file());
    assert!(String::from_utf8_lossy(&out.stdout).contains("Micro-Avg"));
}

#[test]
fn bad_input_is_reported() {
    let out = wlprel(&[
        "ingest",
        "--corpus",
        "/definitely/missing",
        "--out",
        "/tmp/x.jsonl",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
