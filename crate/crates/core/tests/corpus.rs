use std::path::{Path, PathBuf};

use wlprel::corpus::{parse_standoff, read_corpus_dir, RelationOrigin};
use wlprel::error::ParseError;
use wlprel::RELATION_CLASSES;

fn corpus_dirs() -> Vec<PathBuf> {
    let mut dirs = vec![Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/protocols")];
    if let Some(d) = std::env::var_os("WLPC_DIR") {
        dirs.push(d.into());
    }
    dirs
}

#[test]
fn every_label_is_a_known_class() {
    for dir in corpus_dirs() {
        let docs = read_corpus_dir(&dir).unwrap();
        for d in &docs {
            d.validate().unwrap();
            for r in &d.gold_relations {
                assert!(
                    RELATION_CLASSES.contains(&r.label.as_str()),
                    "{}: {}",
                    d.doc_id,
                    r.label
                );
            }
        }
    }
}

#[test]
fn fixtures_cover_the_hard_cases() {
    let docs = read_corpus_dir(&corpus_dirs()[0]).unwrap();
    let ents = || docs.iter().flat_map(|d| &d.entities);
    assert!(ents().any(|e| e.discontinuous));
    assert!(docs.iter().any(|d| {
        d.entities
            .iter()
            .enumerate()
            .any(|(i, a)| d.entities[i + 1..].iter().any(|b| a.overlaps_tokens(b)))
    }));
    assert!(ents().any(|e| e.surface.contains('µ')));
    let labels: std::collections::BTreeSet<&str> = docs
        .iter()
        .flat_map(|d| &d.gold_relations)
        .map(|r| r.label.as_str())
        .collect();
    assert_eq!(labels.len(), RELATION_CLASSES.len());
}

#[test]
fn event_arguments_become_trigger_relations() {
    let text = "Mix the beads and spin";
    let ann = "T1\tAction 0 3\tMix\nT2\tReagent 8 13\tbeads\nT3\tAction 18 22\tspin\n\
               E1\tAction:T1 Acts-On:T2\nE2\tAction:T3 Acts-On2:T2 Commands:E1\n";
    let doc = parse_standoff(text, ann, "d").unwrap();
    let got: Vec<(&str, &str, &str)> = doc
        .gold_relations
        .iter()
        .map(|r| (r.head.as_str(), r.tail.as_str(), r.label.as_str()))
        .collect();
    assert_eq!(
        got,
        [
            ("T1", "T2", "Acts-On"),
            ("T3", "T2", "Acts-On"),
            ("T3", "T1", "Commands")
        ]
    );
    assert!(doc
        .gold_relations
        .iter()
        .all(|r| r.origin == RelationOrigin::EventArgument));
}

#[test]
fn annotation_errors_are_specific() {
    let text = "Add water";
    let err = parse_standoff(text, "T1\tAction 0 3\tMix\n", "d").unwrap_err();
    assert!(matches!(err, ParseError::OffsetMismatch { .. }), "{err}");
    let err =
        parse_standoff(text, "T1\tAction 0 3\tAdd\nR1\tSite Arg1:T1 Arg2:T9\n", "d").unwrap_err();
    assert!(matches!(err, ParseError::DanglingReference { .. }), "{err}");
    let err = parse_standoff(text, "T1\tAction 0 30\tAdd\n", "d").unwrap_err();
    assert!(matches!(err, ParseError::SpanOutOfBounds { .. }), "{err}");
    let err = parse_standoff(text, "T1\tAction zero 3\tAdd\n", "d").unwrap_err();
    assert!(
        matches!(err, ParseError::MalformedLine { line: 1, .. }),
        "{err}"
    );
    // Notes, attributes and normalizations are skipped.
    let ok = parse_standoff(
        text,
        "T1\tAction 0 3\tAdd\n#1\tAnnotatorNotes T1\tx\nA1\tNeg T1\nN1\tRef T1 x:y\n",
        "d",
    );
    assert!(ok.is_ok());
}
