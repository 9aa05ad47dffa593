//! Per-class precision, recall and F1 against gold relations.
//!
//! Scoring is relative to the gold annotation, not to the candidate list: a
//! gold relation that was never enumerated still counts as a false negative.
//! `NoRelation` is not a reported class.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::classifier::PredictionRecord;
use crate::corpus::Document;
use crate::error::EvalError;
use crate::{NO_RELATION, RELATION_CLASSES};

/// A gold relation with its document.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GoldRelation {
    pub doc_id: String,
    pub head: String,
    pub tail: String,
    pub label: String,
}

pub fn gold_from_corpus(docs: &[Document]) -> Vec<GoldRelation> {
    docs.iter()
        .flat_map(|d| {
            d.gold_relations.iter().map(move |r| GoldRelation {
                doc_id: d.doc_id.clone(),
                head: r.head.clone(),
                tail: r.tail.clone(),
                label: r.label.clone(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl Counts {
    pub fn merge(self, o: Counts) -> Counts {
        Counts {
            tp: self.tp + o.tp,
            fp: self.fp + o.fp,
            fn_: self.fn_ + o.fn_,
        }
    }
}

fn div(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Harmonic mean of precision and recall, zero when both are zero.
pub fn f1_score(precision: f64, recall: f64) -> f64 {
    if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
    #[serde(flatten)]
    pub counts: Counts,
}

impl ClassMetrics {
    pub fn from_counts(counts: Counts) -> Self {
        let precision = div(counts.tp, counts.tp + counts.fp);
        let recall = div(counts.tp, counts.tp + counts.fn_);
        Self {
            precision,
            recall,
            f1: f1_score(precision, recall),
            support: counts.tp + counts.fn_,
            counts,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AveragedMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub per_class: IndexMap<String, ClassMetrics>,
    pub micro: ClassMetrics,
    /// Unweighted means of the per-class rows; F1 is the mean of class F1s.
    #[serde(rename = "macro")]
    pub macro_avg: AveragedMetrics,
}

impl EvalReport {
    pub fn from_counts<S: Into<String>>(classes: impl IntoIterator<Item = (S, Counts)>) -> Self {
        let per_class: IndexMap<String, ClassMetrics> = classes
            .into_iter()
            .map(|(l, c)| (l.into(), ClassMetrics::from_counts(c)))
            .collect();
        let pooled = per_class
            .values()
            .fold(Counts::default(), |acc, m| acc.merge(m.counts));
        let n = per_class.len();
        let mean = |f: fn(&ClassMetrics) -> f64| {
            if n == 0 {
                0.0
            } else {
                per_class.values().map(f).sum::<f64>() / n as f64
            }
        };
        let macro_avg = AveragedMetrics {
            precision: mean(|m| m.precision),
            recall: mean(|m| m.recall),
            f1: mean(|m| m.f1),
            support: per_class.values().map(|m| m.support).sum(),
        };
        Self {
            micro: ClassMetrics::from_counts(pooled),
            per_class,
            macro_avg,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScoreOptions {
    /// Classes scored without regard to direction.
    pub undirected_classes: BTreeSet<String>,
    /// Allowed predicted labels. `None` allows the corpus classes and any
    /// label seen in the gold set.
    pub labels: Option<BTreeSet<String>>,
}

type PairKey = (String, String, String);

fn class_order(labels: &BTreeSet<&str>) -> Vec<String> {
    let mut out: Vec<String> = RELATION_CLASSES
        .iter()
        .filter(|c| labels.contains(*c))
        .map(|c| c.to_string())
        .collect();
    out.extend(
        labels
            .iter()
            .filter(|l| !RELATION_CLASSES.contains(l))
            .map(|l| l.to_string()),
    );
    out
}

/// Score predictions against gold relations.
///
/// Per class `c`, with pairs compared as ordered `(doc, head, tail)` keys
/// (unordered for undirected classes): TP are gold-`c` pairs predicted `c`,
/// FP are pairs predicted `c` without a gold-`c` link, FN are gold-`c` pairs
/// predicted otherwise or never predicted at all.
pub fn score(
    predictions: &[PredictionRecord],
    gold: &[GoldRelation],
    options: &ScoreOptions,
) -> Result<EvalReport, EvalError> {
    let mut seen: HashSet<(&str, &str, &str)> = HashSet::with_capacity(predictions.len());
    for p in predictions {
        if !seen.insert((&p.doc_id, &p.head, &p.tail)) {
            return Err(EvalError::DuplicatePrediction {
                doc_id: p.doc_id.clone(),
                head: p.head.clone(),
                tail: p.tail.clone(),
            });
        }
    }
    let allowed: BTreeSet<&str> = match &options.labels {
        Some(l) => l.iter().map(String::as_str).collect(),
        None => RELATION_CLASSES
            .iter()
            .copied()
            .chain(gold.iter().map(|g| g.label.as_str()))
            .collect(),
    };
    for p in predictions {
        if p.predicted != NO_RELATION && !allowed.contains(p.predicted.as_str()) {
            return Err(EvalError::UnknownLabel(p.predicted.clone()));
        }
    }

    let key = |label: &str, doc: &str, head: &str, tail: &str| -> PairKey {
        if options.undirected_classes.contains(label) && tail < head {
            (doc.to_string(), tail.to_string(), head.to_string())
        } else {
            (doc.to_string(), head.to_string(), tail.to_string())
        }
    };
    let mut gold_sets: HashMap<&str, HashSet<PairKey>> = HashMap::new();
    for g in gold.iter().filter(|g| g.label != NO_RELATION) {
        gold_sets
            .entry(&g.label)
            .or_default()
            .insert(key(&g.label, &g.doc_id, &g.head, &g.tail));
    }
    let mut pred_sets: HashMap<&str, HashSet<PairKey>> = HashMap::new();
    for p in predictions.iter().filter(|p| p.predicted != NO_RELATION) {
        pred_sets.entry(&p.predicted).or_default().insert(key(
            &p.predicted,
            &p.doc_id,
            &p.head,
            &p.tail,
        ));
    }

    let present: BTreeSet<&str> = gold_sets.keys().chain(pred_sets.keys()).copied().collect();
    let empty = HashSet::new();
    let rows = class_order(&present).into_iter().map(|label| {
        let g = gold_sets.get(label.as_str()).unwrap_or(&empty);
        let p = pred_sets.get(label.as_str()).unwrap_or(&empty);
        let tp = g.intersection(p).count();
        let counts = Counts {
            tp,
            fp: p.len() - tp,
            fn_: g.len() - tp,
        };
        (label, counts)
    });
    Ok(EvalReport::from_counts(rows.collect::<Vec<_>>()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Table,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(ReportFormat::Table),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown report format {other:?}")),
        }
    }
}

/// Render as a results table (two decimals) or as lossless JSON.
pub fn render_report(report: &EvalReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            serde_json::to_string_pretty(report).expect("report serialization cannot fail") + "\n"
        }
        ReportFormat::Table => {
            let header = "Relation Type";
            let width = report
                .per_class
                .keys()
                .map(|k| k.chars().count())
                .chain([header.len(), "Micro-Avg".len()])
                .max()
                .unwrap_or(0);
            let mut out = String::new();
            let _ = writeln!(out, "{header:<width$} Precision Recall F1-Score Support");
            let mut row = |label: &str, p: f64, r: f64, f: f64, s: usize| {
                let _ = writeln!(out, "{label:<width$} {p:.2} {r:.2} {f:.2} {s}");
            };
            for (label, m) in &report.per_class {
                row(label, m.precision, m.recall, m.f1, m.support);
            }
            let m = &report.micro;
            row("Micro-Avg", m.precision, m.recall, m.f1, m.support);
            let m = &report.macro_avg;
            row("Macro-Avg", m.precision, m.recall, m.f1, m.support);
            out
        }
    }
}
