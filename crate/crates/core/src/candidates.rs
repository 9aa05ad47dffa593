//! Candidate pair generation.
//!
//! Relations are directed, so every ordered pair of distinct entities is a
//! potential candidate: `n² − n` of them for `n` entities. A [`PairPolicy`]
//! narrows that set, either to pairs inside one protocol step or to pairs
//! with fewer than `max_token_distance` tokens between them.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{Document, EntitySpan};
use crate::error::CandidateError;
use crate::NO_RELATION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyMode {
    AllPairs,
    SameStep,
    TokenDistance,
}

impl FromStr for PolicyMode {
    type Err = CandidateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" | "all_pairs" => Ok(PolicyMode::AllPairs),
            "step" | "same_step" => Ok(PolicyMode::SameStep),
            "dist" | "token_distance" => Ok(PolicyMode::TokenDistance),
            other => Err(CandidateError::UnknownPolicy(other.to_string())),
        }
    }
}

impl fmt::Display for PolicyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolicyMode::AllPairs => "all",
            PolicyMode::SameStep => "step",
            PolicyMode::TokenDistance => "dist",
        })
    }
}

pub const DEFAULT_MAX_TOKEN_DISTANCE: usize = 14;

/// Which ordered pairs to submit to the classifier.
///
/// `max_token_distance` is only read in [`PolicyMode::TokenDistance`], where a
/// pair survives when its gap is strictly below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairPolicy {
    pub mode: PolicyMode,
    #[serde(default = "default_max_distance")]
    pub max_token_distance: usize,
}

fn default_max_distance() -> usize {
    DEFAULT_MAX_TOKEN_DISTANCE
}

impl Default for PairPolicy {
    fn default() -> Self {
        Self::token_distance(DEFAULT_MAX_TOKEN_DISTANCE)
    }
}

impl fmt::Display for PairPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            PolicyMode::TokenDistance => write!(f, "dist<{}", self.max_token_distance),
            mode => write!(f, "{mode}"),
        }
    }
}

impl PairPolicy {
    pub fn all_pairs() -> Self {
        Self {
            mode: PolicyMode::AllPairs,
            max_token_distance: DEFAULT_MAX_TOKEN_DISTANCE,
        }
    }

    pub fn same_step() -> Self {
        Self {
            mode: PolicyMode::SameStep,
            max_token_distance: DEFAULT_MAX_TOKEN_DISTANCE,
        }
    }

    pub fn token_distance(max_token_distance: usize) -> Self {
        Self {
            mode: PolicyMode::TokenDistance,
            max_token_distance,
        }
    }

    /// Whether the ordered pair `(a, b)` of `doc` passes this policy.
    pub fn admits(&self, doc: &Document, a: &EntitySpan, b: &EntitySpan) -> bool {
        match self.mode {
            PolicyMode::AllPairs => true,
            PolicyMode::SameStep => {
                doc.step_of_token(a.first_tok) == doc.step_of_token(b.first_tok)
            }
            PolicyMode::TokenDistance => token_gap(a, b) < self.max_token_distance,
        }
    }
}

/// An ordered pair submitted for classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidatePair {
    pub doc_id: String,
    pub head: String,
    pub tail: String,
    pub token_gap: usize,
    pub gold_label: String,
}

impl CandidatePair {
    pub fn is_positive(&self) -> bool {
        self.gold_label != NO_RELATION
    }
}

/// Tokens strictly between two spans; zero when they touch or overlap.
pub fn token_gap(a: &EntitySpan, b: &EntitySpan) -> usize {
    let (earlier, later) = if a.first_tok <= b.first_tok {
        (a, b)
    } else {
        (b, a)
    };
    later.first_tok.saturating_sub(earlier.last_tok + 1)
}

/// [`token_gap`] for two distinct entities.
pub fn token_distance(a: &EntitySpan, b: &EntitySpan) -> Result<usize, CandidateError> {
    if a.entity_id == b.entity_id {
        return Err(CandidateError::SameEntity(a.entity_id.clone()));
    }
    Ok(token_gap(a, b))
}

/// Gold label by ordered `(head, tail)`. The first annotated relation wins
/// when a pair carries more than one.
pub fn gold_lookup(doc: &Document) -> HashMap<(&str, &str), &str> {
    let mut map = HashMap::with_capacity(doc.gold_relations.len());
    for rel in &doc.gold_relations {
        map.entry((rel.head.as_str(), rel.tail.as_str()))
            .or_insert(rel.label.as_str());
    }
    map
}

/// All ordered pairs of `doc` admitted by `policy`, head-major in entity order.
pub fn enumerate_pairs(doc: &Document, policy: &PairPolicy) -> Vec<CandidatePair> {
    let gold = gold_lookup(doc);
    let mut out = Vec::new();
    for (i, head) in doc.entities.iter().enumerate() {
        for (j, tail) in doc.entities.iter().enumerate() {
            if i == j || !policy.admits(doc, head, tail) {
                continue;
            }
            let label = gold
                .get(&(head.entity_id.as_str(), tail.entity_id.as_str()))
                .copied()
                .unwrap_or(NO_RELATION);
            out.push(CandidatePair {
                doc_id: doc.doc_id.clone(),
                head: head.entity_id.clone(),
                tail: tail.entity_id.clone(),
                token_gap: token_gap(head, tail),
                gold_label: label.to_string(),
            });
        }
    }
    out
}

/// Raw per-document counts behind [`CandidateStats`]; merging is associative.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCounts {
    pub documents: usize,
    pub pairs: usize,
    pub positive_pairs: usize,
    pub reference_pairs: usize,
    pub gold_total: usize,
    pub gold_retained: usize,
}

impl PairCounts {
    pub fn for_document(doc: &Document, policy: &PairPolicy, reference: &PairPolicy) -> Self {
        let pairs = enumerate_pairs(doc, policy);
        let index = doc.entity_index();
        let gold_retained = doc
            .gold_relations
            .iter()
            .filter(|r| {
                let (h, t) = (
                    &doc.entities[index[r.head.as_str()]],
                    &doc.entities[index[r.tail.as_str()]],
                );
                policy.admits(doc, h, t)
            })
            .count();
        Self {
            documents: 1,
            pairs: pairs.len(),
            positive_pairs: pairs.iter().filter(|p| p.is_positive()).count(),
            reference_pairs: enumerate_pairs(doc, reference).len(),
            gold_total: doc.gold_relations.len(),
            gold_retained,
        }
    }

    pub fn merge(self, other: Self) -> Self {
        Self {
            documents: self.documents + other.documents,
            pairs: self.pairs + other.pairs,
            positive_pairs: self.positive_pairs + other.positive_pairs,
            reference_pairs: self.reference_pairs + other.reference_pairs,
            gold_total: self.gold_total + other.gold_total,
            gold_retained: self.gold_retained + other.gold_retained,
        }
    }
}

/// Corpus-level statistics of one policy against a reference policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateStats {
    pub policy: PairPolicy,
    pub reference_policy: PairPolicy,
    pub documents: usize,
    pub total_pairs: usize,
    pub reference_pairs: usize,
    pub positive_pairs: usize,
    pub gold_relations_total: usize,
    pub gold_relations_retained: usize,
    pub retention: f64,
    /// Gold-labelled pairs over all pairs, pooled across the corpus.
    pub positive_rate: f64,
    /// Mean of the per-document positive rate over documents with any pair.
    pub positive_rate_macro: f64,
    pub reduction_vs_reference: f64,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

pub fn candidate_stats(
    corpus: &[Document],
    policy: &PairPolicy,
    reference_policy: &PairPolicy,
) -> Result<CandidateStats, CandidateError> {
    if corpus.is_empty() {
        return Err(CandidateError::EmptyCorpus);
    }
    let per_doc: Vec<PairCounts> = corpus
        .iter()
        .map(|d| PairCounts::for_document(d, policy, reference_policy))
        .collect();
    let rates: Vec<f64> = per_doc
        .iter()
        .filter(|c| c.pairs > 0)
        .map(|c| ratio(c.positive_pairs, c.pairs))
        .collect();
    let total = per_doc
        .iter()
        .fold(PairCounts::default(), |acc, c| acc.merge(*c));
    let reduction = if total.reference_pairs == 0 {
        0.0
    } else {
        (1.0 - ratio(total.pairs, total.reference_pairs)).clamp(0.0, 1.0)
    };
    Ok(CandidateStats {
        policy: *policy,
        reference_policy: *reference_policy,
        documents: total.documents,
        total_pairs: total.pairs,
        reference_pairs: total.reference_pairs,
        positive_pairs: total.positive_pairs,
        gold_relations_total: total.gold_total,
        gold_relations_retained: total.gold_retained,
        retention: if total.gold_total == 0 {
            1.0
        } else {
            ratio(total.gold_retained, total.gold_total)
        },
        positive_rate: ratio(total.positive_pairs, total.pairs),
        positive_rate_macro: if rates.is_empty() {
            0.0
        } else {
            rates.iter().sum::<f64>() / rates.len() as f64
        },
        reduction_vs_reference: reduction,
    })
}

impl CandidateStats {
    pub fn render_table(&self) -> String {
        let rows = [
            ("policy", self.policy.to_string()),
            ("reference", self.reference_policy.to_string()),
            ("documents", self.documents.to_string()),
            ("pairs", self.total_pairs.to_string()),
            ("reference pairs", self.reference_pairs.to_string()),
            ("positive pairs", self.positive_pairs.to_string()),
            ("gold relations", self.gold_relations_total.to_string()),
            ("gold retained", self.gold_relations_retained.to_string()),
            ("retention", format!("{:.4}", self.retention)),
            (
                "positive rate (micro)",
                format!("{:.4}", self.positive_rate),
            ),
            (
                "positive rate (macro)",
                format!("{:.4}", self.positive_rate_macro),
            ),
            (
                "reduction vs reference",
                format!("{:.4}", self.reduction_vs_reference),
            ),
        ];
        let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }
}
