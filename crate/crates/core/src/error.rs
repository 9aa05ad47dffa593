use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while reading standoff annotations into a [`crate::Document`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{doc_id}: surface mismatch for {entity_id}: annotation has {expected:?}, text has {found:?}")]
    OffsetMismatch {
        doc_id: String,
        entity_id: String,
        expected: String,
        found: String,
    },
    #[error("{doc_id}: line {line}: {record} references unknown annotation {target}")]
    DanglingReference {
        doc_id: String,
        line: usize,
        record: String,
        target: String,
    },
    #[error("{doc_id}: line {line}: malformed record: {reason}")]
    MalformedLine {
        doc_id: String,
        line: usize,
        reason: String,
    },
    #[error(
        "{doc_id}: entity {entity_id} span {start}..{end} lies outside the text ({len} chars)"
    )]
    SpanOutOfBounds {
        doc_id: String,
        entity_id: String,
        start: usize,
        end: usize,
        len: usize,
    },
    #[error("{doc_id}: entity {entity_id} covers no tokens")]
    EmptyEntity { doc_id: String, entity_id: String },
    #[error("{doc_id}: line {line}: {record} links {entity_id} to itself")]
    SelfRelation {
        doc_id: String,
        line: usize,
        record: String,
        entity_id: String,
    },
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus directory {0} does not exist")]
    MissingDirectory(PathBuf),
    #[error("no annotation file found for {0}")]
    MissingAnnotation(PathBuf),
    #[error("duplicate document id {0}")]
    DuplicateDocument(String),
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CandidateError {
    #[error("token distance requested between {0} and itself")]
    SameEntity(String),
    #[error("candidate statistics need at least one document")]
    EmptyCorpus,
    #[error("unknown pair policy {0:?} (expected all, step or dist)")]
    UnknownPolicy(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("{doc_id}: unknown entity {entity_id}")]
    UnknownEntity { doc_id: String, entity_id: String },
    #[error("{needed} tokens of entities, labels and structure exceed the budget of {max_tokens}")]
    BudgetExhausted { needed: usize, max_tokens: usize },
    #[error("invalid sequence config: {0}")]
    InvalidConfig(String),
    #[error("malformed sequence example: {0}")]
    Malformed(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifierError {
    #[error("class {0:?} has no training examples")]
    DegenerateData(String),
    #[error("label {0:?} is not in the label inventory")]
    UnknownLabel(String),
    #[error("duplicate label {0:?} in inventory")]
    DuplicateLabel(String),
    #[error("label inventory must start with NoRelation")]
    MissingNoRelation,
    #[error("unsupported model format version {0}")]
    UnsupportedVersion(u32),
    #[error("model has {weights} weight vectors for {labels} labels")]
    ShapeMismatch { weights: usize, labels: usize },
    #[error("invalid training config: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("duplicate prediction for {doc_id} {head}->{tail}")]
    DuplicatePrediction {
        doc_id: String,
        head: String,
        tail: String,
    },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
}

/// A failed pipeline stage, tagged with the stage that raised it.
#[derive(Debug, Error)]
#[error("{stage} stage failed: {source}")]
pub struct StageError {
    pub stage: &'static str,
    #[source]
    pub source: anyhow::Error,
}

impl StageError {
    pub fn new(stage: &'static str, source: impl Into<anyhow::Error>) -> Self {
        Self {
            stage,
            source: source.into(),
        }
    }
}
