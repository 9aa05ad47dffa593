//! Relation and event extraction for wet lab protocols, framed as typed link
//! prediction between known entities.
//!
//! The pipeline runs in five stages, each a module here:
//!
//! 1. [`corpus`] parses brat standoff files into offset-exact [`Document`]s.
//! 2. [`candidates`] enumerates ordered entity pairs under a proximity policy.
//! 3. [`sequence`] turns each pair into a marker-annotated classification
//!    sequence with a token-type mask.
//! 4. [`classifier`] trains and applies a sparse multinomial logistic model.
//! 5. [`eval`] scores predictions per relation class with micro and macro
//!    averages.
//!
//! [`pipeline`] wires the stages together behind a declarative config and a
//! run manifest, and [`synth`] generates seeded annotated protocols for
//! experiments and tests. Runnable walkthroughs live in `examples/`.

pub mod candidates;
pub mod classifier;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod pipeline;
pub mod sequence;
pub mod synth;

pub use candidates::{CandidatePair, CandidateStats, PairPolicy, PolicyMode};
pub use classifier::{BaselineModel, LabelInventory, PredictionRecord, TrainConfig};
pub use corpus::{Document, EntitySpan, RelationInstance, StepSpan, Token};
pub use eval::{EvalReport, ReportFormat, ScoreOptions};
pub use sequence::{SequenceConfig, SequenceExample};

/// Label for candidate pairs without an annotated link.
pub const NO_RELATION: &str = "NoRelation";

/// The fourteen relation classes of the wet lab protocol corpus, in the
/// order the results table lists them.
pub const RELATION_CLASSES: [&str; 14] = [
    "Site",
    "Setting",
    "Measure-Type-Link",
    "Coreference-Link",
    "Mod-Link",
    "Count",
    "Meronym",
    "Using",
    "Measure",
    "Commands",
    "Of-Type",
    "Or",
    "Product",
    "Acts-On",
];
