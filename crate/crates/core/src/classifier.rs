//! Sparse multinomial logistic regression over [`SequenceExample`]s.
//!
//! Features are hashed strings (entity-type pair, direction, gap bucket,
//! entity surfaces, marker-window unigrams). Training is plain SGD on the
//! softmax cross-entropy with a seeded shuffle, so a fixed seed yields a
//! bit-identical model.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ClassifierError, SequenceError};
use crate::sequence::{SequenceConfig, SequenceExample};
use crate::{NO_RELATION, RELATION_CLASSES};

pub const MODEL_FORMAT_VERSION: u32 = 1;

/// Ordered class labels; index 0 is always `NoRelation`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct LabelInventory {
    classes: Vec<String>,
}

impl Default for LabelInventory {
    /// `NoRelation` followed by the fourteen corpus relation classes.
    fn default() -> Self {
        Self {
            classes: std::iter::once(NO_RELATION)
                .chain(RELATION_CLASSES)
                .map(String::from)
                .collect(),
        }
    }
}

impl TryFrom<Vec<String>> for LabelInventory {
    type Error = ClassifierError;

    fn try_from(classes: Vec<String>) -> Result<Self, Self::Error> {
        if classes.first().map(String::as_str) != Some(NO_RELATION) {
            return Err(ClassifierError::MissingNoRelation);
        }
        for (i, c) in classes.iter().enumerate() {
            if classes[..i].contains(c) {
                return Err(ClassifierError::DuplicateLabel(c.clone()));
            }
        }
        Ok(Self { classes })
    }
}

impl From<LabelInventory> for Vec<String> {
    fn from(inv: LabelInventory) -> Self {
        inv.classes
    }
}

impl LabelInventory {
    /// `NoRelation`, then every label that occurs, corpus classes in their
    /// canonical order ahead of any others (sorted).
    pub fn from_labels<'a>(labels: impl IntoIterator<Item = &'a str>) -> Self {
        let seen: std::collections::BTreeSet<&str> =
            labels.into_iter().filter(|l| *l != NO_RELATION).collect();
        let mut classes = vec![NO_RELATION.to_string()];
        classes.extend(
            RELATION_CLASSES
                .iter()
                .filter(|c| seen.contains(*c))
                .map(|c| c.to_string()),
        );
        classes.extend(
            seen.iter()
                .filter(|l| !RELATION_CLASSES.contains(l))
                .map(|l| l.to_string()),
        );
        Self { classes }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == label)
    }

    pub fn label(&self, index: usize) -> &str {
        &self.classes[index]
    }

    pub fn labels(&self) -> &[String] {
        &self.classes
    }
}

/// Sparse vector of hashed feature ids, sorted by id with no repeats.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FeatureVector {
    entries: Vec<(u32, f64)>,
}

impl FeatureVector {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, f64)>) -> Self {
        let mut acc: BTreeMap<u32, f64> = BTreeMap::new();
        for (id, w) in pairs {
            *acc.entry(id).or_insert(0.0) += w;
        }
        Self {
            entries: acc.into_iter().collect(),
        }
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct FeatureConfig {
    pub hash_bits: u32,
    /// Unigrams within this many positions of a marker are features.
    pub context_radius: usize,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        Self {
            hash_bits: 20,
            context_radius: 3,
        }
    }
}

/// 64-bit FNV-1a.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn gap_bucket(gap: usize) -> &'static str {
    match gap {
        0 => "0",
        1 => "1",
        2 => "2",
        3..=5 => "3-5",
        6..=9 => "6-9",
        10..=13 => "10-13",
        _ => "14+",
    }
}

/// Relative placement of the two mentions inside the marked context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairGeometry {
    /// Entity A starts no later than entity B.
    pub forward: bool,
    /// Non-marker tokens strictly between the mentions.
    pub gap: usize,
}

fn marker_positions(context: &[String], marker: &str) -> Vec<usize> {
    context
        .iter()
        .enumerate()
        .filter(|(_, t)| *t == marker)
        .map(|(i, _)| i)
        .collect()
}

pub fn pair_geometry(
    context: &[String],
    seq: &SequenceConfig,
) -> Result<PairGeometry, SequenceError> {
    let a = marker_positions(context, &seq.marker_a);
    let b = marker_positions(context, &seq.marker_b);
    let (&[a_open, a_close], &[b_open, b_close]) = (&a[..], &b[..]) else {
        return Err(SequenceError::Malformed(
            "each marker must appear twice".into(),
        ));
    };
    let between = |lo: usize, hi: usize| {
        context[lo + 1..hi]
            .iter()
            .filter(|t| !seq.is_marker(t))
            .count()
    };
    Ok(if a_close < b_open {
        PairGeometry {
            forward: true,
            gap: between(a_close, b_open),
        }
    } else if b_close < a_open {
        PairGeometry {
            forward: false,
            gap: between(b_close, a_open),
        }
    } else {
        PairGeometry {
            forward: a_open <= b_open,
            gap: 0,
        }
    })
}

/// Feature strings of one example, repeated once per occurrence.
pub fn feature_names(
    example: &SequenceExample,
    seq: &SequenceConfig,
    features: &FeatureConfig,
) -> Result<Vec<String>, SequenceError> {
    let seg = example.segments(seq)?;
    let geom = pair_geometry(seg.context, seq)?;
    let bucket = gap_bucket(geom.gap);
    let typepair = format!("{}→{}", seg.head_type, seg.tail_type);
    let surface = |toks: &[String]| toks.join(" ").to_lowercase();

    let mut names = vec![
        "bias".to_string(),
        format!("typepair={typepair}"),
        format!("dir={}", if geom.forward { "fwd" } else { "bwd" }),
        format!("gap={bucket}"),
        format!("typepair_gap={typepair}|{bucket}"),
        format!("a_text={}", surface(seg.head_tokens)),
        format!("b_text={}", surface(seg.tail_tokens)),
    ];
    let r = features.context_radius;
    for (marker, prefix) in [(&seq.marker_a, "a_ctx"), (&seq.marker_b, "b_ctx")] {
        for pos in marker_positions(seg.context, marker) {
            let lo = pos.saturating_sub(r);
            let hi = (pos + r).min(seg.context.len() - 1);
            for tok in &seg.context[lo..=hi] {
                if !seq.is_marker(tok) {
                    names.push(format!("{prefix}={}", tok.to_lowercase()));
                }
            }
        }
    }
    Ok(names)
}

pub fn hash_feature(name: &str, hash_bits: u32) -> u32 {
    let mask = if hash_bits >= 32 {
        u32::MAX
    } else {
        (1u32 << hash_bits) - 1
    };
    (fnv1a(name.as_bytes()) as u32) & mask
}

pub fn featurize(
    example: &SequenceExample,
    seq: &SequenceConfig,
    features: &FeatureConfig,
) -> Result<FeatureVector, SequenceError> {
    let names = feature_names(example, seq, features)?;
    Ok(FeatureVector::from_pairs(
        names
            .iter()
            .map(|n| (hash_feature(n, features.hash_bits), 1.0)),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub seed: u64,
    /// Keep at most this many `NoRelation` examples per positive one;
    /// `None` keeps them all.
    pub negative_ratio: Option<usize>,
    pub features: FeatureConfig,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            epochs: 10,
            learning_rate: 0.1,
            seed: 13,
            negative_ratio: Some(5),
            features: FeatureConfig::default(),
        }
    }
}

/// Trained weights plus everything needed to featurize new inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineModel {
    labels: LabelInventory,
    sequence: SequenceConfig,
    config: TrainConfig,
    /// feature id → one weight per class
    rows: HashMap<u32, Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format_version: u32,
    labels: LabelInventory,
    seed: u64,
    config: TrainConfig,
    sequence: SequenceConfig,
    /// Per class, `(feature id, weight)` sorted by id, zeros omitted.
    weights: Vec<Vec<(u32, f64)>>,
}

/// Softmax with the max subtracted first.
pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|&l| (l - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / total).collect()
}

/// Index of the largest score; the lowest index wins ties.
pub fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub label: String,
    pub class_index: usize,
    pub scores: Vec<f64>,
}

/// One line of a predictions file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub doc_id: String,
    pub head: String,
    pub tail: String,
    pub predicted: String,
    pub scores: IndexMap<String, f64>,
}

impl BaselineModel {
    /// A model with every weight zero.
    pub fn zeros(labels: LabelInventory, sequence: SequenceConfig, config: TrainConfig) -> Self {
        Self {
            labels,
            sequence,
            config,
            rows: HashMap::new(),
        }
    }

    pub fn labels(&self) -> &LabelInventory {
        &self.labels
    }

    pub fn sequence_config(&self) -> &SequenceConfig {
        &self.sequence
    }

    pub fn train_config(&self) -> &TrainConfig {
        &self.config
    }

    pub fn weight(&self, class: usize, feature: u32) -> f64 {
        self.rows.get(&feature).map_or(0.0, |r| r[class])
    }

    pub fn set_weight(&mut self, class: usize, feature: u32, value: f64) {
        let n = self.labels.len();
        self.rows.entry(feature).or_insert_with(|| vec![0.0; n])[class] = value;
    }

    pub fn featurize(&self, example: &SequenceExample) -> Result<FeatureVector, SequenceError> {
        featurize(example, &self.sequence, &self.config.features)
    }

    pub fn logits(&self, x: &FeatureVector) -> Vec<f64> {
        let mut out = vec![0.0; self.labels.len()];
        for &(id, v) in x.entries() {
            if let Some(row) = self.rows.get(&id) {
                for (o, w) in out.iter_mut().zip(row) {
                    *o += w * v;
                }
            }
        }
        out
    }

    pub fn predict_features(&self, x: &FeatureVector) -> Prediction {
        let scores = softmax(&self.logits(x));
        let class_index = argmax(&scores);
        Prediction {
            label: self.labels.label(class_index).to_string(),
            class_index,
            scores,
        }
    }

    pub fn predict(&self, example: &SequenceExample) -> Result<Prediction, SequenceError> {
        Ok(self.predict_features(&self.featurize(example)?))
    }

    pub fn predict_record(
        &self,
        example: &SequenceExample,
    ) -> Result<PredictionRecord, SequenceError> {
        let p = self.predict(example)?;
        Ok(PredictionRecord {
            doc_id: example.doc_id.clone(),
            head: example.head.clone(),
            tail: example.tail.clone(),
            predicted: p.label,
            scores: self.labels.labels().iter().cloned().zip(p.scores).collect(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut weights = vec![Vec::new(); self.labels.len()];
        let mut ids: Vec<&u32> = self.rows.keys().collect();
        ids.sort();
        for id in ids {
            for (c, &w) in self.rows[id].iter().enumerate() {
                if w != 0.0 {
                    weights[c].push((*id, w));
                }
            }
        }
        let file = ModelFile {
            format_version: MODEL_FORMAT_VERSION,
            labels: self.labels.clone(),
            seed: self.config.seed,
            config: self.config.clone(),
            sequence: self.sequence.clone(),
            weights,
        };
        serde_json::to_string(&file).expect("model serialization cannot fail")
    }

    pub fn from_json(json: &str) -> anyhow::Result<Self> {
        let file: ModelFile = serde_json::from_str(json)?;
        if file.format_version != MODEL_FORMAT_VERSION {
            return Err(ClassifierError::UnsupportedVersion(file.format_version).into());
        }
        if file.weights.len() != file.labels.len() {
            return Err(ClassifierError::ShapeMismatch {
                weights: file.weights.len(),
                labels: file.labels.len(),
            }
            .into());
        }
        let mut model = Self::zeros(file.labels, file.sequence, file.config);
        for (c, class_weights) in file.weights.into_iter().enumerate() {
            for (id, w) in class_weights {
                model.set_weight(c, id, w);
            }
        }
        Ok(model)
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        fs::write(path, self.to_json())
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}

/// Cross-entropy of one example under `model`.
pub fn example_loss(model: &BaselineModel, x: &FeatureVector, class: usize) -> f64 {
    let logits = model.logits(x);
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let log_z = max + logits.iter().map(|l| (l - max).exp()).sum::<f64>().ln();
    log_z - logits[class]
}

/// Gradient of [`example_loss`] as `(class, feature, ∂loss/∂w)` for every
/// feature of `x`.
pub fn example_gradient(
    model: &BaselineModel,
    x: &FeatureVector,
    class: usize,
) -> Vec<(usize, u32, f64)> {
    let p = softmax(&model.logits(x));
    let mut out = Vec::with_capacity(x.len() * p.len());
    for &(id, v) in x.entries() {
        for (c, &pc) in p.iter().enumerate() {
            let y = if c == class { 1.0 } else { 0.0 };
            out.push((c, id, (pc - y) * v));
        }
    }
    out
}

/// Downsample `NoRelation`, then index each example by class. Order of the
/// kept examples follows the input.
pub fn training_set<'e>(
    examples: &'e [SequenceExample],
    labels: &LabelInventory,
    negative_ratio: Option<usize>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(&'e SequenceExample, usize)>, ClassifierError> {
    let mut indexed = Vec::with_capacity(examples.len());
    for ex in examples {
        let c = labels
            .index_of(&ex.label)
            .ok_or_else(|| ClassifierError::UnknownLabel(ex.label.clone()))?;
        indexed.push((ex, c));
    }
    if let Some(ratio) = negative_ratio {
        let positives = indexed.iter().filter(|(_, c)| *c != 0).count();
        let mut negatives: Vec<usize> = (0..indexed.len()).filter(|&i| indexed[i].1 == 0).collect();
        negatives.shuffle(rng);
        let mut drop = vec![false; indexed.len()];
        for &i in negatives.iter().skip(ratio.saturating_mul(positives)) {
            drop[i] = true;
        }
        let mut i = 0;
        indexed.retain(|_| {
            let keep = !drop[i];
            i += 1;
            keep
        });
    }
    let mut counts = vec![0usize; labels.len()];
    for (_, c) in &indexed {
        counts[*c] += 1;
    }
    if let Some(missing) = counts.iter().position(|&n| n == 0) {
        return Err(ClassifierError::DegenerateData(
            labels.label(missing).to_string(),
        ));
    }
    Ok(indexed)
}

/// Fit a model by SGD on softmax cross-entropy.
pub fn train(
    examples: &[SequenceExample],
    labels: &LabelInventory,
    sequence: &SequenceConfig,
    config: &TrainConfig,
) -> anyhow::Result<BaselineModel> {
    if !(config.learning_rate.is_finite() && config.learning_rate > 0.0) {
        return Err(ClassifierError::InvalidConfig("learning_rate must be positive".into()).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let kept = training_set(examples, labels, config.negative_ratio, &mut rng)?;
    let data: Vec<(FeatureVector, usize)> = kept
        .into_iter()
        .map(|(ex, c)| featurize(ex, sequence, &config.features).map(|x| (x, c)))
        .collect::<Result<_, _>>()?;

    let mut model = BaselineModel::zeros(labels.clone(), sequence.clone(), config.clone());
    let n_classes = labels.len();
    let mut order: Vec<usize> = (0..data.len()).collect();
    for _ in 0..config.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            let (x, class) = &data[i];
            let p = softmax(&model.logits(x));
            for &(id, v) in x.entries() {
                let row = model.rows.entry(id).or_insert_with(|| vec![0.0; n_classes]);
                for (c, w) in row.iter_mut().enumerate() {
                    let y = if c == *class { 1.0 } else { 0.0 };
                    *w -= config.learning_rate * (p[c] - y) * v;
                }
            }
        }
    }
    Ok(model)
}

/// Predicts the most frequent relation class for every pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorityBaseline {
    pub label: String,
}

impl MajorityBaseline {
    /// Most frequent non-`NoRelation` label; ties go to the label sorting first.
    pub fn fit(examples: &[SequenceExample]) -> Option<Self> {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for ex in examples.iter().filter(|e| e.label != NO_RELATION) {
            *counts.entry(ex.label.as_str()).or_default() += 1;
        }
        let best = counts.values().copied().max()?;
        counts
            .into_iter()
            .find(|(_, n)| *n == best)
            .map(|(l, _)| Self {
                label: l.to_string(),
            })
    }

    pub fn predict_record(&self, example: &SequenceExample) -> PredictionRecord {
        PredictionRecord {
            doc_id: example.doc_id.clone(),
            head: example.head.clone(),
            tail: example.tail.clone(),
            predicted: self.label.clone(),
            scores: IndexMap::from([(self.label.clone(), 1.0)]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::{enumerate_pairs, PairPolicy};
    use crate::corpus::parse_standoff;
    use crate::sequence::build_sequence;

    fn example() -> SequenceExample {
        let doc = parse_standoff(
            "add 5mL water",
            "T1\tMeasure 4 7\t5mL\nT2\tReagent 8 13\twater",
            "d",
        )
        .unwrap();
        let pair = enumerate_pairs(&doc, &PairPolicy::all_pairs())
            .into_iter()
            .find(|p| p.head == "T1")
            .unwrap();
        build_sequence(&pair, &doc, &SequenceConfig::default()).unwrap()
    }

    #[test]
    fn feature_strings() {
        let names = feature_names(
            &example(),
            &SequenceConfig::default(),
            &FeatureConfig::default(),
        )
        .unwrap();
        for expected in [
            "typepair=Measure→Reagent",
            "dir=fwd",
            "gap=0",
            "typepair_gap=Measure→Reagent|0",
            "a_text=5ml",
            "b_text=water",
            "a_ctx=add",
            "b_ctx=water",
        ] {
            assert!(names.iter().any(|n| n == expected), "missing {expected}");
        }
    }

    #[test]
    fn featurize_is_deterministic() {
        let ex = example();
        let seq = SequenceConfig::default();
        let f = FeatureConfig::default();
        assert_eq!(
            featurize(&ex, &seq, &f).unwrap(),
            featurize(&ex.clone(), &seq, &f).unwrap()
        );
    }

    #[test]
    fn buckets() {
        let got: Vec<_> = [0, 1, 2, 3, 5, 6, 9, 10, 13, 14, 40]
            .map(gap_bucket)
            .to_vec();
        assert_eq!(
            got,
            ["0", "1", "2", "3-5", "3-5", "6-9", "6-9", "10-13", "10-13", "14+", "14+"]
        );
    }

    #[test]
    fn zero_model_ties_to_no_relation() {
        let model = BaselineModel::zeros(
            LabelInventory::default(),
            SequenceConfig::default(),
            TrainConfig::default(),
        );
        let p = model.predict(&example()).unwrap();
        assert_eq!(p.label, NO_RELATION);
        assert!(p.scores.iter().all(|&s| (s - 1.0 / 15.0).abs() < 1e-15));
    }

    #[test]
    fn inventory_rules() {
        let inv = LabelInventory::default();
        assert_eq!(inv.len(), 15);
        assert_eq!(inv.label(0), NO_RELATION);
        assert_eq!(inv.index_of("Acts-On"), Some(14));
        assert!(LabelInventory::try_from(vec!["Site".to_string()]).is_err());
        assert!(
            LabelInventory::try_from(vec![NO_RELATION.into(), "Or".into(), "Or".into()]).is_err()
        );
        let inv = LabelInventory::from_labels(["Zeta", "Or", NO_RELATION, "Site", "Or"]);
        assert_eq!(inv.labels(), [NO_RELATION, "Site", "Or", "Zeta"]);
    }

    #[test]
    fn degenerate_and_unknown_labels() {
        let ex = example();
        let seq = SequenceConfig::default();
        let err = train(
            std::slice::from_ref(&ex),
            &LabelInventory::default(),
            &seq,
            &TrainConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(
            err.downcast_ref::<ClassifierError>(),
            Some(ClassifierError::DegenerateData(_))
        ));
        let mut odd = ex;
        odd.label = "Teleports".into();
        let err = train(
            &[odd],
            &LabelInventory::default(),
            &seq,
            &TrainConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(
            err.downcast_ref::<ClassifierError>(),
            Some(ClassifierError::UnknownLabel(_))
        ));
    }

    #[test]
    fn downsampling_ratio() {
        let base = example();
        let mut examples = Vec::new();
        for i in 0..40 {
            let mut e = base.clone();
            e.head = format!("T{i}");
            e.label = if i < 3 {
                "Measure".into()
            } else {
                NO_RELATION.into()
            };
            examples.push(e);
        }
        let labels = LabelInventory::from_labels(examples.iter().map(|e| e.label.as_str()));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let kept = training_set(&examples, &labels, Some(5), &mut rng).unwrap();
        assert_eq!(kept.iter().filter(|(_, c)| *c == 0).count(), 15);
        assert_eq!(kept.iter().filter(|(_, c)| *c != 0).count(), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(
            training_set(&examples, &labels, None, &mut rng)
                .unwrap()
                .len(),
            40
        );
    }

    #[test]
    fn model_file_round_trip() {
        let mut model = BaselineModel::zeros(
            LabelInventory::default(),
            SequenceConfig::default(),
            TrainConfig::default(),
        );
        model.set_weight(3, 17, 0.1 + 0.2);
        model.set_weight(0, 5, -1.0 / 3.0);
        let back = BaselineModel::from_json(&model.to_json()).unwrap();
        assert_eq!(back, model);
        assert_eq!(back.to_json(), model.to_json());
    }
}
