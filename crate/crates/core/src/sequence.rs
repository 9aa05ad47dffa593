//! Classification sequences for candidate pairs.
//!
//! Each pair becomes one token sequence laid out as
//!
//! ```text
//! [CLS] A-tokens [SEP] A-type [SEP] B-tokens [SEP] B-type [SEP] context...
//!   0      0       0     0      0      0       0     0      0      1 ...
//! ```
//!
//! where the context is the window of protocol steps around the pair with
//! `[EntA]` / `[EntB]` placed on both sides of the exact mentions. The type
//! mask is zero over the entity block and one over the context block.

use serde::{Deserialize, Serialize};

use crate::candidates::CandidatePair;
use crate::corpus::{Document, EntitySpan};
use crate::error::SequenceError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SequenceConfig {
    pub context_window_n: usize,
    pub max_tokens: usize,
    pub marker_a: String,
    pub marker_b: String,
    pub start_token: String,
    pub separator_token: String,
}

impl Default for SequenceConfig {
    fn default() -> Self {
        Self {
            context_window_n: 1,
            max_tokens: 100,
            marker_a: "[EntA]".into(),
            marker_b: "[EntB]".into(),
            start_token: "[CLS]".into(),
            separator_token: "[SEP]".into(),
        }
    }
}

/// Structural tokens that never depend on the entities: `[CLS]`, four
/// separators, two type labels and four markers.
pub const FIXED_OVERHEAD: usize = 11;

impl SequenceConfig {
    pub fn validate(&self) -> Result<(), SequenceError> {
        if self.context_window_n == 0 {
            return Err(SequenceError::InvalidConfig(
                "context_window_n must be at least 1".into(),
            ));
        }
        // one token per entity on top of the fixed structure
        if self.max_tokens < FIXED_OVERHEAD + 2 {
            return Err(SequenceError::InvalidConfig(format!(
                "max_tokens {} cannot hold the sequence structure ({} tokens)",
                self.max_tokens,
                FIXED_OVERHEAD + 2
            )));
        }
        let specials = [
            &self.marker_a,
            &self.marker_b,
            &self.start_token,
            &self.separator_token,
        ];
        for (i, a) in specials.iter().enumerate() {
            if a.is_empty() {
                return Err(SequenceError::InvalidConfig("empty special token".into()));
            }
            if specials[i + 1..].contains(a) {
                return Err(SequenceError::InvalidConfig(format!(
                    "special token {a} used twice"
                )));
            }
        }
        Ok(())
    }

    pub fn is_marker(&self, token: &str) -> bool {
        token == self.marker_a || token == self.marker_b
    }
}

/// One classification input, the exchange record between pipeline stages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceExample {
    pub doc_id: String,
    pub head: String,
    pub tail: String,
    pub tokens: Vec<String>,
    pub type_ids: Vec<u8>,
    pub label: String,
    /// The two mentions share tokens, so their markers interleave.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub overlapping: bool,
}

/// Inclusive token range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenRange {
    pub first: usize,
    pub last: usize,
}

impl TokenRange {
    pub fn len(&self) -> usize {
        self.last + 1 - self.first
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, other: &TokenRange) -> bool {
        self.first <= other.first && other.last <= self.last
    }
}

fn resolve<'d>(doc: &'d Document, id: &str) -> Result<&'d EntitySpan, SequenceError> {
    doc.entity(id).ok_or_else(|| SequenceError::UnknownEntity {
        doc_id: doc.doc_id.clone(),
        entity_id: id.to_string(),
    })
}

/// Token range of the steps around two entities.
///
/// The window always covers every step from the earlier entity to the later
/// one, then grows by `(n - 1) / 2` steps on each side, clipped to the
/// document.
pub fn context_window(doc: &Document, a: &EntitySpan, b: &EntitySpan, n: usize) -> TokenRange {
    let steps = [a.first_tok, a.last_tok, b.first_tok, b.last_tok].map(|t| doc.step_of_token(t));
    let lo = *steps.iter().min().unwrap_or(&0);
    let hi = *steps.iter().max().unwrap_or(&0);
    let grow = n.saturating_sub(1) / 2;
    let lo = lo.saturating_sub(grow);
    let hi = (hi + grow).min(doc.steps.len().saturating_sub(1));
    TokenRange {
        first: doc.steps[lo].first,
        last: doc.steps[hi].last,
    }
}

pub fn extract_context(
    doc: &Document,
    pair: &CandidatePair,
    config: &SequenceConfig,
) -> Result<TokenRange, SequenceError> {
    let a = resolve(doc, &pair.head)?;
    let b = resolve(doc, &pair.tail)?;
    Ok(context_window(doc, a, b, config.context_window_n))
}

/// Context tokens with entity markers in place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedContext {
    pub tokens: Vec<String>,
    /// Markers and entity tokens; truncation never removes these.
    pub protected: Vec<bool>,
    pub overlapping: bool,
}

/// Copy the context surfaces, wrapping entity A in `marker_a` and entity B in
/// `marker_b`. When the mentions share tokens the markers are nested by span
/// start and `overlapping` is set.
pub fn insert_markers(
    doc: &Document,
    context: TokenRange,
    a: &EntitySpan,
    b: &EntitySpan,
    config: &SequenceConfig,
) -> MarkedContext {
    struct Mark<'c> {
        marker: &'c str,
        first: usize,
        last: usize,
        rank: usize,
    }
    let mut marks = [
        Mark {
            marker: &config.marker_a,
            first: a.first_tok,
            last: a.last_tok,
            rank: 0,
        },
        Mark {
            marker: &config.marker_b,
            first: b.first_tok,
            last: b.last_tok,
            rank: 1,
        },
    ];
    // Opening order: by start, longer span first, A before B.
    let mut order = [0usize, 1];
    order.sort_by_key(|&i| (marks[i].first, std::cmp::Reverse(marks[i].last), i));
    for (rank, &i) in order.iter().enumerate() {
        marks[i].rank = rank;
    }

    let mut tokens = Vec::with_capacity(context.len() + 4);
    let mut protected = Vec::with_capacity(context.len() + 4);
    let in_entity = |t: usize| marks.iter().any(|m| m.first <= t && t <= m.last);
    for boundary in context.first..=context.last + 1 {
        let mut closes: Vec<&Mark> = marks.iter().filter(|m| m.last + 1 == boundary).collect();
        closes.sort_by_key(|m| std::cmp::Reverse(m.rank));
        let mut opens: Vec<&Mark> = marks.iter().filter(|m| m.first == boundary).collect();
        opens.sort_by_key(|m| m.rank);
        for m in closes.into_iter().chain(opens) {
            tokens.push(m.marker.to_string());
            protected.push(true);
        }
        if boundary <= context.last {
            tokens.push(doc.tokens[boundary].surface.clone());
            protected.push(in_entity(boundary));
        }
    }
    MarkedContext {
        tokens,
        protected,
        overlapping: a.overlaps_tokens(b),
    }
}

/// Remove every marker token.
pub fn strip_markers(tokens: &[String], config: &SequenceConfig) -> Vec<String> {
    tokens
        .iter()
        .filter(|t| !config.is_marker(t))
        .cloned()
        .collect()
}

/// Indices of `marked` that survive trimming it down to `keep` tokens.
///
/// Unprotected tokens are dropped farthest-from-a-protected-token first; at
/// equal distance the later token goes first, so both window edges shrink
/// together.
pub fn trim_plan(protected: &[bool], keep: usize) -> Vec<bool> {
    let n = protected.len();
    let mut retain = vec![true; n];
    if keep >= n {
        return retain;
    }
    let mut dist = vec![usize::MAX; n];
    let mut last = None;
    for i in 0..n {
        if protected[i] {
            last = Some(i);
        }
        if let Some(p) = last {
            dist[i] = i - p;
        }
    }
    last = None;
    for i in (0..n).rev() {
        if protected[i] {
            last = Some(i);
        }
        if let Some(p) = last {
            dist[i] = dist[i].min(p - i);
        }
    }
    let mut victims: Vec<usize> = (0..n).filter(|&i| !protected[i]).collect();
    victims.sort_by_key(|&i| (std::cmp::Reverse(dist[i]), std::cmp::Reverse(i)));
    for &i in victims.iter().take(n - keep) {
        retain[i] = false;
    }
    retain
}

fn entity_tokens<'d>(doc: &'d Document, e: &EntitySpan) -> impl Iterator<Item = String> + 'd {
    doc.tokens[e.first_tok..=e.last_tok]
        .iter()
        .map(|t| t.surface.clone())
}

/// Assemble the classification sequence for one candidate pair.
pub fn build_sequence(
    pair: &CandidatePair,
    doc: &Document,
    config: &SequenceConfig,
) -> Result<SequenceExample, SequenceError> {
    let a = resolve(doc, &pair.head)?;
    let b = resolve(doc, &pair.tail)?;

    let sep = &config.separator_token;
    let mut tokens = Vec::with_capacity(config.max_tokens);
    tokens.push(config.start_token.clone());
    tokens.extend(entity_tokens(doc, a));
    tokens.push(sep.clone());
    tokens.push(a.entity_type.clone());
    tokens.push(sep.clone());
    tokens.extend(entity_tokens(doc, b));
    tokens.push(sep.clone());
    tokens.push(b.entity_type.clone());
    tokens.push(sep.clone());
    let prefix_len = tokens.len();

    let window = context_window(doc, a, b, config.context_window_n);
    let marked = insert_markers(doc, window, a, b, config);
    let protected_count = marked.protected.iter().filter(|&&p| p).count();
    let needed = prefix_len + protected_count;
    if needed > config.max_tokens {
        return Err(SequenceError::BudgetExhausted {
            needed,
            max_tokens: config.max_tokens,
        });
    }
    let keep = config.max_tokens - prefix_len;
    let retain = trim_plan(&marked.protected, keep);
    tokens.extend(
        marked
            .tokens
            .into_iter()
            .zip(retain)
            .filter_map(|(t, r)| r.then_some(t)),
    );

    let mut type_ids = vec![0u8; prefix_len];
    type_ids.resize(tokens.len(), 1);
    Ok(SequenceExample {
        doc_id: doc.doc_id.clone(),
        head: pair.head.clone(),
        tail: pair.tail.clone(),
        tokens,
        type_ids,
        label: pair.gold_label.clone(),
        overlapping: marked.overlapping,
    })
}

/// Build sequences for every pair of one document.
pub fn build_sequences(
    doc: &Document,
    pairs: &[CandidatePair],
    config: &SequenceConfig,
) -> Result<Vec<SequenceExample>, SequenceError> {
    config.validate()?;
    pairs
        .iter()
        .map(|p| build_sequence(p, doc, config))
        .collect()
}

/// Borrowed view of the parts of a [`SequenceExample`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segments<'e> {
    pub head_tokens: &'e [String],
    pub head_type: &'e str,
    pub tail_tokens: &'e [String],
    pub tail_type: &'e str,
    pub context: &'e [String],
}

impl SequenceExample {
    /// Split the sequence along its four separators.
    pub fn segments(&self, config: &SequenceConfig) -> Result<Segments<'_>, SequenceError> {
        let malformed = |m: &str| SequenceError::Malformed(format!("{}: {m}", self.pair_key()));
        if self.tokens.first() != Some(&config.start_token) {
            return Err(malformed("missing start token"));
        }
        let seps: Vec<usize> = self
            .tokens
            .iter()
            .enumerate()
            .filter(|(_, t)| **t == config.separator_token)
            .map(|(i, _)| i)
            .collect();
        let [s0, s1, s2, s3] = seps[..] else {
            return Err(malformed("expected exactly four separators"));
        };
        if s1 != s0 + 2 || s3 != s2 + 2 || s0 < 2 || s2 < s1 + 2 {
            return Err(malformed("separators out of place"));
        }
        Ok(Segments {
            head_tokens: &self.tokens[1..s0],
            head_type: &self.tokens[s0 + 1],
            tail_tokens: &self.tokens[s1 + 1..s2],
            tail_type: &self.tokens[s2 + 1],
            context: &self.tokens[s3 + 1..],
        })
    }

    pub fn pair_key(&self) -> String {
        format!("{} {}->{}", self.doc_id, self.head, self.tail)
    }

    /// Check the structural contract: mask shape, length, separators and
    /// marker integrity.
    pub fn validate(&self, config: &SequenceConfig) -> Result<(), SequenceError> {
        let malformed = |m: String| SequenceError::Malformed(format!("{}: {m}", self.pair_key()));
        if self.tokens.len() != self.type_ids.len() {
            return Err(malformed("tokens and type_ids differ in length".into()));
        }
        if self.tokens.len() > config.max_tokens {
            return Err(malformed(format!(
                "{} tokens exceed max_tokens {}",
                self.tokens.len(),
                config.max_tokens
            )));
        }
        let seg = self.segments(config)?;
        let zeros = self.tokens.len() - seg.context.len();
        if seg.context.is_empty()
            || self.type_ids[..zeros].iter().any(|&t| t != 0)
            || self.type_ids[zeros..].iter().any(|&t| t != 1)
        {
            return Err(malformed(
                "type_ids are not 0+1+ over entity and context blocks".into(),
            ));
        }
        for (marker, expected) in [
            (&config.marker_a, seg.head_tokens),
            (&config.marker_b, seg.tail_tokens),
        ] {
            let at: Vec<usize> = seg
                .context
                .iter()
                .enumerate()
                .filter(|(_, t)| *t == marker)
                .map(|(i, _)| i)
                .collect();
            let [open, close] = at[..] else {
                return Err(malformed(format!("{marker} appears {} times", at.len())));
            };
            let inner: Vec<&String> = seg.context[open + 1..close]
                .iter()
                .filter(|t| !config.is_marker(t))
                .collect();
            if !inner.iter().copied().eq(expected.iter()) {
                return Err(malformed(format!(
                    "{marker} does not wrap the entity tokens"
                )));
            }
        }
        Ok(())
    }

    /// Context tokens with markers removed.
    pub fn unmarked_context(&self, config: &SequenceConfig) -> Result<Vec<String>, SequenceError> {
        Ok(strip_markers(self.segments(config)?.context, config))
    }
}
