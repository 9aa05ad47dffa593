//! Standoff corpus ingestion.
//!
//! A protocol arrives as a `.txt` file holding one step per line and a
//! brat-style `.ann` file whose records point into the text by character
//! offset. Parsing produces a [`Document`]: offset-exact tokens, the step
//! partition, typed entity spans and directed gold relations. Event records
//! are flattened so that each `(role, argument)` becomes one
//! trigger→argument relation labelled by the role.
//!
//! All offsets are counted in Unicode scalar values, the unit brat uses.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CorpusError, ParseError};

/// One offset-exact token. `start..end` are character offsets into the
/// document text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    #[serde(rename = "i")]
    pub index: usize,
    pub start: usize,
    pub end: usize,
    #[serde(rename = "s")]
    pub surface: String,
}

/// The token range (inclusive on both ends) of one protocol line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepSpan {
    pub step_index: usize,
    pub first: usize,
    pub last: usize,
}

impl StepSpan {
    pub fn contains(&self, token: usize) -> bool {
        self.first <= token && token <= self.last
    }

    pub fn len(&self) -> usize {
        self.last + 1 - self.first
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl Serialize for StepSpan {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.first, self.last].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StepSpan {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        // The index is positional in the serialized form; `Document` fixes it up.
        let [first, last] = <[usize; 2]>::deserialize(deserializer)?;
        Ok(StepSpan {
            step_index: 0,
            first,
            last,
        })
    }
}

/// A typed annotated mention.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntitySpan {
    #[serde(rename = "id")]
    pub entity_id: String,
    #[serde(rename = "type")]
    pub entity_type: String,
    pub start: usize,
    pub end: usize,
    pub first_tok: usize,
    pub last_tok: usize,
    pub surface: String,
    /// Set when the annotation had several fragments and the span is their hull.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub discontinuous: bool,
}

impl EntitySpan {
    pub fn token_count(&self) -> usize {
        self.last_tok + 1 - self.first_tok
    }

    pub fn overlaps_tokens(&self, other: &EntitySpan) -> bool {
        self.first_tok <= other.last_tok && other.first_tok <= self.last_tok
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationOrigin {
    #[serde(rename = "R-line")]
    RelationLine,
    #[serde(rename = "E-line-argument")]
    EventArgument,
}

/// A directed gold link `head → tail`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationInstance {
    pub head: String,
    pub tail: String,
    pub label: String,
    pub origin: RelationOrigin,
}

/// One parsed protocol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDocument")]
pub struct Document {
    pub doc_id: String,
    pub text: String,
    pub tokens: Vec<Token>,
    pub steps: Vec<StepSpan>,
    pub entities: Vec<EntitySpan>,
    #[serde(rename = "relations")]
    pub gold_relations: Vec<RelationInstance>,
}

#[derive(Deserialize)]
struct RawDocument {
    doc_id: String,
    text: String,
    tokens: Vec<Token>,
    steps: Vec<StepSpan>,
    entities: Vec<EntitySpan>,
    relations: Vec<RelationInstance>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidDocument(pub String);

impl fmt::Display for InvalidDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid document: {}", self.0)
    }
}

impl std::error::Error for InvalidDocument {}

impl TryFrom<RawDocument> for Document {
    type Error = InvalidDocument;

    fn try_from(raw: RawDocument) -> Result<Self, Self::Error> {
        let mut steps = raw.steps;
        for (i, step) in steps.iter_mut().enumerate() {
            step.step_index = i;
        }
        let doc = Document {
            doc_id: raw.doc_id,
            text: raw.text,
            tokens: raw.tokens,
            steps,
            entities: raw.entities,
            gold_relations: raw.relations,
        };
        doc.validate().map_err(InvalidDocument)?;
        Ok(doc)
    }
}

impl Document {
    pub fn entity(&self, id: &str) -> Option<&EntitySpan> {
        self.entities.iter().find(|e| e.entity_id == id)
    }

    /// Map from entity id to its position in `entities`.
    pub fn entity_index(&self) -> HashMap<&str, usize> {
        self.entities
            .iter()
            .enumerate()
            .map(|(i, e)| (e.entity_id.as_str(), i))
            .collect()
    }

    /// Index of the step holding `token`.
    pub fn step_of_token(&self, token: usize) -> usize {
        match self.steps.binary_search_by(|s| {
            if s.last < token {
                std::cmp::Ordering::Less
            } else if s.first > token {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        }) {
            Ok(i) => i,
            Err(i) => i.min(self.steps.len().saturating_sub(1)),
        }
    }

    /// Text between two character offsets.
    pub fn char_slice(&self, start: usize, end: usize) -> &str {
        char_slice(&self.text, start, end)
    }

    /// Checks every structural invariant of the document model.
    pub fn validate(&self) -> Result<(), String> {
        let index = CharIndex::new(&self.text);
        let char_len = index.len();
        let mut prev_end = 0;
        for (i, tok) in self.tokens.iter().enumerate() {
            if tok.index != i {
                return Err(format!("token {i} carries index {}", tok.index));
            }
            if tok.start >= tok.end || tok.end > char_len {
                return Err(format!("token {i} has bad span {}..{}", tok.start, tok.end));
            }
            if tok.start < prev_end {
                return Err(format!("token {i} overlaps its predecessor"));
            }
            if index.slice(&self.text, tok.start, tok.end) != tok.surface {
                return Err(format!(
                    "token {i} surface {:?} does not match text",
                    tok.surface
                ));
            }
            prev_end = tok.end;
        }
        let mut next = 0;
        for (i, step) in self.steps.iter().enumerate() {
            if step.step_index != i || step.first != next || step.last < step.first {
                return Err(format!("step {i} breaks the token partition"));
            }
            next = step.last + 1;
        }
        if next != self.tokens.len() {
            return Err("steps do not cover every token".into());
        }
        let mut ids = BTreeSet::new();
        for e in &self.entities {
            if !ids.insert(e.entity_id.as_str()) {
                return Err(format!("duplicate entity id {}", e.entity_id));
            }
            if e.start >= e.end || e.end > char_len {
                return Err(format!("entity {} has bad span", e.entity_id));
            }
            if index.slice(&self.text, e.start, e.end) != e.surface {
                return Err(format!(
                    "entity {} surface does not match text",
                    e.entity_id
                ));
            }
            let covered = overlapping_tokens(&self.tokens, e.start, e.end)
                .ok_or_else(|| format!("entity {} covers no tokens", e.entity_id))?;
            if covered != (e.first_tok, e.last_tok) {
                return Err(format!("entity {} token range is stale", e.entity_id));
            }
        }
        for r in &self.gold_relations {
            if r.head == r.tail {
                return Err(format!("relation {}->{} is reflexive", r.head, r.tail));
            }
            if !ids.contains(r.head.as_str()) || !ids.contains(r.tail.as_str()) {
                return Err(format!(
                    "relation {}->{} names unknown entities",
                    r.head, r.tail
                ));
            }
        }
        Ok(())
    }
}

/// Slice `text` by character offsets. Offsets past the end are clamped.
pub fn char_slice(text: &str, start: usize, end: usize) -> &str {
    CharIndex::new(text).slice(text, start, end)
}

/// Byte position of every character boundary, for repeated char-offset slicing.
pub struct CharIndex {
    bytes: Vec<usize>,
}

impl CharIndex {
    pub fn new(text: &str) -> Self {
        let mut bytes: Vec<usize> = text.char_indices().map(|(b, _)| b).collect();
        bytes.push(text.len());
        Self { bytes }
    }

    /// Number of characters in the indexed text.
    pub fn len(&self) -> usize {
        self.bytes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn slice<'t>(&self, text: &'t str, start: usize, end: usize) -> &'t str {
        let last = self.len();
        let bs = self.bytes[start.min(last)];
        let be = self.bytes[end.min(last)];
        &text[bs..be.max(bs)]
    }
}

fn is_punct(c: char) -> bool {
    !c.is_whitespace() && !c.is_alphanumeric()
}

/// Whitespace tokenizer that isolates every punctuation character.
///
/// Any character that is neither whitespace nor alphanumeric counts as
/// punctuation, so `"5mL."` becomes `["5mL", "."]` and `"37°C"` becomes
/// `["37", "°", "C"]`.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut current_start = 0;
    let push = |tokens: &mut Vec<Token>, surface: &mut String, start: usize, end: usize| {
        if !surface.is_empty() {
            tokens.push(Token {
                index: tokens.len(),
                start,
                end,
                surface: std::mem::take(surface),
            });
        }
    };
    for (pos, c) in text.chars().enumerate() {
        if c.is_whitespace() {
            push(&mut tokens, &mut current, current_start, pos);
        } else if is_punct(c) {
            push(&mut tokens, &mut current, current_start, pos);
            tokens.push(Token {
                index: tokens.len(),
                start: pos,
                end: pos + 1,
                surface: c.to_string(),
            });
        } else {
            if current.is_empty() {
                current_start = pos;
            }
            current.push(c);
        }
    }
    let end = current_start + current.chars().count();
    push(&mut tokens, &mut current, current_start, end);
    tokens
}

/// Split tokens at every boundary offset that falls strictly inside one,
/// then renumber.
pub fn split_at_boundaries(tokens: Vec<Token>, boundaries: &BTreeSet<usize>) -> Vec<Token> {
    let mut out = Vec::with_capacity(tokens.len());
    for tok in tokens {
        let cuts: Vec<usize> = boundaries.range(tok.start + 1..tok.end).copied().collect();
        if cuts.is_empty() {
            out.push(tok);
            continue;
        }
        let chars: Vec<char> = tok.surface.chars().collect();
        let mut from = tok.start;
        for cut in cuts.into_iter().chain(std::iter::once(tok.end)) {
            out.push(Token {
                index: 0,
                start: from,
                end: cut,
                surface: chars[from - tok.start..cut - tok.start].iter().collect(),
            });
            from = cut;
        }
    }
    for (i, tok) in out.iter_mut().enumerate() {
        tok.index = i;
    }
    out
}

/// One step per non-empty line. A line that holds no token contributes no step.
pub fn segment_steps(text: &str, tokens: &[Token]) -> Vec<StepSpan> {
    let mut line_of_char = Vec::with_capacity(text.len());
    let mut line = 0usize;
    for c in text.chars() {
        line_of_char.push(line);
        if c == '\n' {
            line += 1;
        }
    }
    let mut steps: Vec<StepSpan> = Vec::new();
    let mut current_line = None;
    for tok in tokens {
        let l = line_of_char[tok.start];
        if current_line == Some(l) {
            if let Some(step) = steps.last_mut() {
                step.last = tok.index;
            }
        } else {
            current_line = Some(l);
            steps.push(StepSpan {
                step_index: steps.len(),
                first: tok.index,
                last: tok.index,
            });
        }
    }
    steps
}

fn overlapping_tokens(tokens: &[Token], start: usize, end: usize) -> Option<(usize, usize)> {
    let first = tokens.partition_point(|t| t.end <= start);
    let mut last = None;
    for tok in &tokens[first..] {
        if tok.start >= end {
            break;
        }
        last = Some(tok.index);
    }
    last.map(|l| (first, l))
}

/// Drop trailing disambiguation digits from an event role (`Acts-On2` → `Acts-On`).
pub fn strip_role_suffix(role: &str) -> &str {
    let trimmed = role.trim_end_matches(|c: char| c.is_ascii_digit());
    if trimmed.is_empty() {
        role
    } else {
        trimmed
    }
}

struct TextBound {
    id: String,
    entity_type: String,
    fragments: Vec<(usize, usize)>,
    ann_surface: String,
}

impl TextBound {
    fn start(&self) -> usize {
        self.fragments.iter().map(|f| f.0).min().unwrap_or(0)
    }

    fn end(&self) -> usize {
        self.fragments.iter().map(|f| f.1).max().unwrap_or(0)
    }
}

enum Link {
    Relation {
        line: usize,
        id: String,
        label: String,
        head: String,
        tail: String,
    },
    Event {
        line: usize,
        id: String,
        trigger: String,
        args: Vec<(String, String)>,
    },
}

fn split_arg<'a>(
    doc_id: &str,
    line: usize,
    arg: &'a str,
) -> Result<(&'a str, &'a str), ParseError> {
    arg.split_once(':')
        .ok_or_else(|| ParseError::MalformedLine {
            doc_id: doc_id.to_string(),
            line,
            reason: format!("argument {arg:?} is not ROLE:ID"),
        })
}

fn parse_text_bound(doc_id: &str, line: usize, fields: &[&str]) -> Result<TextBound, ParseError> {
    let malformed = |reason: String| ParseError::MalformedLine {
        doc_id: doc_id.to_string(),
        line,
        reason,
    };
    if fields.len() != 3 {
        return Err(malformed(format!(
            "text-bound record has {} tab-separated fields, expected 3",
            fields.len()
        )));
    }
    let (entity_type, offsets) = fields[1]
        .split_once(' ')
        .ok_or_else(|| malformed("missing offsets".into()))?;
    let mut fragments = Vec::new();
    for frag in offsets.split(';') {
        let mut parts = frag.split_whitespace();
        let (Some(s), Some(e), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(malformed(format!("bad offset fragment {frag:?}")));
        };
        let s: usize = s
            .parse()
            .map_err(|_| malformed(format!("bad start offset {s:?}")))?;
        let e: usize = e
            .parse()
            .map_err(|_| malformed(format!("bad end offset {e:?}")))?;
        if s >= e {
            return Err(malformed(format!("empty or reversed span {s}..{e}")));
        }
        fragments.push((s, e));
    }
    Ok(TextBound {
        id: fields[0].to_string(),
        entity_type: entity_type.to_string(),
        fragments,
        ann_surface: fields[2].to_string(),
    })
}

/// Parse one protocol and its standoff annotations.
pub fn parse_standoff(text: &str, ann: &str, doc_id: &str) -> Result<Document, ParseError> {
    let mut bounds: Vec<TextBound> = Vec::new();
    let mut links: Vec<Link> = Vec::new();

    for (line_no, raw_line) in ann.lines().enumerate() {
        let line = line_no + 1;
        let record = raw_line.trim_end_matches('\r');
        if record.trim().is_empty() {
            continue;
        }
        let malformed = |reason: String| ParseError::MalformedLine {
            doc_id: doc_id.to_string(),
            line,
            reason,
        };
        match record.chars().next() {
            Some('T') => {
                let fields: Vec<&str> = record.split('\t').collect();
                bounds.push(parse_text_bound(doc_id, line, &fields)?);
            }
            Some('R') => {
                let fields: Vec<&str> = record.split('\t').collect();
                if !(2..=3).contains(&fields.len()) || fields.get(2).is_some_and(|f| !f.is_empty())
                {
                    return Err(malformed(format!(
                        "relation record has {} tab-separated fields, expected 2",
                        fields.len()
                    )));
                }
                let parts: Vec<&str> = fields[1].split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(malformed(format!(
                        "relation needs a label and two arguments, got {:?}",
                        fields[1]
                    )));
                }
                let (_, head) = split_arg(doc_id, line, parts[1])?;
                let (_, tail) = split_arg(doc_id, line, parts[2])?;
                links.push(Link::Relation {
                    line,
                    id: fields[0].to_string(),
                    label: parts[0].to_string(),
                    head: head.to_string(),
                    tail: tail.to_string(),
                });
            }
            Some('E') => {
                let fields: Vec<&str> = record.split('\t').collect();
                if !(2..=3).contains(&fields.len()) || fields.get(2).is_some_and(|f| !f.is_empty())
                {
                    return Err(malformed(format!(
                        "event record has {} tab-separated fields, expected 2",
                        fields.len()
                    )));
                }
                let mut parts = fields[1].split_whitespace();
                let trigger = parts
                    .next()
                    .ok_or_else(|| malformed("event has no trigger".into()))?;
                let (_, trigger) = split_arg(doc_id, line, trigger)?;
                let args = parts
                    .map(|a| {
                        split_arg(doc_id, line, a).map(|(r, t)| (r.to_string(), t.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                links.push(Link::Event {
                    line,
                    id: fields[0].to_string(),
                    trigger: trigger.to_string(),
                    args,
                });
            }
            Some('#') | Some('A') | Some('M') | Some('N') | Some('*') => {}
            _ => return Err(malformed(format!("unknown record type in {record:?}"))),
        }
    }

    let index = CharIndex::new(text);
    for tb in &bounds {
        if tb.end() > index.len() {
            return Err(ParseError::SpanOutOfBounds {
                doc_id: doc_id.to_string(),
                entity_id: tb.id.clone(),
                start: tb.start(),
                end: tb.end(),
                len: index.len(),
            });
        }
        // brat joins the fragments of a discontinuous mention with single spaces.
        let found = tb
            .fragments
            .iter()
            .map(|&(s, e)| index.slice(text, s, e))
            .collect::<Vec<_>>()
            .join(" ");
        if found != tb.ann_surface {
            return Err(ParseError::OffsetMismatch {
                doc_id: doc_id.to_string(),
                entity_id: tb.id.clone(),
                expected: tb.ann_surface.clone(),
                found,
            });
        }
    }

    let boundaries: BTreeSet<usize> = bounds.iter().flat_map(|b| [b.start(), b.end()]).collect();
    let tokens = split_at_boundaries(tokenize(text), &boundaries);
    let steps = segment_steps(text, &tokens);

    let mut entities = Vec::with_capacity(bounds.len());
    let mut seen = BTreeSet::new();
    for tb in bounds {
        if !seen.insert(tb.id.clone()) {
            return Err(ParseError::MalformedLine {
                doc_id: doc_id.to_string(),
                line: 0,
                reason: format!("duplicate text-bound id {}", tb.id),
            });
        }
        let (first_tok, last_tok) =
            overlapping_tokens(&tokens, tb.start(), tb.end()).ok_or_else(|| {
                ParseError::EmptyEntity {
                    doc_id: doc_id.to_string(),
                    entity_id: tb.id.clone(),
                }
            })?;
        let (start, end) = (tb.start(), tb.end());
        entities.push(EntitySpan {
            discontinuous: tb.fragments.len() > 1,
            entity_id: tb.id,
            entity_type: tb.entity_type,
            start,
            end,
            first_tok,
            last_tok,
            surface: index.slice(text, start, end).to_string(),
        });
    }

    let event_triggers: HashMap<&str, &str> = links
        .iter()
        .filter_map(|l| match l {
            Link::Event { id, trigger, .. } => Some((id.as_str(), trigger.as_str())),
            _ => None,
        })
        .collect();
    let resolve = |line: usize, record: &str, target: &str| -> Result<String, ParseError> {
        let resolved = if target.starts_with('E') {
            event_triggers.get(target).copied()
        } else {
            Some(target)
        };
        match resolved {
            Some(t) if seen.contains(t) => Ok(t.to_string()),
            _ => Err(ParseError::DanglingReference {
                doc_id: doc_id.to_string(),
                line,
                record: record.to_string(),
                target: target.to_string(),
            }),
        }
    };

    let mut gold_relations = Vec::new();
    for link in &links {
        let (line, id, pairs, origin): (usize, &str, Vec<(String, &str, &str)>, RelationOrigin) =
            match link {
                Link::Relation {
                    line,
                    id,
                    label,
                    head,
                    tail,
                } => (
                    *line,
                    id,
                    vec![(label.clone(), head.as_str(), tail.as_str())],
                    RelationOrigin::RelationLine,
                ),
                Link::Event {
                    line,
                    id,
                    trigger,
                    args,
                } => (
                    *line,
                    id,
                    args.iter()
                        .map(|(role, arg)| {
                            (
                                strip_role_suffix(role).to_string(),
                                trigger.as_str(),
                                arg.as_str(),
                            )
                        })
                        .collect(),
                    RelationOrigin::EventArgument,
                ),
            };
        for (label, head, tail) in pairs {
            let head = resolve(line, id, head)?;
            let tail = resolve(line, id, tail)?;
            if head == tail {
                return Err(ParseError::SelfRelation {
                    doc_id: doc_id.to_string(),
                    line,
                    record: id.to_string(),
                    entity_id: head,
                });
            }
            gold_relations.push(RelationInstance {
                head,
                tail,
                label,
                origin,
            });
        }
    }

    Ok(Document {
        doc_id: doc_id.to_string(),
        text: text.to_string(),
        tokens,
        steps,
        entities,
        gold_relations,
    })
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn collect_text_files(dir: &Path, out: &mut Vec<PathBuf>) -> Result<(), CorpusError> {
    for entry in fs::read_dir(dir).map_err(io_err(dir))? {
        let path = entry.map_err(io_err(dir))?.path();
        if path.is_dir() {
            collect_text_files(&path, out)?;
        } else if path.extension().is_some_and(|e| e == "txt") {
            out.push(path);
        }
    }
    Ok(())
}

/// Every `<name>.txt` under `dir` (recursively) paired with its `<name>.ann`,
/// sorted by path.
pub fn corpus_files(dir: &Path) -> Result<Vec<(PathBuf, PathBuf)>, CorpusError> {
    if !dir.is_dir() {
        return Err(CorpusError::MissingDirectory(dir.to_path_buf()));
    }
    let mut texts = Vec::new();
    collect_text_files(dir, &mut texts)?;
    texts.sort();
    texts
        .into_iter()
        .map(|txt| {
            let ann = txt.with_extension("ann");
            if ann.is_file() {
                Ok((txt, ann))
            } else {
                Err(CorpusError::MissingAnnotation(txt))
            }
        })
        .collect()
}

/// Parse every protocol under `dir`. Document ids are file stems.
pub fn read_corpus_dir(dir: &Path) -> Result<Vec<Document>, CorpusError> {
    let mut seen = BTreeSet::new();
    corpus_files(dir)?
        .into_iter()
        .map(|(txt, ann)| {
            let doc_id = txt
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            if !seen.insert(doc_id.clone()) {
                return Err(CorpusError::DuplicateDocument(doc_id));
            }
            let text = fs::read_to_string(&txt).map_err(io_err(&txt))?;
            let ann_content = fs::read_to_string(&ann).map_err(io_err(&ann))?;
            Ok(parse_standoff(&text, &ann_content, &doc_id)?)
        })
        .collect()
}

/// Write any serializable records as JSON lines.
pub fn write_jsonl<T: Serialize>(path: &Path, records: &[T]) -> Result<(), CorpusError> {
    let file = fs::File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    for (i, rec) in records.iter().enumerate() {
        serde_json::to_writer(&mut w, rec).map_err(|source| CorpusError::Json {
            line: i + 1,
            source,
        })?;
        w.write_all(b"\n").map_err(io_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

/// Read JSON-lines records, skipping blank lines.
pub fn read_jsonl<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>, CorpusError> {
    let file = fs::File::open(path).map_err(io_err(path))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line).map_err(|source| CorpusError::Json {
                line: i + 1,
                source,
            })?,
        );
    }
    Ok(out)
}
