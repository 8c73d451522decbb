//! Core data model for annotated documents: mentions, entities, relation
//! instances, and the whole-document container shared by every other module.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::schema::SchemaConfig;

/// Errors raised when a document violates a structural invariant.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("mention `{text}` has an invalid span {start}..{end} (start must be < end)")]
    InvalidSpan { text: String, start: usize, end: usize },
    #[error("mention span {start}..{end} exceeds document text length {len}")]
    SpanOutOfBounds { start: usize, end: usize, len: usize },
    #[error("entity of type `{entity_type}` has no mentions")]
    EmptyEntity { entity_type: String },
    #[error("entity type `{entity_type}` is not declared in the schema")]
    UnknownEntityType { entity_type: String },
    #[error("relation type `{relation_type}` is not declared in the schema")]
    UnknownRelationType { relation_type: String },
    #[error("relation `{relation_type}` has {found} entities but the schema declares arity {expected}")]
    ArityMismatch { relation_type: String, found: usize, expected: usize },
    #[error("relation `{relation_type}` references an entity that is not in the document entity list")]
    OrphanRelationEntity { relation_type: String },
    #[error("sentence spans must be ordered and non-overlapping (offending span {start}..{end})")]
    UnorderedSentenceSpans { start: usize, end: usize },
}

/// A single surface mention of an entity in the document text.
///
/// For discontinuous mentions the span covers the full extent of the mention
/// and `text` carries the concatenated surface form, so `text` is not
/// guaranteed to equal the covered substring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mention {
    pub text: String,
    /// Byte offset of the first character in the document text, inclusive.
    pub start: usize,
    /// Byte offset one past the last character, exclusive.
    pub end: usize,
    /// Index into the document sentence list, when sentence segmentation is known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sentence_index: Option<usize>,
}

impl Mention {
    pub fn new(text: impl Into<String>, start: usize, end: usize) -> Self {
        Mention { text: text.into(), start, end, sentence_index: None }
    }

    pub fn with_sentence(mut self, sentence_index: usize) -> Self {
        self.sentence_index = Some(sentence_index);
        self
    }

    /// Document position used for ordering: the sum of both offsets, so that
    /// of two mentions starting together the shorter one sorts first.
    pub fn position(&self) -> usize {
        self.start + self.end
    }
}

/// An entity: one or more coreferent mentions sharing an entity type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Entity {
    pub mentions: Vec<Mention>,
    pub entity_type: String,
}

impl Entity {
    pub fn new(entity_type: impl Into<String>, mentions: Vec<Mention>) -> Self {
        Entity { mentions, entity_type: entity_type.into() }
    }

    /// Position of the entity's first-occurring mention (minimal [`Mention::position`]).
    /// Returns `usize::MAX` for an (invalid) mention-less entity so sorting stays total.
    pub fn first_position(&self) -> usize {
        self.mentions.iter().map(Mention::position).min().unwrap_or(usize::MAX)
    }
}

/// One relation instance: an ordered tuple of entities plus a relation type.
///
/// The entity order is meaningful; schemas may assign a fixed role to each
/// tuple position (e.g. drug, gene, mutation for a ternary type).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelationInstance {
    pub entities: Vec<Entity>,
    pub relation_type: String,
}

impl RelationInstance {
    pub fn new(relation_type: impl Into<String>, entities: Vec<Entity>) -> Self {
        RelationInstance { entities, relation_type: relation_type.into() }
    }
}

/// A document with its text, sentence segmentation, entities, and relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedDocument {
    pub doc_id: String,
    pub text: String,
    /// Half-open character spans of the sentences, in order. May be empty when
    /// segmentation is unknown.
    pub sentence_spans: Vec<(usize, usize)>,
    pub entities: Vec<Entity>,
    pub relations: Vec<RelationInstance>,
}

impl AnnotatedDocument {
    pub fn new(doc_id: impl Into<String>, text: impl Into<String>) -> Self {
        AnnotatedDocument {
            doc_id: doc_id.into(),
            text: text.into(),
            sentence_spans: Vec::new(),
            entities: Vec::new(),
            relations: Vec::new(),
        }
    }

    /// Checks the structural invariants of the document against a schema:
    /// well-formed mention spans, non-empty entities with declared types,
    /// relations with declared types and matching arity whose entities all
    /// appear in the document entity list, and ordered sentence spans.
    ///
    /// Mention text is deliberately not compared against the covered
    /// substring: discontinuous mentions store concatenated surface text
    /// under a covering span, so the two may legitimately differ.
    pub fn validate(&self, config: &SchemaConfig) -> Result<(), ModelError> {
        let len = self.text.len();
        for entity in self.entities.iter().chain(self.relations.iter().flat_map(|r| r.entities.iter())) {
            if entity.mentions.is_empty() {
                return Err(ModelError::EmptyEntity { entity_type: entity.entity_type.clone() });
            }
            if config.entity_token(&entity.entity_type).is_none() {
                return Err(ModelError::UnknownEntityType { entity_type: entity.entity_type.clone() });
            }
            for m in &entity.mentions {
                if m.start >= m.end {
                    return Err(ModelError::InvalidSpan {
                        text: m.text.clone(),
                        start: m.start,
                        end: m.end,
                    });
                }
                if m.end > len {
                    return Err(ModelError::SpanOutOfBounds { start: m.start, end: m.end, len });
                }
            }
        }
        for relation in &self.relations {
            let Some(expected) = config.arity(&relation.relation_type) else {
                return Err(ModelError::UnknownRelationType {
                    relation_type: relation.relation_type.clone(),
                });
            };
            if relation.entities.len() != expected {
                return Err(ModelError::ArityMismatch {
                    relation_type: relation.relation_type.clone(),
                    found: relation.entities.len(),
                    expected,
                });
            }
            for entity in &relation.entities {
                if !self.entities.contains(entity) {
                    return Err(ModelError::OrphanRelationEntity {
                        relation_type: relation.relation_type.clone(),
                    });
                }
            }
        }
        let mut previous_end = 0usize;
        for &(start, end) in &self.sentence_spans {
            if start >= end || start < previous_end || end > self.text.len() {
                return Err(ModelError::UnorderedSentenceSpans { start, end });
            }
            previous_end = end;
        }
        Ok(())
    }
}

/// Collapses runs of whitespace to single spaces and trims the ends.
pub fn collapse_whitespace(raw: &str) -> String {
    raw.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Normalizes mention text for serialization and comparison: whitespace is
/// collapsed and, when the schema enables case folding, the text is lowercased.
pub fn normalize_mention_text(raw: &str, config: &SchemaConfig) -> String {
    let collapsed = collapse_whitespace(raw);
    if config.case_fold() {
        collapsed.to_lowercase()
    } else {
        collapsed
    }
}
