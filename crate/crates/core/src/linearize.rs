//! Serialization of annotated documents into the linear target
//! representation: relations are sorted by the order their entities first
//! appear in the text, each entity renders its coreferent mentions joined by
//! the coreference separator and closed by its entity-type token, and each
//! relation is closed by its relation-type token.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::model::{normalize_mention_text, AnnotatedDocument, Entity, RelationInstance};
use crate::schema::SchemaConfig;

/// Errors raised while serializing a document.
#[derive(Debug, Error)]
pub enum LinearizeError {
    #[error("entity of type `{entity_type}` has no non-empty mention after normalization")]
    EmptyEntity { entity_type: String },
    #[error("entity type `{entity_type}` is not declared in the schema")]
    UnknownEntityType { entity_type: String },
    #[error("relation type `{relation_type}` is not declared in the schema")]
    UnknownRelationType { relation_type: String },
    #[error("relation `{relation_type}` has {found} entities but the schema declares arity {expected}")]
    ArityMismatch { relation_type: String, found: usize, expected: usize },
}

/// Grammatical class of one position in a target token sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TokenClass {
    /// Beginning-of-sequence marker.
    Bos,
    /// A token copied from the source text (part of a mention).
    Copy,
    /// The coreference separator between mentions of one entity.
    Coref,
    /// An entity-type token, carrying the entity-type label.
    Entity(String),
    /// A relation-type token, carrying the relation-type label.
    Relation(String),
    /// End-of-sequence marker.
    Eos,
}

impl fmt::Display for TokenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenClass::Bos => write!(f, "BOS"),
            TokenClass::Copy => write!(f, "COPY"),
            TokenClass::Coref => write!(f, "COREF"),
            TokenClass::Entity(label) => write!(f, "ENTITY({label})"),
            TokenClass::Relation(label) => write!(f, "RELATION({label})"),
            TokenClass::Eos => write!(f, "EOS"),
        }
    }
}

/// Classifies a single whitespace-delimited token against the schema.
pub fn classify_token(token: &str, config: &SchemaConfig) -> TokenClass {
    if token == config.coref_separator() {
        TokenClass::Coref
    } else if let Some(label) = config.entity_label_for_token(token) {
        TokenClass::Entity(label.to_string())
    } else if let Some(label) = config.relation_label_for_token(token) {
        TokenClass::Relation(label.to_string())
    } else {
        TokenClass::Copy
    }
}

/// Splits a target string on whitespace and classifies every token,
/// bracketing the result with [`TokenClass::Bos`] and [`TokenClass::Eos`].
pub fn classify_tokens(target: &str, config: &SchemaConfig) -> Vec<TokenClass> {
    let mut classes = vec![TokenClass::Bos];
    classes.extend(target.split_whitespace().map(|token| classify_token(token, config)));
    classes.push(TokenClass::Eos);
    classes
}

/// Sorts a document's relations into serialization order.
///
/// A relation's key is the sequence of its entities' first-mention positions
/// (start plus end offset) in tuple order, compared lexicographically; ties
/// preserve input order.
pub fn sort_relations(doc: &AnnotatedDocument) -> Vec<&RelationInstance> {
    let mut keyed: Vec<(Vec<usize>, &RelationInstance)> = doc
        .relations
        .iter()
        .map(|rel| {
            let key = rel.entities.iter().map(Entity::first_position).collect();
            (key, rel)
        })
        .collect();
    keyed.sort_by(|(a, _), (b, _)| a.cmp(b));
    keyed.into_iter().map(|(_, rel)| rel).collect()
}

/// Renders one entity: its distinct normalized mentions in order of first
/// occurrence in the document, joined by the coreference separator and
/// followed by the entity-type token.
pub fn render_entity(entity: &Entity, config: &SchemaConfig) -> Result<String, LinearizeError> {
    let token = config
        .entity_token(&entity.entity_type)
        .ok_or_else(|| LinearizeError::UnknownEntityType { entity_type: entity.entity_type.clone() })?;

    // First occurrence per distinct normalized text: minimal (position, input index).
    let mut first_seen: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for (index, mention) in entity.mentions.iter().enumerate() {
        let normalized = normalize_mention_text(&mention.text, config);
        if normalized.is_empty() {
            continue;
        }
        let key = (mention.position(), index);
        first_seen
            .entry(normalized)
            .and_modify(|existing| {
                if key < *existing {
                    *existing = key;
                }
            })
            .or_insert(key);
    }
    if first_seen.is_empty() {
        return Err(LinearizeError::EmptyEntity { entity_type: entity.entity_type.clone() });
    }

    let mut ordered: Vec<(&(usize, usize), &String)> =
        first_seen.iter().map(|(text, key)| (key, text)).collect();
    ordered.sort_by(|(a, ta), (b, tb)| a.cmp(b).then_with(|| ta.cmp(tb)));

    let separator = format!(" {} ", config.coref_separator());
    let mentions: Vec<&str> = ordered.into_iter().map(|(_, text)| text.as_str()).collect();
    Ok(format!("{} {}", mentions.join(&separator), token))
}

fn render_relation(rel: &RelationInstance, config: &SchemaConfig) -> Result<String, LinearizeError> {
    let spec = config
        .relation_spec(&rel.relation_type)
        .ok_or_else(|| LinearizeError::UnknownRelationType { relation_type: rel.relation_type.clone() })?;
    if rel.entities.len() != spec.arity {
        return Err(LinearizeError::ArityMismatch {
            relation_type: rel.relation_type.clone(),
            found: rel.entities.len(),
            expected: spec.arity,
        });
    }
    let mut parts = Vec::with_capacity(rel.entities.len() + 1);
    for entity in &rel.entities {
        parts.push(render_entity(entity, config)?);
    }
    parts.push(spec.token.clone());
    Ok(parts.join(" "))
}

/// Serializes all relations of a document into one target string.
///
/// Relations appear in [`sort_relations`] order, joined by single spaces.
/// A document without relations serializes to the empty string.
pub fn serialize_relations(
    doc: &AnnotatedDocument,
    config: &SchemaConfig,
) -> Result<String, LinearizeError> {
    let sorted = sort_relations(doc);
    let mut parts = Vec::with_capacity(sorted.len());
    for rel in sorted {
        parts.push(render_relation(rel, config)?);
    }
    Ok(parts.join(" "))
}
