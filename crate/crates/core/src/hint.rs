//! Entity hinting: prefixing a source text with renderings of its entities,
//! and the reverse pipeline step of restricting parsed relations to a set of
//! externally provided mentions.

use std::collections::{BTreeMap, BTreeSet};

use crate::linearize::{render_entity, sort_relations, LinearizeError};
use crate::model::{normalize_mention_text, AnnotatedDocument, Entity};
use crate::parse::{ParsedEntity, ParsedRelation};
use crate::schema::SchemaConfig;

/// Orders a document's entities for hinting: entities participating in a
/// relation come first, in order of first participation in the serialized
/// target; the remaining entities follow in document order of their first
/// mention. Duplicates are emitted once.
pub fn hint_entities(doc: &AnnotatedDocument) -> Vec<&Entity> {
    let mut ordered: Vec<&Entity> = Vec::new();
    for relation in sort_relations(doc) {
        for entity in &relation.entities {
            if !ordered.contains(&entity) {
                ordered.push(entity);
            }
        }
    }
    let mut rest: Vec<&Entity> = doc
        .entities
        .iter()
        .filter(|entity| !ordered.contains(entity))
        .collect();
    rest.sort_by_key(|entity| entity.first_position());
    ordered.extend(rest);
    ordered
}

/// Builds a hinted source string: each entity rendered exactly as in the
/// serialized target, then the hint separator, then the source text. When the
/// schema enables case folding the source text is folded as well.
pub fn build_hint<'a>(
    entities: impl IntoIterator<Item = &'a Entity>,
    source: &str,
    config: &SchemaConfig,
) -> Result<String, LinearizeError> {
    let mut parts: Vec<String> = Vec::new();
    for entity in entities {
        parts.push(render_entity(entity, config)?);
    }
    parts.push(config.hint_separator().to_string());
    parts.push(if config.case_fold() { source.to_lowercase() } else { source.to_string() });
    Ok(parts.join(" "))
}

/// [`build_hint`] over a document's own entities in [`hint_entities`] order.
pub fn build_hint_for_document(
    doc: &AnnotatedDocument,
    config: &SchemaConfig,
) -> Result<String, LinearizeError> {
    build_hint(hint_entities(doc), &doc.text, config)
}

/// Normalized mentions allowed per entity type, used to simulate a pipeline
/// in which an upstream recognizer fixes the candidate mentions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AllowedMentions {
    by_type: BTreeMap<String, BTreeSet<String>>,
}

impl AllowedMentions {
    /// Inserts an already-normalized mention for an entity type.
    pub fn insert(&mut self, entity_type: impl Into<String>, mention: impl Into<String>) {
        self.by_type.entry(entity_type.into()).or_default().insert(mention.into());
    }

    /// Collects the mentions of the given entities, normalized per the schema.
    pub fn from_entities<'a>(
        entities: impl IntoIterator<Item = &'a Entity>,
        config: &SchemaConfig,
    ) -> Self {
        let mut allowed = AllowedMentions::default();
        for entity in entities {
            for mention in &entity.mentions {
                let normalized = normalize_mention_text(&mention.text, config);
                if !normalized.is_empty() {
                    allowed.insert(entity.entity_type.clone(), normalized);
                }
            }
        }
        allowed
    }

    /// Whether a normalized mention is allowed for an entity type. Types with
    /// no recorded mentions allow nothing.
    pub fn allows(&self, entity_type: &str, mention: &str) -> bool {
        self.by_type.get(entity_type).is_some_and(|mentions| mentions.contains(mention))
    }
}

/// Restricts parsed relations to allowed mentions: disallowed mentions are
/// removed from each entity, and any relation in which an entity loses all of
/// its mentions is dropped (its tuple would no longer have the declared
/// arity). Surviving duplicates are deduplicated. Applying the same filter
/// twice changes nothing.
pub fn filter_to_hinted(
    relations: &[ParsedRelation],
    allowed: &AllowedMentions,
) -> Vec<ParsedRelation> {
    let mut kept: Vec<ParsedRelation> = Vec::new();
    'relations: for relation in relations {
        let mut entities = Vec::with_capacity(relation.entities().len());
        for entity in relation.entities() {
            let mentions: Vec<String> = entity
                .mentions()
                .iter()
                .filter(|m| allowed.allows(entity.entity_type(), m))
                .cloned()
                .collect();
            match ParsedEntity::new(entity.entity_type(), mentions) {
                Ok(filtered) => entities.push(filtered),
                Err(_) => continue 'relations,
            }
        }
        let filtered = ParsedRelation::new(relation.relation_type(), entities);
        if !kept.contains(&filtered) {
            kept.push(filtered);
        }
    }
    kept
}
