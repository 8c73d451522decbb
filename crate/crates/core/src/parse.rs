//! Parsing of linear target strings back into structured relations.
//!
//! The grammar is scanned left to right over whitespace tokens:
//!
//! ```text
//! entity   := mention-tokens (coref-separator mention-tokens)* entity-token
//! relation := entity{arity} relation-token
//! ```
//!
//! Malformed segments (wrong arity, empty mentions, an entity token with no
//! preceding mention tokens, trailing tokens with no relation terminator) are
//! dropped without error; scanning resumes at the token following the next
//! relation-type token. Parsed mentions are normalized, lexicographically
//! sorted, and deduplicated, and duplicate relations are deduplicated.

use serde::Serialize;
use thiserror::Error;

use crate::linearize::{classify_token, TokenClass};
use crate::model::{normalize_mention_text, RelationInstance};
use crate::schema::SchemaConfig;

/// Errors raised while building parsed relations programmatically.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("parsed entity of type `{entity_type}` has no non-empty mentions")]
    EmptyEntity { entity_type: String },
}

/// An entity recovered from a target string: the entity-type label plus its
/// distinct normalized mentions in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ParsedEntity {
    entity_type: String,
    mentions: Vec<String>,
}

impl ParsedEntity {
    /// Builds a parsed entity from already-normalized mention strings.
    /// Mentions are sorted and deduplicated; empty strings are discarded.
    /// Errors when no mention survives.
    pub fn new(
        entity_type: impl Into<String>,
        mentions: impl IntoIterator<Item = String>,
    ) -> Result<Self, ParseError> {
        let entity_type = entity_type.into();
        let mut mentions: Vec<String> = mentions.into_iter().filter(|m| !m.is_empty()).collect();
        mentions.sort();
        mentions.dedup();
        if mentions.is_empty() {
            return Err(ParseError::EmptyEntity { entity_type });
        }
        Ok(ParsedEntity { entity_type, mentions })
    }

    /// Builds a parsed entity from raw mention text, normalizing each mention
    /// against the schema first.
    pub fn from_raw_mentions(
        entity_type: impl Into<String>,
        mentions: impl IntoIterator<Item = String>,
        config: &SchemaConfig,
    ) -> Result<Self, ParseError> {
        Self::new(
            entity_type,
            mentions.into_iter().map(|m| normalize_mention_text(&m, config)),
        )
    }

    pub fn entity_type(&self) -> &str {
        &self.entity_type
    }

    /// Distinct normalized mentions in lexicographic order.
    pub fn mentions(&self) -> &[String] {
        &self.mentions
    }
}

/// A relation recovered from a target string: an ordered entity tuple plus
/// the relation-type label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ParsedRelation {
    relation_type: String,
    entities: Vec<ParsedEntity>,
}

impl ParsedRelation {
    pub fn new(relation_type: impl Into<String>, entities: Vec<ParsedEntity>) -> Self {
        ParsedRelation { relation_type: relation_type.into(), entities }
    }

    /// Normalizes a structured relation instance into parsed form, applying
    /// the same mention normalization, sorting, and deduplication as
    /// [`parse_target_string`]. Errors when an entity has no mention left
    /// after normalization.
    pub fn from_instance(
        instance: &RelationInstance,
        config: &SchemaConfig,
    ) -> Result<Self, ParseError> {
        let entities = instance
            .entities
            .iter()
            .map(|entity| {
                ParsedEntity::from_raw_mentions(
                    entity.entity_type.clone(),
                    entity.mentions.iter().map(|m| m.text.clone()),
                    config,
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ParsedRelation::new(instance.relation_type.clone(), entities))
    }

    pub fn relation_type(&self) -> &str {
        &self.relation_type
    }

    pub fn entities(&self) -> &[ParsedEntity] {
        &self.entities
    }
}

/// Parses a target string into relations, dropping malformed segments and
/// deduplicating identical relations. Never fails: arbitrary input yields
/// whatever well-formed relations it contains (possibly none).
pub fn parse_target_string(target: &str, config: &SchemaConfig) -> Vec<ParsedRelation> {
    let mut relations: Vec<ParsedRelation> = Vec::new();
    let mut pending_entities: Vec<ParsedEntity> = Vec::new();
    let mut entity_mentions: Vec<String> = Vec::new();
    let mut mention_tokens: Vec<&str> = Vec::new();
    let mut malformed = false;

    for token in target.split_whitespace() {
        let class = classify_token(token, config);
        if malformed {
            // Recovery: skip to the token following the next relation token.
            if matches!(class, TokenClass::Relation(_)) {
                pending_entities.clear();
                entity_mentions.clear();
                mention_tokens.clear();
                malformed = false;
            }
            continue;
        }
        match class {
            TokenClass::Copy => mention_tokens.push(token),
            TokenClass::Coref => {
                if mention_tokens.is_empty() {
                    malformed = true;
                } else {
                    entity_mentions.push(mention_tokens.join(" "));
                    mention_tokens.clear();
                }
            }
            TokenClass::Entity(label) => {
                if mention_tokens.is_empty() {
                    malformed = true;
                } else {
                    entity_mentions.push(mention_tokens.join(" "));
                    mention_tokens.clear();
                    match ParsedEntity::from_raw_mentions(label, entity_mentions.drain(..), config) {
                        Ok(entity) => pending_entities.push(entity),
                        Err(_) => malformed = true,
                    }
                }
            }
            TokenClass::Relation(label) => {
                let complete = mention_tokens.is_empty()
                    && entity_mentions.is_empty()
                    && !pending_entities.is_empty()
                    && config.arity(&label) == Some(pending_entities.len());
                if complete {
                    let relation =
                        ParsedRelation::new(label, std::mem::take(&mut pending_entities));
                    if !relations.contains(&relation) {
                        relations.push(relation);
                    }
                }
                pending_entities.clear();
                entity_mentions.clear();
                mention_tokens.clear();
            }
            // `classify_token` never yields sequence markers.
            TokenClass::Bos | TokenClass::Eos => unreachable!(),
        }
    }
    relations
}

/// Outcome of greedy one-to-one matching of predicted against gold relations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelationDiff {
    /// Matched (prediction index, gold index) pairs, in prediction order.
    pub matched: Vec<(usize, usize)>,
    /// Indices of predictions that matched no gold relation.
    pub unmatched_predicted: Vec<usize>,
    /// Indices of gold relations no prediction matched.
    pub unmatched_gold: Vec<usize>,
}

impl RelationDiff {
    pub fn true_positives(&self) -> usize {
        self.matched.len()
    }

    pub fn false_positives(&self) -> usize {
        self.unmatched_predicted.len()
    }

    pub fn false_negatives(&self) -> usize {
        self.unmatched_gold.len()
    }
}

/// Greedily matches predictions to gold relations one-to-one.
///
/// Predictions are visited in input order; each takes the first unconsumed
/// gold relation satisfying the predicate. Ties are therefore broken by input
/// order on both sides.
pub fn diff_relations<F>(
    predicted: &[ParsedRelation],
    gold: &[ParsedRelation],
    mut is_match: F,
) -> RelationDiff
where
    F: FnMut(&ParsedRelation, &ParsedRelation) -> bool,
{
    let mut gold_used = vec![false; gold.len()];
    let mut diff = RelationDiff::default();
    for (p_idx, prediction) in predicted.iter().enumerate() {
        let hit = gold
            .iter()
            .enumerate()
            .find(|(g_idx, g)| !gold_used[*g_idx] && is_match(prediction, g));
        match hit {
            Some((g_idx, _)) => {
                gold_used[g_idx] = true;
                diff.matched.push((p_idx, g_idx));
            }
            None => diff.unmatched_predicted.push(p_idx),
        }
    }
    diff.unmatched_gold = gold_used
        .iter()
        .enumerate()
        .filter(|(_, used)| !**used)
        .map(|(idx, _)| idx)
        .collect();
    diff
}
