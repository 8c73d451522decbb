//! Inter- versus intra-sentence relation statistics.
//!
//! A relation that cannot be found inside a single sentence forces a reader —
//! human or model — to combine information across sentences. Two definitions
//! of "inside a single sentence" are supported: one requiring a sentence that
//! mentions every argument at least once, and a stricter one requiring a
//! sentence that contains every mention of every argument.

use std::fmt;
use std::str::FromStr;

use crate::model::{AnnotatedDocument, Mention, RelationInstance};

/// How a relation qualifies as intra-sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SentenceDefinition {
    /// Intra-sentence if some sentence contains at least one mention of every
    /// argument entity.
    AnySentence,
    /// Intra-sentence only if some sentence contains every mention of every
    /// argument entity.
    AllMentions,
}

impl fmt::Display for SentenceDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SentenceDefinition::AnySentence => write!(f, "any-sentence"),
            SentenceDefinition::AllMentions => write!(f, "all-mentions"),
        }
    }
}

impl FromStr for SentenceDefinition {
    type Err = String;

    fn from_str(value: &str) -> Result<Self, Self::Err> {
        match value {
            "any-sentence" => Ok(SentenceDefinition::AnySentence),
            "all-mentions" => Ok(SentenceDefinition::AllMentions),
            other => Err(format!(
                "unknown sentence definition `{other}` (expected `any-sentence` or `all-mentions`)"
            )),
        }
    }
}

/// Pooled inter-sentence counts over a corpus.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntersentenceStats {
    /// Relations that are not intra-sentence under the chosen definition.
    pub inter: usize,
    /// All relations counted.
    pub total: usize,
    /// Documents ignored because they carry no sentence spans.
    pub skipped_documents: usize,
}

impl IntersentenceStats {
    /// Fraction of counted relations that are inter-sentence, 0.0 when empty.
    pub fn fraction(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.inter as f64 / self.total as f64
        }
    }
}

fn mention_in_span(mention: &Mention, span: (usize, usize)) -> bool {
    mention.start >= span.0 && mention.end <= span.1
}

/// Whether a relation is inter-sentence; `None` if the document has no
/// sentence spans to judge against.
pub fn relation_is_intersentence(
    doc: &AnnotatedDocument,
    relation: &RelationInstance,
    definition: SentenceDefinition,
) -> Option<bool> {
    if doc.sentence_spans.is_empty() {
        return None;
    }
    let intra = doc.sentence_spans.iter().any(|&span| {
        relation.entities.iter().all(|entity| match definition {
            SentenceDefinition::AnySentence => {
                entity.mentions.iter().any(|mention| mention_in_span(mention, span))
            }
            SentenceDefinition::AllMentions => {
                entity.mentions.iter().all(|mention| mention_in_span(mention, span))
            }
        })
    });
    Some(!intra)
}

/// Counts inter-sentence relations across a corpus, skipping documents that
/// lack sentence spans.
pub fn intersentence_stats(
    docs: &[AnnotatedDocument],
    definition: SentenceDefinition,
) -> IntersentenceStats {
    let mut stats = IntersentenceStats::default();
    for doc in docs {
        if doc.sentence_spans.is_empty() && !doc.relations.is_empty() {
            log::warn!(
                "document {} has relations but no sentence spans; skipping it",
                doc.doc_id
            );
            stats.skipped_documents += 1;
            continue;
        }
        for relation in &doc.relations {
            if let Some(inter) = relation_is_intersentence(doc, relation, definition) {
                stats.total += 1;
                if inter {
                    stats.inter += 1;
                }
            }
        }
    }
    stats
}

/// Convenience wrapper returning just the inter-sentence fraction.
pub fn intersentence_fraction(docs: &[AnnotatedDocument], definition: SentenceDefinition) -> f64 {
    intersentence_stats(docs, definition).fraction()
}
