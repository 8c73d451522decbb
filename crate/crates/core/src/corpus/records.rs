//! Line-delimited JSON document records.
//!
//! Each line holds one document object with fields `doc_id`, `text`,
//! `sentence_spans` (pairs of character offsets), `entities` (each with
//! `entity_type` and `mentions`), and `relations`. A relation stores its
//! `relation_type` and the indices of its argument entities within the
//! document's entity list, which keeps shared entities written once.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::corpus::CorpusError;
use crate::model::{AnnotatedDocument, Entity, RelationInstance};

#[derive(Debug, Serialize, Deserialize)]
struct DocumentRecord {
    doc_id: String,
    text: String,
    #[serde(default)]
    sentence_spans: Vec<(usize, usize)>,
    #[serde(default)]
    entities: Vec<Entity>,
    #[serde(default)]
    relations: Vec<RelationRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RelationRecord {
    relation_type: String,
    entities: Vec<usize>,
}

/// Serializes one document as a single JSON line (without the newline).
pub fn document_to_json(doc: &AnnotatedDocument) -> Result<String, CorpusError> {
    let mut relations = Vec::with_capacity(doc.relations.len());
    for relation in &doc.relations {
        let mut indices = Vec::with_capacity(relation.entities.len());
        for entity in &relation.entities {
            let index = doc.entities.iter().position(|candidate| candidate == entity).ok_or(
                CorpusError::MalformedDocument {
                    doc_id: doc.doc_id.clone(),
                    message: format!(
                        "relation `{}` uses an entity missing from the entity list",
                        relation.relation_type
                    ),
                },
            )?;
            indices.push(index);
        }
        relations.push(RelationRecord {
            relation_type: relation.relation_type.clone(),
            entities: indices,
        });
    }
    let record = DocumentRecord {
        doc_id: doc.doc_id.clone(),
        text: doc.text.clone(),
        sentence_spans: doc.sentence_spans.clone(),
        entities: doc.entities.clone(),
        relations,
    };
    Ok(serde_json::to_string(&record)?)
}

/// Parses one JSON line into a document.
pub fn document_from_json(line: &str) -> Result<AnnotatedDocument, CorpusError> {
    let record: DocumentRecord = serde_json::from_str(line)?;
    let mut doc = AnnotatedDocument::new(record.doc_id, record.text);
    doc.sentence_spans = record.sentence_spans;
    doc.entities = record.entities;
    for relation in &record.relations {
        let mut entities = Vec::with_capacity(relation.entities.len());
        for &index in &relation.entities {
            let entity = doc.entities.get(index).ok_or_else(|| CorpusError::MalformedDocument {
                doc_id: doc.doc_id.clone(),
                message: format!(
                    "relation `{}` references entity {index} but the document has {}",
                    relation.relation_type,
                    doc.entities.len()
                ),
            })?;
            entities.push(entity.clone());
        }
        doc.relations.push(RelationInstance::new(relation.relation_type.clone(), entities));
    }
    Ok(doc)
}

/// Reads every line of a JSONL stream, skipping blank lines.
pub fn read_records<R: BufRead>(reader: R) -> Result<Vec<AnnotatedDocument>, CorpusError> {
    let mut docs = Vec::new();
    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let doc = document_from_json(&line).map_err(|error| CorpusError::MalformedLine {
            line: index + 1,
            message: error.to_string(),
        })?;
        docs.push(doc);
    }
    Ok(docs)
}

/// Writes documents as JSONL, one per line.
pub fn write_records<W: Write>(docs: &[AnnotatedDocument], mut writer: W) -> Result<(), CorpusError> {
    for doc in docs {
        writeln!(writer, "{}", document_to_json(doc)?)?;
    }
    Ok(())
}
