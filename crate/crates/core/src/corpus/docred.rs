//! Reader for DocRED-style JSON corpora.
//!
//! The input is a JSON array of documents with `title`, `sents` (a list of
//! token lists), `vertexSet` (one mention cluster per entity, each mention
//! carrying `name`, `sent_id`, `type`, and a token span `pos`), and `labels`
//! (head/tail entity indices `h`/`t` plus relation type `r`). Document text
//! is reconstructed by joining tokens and sentences with single spaces, so
//! mention spans become well-defined character offsets.

use std::io::Read;

use serde::Deserialize;

use crate::corpus::CorpusError;
use crate::model::{collapse_whitespace, AnnotatedDocument, Entity, Mention, RelationInstance};

#[derive(Debug, Deserialize)]
struct DocRedDocument {
    title: String,
    #[serde(rename = "sents")]
    sentences: Vec<Vec<String>>,
    #[serde(rename = "vertexSet")]
    vertex_set: Vec<Vec<DocRedMention>>,
    #[serde(default)]
    labels: Vec<DocRedLabel>,
}

#[derive(Debug, Deserialize)]
struct DocRedMention {
    name: String,
    sent_id: usize,
    #[serde(rename = "type")]
    mention_type: String,
    /// Token span within the sentence, end exclusive.
    pos: [usize; 2],
}

#[derive(Debug, Deserialize)]
struct DocRedLabel {
    h: usize,
    t: usize,
    r: String,
}

/// Reads a DocRED-style JSON array into annotated documents.
pub fn read_docred<R: Read>(reader: R) -> Result<Vec<AnnotatedDocument>, CorpusError> {
    let records: Vec<DocRedDocument> = serde_json::from_reader(reader)?;
    records.into_iter().map(convert).collect()
}

fn convert(record: DocRedDocument) -> Result<AnnotatedDocument, CorpusError> {
    let doc_id = record.title;
    let malformed = |message: String| CorpusError::MalformedDocument {
        doc_id: doc_id.clone(),
        message,
    };

    // Reconstruct the text and remember where every token starts and ends.
    let mut text = String::new();
    let mut sentence_spans = Vec::with_capacity(record.sentences.len());
    let mut token_spans: Vec<Vec<(usize, usize)>> = Vec::with_capacity(record.sentences.len());
    for tokens in &record.sentences {
        if !text.is_empty() {
            text.push(' ');
        }
        let sentence_start = text.len();
        let mut spans = Vec::with_capacity(tokens.len());
        for (index, token) in tokens.iter().enumerate() {
            if index > 0 {
                text.push(' ');
            }
            let start = text.len();
            text.push_str(token);
            spans.push((start, text.len()));
        }
        sentence_spans.push((sentence_start, text.len()));
        token_spans.push(spans);
    }

    let mut entities = Vec::with_capacity(record.vertex_set.len());
    for (vertex_index, cluster) in record.vertex_set.iter().enumerate() {
        if cluster.is_empty() {
            return Err(malformed(format!("vertex {vertex_index} has no mentions")));
        }
        let mut mentions = Vec::with_capacity(cluster.len());
        for mention in cluster {
            let spans = token_spans.get(mention.sent_id).ok_or_else(|| {
                malformed(format!(
                    "vertex {vertex_index} references sentence {} of {}",
                    mention.sent_id,
                    token_spans.len()
                ))
            })?;
            let [from, to] = mention.pos;
            if from >= to || to > spans.len() {
                return Err(malformed(format!(
                    "vertex {vertex_index} has token span {from}..{to} in a {}-token sentence",
                    spans.len()
                )));
            }
            let start = spans[from].0;
            let end = spans[to - 1].1;
            let covered = &text[start..end];
            if collapse_whitespace(covered) != collapse_whitespace(&mention.name) {
                log::warn!(
                    "document {doc_id}: mention name `{}` disagrees with tokens `{covered}`; trusting token offsets",
                    mention.name
                );
            }
            mentions.push(Mention::new(covered, start, end).with_sentence(mention.sent_id));
        }
        entities.push(Entity::new(cluster[0].mention_type.clone(), mentions));
    }

    let mut relations = Vec::with_capacity(record.labels.len());
    for label in &record.labels {
        let head = entities.get(label.h).ok_or_else(|| {
            malformed(format!("label references missing vertex {} (head)", label.h))
        })?;
        let tail = entities.get(label.t).ok_or_else(|| {
            malformed(format!("label references missing vertex {} (tail)", label.t))
        })?;
        relations.push(RelationInstance::new(label.r.clone(), vec![head.clone(), tail.clone()]));
    }

    let mut doc = AnnotatedDocument::new(doc_id, text);
    doc.sentence_spans = sentence_spans;
    doc.entities = entities;
    doc.relations = relations;
    Ok(doc)
}
