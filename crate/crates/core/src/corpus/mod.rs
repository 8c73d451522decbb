//! Corpus ingestion (PubTator, DocRED-style JSON, line-delimited document
//! records) and corpus-level statistics.

pub mod docred;
pub mod pubtator;
pub mod records;
pub mod stats;

use thiserror::Error;

/// Errors raised while reading or writing corpora.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    MalformedLine { line: usize, message: String },
    #[error("document `{doc_id}`: {message}")]
    MalformedDocument { doc_id: String, message: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}
