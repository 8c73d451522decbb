//! Relation-extraction toolkit: linearization, constrained decoding, and
//! evaluation for document-level relation extraction.
//!
//! The crate turns annotated documents into flat target strings a sequence
//! model can generate, parses such strings back into relations, restricts
//! decoding so only well-formed strings can be produced, and scores predicted
//! against gold relations with strict or relaxed matching. Corpus readers for
//! two common formats, entity hinting, ontology-aware filtering of hypernym
//! errors, and sentence-level statistics round out the pipeline.
//!
//! A typical flow:
//!
//! 1. Load a [`SchemaConfig`] describing entity and relation vocabularies.
//! 2. Read documents with [`corpus::pubtator`], [`corpus::docred`], or
//!    [`corpus::records`].
//! 3. Produce training targets with [`serialize_relations`] and optional
//!    prompts with [`hint::build_hint_for_document`].
//! 4. During decoding, keep the model inside the grammar with
//!    [`constraints::DecoderState`] and [`constraints::mask_scores`].
//! 5. Parse model output with [`parse_target_string`] and score it with
//!    [`eval::score`], optionally after [`hierarchy::filter_hypernyms`].

pub mod constraints;
pub mod corpus;
pub mod eval;
pub mod hierarchy;
pub mod hint;
pub mod linearize;
pub mod model;
pub mod parse;
pub mod schema;

pub use constraints::{mask_scores, validate_sequence, DecoderState};
pub use eval::{score, MatchCriterion, ScoreReport};
pub use linearize::{classify_token, classify_tokens, serialize_relations, TokenClass};
pub use model::{AnnotatedDocument, Entity, Mention, RelationInstance};
pub use parse::{diff_relations, parse_target_string, ParsedEntity, ParsedRelation};
pub use schema::{SchemaConfig, SchemaConfigBuilder};
