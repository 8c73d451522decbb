//! Decoding-time constraints: a finite-state view of the target grammar.
//!
//! During constrained decoding the caller tracks a [`DecoderState`], asks for
//! the [`ValidNext`] classes after each emitted token, and floors the scores
//! of invalid candidates with [`mask_scores`] so they are never selected.
//! The end-of-sequence class is special: its score is never modified, so the
//! decoder may stop at any point.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::linearize::TokenClass;
use crate::schema::SchemaConfig;

/// Default floor assigned to the scores of invalid candidates. Finite, so
/// downstream softmax arithmetic stays NaN-free.
pub const DEFAULT_MASK_FLOOR: f64 = -1e32;

/// Errors raised by constraint tracking.
#[derive(Debug, Error)]
pub enum ConstraintError {
    #[error("class {class} is not a valid continuation in state {state:?}")]
    InvalidTransition { class: String, state: DecoderState },
    #[error("candidate classes and scores are misaligned: {classes} classes vs {scores} scores")]
    MisalignedScores { classes: usize, scores: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum LastClass {
    Bos,
    Copy,
    Coref,
    Entity,
    Relation,
    Eos,
}

/// Position in the target grammar reached after a prefix of emitted tokens.
///
/// States can only be obtained from [`DecoderState::initial`] and [`step`],
/// so every state held by a caller is reachable by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DecoderState {
    last: LastClass,
    entities_in_current_relation: usize,
    relations_emitted: usize,
}

impl DecoderState {
    /// The state immediately after the beginning-of-sequence marker.
    pub fn initial() -> Self {
        DecoderState { last: LastClass::Bos, entities_in_current_relation: 0, relations_emitted: 0 }
    }

    /// Entities completed since the last relation token.
    pub fn entities_in_current_relation(&self) -> usize {
        self.entities_in_current_relation
    }

    /// Relation tokens emitted so far.
    pub fn relations_emitted(&self) -> usize {
        self.relations_emitted
    }

    /// True once the end-of-sequence class has been emitted.
    pub fn is_terminal(&self) -> bool {
        self.last == LastClass::Eos
    }
}

/// The set of token classes the grammar allows after a given state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidNext {
    pub copy: bool,
    pub coref: bool,
    /// Whether any entity-type token may follow.
    pub entity: bool,
    /// Relation-type labels whose declared arity equals the number of
    /// entities completed in the current relation.
    pub relations: BTreeSet<String>,
    pub eos: bool,
}

impl ValidNext {
    fn none() -> Self {
        ValidNext { copy: false, coref: false, entity: false, relations: BTreeSet::new(), eos: false }
    }

    /// Whether the given class is in this set. Beginning-of-sequence is never
    /// a valid continuation.
    pub fn allows(&self, class: &TokenClass) -> bool {
        match class {
            TokenClass::Bos => false,
            TokenClass::Copy => self.copy,
            TokenClass::Coref => self.coref,
            TokenClass::Entity(_) => self.entity,
            TokenClass::Relation(label) => self.relations.contains(label),
            TokenClass::Eos => self.eos,
        }
    }
}

/// Returns the classes that may follow `state` under the grammar.
///
/// Mention tokens open entities, the coreference separator must be followed
/// by another mention, an entity token either extends the tuple (below the
/// maximum declared arity) or closes it with a relation token of matching
/// arity, and end-of-sequence is valid everywhere before termination. A
/// terminal state allows nothing.
pub fn next_valid_classes(state: &DecoderState, config: &SchemaConfig) -> ValidNext {
    let mut valid = ValidNext::none();
    match state.last {
        LastClass::Bos | LastClass::Coref | LastClass::Relation => {
            valid.copy = true;
        }
        LastClass::Copy => {
            valid.copy = true;
            valid.coref = true;
            valid.entity = true;
        }
        LastClass::Entity => {
            let count = state.entities_in_current_relation;
            valid.copy = count < config.max_arity();
            valid.relations = config
                .relation_labels_with_arity(count)
                .map(str::to_string)
                .collect();
        }
        LastClass::Eos => return valid,
    }
    valid.eos = true;
    valid
}

/// Advances the state by one emitted class, rejecting invalid transitions.
pub fn step(
    state: &DecoderState,
    emitted: &TokenClass,
    config: &SchemaConfig,
) -> Result<DecoderState, ConstraintError> {
    if !next_valid_classes(state, config).allows(emitted) {
        return Err(ConstraintError::InvalidTransition {
            class: emitted.to_string(),
            state: *state,
        });
    }
    let mut next = *state;
    match emitted {
        TokenClass::Copy => next.last = LastClass::Copy,
        TokenClass::Coref => next.last = LastClass::Coref,
        TokenClass::Entity(_) => {
            next.last = LastClass::Entity;
            next.entities_in_current_relation += 1;
        }
        TokenClass::Relation(_) => {
            next.last = LastClass::Relation;
            next.entities_in_current_relation = 0;
            next.relations_emitted += 1;
        }
        TokenClass::Eos => next.last = LastClass::Eos,
        // Never valid, rejected above.
        TokenClass::Bos => unreachable!(),
    }
    Ok(next)
}

/// Floors the scores of candidates whose class is invalid in `state`, using
/// [`DEFAULT_MASK_FLOOR`]. Scores of valid candidates are returned untouched,
/// and end-of-sequence scores are never modified.
pub fn mask_scores(
    state: &DecoderState,
    scores: &[f64],
    classes: &[TokenClass],
    config: &SchemaConfig,
) -> Result<Vec<f64>, ConstraintError> {
    mask_scores_with_floor(state, scores, classes, config, DEFAULT_MASK_FLOOR)
}

/// [`mask_scores`] with an explicit floor value.
pub fn mask_scores_with_floor(
    state: &DecoderState,
    scores: &[f64],
    classes: &[TokenClass],
    config: &SchemaConfig,
    floor: f64,
) -> Result<Vec<f64>, ConstraintError> {
    if scores.len() != classes.len() {
        return Err(ConstraintError::MisalignedScores {
            classes: classes.len(),
            scores: scores.len(),
        });
    }
    let valid = next_valid_classes(state, config);
    Ok(scores
        .iter()
        .zip(classes)
        .map(|(&score, class)| {
            if matches!(class, TokenClass::Eos) || valid.allows(class) {
                score
            } else {
                floor
            }
        })
        .collect())
}

/// Whether a full class sequence is generable: it must start with the
/// beginning-of-sequence marker, follow only valid transitions, and end with
/// exactly one end-of-sequence marker in final position.
pub fn validate_sequence(classes: &[TokenClass], config: &SchemaConfig) -> bool {
    let Some((first, rest)) = classes.split_first() else {
        return false;
    };
    if *first != TokenClass::Bos {
        return false;
    }
    let mut state = DecoderState::initial();
    for class in rest {
        match step(&state, class, config) {
            Ok(next) => state = next,
            Err(_) => return false,
        }
    }
    state.is_terminal()
}
