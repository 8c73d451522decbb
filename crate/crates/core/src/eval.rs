//! Scoring of parsed relations against gold relations: strict and relaxed
//! entity matching, greedy per-document alignment, and micro-averaged
//! precision, recall, and F1 pooled over all documents.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::parse::{diff_relations, ParsedEntity, ParsedRelation};

/// Errors raised while configuring or running the scorer.
#[derive(Debug, Error)]
pub enum EvalError {
    #[error("relaxed threshold must lie strictly between 0 and 1, got {0}")]
    BadThreshold(f64),
    #[error(
        "document id sets differ: only in predictions: {only_in_predicted:?}; only in gold: {only_in_gold:?}"
    )]
    DocumentIdMismatch { only_in_predicted: Vec<String>, only_in_gold: Vec<String> },
}

/// How entities are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchMode {
    /// Entity types and full mention sets must be equal.
    Strict,
    /// Entity types must be equal and the fraction of predicted mentions also
    /// present in gold must exceed the threshold.
    Relaxed,
}

/// Entity matching criterion: mode plus the relaxed overlap threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchCriterion {
    mode: MatchMode,
    relaxed_threshold: f64,
}

impl MatchCriterion {
    pub fn strict() -> Self {
        MatchCriterion { mode: MatchMode::Strict, relaxed_threshold: 0.5 }
    }

    /// Relaxed matching with the default 0.5 threshold.
    pub fn relaxed() -> Self {
        MatchCriterion { mode: MatchMode::Relaxed, relaxed_threshold: 0.5 }
    }

    /// Relaxed matching with an explicit threshold in the open interval (0, 1).
    pub fn relaxed_with_threshold(threshold: f64) -> Result<Self, EvalError> {
        if !(threshold > 0.0 && threshold < 1.0) {
            return Err(EvalError::BadThreshold(threshold));
        }
        Ok(MatchCriterion { mode: MatchMode::Relaxed, relaxed_threshold: threshold })
    }

    pub fn mode(&self) -> MatchMode {
        self.mode
    }

    pub fn threshold(&self) -> f64 {
        self.relaxed_threshold
    }
}

/// Whether a predicted entity matches a gold entity under the criterion.
///
/// Relaxed overlap is asymmetric: the denominator is the number of predicted
/// mentions, and the comparison is strict (`> threshold`), so exactly half of
/// the predicted mentions being gold does not match at the default threshold.
pub fn entity_match(predicted: &ParsedEntity, gold: &ParsedEntity, criterion: &MatchCriterion) -> bool {
    if predicted.entity_type() != gold.entity_type() {
        return false;
    }
    match criterion.mode {
        MatchMode::Strict => predicted.mentions() == gold.mentions(),
        MatchMode::Relaxed => {
            let shared = predicted
                .mentions()
                .iter()
                .filter(|m| gold.mentions().binary_search(m).is_ok())
                .count();
            (shared as f64) / (predicted.mentions().len() as f64) > criterion.relaxed_threshold
        }
    }
}

/// Whether a predicted relation matches a gold relation: relation types equal
/// and entities matching pairwise in tuple order.
pub fn relation_match(
    predicted: &ParsedRelation,
    gold: &ParsedRelation,
    criterion: &MatchCriterion,
) -> bool {
    predicted.relation_type() == gold.relation_type()
        && predicted.entities().len() == gold.entities().len()
        && predicted
            .entities()
            .iter()
            .zip(gold.entities())
            .all(|(p, g)| entity_match(p, g, criterion))
}

/// Pooled counts and derived metrics for one relation type or overall.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct MetricBlock {
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl MetricBlock {
    fn from_counts(true_positives: usize, false_positives: usize, false_negatives: usize) -> Self {
        let precision = ratio(true_positives, true_positives + false_positives);
        let recall = ratio(true_positives, true_positives + false_negatives);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        MetricBlock { true_positives, false_positives, false_negatives, precision, recall, f1 }
    }
}

fn ratio(numerator: usize, denominator: usize) -> f64 {
    if denominator == 0 {
        0.0
    } else {
        numerator as f64 / denominator as f64
    }
}

/// Micro-averaged scores pooled over all documents, overall and per relation type.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreReport {
    pub overall: MetricBlock,
    pub per_type: BTreeMap<String, MetricBlock>,
}

impl fmt::Display for ScoreReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<16} {:>6} {:>6} {:>6} {:>10} {:>8} {:>8}",
            "type", "tp", "fp", "fn", "precision", "recall", "f1"
        )?;
        for (relation_type, block) in &self.per_type {
            writeln!(
                f,
                "{:<16} {:>6} {:>6} {:>6} {:>10.4} {:>8.4} {:>8.4}",
                relation_type,
                block.true_positives,
                block.false_positives,
                block.false_negatives,
                block.precision,
                block.recall,
                block.f1
            )?;
        }
        write!(
            f,
            "{:<16} {:>6} {:>6} {:>6} {:>10.4} {:>8.4} {:>8.4}",
            "overall",
            self.overall.true_positives,
            self.overall.false_positives,
            self.overall.false_negatives,
            self.overall.precision,
            self.overall.recall,
            self.overall.f1
        )
    }
}

/// Scores predictions against gold, both given as per-document relation lists
/// keyed by document id. The id sets must be identical; counts are pooled
/// over documents before computing micro precision, recall, and F1.
pub fn score(
    predicted: &BTreeMap<String, Vec<ParsedRelation>>,
    gold: &BTreeMap<String, Vec<ParsedRelation>>,
    criterion: &MatchCriterion,
) -> Result<ScoreReport, EvalError> {
    let only_in_predicted: Vec<String> =
        predicted.keys().filter(|id| !gold.contains_key(*id)).cloned().collect();
    let only_in_gold: Vec<String> =
        gold.keys().filter(|id| !predicted.contains_key(*id)).cloned().collect();
    if !only_in_predicted.is_empty() || !only_in_gold.is_empty() {
        return Err(EvalError::DocumentIdMismatch { only_in_predicted, only_in_gold });
    }

    let mut counts: BTreeMap<String, (usize, usize, usize)> = BTreeMap::new();
    let mut overall = (0usize, 0usize, 0usize);
    for (doc_id, predictions) in predicted {
        let gold_relations = &gold[doc_id];
        let diff = diff_relations(predictions, gold_relations, |p, g| {
            relation_match(p, g, criterion)
        });
        for &(p_idx, _) in &diff.matched {
            counts.entry(predictions[p_idx].relation_type().to_string()).or_default().0 += 1;
            overall.0 += 1;
        }
        for &p_idx in &diff.unmatched_predicted {
            counts.entry(predictions[p_idx].relation_type().to_string()).or_default().1 += 1;
            overall.1 += 1;
        }
        for &g_idx in &diff.unmatched_gold {
            counts.entry(gold_relations[g_idx].relation_type().to_string()).or_default().2 += 1;
            overall.2 += 1;
        }
    }

    Ok(ScoreReport {
        overall: MetricBlock::from_counts(overall.0, overall.1, overall.2),
        per_type: counts
            .into_iter()
            .map(|(relation_type, (tp, fp, fn_))| {
                (relation_type, MetricBlock::from_counts(tp, fp, fn_))
            })
            .collect(),
    })
}
