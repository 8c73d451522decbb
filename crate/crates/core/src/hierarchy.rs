//! Identifier hierarchy and hypernym-aware filtering of predicted relations.
//!
//! Some corpora annotate a relation only against the most specific concept,
//! so a prediction whose tail entity is a broader ancestor of a gold tail is
//! arguably not wrong. [`filter_hypernyms`] removes exactly those
//! predictions, leaving true positives and false negatives untouched, so
//! precision can only rise.
//!
//! The hierarchy file is line-oriented and tab-separated; `#` starts a
//! comment:
//!
//! ```text
//! edge<TAB>CHILD_ID<TAB>PARENT_ID
//! name<TAB>ID<TAB>mention text
//! ```

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::io::BufRead;
use std::path::Path;

use thiserror::Error;

use crate::model::collapse_whitespace;
use crate::parse::{ParsedEntity, ParsedRelation};

/// Errors raised while loading a hierarchy.
#[derive(Debug, Error)]
pub enum HierarchyError {
    #[error("failed to read hierarchy file `{path}`: {source}")]
    ReadFile {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("hierarchy line {line}: expected `edge\\tchild\\tparent` or `name\\tid\\tmention`, got `{content}`")]
    MalformedLine { line: usize, content: String },
    #[error("hierarchy contains a cycle through identifier `{identifier}`")]
    CycleDetected { identifier: String },
}

/// A directed acyclic hierarchy over concept identifiers plus a lexicon
/// mapping mention text to identifiers. Mention lookup is case-insensitive
/// and whitespace-collapsed.
#[derive(Debug, Clone, Default)]
pub struct Hierarchy {
    parents: BTreeMap<String, BTreeSet<String>>,
    lexicon: BTreeMap<String, String>,
}

impl Hierarchy {
    /// Builds a hierarchy from child-parent edges and (identifier, mention)
    /// lexicon entries, rejecting cyclic edge sets.
    pub fn new(
        edges: impl IntoIterator<Item = (String, String)>,
        names: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, HierarchyError> {
        let mut hierarchy = Hierarchy::default();
        for (child, parent) in edges {
            hierarchy.parents.entry(child).or_default().insert(parent);
        }
        for (identifier, mention) in names {
            let key = normalize_lookup(&mention);
            if let Some(existing) = hierarchy.lexicon.get(&key) {
                if *existing != identifier {
                    log::warn!(
                        "hierarchy lexicon maps `{mention}` to both `{existing}` and `{identifier}`; keeping `{existing}`"
                    );
                }
                continue;
            }
            hierarchy.lexicon.insert(key, identifier);
        }
        hierarchy.check_acyclic()?;
        Ok(hierarchy)
    }

    /// Loads a hierarchy from the tab-separated format described in the
    /// module documentation.
    pub fn from_reader(reader: impl BufRead) -> Result<Self, HierarchyError> {
        let mut edges = Vec::new();
        let mut names = Vec::new();
        for (index, line) in reader.lines().enumerate() {
            let line = line.map_err(|source| HierarchyError::ReadFile {
                path: "<reader>".to_string(),
                source,
            })?;
            let trimmed = line.trim_end();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split('\t').collect();
            match fields.as_slice() {
                ["edge", child, parent] if !child.is_empty() && !parent.is_empty() => {
                    edges.push((child.to_string(), parent.to_string()));
                }
                ["name", identifier, mention] if !identifier.is_empty() && !mention.is_empty() => {
                    names.push((identifier.to_string(), mention.to_string()));
                }
                _ => {
                    return Err(HierarchyError::MalformedLine {
                        line: index + 1,
                        content: trimmed.to_string(),
                    })
                }
            }
        }
        Self::new(edges, names)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, HierarchyError> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|source| HierarchyError::ReadFile {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_reader(std::io::BufReader::new(file))
    }

    /// Resolves mention text to an identifier, if the lexicon knows it.
    pub fn resolve(&self, mention: &str) -> Option<&str> {
        self.lexicon.get(&normalize_lookup(mention)).map(String::as_str)
    }

    /// Whether `ancestor` is reachable from `descendant` by one or more
    /// parent edges. An identifier is never its own strict ancestor.
    pub fn is_strict_ancestor(&self, ancestor: &str, descendant: &str) -> bool {
        if ancestor == descendant {
            return false;
        }
        let mut queue: VecDeque<&str> = VecDeque::from([descendant]);
        let mut visited: BTreeSet<&str> = BTreeSet::new();
        while let Some(current) = queue.pop_front() {
            let Some(parents) = self.parents.get(current) else { continue };
            for parent in parents {
                if parent == ancestor {
                    return true;
                }
                if visited.insert(parent) {
                    queue.push_back(parent);
                }
            }
        }
        false
    }

    /// Identifiers an entity's mentions resolve to (unresolvable mentions are
    /// simply absent).
    fn resolve_entity(&self, entity: &ParsedEntity) -> BTreeSet<&str> {
        entity.mentions().iter().filter_map(|m| self.resolve(m)).collect()
    }

    fn check_acyclic(&self) -> Result<(), HierarchyError> {
        // Iterative DFS with white/grey/black coloring over parent edges.
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            Grey,
            Black,
        }
        let mut colors: BTreeMap<&str, Color> = BTreeMap::new();
        for root in self.parents.keys() {
            if colors.contains_key(root.as_str()) {
                continue;
            }
            let mut stack: Vec<(&str, bool)> = vec![(root.as_str(), false)];
            while let Some((node, expanded)) = stack.pop() {
                if expanded {
                    colors.insert(node, Color::Black);
                    continue;
                }
                match colors.get(node) {
                    Some(Color::Black) => continue,
                    Some(Color::Grey) => {
                        return Err(HierarchyError::CycleDetected { identifier: node.to_string() })
                    }
                    None => {}
                }
                colors.insert(node, Color::Grey);
                stack.push((node, true));
                if let Some(parents) = self.parents.get(node) {
                    for parent in parents {
                        match colors.get(parent.as_str()) {
                            Some(Color::Grey) => {
                                return Err(HierarchyError::CycleDetected {
                                    identifier: parent.clone(),
                                })
                            }
                            Some(Color::Black) => {}
                            None => stack.push((parent.as_str(), false)),
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn normalize_lookup(mention: &str) -> String {
    collapse_whitespace(mention).to_lowercase()
}

/// Removes predictions that are wrong only by generality: a prediction is
/// dropped when it is not itself a gold relation, some gold relation of the
/// same type has equal entities at every non-final tuple position, and the
/// predicted final entity resolves to a strict ancestor of that gold
/// relation's final entity. Predictions with unresolvable final entities pass
/// through. True-positive and false-negative counts are unaffected.
pub fn filter_hypernyms(
    predicted: &BTreeMap<String, Vec<ParsedRelation>>,
    gold: &BTreeMap<String, Vec<ParsedRelation>>,
    hierarchy: &Hierarchy,
) -> BTreeMap<String, Vec<ParsedRelation>> {
    predicted
        .iter()
        .map(|(doc_id, predictions)| {
            let gold_relations = gold.get(doc_id).map(Vec::as_slice).unwrap_or(&[]);
            let kept = predictions
                .iter()
                .filter(|p| !is_hypernym_error(p, gold_relations, hierarchy))
                .cloned()
                .collect();
            (doc_id.clone(), kept)
        })
        .collect()
}

fn is_hypernym_error(
    prediction: &ParsedRelation,
    gold_relations: &[ParsedRelation],
    hierarchy: &Hierarchy,
) -> bool {
    if gold_relations.contains(prediction) {
        return false;
    }
    let Some(predicted_tail) = prediction.entities().last() else {
        return false;
    };
    let predicted_ids = hierarchy.resolve_entity(predicted_tail);
    if predicted_ids.is_empty() {
        return false;
    }
    gold_relations.iter().any(|gold| {
        if gold.relation_type() != prediction.relation_type()
            || gold.entities().len() != prediction.entities().len()
        {
            return false;
        }
        let heads_equal = prediction.entities()[..prediction.entities().len() - 1]
            .iter()
            .zip(gold.entities())
            .all(|(p, g)| p == g);
        if !heads_equal {
            return false;
        }
        let gold_tail = gold.entities().last().expect("same non-zero length as prediction");
        if gold_tail.entity_type() != predicted_tail.entity_type() {
            return false;
        }
        let gold_ids = hierarchy.resolve_entity(gold_tail);
        predicted_ids
            .iter()
            .any(|p| gold_ids.iter().any(|g| hierarchy.is_strict_ancestor(p, g)))
    })
}
