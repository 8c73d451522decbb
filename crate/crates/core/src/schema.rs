//! Schema configuration: entity and relation vocabularies plus the special
//! tokens of the linear target representation.
//!
//! A schema can be built programmatically with [`SchemaConfig::builder`] or
//! loaded from a TOML file:
//!
//! ```toml
//! case_fold = true            # optional, defaults shown
//! coref_separator = ";"
//! hint_separator = "@SEP@"
//! start_token = "@START@"
//! end_token = "@END@"
//!
//! [entity_types]
//! GENE = "@GENE@"
//! DISEASE = "@DISEASE@"
//!
//! [relation_types]
//! GDA = { token = "@GDA@", arity = 2 }
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

pub const DEFAULT_COREF_SEPARATOR: &str = ";";
pub const DEFAULT_HINT_SEPARATOR: &str = "@SEP@";
pub const DEFAULT_START_TOKEN: &str = "@START@";
pub const DEFAULT_END_TOKEN: &str = "@END@";

/// Errors raised while building or loading a schema.
#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("failed to read schema file `{path}`: {source}")]
    ReadFile {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to parse schema file: {0}")]
    ParseToml(#[from] toml::de::Error),
    #[error("special token for `{label}` is empty")]
    EmptyToken { label: String },
    #[error("special token `{token}` contains whitespace, which the tokenizer would split")]
    WhitespaceInToken { token: String },
    #[error("special token `{token}` is declared more than once")]
    DuplicateToken { token: String },
    #[error("special token `{inner}` is a substring of special token `{outer}`")]
    SubstringToken { inner: String, outer: String },
    #[error("relation type `{label}` has arity {arity}, but at least 2 is required")]
    BadArity { label: String, arity: usize },
    #[error("schema declares no relation types")]
    NoRelationTypes,
}

/// Token and arity of one relation type.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct RelationTypeSpec {
    pub token: String,
    pub arity: usize,
}

/// Validated schema: vocabularies, special tokens, and normalization policy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaConfig {
    entity_types: BTreeMap<String, String>,
    relation_types: BTreeMap<String, RelationTypeSpec>,
    token_to_entity: BTreeMap<String, String>,
    token_to_relation: BTreeMap<String, String>,
    coref_separator: String,
    hint_separator: String,
    start_token: String,
    end_token: String,
    case_fold: bool,
    max_arity: usize,
}

impl SchemaConfig {
    pub fn builder() -> SchemaConfigBuilder {
        SchemaConfigBuilder::default()
    }

    /// Loads and validates a schema from a TOML string.
    pub fn from_toml_str(raw: &str) -> Result<Self, SchemaError> {
        let file: SchemaFile = toml::from_str(raw)?;
        let mut builder = SchemaConfigBuilder::default();
        for (label, token) in file.entity_types {
            builder = builder.entity_type(label, token);
        }
        for (label, spec) in file.relation_types {
            builder = builder.relation_type(label, spec.token, spec.arity);
        }
        if let Some(sep) = file.coref_separator {
            builder = builder.coref_separator(sep);
        }
        if let Some(sep) = file.hint_separator {
            builder = builder.hint_separator(sep);
        }
        if let Some(token) = file.start_token {
            builder = builder.start_token(token);
        }
        if let Some(token) = file.end_token {
            builder = builder.end_token(token);
        }
        if let Some(fold) = file.case_fold {
            builder = builder.case_fold(fold);
        }
        builder.build()
    }

    /// Loads and validates a schema from a TOML file on disk.
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, SchemaError> {
        let path = path.as_ref();
        let raw = std::fs::read_to_string(path).map_err(|source| SchemaError::ReadFile {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&raw)
    }

    /// Entity-type token for a label, e.g. `GENE` -> `@GENE@`.
    pub fn entity_token(&self, label: &str) -> Option<&str> {
        self.entity_types.get(label).map(String::as_str)
    }

    /// Entity-type label for a token, e.g. `@GENE@` -> `GENE`.
    pub fn entity_label_for_token(&self, token: &str) -> Option<&str> {
        self.token_to_entity.get(token).map(String::as_str)
    }

    /// Relation token and arity for a label.
    pub fn relation_spec(&self, label: &str) -> Option<&RelationTypeSpec> {
        self.relation_types.get(label)
    }

    /// Relation-type label for a token, e.g. `@GDA@` -> `GDA`.
    pub fn relation_label_for_token(&self, token: &str) -> Option<&str> {
        self.token_to_relation.get(token).map(String::as_str)
    }

    /// Arity of a relation type, if declared.
    pub fn arity(&self, label: &str) -> Option<usize> {
        self.relation_types.get(label).map(|spec| spec.arity)
    }

    /// Largest arity over all declared relation types.
    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    /// Labels of relation types with exactly the given arity.
    pub fn relation_labels_with_arity(&self, arity: usize) -> impl Iterator<Item = &str> {
        self.relation_types
            .iter()
            .filter(move |(_, spec)| spec.arity == arity)
            .map(|(label, _)| label.as_str())
    }

    pub fn entity_types(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entity_types.iter().map(|(label, token)| (label.as_str(), token.as_str()))
    }

    pub fn relation_types(&self) -> impl Iterator<Item = (&str, &RelationTypeSpec)> {
        self.relation_types.iter().map(|(label, spec)| (label.as_str(), spec))
    }

    pub fn coref_separator(&self) -> &str {
        &self.coref_separator
    }

    pub fn hint_separator(&self) -> &str {
        &self.hint_separator
    }

    pub fn start_token(&self) -> &str {
        &self.start_token
    }

    pub fn end_token(&self) -> &str {
        &self.end_token
    }

    pub fn case_fold(&self) -> bool {
        self.case_fold
    }
}

#[derive(Debug, Deserialize)]
struct SchemaFile {
    #[serde(default)]
    entity_types: BTreeMap<String, String>,
    #[serde(default)]
    relation_types: BTreeMap<String, RelationTypeSpec>,
    coref_separator: Option<String>,
    hint_separator: Option<String>,
    start_token: Option<String>,
    end_token: Option<String>,
    case_fold: Option<bool>,
}

/// Builder collecting schema entries before validation.
#[derive(Debug, Clone)]
pub struct SchemaConfigBuilder {
    entity_types: BTreeMap<String, String>,
    relation_types: BTreeMap<String, RelationTypeSpec>,
    coref_separator: String,
    hint_separator: String,
    start_token: String,
    end_token: String,
    case_fold: bool,
}

impl Default for SchemaConfigBuilder {
    fn default() -> Self {
        SchemaConfigBuilder {
            entity_types: BTreeMap::new(),
            relation_types: BTreeMap::new(),
            coref_separator: DEFAULT_COREF_SEPARATOR.to_string(),
            hint_separator: DEFAULT_HINT_SEPARATOR.to_string(),
            start_token: DEFAULT_START_TOKEN.to_string(),
            end_token: DEFAULT_END_TOKEN.to_string(),
            case_fold: true,
        }
    }
}

impl SchemaConfigBuilder {
    pub fn entity_type(mut self, label: impl Into<String>, token: impl Into<String>) -> Self {
        self.entity_types.insert(label.into(), token.into());
        self
    }

    pub fn relation_type(
        mut self,
        label: impl Into<String>,
        token: impl Into<String>,
        arity: usize,
    ) -> Self {
        self.relation_types.insert(label.into(), RelationTypeSpec { token: token.into(), arity });
        self
    }

    pub fn coref_separator(mut self, separator: impl Into<String>) -> Self {
        self.coref_separator = separator.into();
        self
    }

    pub fn hint_separator(mut self, separator: impl Into<String>) -> Self {
        self.hint_separator = separator.into();
        self
    }

    pub fn start_token(mut self, token: impl Into<String>) -> Self {
        self.start_token = token.into();
        self
    }

    pub fn end_token(mut self, token: impl Into<String>) -> Self {
        self.end_token = token.into();
        self
    }

    pub fn case_fold(mut self, fold: bool) -> Self {
        self.case_fold = fold;
        self
    }

    /// Validates the collected entries and produces the schema.
    ///
    /// Checks that every special token is non-empty, free of whitespace,
    /// distinct from every other special token and not a substring of one,
    /// that every relation arity is at least 2, and that at least one
    /// relation type is declared.
    pub fn build(self) -> Result<SchemaConfig, SchemaError> {
        if self.relation_types.is_empty() {
            return Err(SchemaError::NoRelationTypes);
        }
        for (label, spec) in &self.relation_types {
            if spec.arity < 2 {
                return Err(SchemaError::BadArity { label: label.clone(), arity: spec.arity });
            }
        }

        let mut tokens: Vec<(String, String)> = Vec::new();
        for (label, token) in &self.entity_types {
            tokens.push((label.clone(), token.clone()));
        }
        for (label, spec) in &self.relation_types {
            tokens.push((label.clone(), spec.token.clone()));
        }
        tokens.push(("coref_separator".to_string(), self.coref_separator.clone()));
        tokens.push(("hint_separator".to_string(), self.hint_separator.clone()));
        tokens.push(("start_token".to_string(), self.start_token.clone()));
        tokens.push(("end_token".to_string(), self.end_token.clone()));

        for (label, token) in &tokens {
            if token.is_empty() {
                return Err(SchemaError::EmptyToken { label: label.clone() });
            }
            if token.chars().any(char::is_whitespace) {
                return Err(SchemaError::WhitespaceInToken { token: token.clone() });
            }
        }
        for (i, (_, a)) in tokens.iter().enumerate() {
            for (_, b) in tokens.iter().skip(i + 1) {
                if a == b {
                    return Err(SchemaError::DuplicateToken { token: a.clone() });
                }
                if b.contains(a.as_str()) {
                    return Err(SchemaError::SubstringToken { inner: a.clone(), outer: b.clone() });
                }
                if a.contains(b.as_str()) {
                    return Err(SchemaError::SubstringToken { inner: b.clone(), outer: a.clone() });
                }
            }
        }

        let token_to_entity = self
            .entity_types
            .iter()
            .map(|(label, token)| (token.clone(), label.clone()))
            .collect();
        let token_to_relation = self
            .relation_types
            .iter()
            .map(|(label, spec)| (spec.token.clone(), label.clone()))
            .collect();
        let max_arity = self.relation_types.values().map(|spec| spec.arity).max().unwrap_or(0);

        Ok(SchemaConfig {
            entity_types: self.entity_types,
            relation_types: self.relation_types,
            token_to_entity,
            token_to_relation,
            coref_separator: self.coref_separator,
            hint_separator: self.hint_separator,
            start_token: self.start_token,
            end_token: self.end_token,
            case_fold: self.case_fold,
            max_arity,
        })
    }
}
