//! Shared schema and random-input generators for the integration suites.

// Each integration-test binary compiles this module independently and uses a
// different subset of it.
#![allow(dead_code)]

use rand::prelude::*;

use relkit::model::{AnnotatedDocument, Entity, Mention, RelationInstance};
use relkit::schema::SchemaConfig;
use relkit::TokenClass;

/// Words safe to use as mention text: none collides with a schema token or
/// the coreference separator. Mixed-case entries exercise case folding.
pub const WORDS: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "kappa", "sigma", "omega", "kinase", "receptor", "tumor",
    "liver", "renal", "cardiac", "chronic", "lesion", "anemia", "fibrosis", "toxicity", "aspirin",
    "warfarin", "statin", "Alpha", "BRCA1", "EGFR", "p53", "mTOR",
];

/// A biomedical-flavored schema with binary and ternary relation types.
pub fn biomedical_schema() -> SchemaConfig {
    SchemaConfig::builder()
        .entity_type("GENE", "@GENE@")
        .entity_type("DISEASE", "@DISEASE@")
        .entity_type("DRUG", "@DRUG@")
        .entity_type("MUTATION", "@MUTATION@")
        .relation_type("GDA", "@GDA@", 2)
        .relation_type("CID", "@CID@", 2)
        .relation_type("DGM", "@DGM@", 3)
        .build()
        .expect("schema is well-formed")
}

/// One to three random vocabulary words joined by single spaces.
pub fn random_mention_text(rng: &mut impl Rng) -> String {
    let count = rng.gen_range(1..=3);
    (0..count).map(|_| *WORDS.choose(rng).expect("vocabulary is non-empty")).collect::<Vec<_>>().join(" ")
}

/// Builds a random annotated document with real spans into a synthetic text:
/// 2–5 entities of 1–4 mentions each (occasionally nested inside another
/// mention's span), and 1–6 relations of arity 2 or 3 over random entities.
pub fn random_document(rng: &mut impl Rng, index: usize) -> AnnotatedDocument {
    let entity_types = ["GENE", "DISEASE", "DRUG", "MUTATION"];
    let n_entities = rng.gen_range(2..=5);
    let mut types = Vec::with_capacity(n_entities);
    let mut planned: Vec<(usize, String)> = Vec::new();
    for entity in 0..n_entities {
        types.push(*entity_types.choose(rng).expect("type list is non-empty"));
        for _ in 0..rng.gen_range(1..=3) {
            planned.push((entity, random_mention_text(rng)));
        }
    }
    planned.shuffle(rng);

    let mut text = String::from("In this study");
    let mut mentions: Vec<Vec<Mention>> = vec![Vec::new(); n_entities];
    for (entity, mention_text) in &planned {
        text.push_str(". ");
        let start = text.len();
        text.push_str(mention_text);
        let end = text.len();
        mentions[*entity].push(Mention::new(mention_text.clone(), start, end));
        // Occasionally give another entity a mention nested inside this span.
        if mention_text.contains(' ') && rng.gen_bool(0.25) {
            let word = mention_text.split(' ').next_back().expect("mention has words");
            let target = rng.gen_range(0..n_entities);
            if mentions[target].len() < 4 {
                mentions[target].push(Mention::new(word, end - word.len(), end));
            }
        }
    }
    text.push('.');

    let entities: Vec<Entity> = types
        .into_iter()
        .zip(mentions)
        .map(|(entity_type, entity_mentions)| Entity::new(entity_type, entity_mentions))
        .collect();

    let mut relations = Vec::new();
    for _ in 0..rng.gen_range(1..=6) {
        let (label, arity) = *[("GDA", 2), ("CID", 2), ("DGM", 3)]
            .choose(rng)
            .expect("relation list is non-empty");
        let arguments: Vec<Entity> = (0..arity)
            .map(|_| entities[rng.gen_range(0..n_entities)].clone())
            .collect();
        relations.push(RelationInstance::new(label, arguments));
    }

    let mut doc = AnnotatedDocument::new(format!("doc-{index}"), text);
    doc.entities = entities;
    doc.relations = relations;
    doc
}

/// Random walk through the decoding grammar from the initial state to
/// end-of-sequence. Returns the full class sequence (including the start and
/// end markers) and the realized target string with placeholder mentions.
pub fn random_walk(
    rng: &mut impl Rng,
    config: &SchemaConfig,
    max_tokens: usize,
) -> (Vec<TokenClass>, String) {
    let entity_labels: Vec<String> =
        config.entity_types().map(|(label, _)| label.to_string()).collect();
    let mut state = relkit::DecoderState::initial();
    let mut classes = vec![TokenClass::Bos];
    let mut tokens: Vec<String> = Vec::new();
    while !state.is_terminal() {
        let valid = relkit::constraints::next_valid_classes(&state, config);
        let mut candidates: Vec<TokenClass> = Vec::new();
        if tokens.len() < max_tokens {
            if valid.copy {
                // Weight toward mention words so walks build real structures.
                for _ in 0..3 {
                    candidates.push(TokenClass::Copy);
                }
            }
            if valid.coref {
                candidates.push(TokenClass::Coref);
            }
            if valid.entity {
                let label = entity_labels.choose(rng).expect("schema has entity types");
                candidates.push(TokenClass::Entity(label.clone()));
            }
            for label in &valid.relations {
                candidates.push(TokenClass::Relation(label.clone()));
            }
        }
        // End-of-sequence is always legal before termination; keep it rare
        // while under the length cap so walks build substantial structures.
        if valid.eos && (candidates.is_empty() || rng.gen_bool(0.05)) {
            candidates.push(TokenClass::Eos);
        }
        let class = candidates.choose(rng).expect("non-terminal states allow something").clone();
        state = relkit::constraints::step(&state, &class, config)
            .expect("classes offered by next_valid_classes are accepted by step");
        match &class {
            TokenClass::Copy => {
                tokens.push(WORDS.choose(rng).expect("vocabulary is non-empty").to_string());
            }
            TokenClass::Coref => tokens.push(config.coref_separator().to_string()),
            TokenClass::Entity(label) => {
                tokens.push(config.entity_token(label).expect("label from schema").to_string());
            }
            TokenClass::Relation(label) => {
                tokens
                    .push(config.relation_spec(label).expect("label from schema").token.clone());
            }
            TokenClass::Eos => {}
            TokenClass::Bos => unreachable!("BOS is never offered as a continuation"),
        }
        classes.push(class);
    }
    (classes, tokens.join(" "))
}

