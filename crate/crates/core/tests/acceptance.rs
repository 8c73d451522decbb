//! Acceptance gate: one test per release criterion, each printing a
//! `[acceptance] C<n>: PASS/FAIL/SKIP` line with the measured evidence.
//!
//! C1–C3 exercise the linearization grammar and decoding automaton at scale
//! against construction-based oracles; C4–C5 pin the matching semantics with
//! an exhaustive assignment enumerator and engineered overlap ratios; C6
//! reproduces published worked examples byte-for-byte; C7 checks corpus
//! statistics against published figures when the corpora are on disk; C8
//! pins the ontology filter on its motivating fixture; C9 verifies the README
//! is explicit about what this toolkit does not reproduce.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::env;
use std::fs::{self, File};
use std::io::BufReader;
use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use relkit::corpus::docred::read_docred;
use relkit::corpus::pubtator::read_pubtator;
use relkit::corpus::stats::{intersentence_fraction, SentenceDefinition};
use relkit::eval::{entity_match, relation_match};
use relkit::hierarchy::{filter_hypernyms, Hierarchy};
use relkit::hint::build_hint_for_document;
use relkit::model::{Entity, Mention, RelationInstance};
use relkit::{
    diff_relations, parse_target_string, score, serialize_relations, validate_sequence,
    AnnotatedDocument, MatchCriterion, ParsedEntity, ParsedRelation, TokenClass,
};

fn check(criterion: &str, pass: bool, detail: &str) {
    println!("[acceptance] {criterion}: {} — {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{criterion}: {detail}");
}

// ─── C1: round-trip exactness at scale ───────────────────────────────────────

#[test]
fn c1_round_trip_reproduces_gold_relations_exactly() {
    let schema = common::biomedical_schema();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);
    let started = Instant::now();

    let mut predicted: BTreeMap<String, Vec<ParsedRelation>> = BTreeMap::new();
    let mut gold: BTreeMap<String, Vec<ParsedRelation>> = BTreeMap::new();
    let mut mismatched_documents = 0;
    const DOCS: usize = 10_000;
    for index in 0..DOCS {
        let doc = common::random_document(&mut rng, index);
        let target = serialize_relations(&doc, &schema).expect("generated documents serialize");
        let parsed = parse_target_string(&target, &schema);
        let expected: BTreeSet<ParsedRelation> = doc
            .relations
            .iter()
            .map(|relation| {
                ParsedRelation::from_instance(relation, &schema)
                    .expect("generated entities keep a mention after normalization")
            })
            .collect();
        if parsed.iter().cloned().collect::<BTreeSet<_>>() != expected {
            mismatched_documents += 1;
        }
        predicted.insert(doc.doc_id.clone(), parsed);
        gold.insert(doc.doc_id.clone(), expected.into_iter().collect());
    }

    let report = score(&predicted, &gold, &MatchCriterion::strict()).expect("identical id sets");
    let elapsed = started.elapsed();
    let pass = mismatched_documents == 0
        && report.overall.f1 == 1.0
        && report.overall.precision == 1.0
        && report.overall.recall == 1.0
        && elapsed.as_secs_f64() < 30.0;
    check(
        "C1",
        pass,
        &format!(
            "{}/{DOCS} documents round-tripped exactly, strict F1 {:.4}, {:.2}s",
            DOCS - mismatched_documents,
            report.overall.f1,
            elapsed.as_secs_f64()
        ),
    );
}

// ─── C2: grammar completeness over serialized targets ────────────────────────

#[test]
fn c2_serialized_targets_all_pass_sequence_validation() {
    let schema = common::biomedical_schema();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);

    const DOCS: usize = 10_000;
    let mut failures = 0;
    for index in 0..DOCS {
        let doc = common::random_document(&mut rng, index);
        let target = serialize_relations(&doc, &schema).expect("generated documents serialize");
        if !validate_sequence(&relkit::classify_tokens(&target, &schema), &schema) {
            failures += 1;
        }
    }
    check("C2", failures == 0, &format!("{failures}/{DOCS} serialized targets rejected"));
}

// ─── C3: grammar soundness over random walks ─────────────────────────────────

#[test]
fn c3_random_grammar_walks_realize_and_parse_soundly() {
    let schema = common::biomedical_schema();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);

    const WALKS: usize = 10_000;
    let mut invalid_sequences = 0;
    let mut lost_relations = 0;
    let mut walks_with_relations = 0;
    for _ in 0..WALKS {
        let (classes, target) = common::random_walk(&mut rng, &schema, 60);
        if !validate_sequence(&classes, &schema) {
            invalid_sequences += 1;
        }
        let relation_steps =
            classes.iter().filter(|class| matches!(class, TokenClass::Relation(_))).count();
        let parsed = parse_target_string(&target, &schema);
        if relation_steps > 0 {
            walks_with_relations += 1;
            if parsed.is_empty() {
                lost_relations += 1;
            }
        }
    }
    let pass = invalid_sequences == 0 && lost_relations == 0;
    check(
        "C3",
        pass,
        &format!(
            "{WALKS} walks realized and parsed; {walks_with_relations} carried relations, \
             {lost_relations} lost them, {invalid_sequences} failed validation"
        ),
    );
}

// ─── C4: greedy matching against an exhaustive oracle ────────────────────────

/// Every injective partial assignment of predictions to matching gold
/// relations, enumerated by recursion. A `None` leaves a prediction unmatched.
fn all_assignments(
    predicted: &[ParsedRelation],
    gold: &[ParsedRelation],
    is_match: &dyn Fn(&ParsedRelation, &ParsedRelation) -> bool,
) -> Vec<Vec<Option<usize>>> {
    fn go(
        index: usize,
        predicted: &[ParsedRelation],
        gold: &[ParsedRelation],
        is_match: &dyn Fn(&ParsedRelation, &ParsedRelation) -> bool,
        used: &mut [bool],
        current: &mut Vec<Option<usize>>,
        out: &mut Vec<Vec<Option<usize>>>,
    ) {
        if index == predicted.len() {
            out.push(current.clone());
            return;
        }
        for j in 0..gold.len() {
            if !used[j] && is_match(&predicted[index], &gold[j]) {
                used[j] = true;
                current.push(Some(j));
                go(index + 1, predicted, gold, is_match, used, current, out);
                current.pop();
                used[j] = false;
            }
        }
        current.push(None);
        go(index + 1, predicted, gold, is_match, used, current, out);
        current.pop();
    }

    let mut out = Vec::new();
    go(0, predicted, gold, is_match, &mut vec![false; gold.len()], &mut Vec::new(), &mut out);
    out
}

/// Brute-force counts: the first-come-first-served assignment is recovered as
/// the lexicographically smallest feasible assignment vector (unmatched
/// encoded as the largest key), independently of the incremental matcher.
/// Also returns the maximum achievable true-positive count.
fn brute_force_counts(
    predicted: &[ParsedRelation],
    gold: &[ParsedRelation],
    is_match: &dyn Fn(&ParsedRelation, &ParsedRelation) -> bool,
) -> (usize, usize, usize, usize) {
    let assignments = all_assignments(predicted, gold, is_match);
    let greedy = assignments
        .iter()
        .min_by_key(|assignment| {
            assignment.iter().map(|slot| slot.unwrap_or(usize::MAX)).collect::<Vec<_>>()
        })
        .expect("the all-unmatched assignment always exists");
    let tp = greedy.iter().flatten().count();
    let max_tp =
        assignments.iter().map(|assignment| assignment.iter().flatten().count()).max().unwrap();
    (tp, predicted.len() - tp, gold.len() - tp, max_tp)
}

fn random_small_relation(rng: &mut ChaCha8Rng) -> ParsedRelation {
    let pool = ["m1", "m2", "m3", "m4"];
    let entity = |rng: &mut ChaCha8Rng| {
        let count = rng.gen_range(1..=3);
        let mentions: Vec<String> =
            pool.choose_multiple(rng, count).map(|m| m.to_string()).collect();
        let entity_type = *["E1", "E2"].choose(rng).expect("type pool is non-empty");
        ParsedEntity::new(entity_type, mentions).expect("at least one mention chosen")
    };
    let relation_type = *["R1", "R2"].choose(rng).expect("relation pool is non-empty");
    let entities = vec![entity(rng), entity(rng)];
    ParsedRelation::new(relation_type, entities)
}

#[test]
fn c4_greedy_matching_equals_exhaustive_assignment_oracle() {
    const TRIALS: usize = 1_000;
    let mut mismatches = 0;
    let mut checked = 0;
    for (name, criterion) in
        [("strict", MatchCriterion::strict()), ("relaxed", MatchCriterion::relaxed())]
    {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
        for _ in 0..TRIALS {
            let predicted: Vec<ParsedRelation> =
                (0..rng.gen_range(0..=5)).map(|_| random_small_relation(&mut rng)).collect();
            let gold: Vec<ParsedRelation> =
                (0..rng.gen_range(0..=5)).map(|_| random_small_relation(&mut rng)).collect();

            let is_match =
                |p: &ParsedRelation, g: &ParsedRelation| relation_match(p, g, &criterion);
            let diff = diff_relations(&predicted, &gold, |p, g| is_match(p, g));
            let (tp, fp, fn_, max_tp) = brute_force_counts(&predicted, &gold, &is_match);

            checked += 1;
            let counts_agree = diff.true_positives() == tp
                && diff.false_positives() == fp
                && diff.false_negatives() == fn_;
            let bounded = diff.true_positives() <= max_tp;
            let strict_is_maximum = name != "strict" || diff.true_positives() == max_tp;
            if !(counts_agree && bounded && strict_is_maximum) {
                mismatches += 1;
            }
        }
    }
    check(
        "C4",
        mismatches == 0,
        &format!("{checked} random instances agreed with the exhaustive oracle (strict and relaxed)"),
    );
}

// ─── C5: relaxed overlap boundary ────────────────────────────────────────────

#[test]
fn c5_relaxed_matching_requires_strictly_majority_overlap() {
    fn tail(mentions: &[&str]) -> ParsedEntity {
        ParsedEntity::new("DISEASE", mentions.iter().map(|m| m.to_string()))
            .expect("mention list is non-empty")
    }
    let head = ParsedEntity::new("CHEMICAL", ["head".to_string()]).expect("head mention");
    let relation = |t: ParsedEntity| ParsedRelation::new("CID", vec![head.clone(), t]);

    let gold_tail = tail(&["g1", "g2", "g3", "g4", "g5"]);
    let gold_relation = relation(gold_tail.clone());
    // Overlap ratio = shared mentions / predicted mentions.
    let cases = [
        (0.4, tail(&["g1", "g2", "x1", "x2", "x3"]), false),
        (0.5, tail(&["g1", "x1"]), false),
        (0.6, tail(&["g1", "g2", "g3", "x1", "x2"]), true),
    ];

    let relaxed = MatchCriterion::relaxed();
    let mut pass = (relaxed.threshold() - 0.5).abs() < f64::EPSILON;
    for (ratio, predicted_tail, expected) in &cases {
        let entity_ok = entity_match(predicted_tail, &gold_tail, &relaxed) == *expected;
        let relation_ok =
            relation_match(&relation(predicted_tail.clone()), &gold_relation, &relaxed)
                == *expected;
        if !(entity_ok && relation_ok) {
            pass = false;
            println!("[acceptance] C5: overlap {ratio} misbehaved (expected match={expected})");
        }
    }
    // Pooled: of the three engineered predictions only the 0.6 one matches.
    let predicted: Vec<ParsedRelation> =
        cases.iter().map(|(_, t, _)| relation(t.clone())).collect();
    let diff = diff_relations(&predicted, &[gold_relation], |p, g| {
        relation_match(p, g, &relaxed)
    });
    pass = pass && diff.true_positives() == 1 && diff.false_positives() == 2;
    check(
        "C5",
        pass,
        "overlap ratios {0.4, 0.5, 0.6} against threshold 0.5: only 0.6 matches (strict inequality)",
    );
}

// ─── C6: published worked examples ───────────────────────────────────────────

/// Mention covering the first occurrence of `needle`, with `text` as surface.
fn mention_at(text: &str, needle: &str) -> Mention {
    let start = text.find(needle).expect("needle occurs in text");
    Mention::new(needle, start, start + needle.len())
}

#[test]
fn c6_worked_examples_reproduce_byte_for_byte() {
    let schema = common::biomedical_schema();
    let mut pass = true;
    let fail = |label: &str, expected: &str, actual: &str, pass: &mut bool| {
        *pass = false;
        println!("[acceptance] C6: {label} mismatch\n  expected: {expected}\n  actual:   {actual}");
    };

    // Gene–disease association with a coreferent gene alias.
    let esr1_text = "Variants in the estrogen receptor alpha (ESR1) gene and its mRNA \
                     contribute to risk for schizophrenia.";
    let gene = Entity::new(
        "GENE",
        vec![mention_at(esr1_text, "estrogen receptor alpha"), mention_at(esr1_text, "ESR1")],
    );
    let disease = Entity::new("DISEASE", vec![mention_at(esr1_text, "schizophrenia")]);
    let mut esr1 = AnnotatedDocument::new("esr1", esr1_text);
    esr1.entities = vec![gene.clone(), disease.clone()];
    esr1.relations = vec![RelationInstance::new("GDA", vec![gene, disease])];

    let expected_target = "estrogen receptor alpha ; esr1 @GENE@ schizophrenia @DISEASE@ @GDA@";
    let target = serialize_relations(&esr1, &schema).expect("example serializes");
    if target != expected_target {
        fail("gene-disease target", expected_target, &target, &mut pass);
    }

    // The same document as a hinted source: entities, separator, folded text.
    let expected_hint = "estrogen receptor alpha ; esr1 @GENE@ schizophrenia @DISEASE@ @SEP@ \
                         variants in the estrogen receptor alpha (esr1) gene and its mrna \
                         contribute to risk for schizophrenia.";
    let hint = build_hint_for_document(&esr1, &schema).expect("example hints");
    if hint != expected_hint {
        fail("hinted source", expected_hint, &hint, &mut pass);
    }

    // Discontinuous mention: the full surface string rides a covering span.
    let pct_text = "Induction by paracetamol of bladder and liver tumours.";
    let drug = Entity::new("DRUG", vec![mention_at(pct_text, "paracetamol")]);
    let bladder_start = pct_text.find("bladder").expect("bladder occurs");
    let tumours_end = pct_text.find("liver tumours").expect("liver tumours occurs") + "liver tumours".len();
    let bladder = Entity::new(
        "DISEASE",
        vec![Mention::new("bladder tumours", bladder_start, tumours_end)],
    );
    let liver = Entity::new("DISEASE", vec![mention_at(pct_text, "liver tumours")]);
    let mut pct = AnnotatedDocument::new("paracetamol", pct_text);
    pct.entities = vec![drug.clone(), bladder.clone(), liver.clone()];
    pct.relations = vec![
        RelationInstance::new("CID", vec![drug.clone(), liver]),
        RelationInstance::new("CID", vec![drug, bladder]),
    ];
    let expected_pct = "paracetamol @DRUG@ bladder tumours @DISEASE@ @CID@ \
                        paracetamol @DRUG@ liver tumours @DISEASE@ @CID@";
    let pct_target = serialize_relations(&pct, &schema).expect("example serializes");
    if pct_target != expected_pct {
        fail("discontinuous-mention targets", expected_pct, &pct_target, &mut pass);
    }

    // Coreferent mentions joined by the separator, in order of appearance.
    let her2_text = "Proto-oncogene HER2 (also known as erbB-2 or neu) plays an important \
                     role in the carcinogenesis and the prognosis of breast cancer.";
    let her2_gene = Entity::new(
        "GENE",
        vec![
            mention_at(her2_text, "HER2"),
            mention_at(her2_text, "erbB-2"),
            mention_at(her2_text, "neu"),
        ],
    );
    let breast = Entity::new("DISEASE", vec![mention_at(her2_text, "breast cancer")]);
    let mut her2 = AnnotatedDocument::new("her2", her2_text);
    her2.entities = vec![her2_gene.clone(), breast.clone()];
    her2.relations = vec![RelationInstance::new("GDA", vec![her2_gene, breast])];
    let expected_her2 = "her2 ; erbb-2 ; neu @GENE@ breast cancer @DISEASE@ @GDA@";
    let her2_target = serialize_relations(&her2, &schema).expect("example serializes");
    if her2_target != expected_her2 {
        fail("coreferent-mention target", expected_her2, &her2_target, &mut pass);
    }

    // Ternary relation: tuple-role order, not textual order.
    let dgm_text = "The deletion mutation on exon-19 of EGFR gene was present in 16 patients, \
                    while the L858E point mutation on exon-21 was noted in 10. All patients \
                    were treated with gefitinib and showed a partial response.";
    let egfr = Entity::new("GENE", vec![mention_at(dgm_text, "EGFR")]);
    let l858e = Entity::new("MUTATION", vec![mention_at(dgm_text, "L858E")]);
    let gefitinib = Entity::new("DRUG", vec![mention_at(dgm_text, "gefitinib")]);
    let mut dgm = AnnotatedDocument::new("dgm", dgm_text);
    dgm.entities = vec![egfr.clone(), l858e.clone(), gefitinib.clone()];
    dgm.relations = vec![RelationInstance::new("DGM", vec![gefitinib, egfr, l858e])];
    let expected_dgm = "gefitinib @DRUG@ egfr @GENE@ l858e @MUTATION@ @DGM@";
    let dgm_target = serialize_relations(&dgm, &schema).expect("example serializes");
    if dgm_target != expected_dgm {
        fail("ternary target", expected_dgm, &dgm_target, &mut pass);
    }

    // Parsing a target string back into sorted, deduplicated structure.
    let parsed = parse_target_string(
        "monoamine oxidase b ; maob @GENE@ parkinson's disease ; pd @DISEASE@ @GDA@",
        &schema,
    );
    let expected_parse = vec![ParsedRelation::new(
        "GDA",
        vec![
            ParsedEntity::new("GENE", ["maob".to_string(), "monoamine oxidase b".to_string()])
                .expect("gene mentions"),
            ParsedEntity::new(
                "DISEASE",
                ["parkinson's disease".to_string(), "pd".to_string()],
            )
            .expect("disease mentions"),
        ],
    )];
    if parsed != expected_parse {
        fail("parsed structure", &format!("{expected_parse:?}"), &format!("{parsed:?}"), &mut pass);
    }

    check("C6", pass, "six worked examples (two targets, hint, two complexity rows, parse) byte-exact");
}

// ─── C7: published corpus statistics (dataset-dependent) ─────────────────────

#[test]
fn c7_published_corpus_statistics_within_tolerance() {
    let mut ran = Vec::new();
    let mut pass = true;

    match env::var("CDR_TEST_SET") {
        Ok(path) => {
            let file = File::open(&path).expect("CDR_TEST_SET points at a readable file");
            let docs = read_pubtator(BufReader::new(file)).expect("CDR test set parses");
            let pct = intersentence_fraction(&docs, SentenceDefinition::AnySentence) * 100.0;
            let ok = (pct - 29.8).abs() <= 0.5;
            pass &= ok;
            ran.push(format!("CDR any-sentence {pct:.1}% (expected 29.8 ± 0.5, {})", if ok { "ok" } else { "OUT OF RANGE" }));
        }
        Err(_) => println!(
            "[acceptance] C7: SKIP — set CDR_TEST_SET to the public CDR test corpus \
             (PubTator format) to check the 29.8% any-sentence figure"
        ),
    }

    match env::var("DOCRED_TEST_SET") {
        Ok(path) => {
            let file = File::open(&path).expect("DOCRED_TEST_SET points at a readable file");
            let docs = read_docred(BufReader::new(file)).expect("DocRED set parses");
            let all_pct = intersentence_fraction(&docs, SentenceDefinition::AllMentions) * 100.0;
            let any_pct = intersentence_fraction(&docs, SentenceDefinition::AnySentence) * 100.0;
            let all_ok = (all_pct - 40.7).abs() <= 1.0;
            let any_ok = (any_pct - 12.5).abs() <= 0.5;
            pass &= all_ok && any_ok;
            ran.push(format!(
                "DocRED all-mentions {all_pct:.1}% (expected 40.7 ± 1.0, {}), \
                 any-sentence {any_pct:.1}% (expected 12.5 ± 0.5, {})",
                if all_ok { "ok" } else { "OUT OF RANGE" },
                if any_ok { "ok" } else { "OUT OF RANGE" }
            ));
        }
        Err(_) => println!(
            "[acceptance] C7: SKIP — set DOCRED_TEST_SET to a labelled DocRED JSON file \
             to check the 40.7% / 12.5% figures"
        ),
    }

    if !ran.is_empty() {
        check("C7", pass, &ran.join("; "));
    }
}

// ─── C8: hypernym filtering on the motivating fixture ────────────────────────

/// A five-node fragment of a medical vocabulary: bradycardia and
/// atrioventricular block are kinds of arrhythmia, which is a kind of cardiac
/// dysfunction; carbamazepine is unrelated to the disease branch.
const MESH_FRAGMENT: &str = "\
# identifiers
name\tD002220\tcarbamazepine\n\
name\tD006331\tcardiac dysfunction\n\
name\tD001145\tarrhythmia\n\
name\tD001919\tbradycardia\n\
name\tD054537\tatrioventricular block\n\
# child -> parent\n\
edge\tD001919\tD001145\n\
edge\tD054537\tD001145\n\
edge\tD001145\tD006331\n";

#[test]
fn c8_hypernym_filter_excludes_ancestor_predictions() {
    let hierarchy = Hierarchy::from_reader(MESH_FRAGMENT.as_bytes()).expect("fixture parses");
    let chemical = |m: &str| ParsedEntity::new("CHEMICAL", [m.to_string()]).expect("mention");
    let disease = |m: &str| ParsedEntity::new("DISEASE", [m.to_string()]).expect("mention");
    let cid = |head: &str, tail: &str| {
        ParsedRelation::new("CID", vec![chemical(head), disease(tail)])
    };

    // Abstract 1728915: carbamazepine-induced cardiac dysfunction, annotated
    // as the specific conditions; the general prediction is the ancestor.
    let predicted = BTreeMap::from([(
        "1728915".to_string(),
        vec![cid("carbamazepine", "cardiac dysfunction"), cid("carbamazepine", "bradycardia")],
    )]);
    let gold = BTreeMap::from([(
        "1728915".to_string(),
        vec![
            cid("carbamazepine", "bradycardia"),
            cid("carbamazepine", "atrioventricular block"),
        ],
    )]);

    let strict = MatchCriterion::strict();
    let before = score(&predicted, &gold, &strict).expect("id sets match");
    let filtered = filter_hypernyms(&predicted, &gold, &hierarchy);
    let after = score(&filtered, &gold, &strict).expect("id sets match");

    let fixture_ok = before.overall.true_positives == 1
        && before.overall.false_positives == 1
        && after.overall.true_positives == 1
        && after.overall.false_positives == 0
        && after.overall.false_negatives == before.overall.false_negatives
        && after.overall.precision > before.overall.precision;

    // Randomized: filtering never decreases precision and never touches
    // true-positive or false-negative counts under strict matching.
    let names = ["carbamazepine", "cardiac dysfunction", "arrhythmia", "bradycardia",
        "atrioventricular block"];
    let mut rng = ChaCha8Rng::seed_from_u64(0xC8);
    let mut random_ok = true;
    let random_relations = |rng: &mut ChaCha8Rng| -> Vec<ParsedRelation> {
        (0..rng.gen_range(0..5))
            .map(|_| {
                let head = *["carbamazepine", "phenytoin"].choose(rng).expect("heads");
                let tail = *names.choose(rng).expect("names");
                cid(head, tail)
            })
            .collect()
    };
    for _ in 0..300 {
        let predicted = BTreeMap::from([("d".to_string(), random_relations(&mut rng))]);
        let gold = BTreeMap::from([("d".to_string(), random_relations(&mut rng))]);
        let before = score(&predicted, &gold, &strict).expect("id sets match");
        let filtered = filter_hypernyms(&predicted, &gold, &hierarchy);
        let after = score(&filtered, &gold, &strict).expect("id sets match");
        random_ok &= after.overall.precision >= before.overall.precision
            && after.overall.true_positives == before.overall.true_positives
            && after.overall.false_negatives == before.overall.false_negatives;
    }

    check(
        "C8",
        fixture_ok && random_ok,
        "ancestor prediction left the false-positive count (1→0), tp/fn unchanged, \
         precision non-decreasing over 300 randomized trials",
    );
}

// ─── C9: the README is explicit about non-goals ──────────────────────────────

#[test]
fn c9_readme_declares_neural_results_out_of_scope() {
    let readme_path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md");
    let readme = fs::read_to_string(readme_path).expect("README.md exists at the workspace root");
    let statement = readme
        .lines()
        .find(|line| line.contains("67.2"))
        .unwrap_or("")
        .trim()
        .to_string();
    let pass = !statement.is_empty() && readme.to_lowercase().contains("not reproducible");
    check("C9", pass, &format!("README states: {statement}"));
}
