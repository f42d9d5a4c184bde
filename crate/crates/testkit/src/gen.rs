//! Seeded random generators for property suites.

use std::collections::{BTreeMap, BTreeSet};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use req2uml_core::document::{Annotation, Document, Span};
use req2uml_core::lingpipe::{CasePolicy, GazetteerList};
use req2uml_core::rule::{
    Action, Constraint, ConstraintGroup, ConstraintOp, ControlMode, FeatureTest, PatternExpr,
    Quantifier, Rule, RulePhase,
};
use req2uml_core::uml::{UmlAssociation, UmlAttribute, UmlClass, UmlModel};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const TYPES: [&str; 3] = ["Token", "Lookup", "Other"];
const FEATURES: [&str; 3] = ["kind", "category", "majorType"];
const VALUES: [&str; 7] = ["word", "number", "NN", "NNP", "V", "ClassMinuscule", "x"];

/// A small annotation stream over a synthetic text: up to `max` annotations
/// with random types, spans, and features. Spans are non-empty and may
/// overlap freely.
pub fn random_annotations(rng: &mut ChaCha8Rng, max: usize, text_len: usize) -> Vec<Annotation> {
    let count = rng.gen_range(0..=max);
    (0..count)
        .map(|id| {
            let start = rng.gen_range(0..text_len);
            let end = rng.gen_range(start + 1..=text_len);
            let mut features = BTreeMap::new();
            for _ in 0..rng.gen_range(0..=2) {
                features.insert(
                    FEATURES.choose(rng).unwrap().to_string(),
                    VALUES.choose(rng).unwrap().to_string(),
                );
            }
            Annotation {
                id: id as u32,
                type_name: TYPES.choose(rng).unwrap().to_string(),
                span: Span::new(start, end),
                features,
            }
        })
        .collect()
}

fn random_constraint_group(rng: &mut ChaCha8Rng) -> ConstraintGroup {
    let mut entries = Vec::new();
    // First entry is always positive so the group has an anchor.
    let positive = Constraint {
        annotation_type: TYPES.choose(rng).unwrap().to_string(),
        test: if rng.gen_bool(0.3) {
            None
        } else {
            Some(FeatureTest {
                feature: FEATURES.choose(rng).unwrap().to_string(),
                op: ConstraintOp::Eq,
                value: VALUES.choose(rng).unwrap().to_string(),
            })
        },
    };
    entries.push(positive);
    for _ in 0..rng.gen_range(0..=2) {
        entries.push(Constraint {
            annotation_type: TYPES.choose(rng).unwrap().to_string(),
            test: Some(FeatureTest {
                feature: FEATURES.choose(rng).unwrap().to_string(),
                op: if rng.gen_bool(0.4) {
                    ConstraintOp::Ne
                } else {
                    ConstraintOp::Eq
                },
                value: VALUES.choose(rng).unwrap().to_string(),
            }),
        });
    }
    ConstraintGroup { entries }
}

fn random_pattern(rng: &mut ChaCha8Rng, depth: usize) -> PatternExpr {
    if depth == 0 || rng.gen_bool(0.45) {
        return PatternExpr::Constraints(random_constraint_group(rng));
    }
    match rng.gen_range(0..4) {
        0 => PatternExpr::Sequence(
            (0..rng.gen_range(1..=3))
                .map(|_| random_pattern(rng, depth - 1))
                .collect(),
        ),
        1 => PatternExpr::Alternation(
            (0..rng.gen_range(1..=3))
                .map(|_| random_pattern(rng, depth - 1))
                .collect(),
        ),
        2 => {
            let quantifier = *[
                Quantifier::One,
                Quantifier::Optional,
                Quantifier::Star,
                Quantifier::Plus,
            ]
            .choose(rng)
            .unwrap();
            PatternExpr::Group(Box::new(random_pattern(rng, depth - 1)), quantifier)
        }
        _ => PatternExpr::Constraints(random_constraint_group(rng)),
    }
}

/// A phase with up to `max_rules` rules of random patterns and priorities.
pub fn random_phase(rng: &mut ChaCha8Rng, max_rules: usize, control: ControlMode) -> RulePhase {
    let rule_count = rng.gen_range(1..=max_rules);
    let rules = (0..rule_count)
        .map(|i| Rule {
            name: format!("R{i}"),
            priority: rng.gen_range(-5..=20),
            pattern: random_pattern(rng, 2),
            label: "m".to_string(),
            action: Action {
                new_type: format!("Out{i}"),
                features: BTreeMap::from([("rule".to_string(), format!("R{i}"))]),
            },
        })
        .collect();
    RulePhase {
        name: "RandomPhase".to_string(),
        input_types: TYPES.iter().map(|s| s.to_string()).collect(),
        control,
        rules,
    }
}

const WORDS: [&str; 10] = [
    "client", "commande", "carte", "banque", "solde", "vie", "compte", "due", "état", "ور",
];

/// Random text plus random gazetteer lists drawn from a shared vocabulary,
/// with random casing so every case policy gets exercised.
pub fn random_text_and_lists(rng: &mut ChaCha8Rng) -> (String, Vec<GazetteerList>) {
    let word_count = rng.gen_range(0..8);
    let mut text = String::new();
    for i in 0..word_count {
        if i > 0 {
            text.push_str([" ", "  ", ", ", ".", "-"].choose(rng).unwrap());
        }
        let word = WORDS.choose(rng).unwrap();
        text.push_str(&random_casing(rng, word));
    }

    let list_count = rng.gen_range(0..=3);
    let lists = (0..list_count)
        .map(|i| {
            let phrase_count = rng.gen_range(1..=4);
            let phrases: BTreeSet<String> = (0..phrase_count)
                .map(|_| {
                    if rng.gen_bool(0.25) {
                        format!(
                            "{} {}",
                            WORDS.choose(rng).unwrap(),
                            WORDS.choose(rng).unwrap()
                        )
                    } else {
                        WORDS.choose(rng).unwrap().to_string()
                    }
                })
                .collect();
            GazetteerList::new(
                ["Class", "Association", "attribut"][i % 3],
                *CasePolicy::ALL.choose(rng).unwrap(),
                phrases,
                if rng.gen_bool(0.3) {
                    Some("seed".to_string())
                } else {
                    None
                },
            )
        })
        .collect();
    (text, lists)
}

fn random_casing(rng: &mut ChaCha8Rng, word: &str) -> String {
    match rng.gen_range(0..4) {
        0 => word.to_lowercase(),
        1 => word.to_uppercase(),
        2 => {
            let mut chars = word.chars();
            match chars.next() {
                Some(first) => first.to_uppercase().collect::<String>() + chars.as_str(),
                None => String::new(),
            }
        }
        _ => word
            .chars()
            .map(|c| {
                if rng.gen_bool(0.5) {
                    c.to_uppercase().next().unwrap_or(c)
                } else {
                    c
                }
            })
            .collect(),
    }
}

/// A random but valid model: unique class names, every attribute owner and
/// association endpoint present. Names include characters that need XML
/// escaping.
pub fn random_model(rng: &mut ChaCha8Rng) -> UmlModel {
    let name_parts = [
        "client",
        "commande",
        "état",
        "carte bancaire",
        "a&b",
        "x<y",
        "il \"dit\"",
        "l'axe",
    ];
    let class_count = rng.gen_range(0..=5);
    let names: BTreeSet<String> = (0..class_count)
        .map(|i| format!("{} {}", name_parts.choose(rng).unwrap(), i))
        .collect();
    let names: Vec<String> = names.into_iter().collect();

    let classes: Vec<UmlClass> = names
        .iter()
        .map(|n| UmlClass {
            name: n.clone(),
            surface_forms: BTreeSet::new(),
            source_spans: Vec::new(),
        })
        .collect();

    let mut attributes = Vec::new();
    let mut seen = BTreeSet::new();
    if !names.is_empty() {
        for _ in 0..rng.gen_range(0..=4) {
            let owner = names.choose(rng).unwrap().clone();
            let name = format!("attr {}", rng.gen_range(0..6));
            if seen.insert((owner.clone(), name.clone())) {
                attributes.push(UmlAttribute {
                    name,
                    owner,
                    source_span: Span::new(0, 0),
                });
            }
        }
    }
    attributes.sort_by(|a, b| (&a.owner, &a.name).cmp(&(&b.owner, &b.name)));

    let mut associations = Vec::new();
    if !names.is_empty() {
        for i in 0..rng.gen_range(0..=4) {
            associations.push(UmlAssociation {
                name: format!("rel{i}"),
                source: names.choose(rng).unwrap().clone(),
                target: names.choose(rng).unwrap().clone(),
                source_span: Span::new(0, 0),
            });
        }
    }
    associations
        .sort_by(|a, b| (&a.name, &a.source, &a.target).cmp(&(&b.name, &b.source, &b.target)));

    UmlModel {
        classes,
        attributes,
        associations,
        diagnostics: Vec::new(),
    }
}

/// Wraps an annotation stream in a document with a throwaway text long
/// enough to hold every span.
pub fn document_with(annotations: &[Annotation], text_len: usize) -> Document {
    let mut doc = Document::new("x".repeat(text_len));
    for ann in annotations {
        doc.add_annotation(&ann.type_name, ann.span, ann.features.clone())
            .expect("generated spans are in bounds");
    }
    doc
}
