//! Gazetteer lookup must agree with the brute-force case-policy substring
//! scan at word boundaries. The acceptance suite runs the large sweep.

use std::collections::BTreeSet;

use req2uml_core::lingpipe::gazetteer_lookup;
use req2uml_core::types;
use req2uml_core::{Document, Span};
use req2uml_testkit::{gen, oracle};

#[test]
fn lookup_agrees_with_brute_force_scan() {
    for seed in 0..400 {
        let mut rng = gen::rng(seed);
        let (text, lists) = gen::random_text_and_lists(&mut rng);

        let expected = oracle::gazetteer_scan(&text, &lists);

        let mut doc = Document::new(text.clone());
        gazetteer_lookup(&mut doc, &lists);
        let got: BTreeSet<(Span, String)> = doc
            .annotations_of(types::LOOKUP)
            .iter()
            .map(|a| (a.span, a.feature("majorType").unwrap().to_string()))
            .collect();

        assert_eq!(got, expected, "seed {seed}, text {text:?}, lists {lists:?}");
    }
}

#[test]
fn minor_type_is_carried_onto_lookups() {
    use req2uml_core::lingpipe::{CasePolicy, GazetteerList};
    let list = GazetteerList::new(
        "attribut",
        CasePolicy::Minuscule,
        ["adresse".to_string()],
        Some("propriete".to_string()),
    );
    let mut doc = Document::new("une adresse");
    gazetteer_lookup(&mut doc, &[list]);
    let lookups = doc.annotations_of(types::LOOKUP);
    assert_eq!(lookups.len(), 1);
    assert_eq!(lookups[0].feature("majorType"), Some("attributMinuscule"));
    assert_eq!(lookups[0].feature("minorType"), Some("propriete"));
}
