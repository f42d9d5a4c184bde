//! Round-trip and well-formedness checks for the serializers.

use req2uml_core::{emit_diagram, emit_inline_xml, emit_model_xml, EmitConfig};
use req2uml_testkit::{gen, oracle};

#[test]
fn model_xml_round_trips_through_the_test_reader() {
    for seed in 0..200 {
        let mut rng = gen::rng(seed);
        let model = gen::random_model(&mut rng);
        let xml = emit_model_xml(&model);
        let parsed = oracle::parse_model_xml(&xml)
            .unwrap_or_else(|e| panic!("seed {seed}: unparsable output {xml:?}: {e}"));
        assert_eq!(parsed, oracle::model_signature(&model), "seed {seed}");
    }
}

#[test]
fn emitters_are_deterministic() {
    let mut rng = gen::rng(7);
    let model = gen::random_model(&mut rng);
    let cfg = EmitConfig::default();
    assert_eq!(emit_model_xml(&model), emit_model_xml(&model));
    assert_eq!(emit_diagram(&model, &cfg), emit_diagram(&model, &cfg));
}

/// Shrinking the kept-type set never changes the text content, only tags.
#[test]
fn removing_a_kept_type_changes_tags_only() {
    use req2uml_core::{Document, Span};
    use std::collections::BTreeMap;

    let text = "client passe commande & plus";
    let mut doc = Document::new(text);
    doc.add_annotation("classe", Span::new(0, 12), BTreeMap::new())
        .unwrap();
    doc.add_annotation("Association", Span::new(7, 12), BTreeMap::new())
        .unwrap();
    doc.add_annotation("Attribut", Span::new(13, 21), BTreeMap::new())
        .unwrap();

    let text_content = |keep: &[&str]| -> String {
        let cfg = EmitConfig {
            keep_types: keep.iter().map(|s| s.to_string()).collect(),
            ..EmitConfig::default()
        };
        let xml = emit_inline_xml(&doc, &cfg, None).unwrap();
        let parsed = roxmltree::Document::parse(&xml).expect("well-formed");
        parsed
            .root()
            .descendants()
            .filter(|n| n.is_text())
            .filter_map(|n| n.text())
            .collect()
    };

    for keep in [
        vec!["classe", "Association", "Attribut"],
        vec!["classe", "Attribut"],
        vec!["Association"],
        vec!["Sentence"],
    ] {
        assert_eq!(text_content(&keep), text, "keep set {keep:?}");
    }
}

#[test]
fn inline_xml_over_random_annotation_free_text_is_well_formed() {
    // With no kept annotations, inline emission is pure escaping; the result
    // must always parse.
    let texts = [
        "a < b & c > d \"quoted\" 'apos'",
        "accents: éàçüœ «guillemets»",
        "",
        "line\nbreaks\n\nand\ttabs",
    ];
    for text in texts {
        let doc = req2uml_core::Document::new(text);
        let xml = emit_inline_xml(&doc, &EmitConfig::default(), Some("t.txt")).unwrap();
        let parsed = roxmltree::Document::parse(&xml).expect("well-formed");
        assert_eq!(
            parsed.root_element().text().unwrap_or(""),
            text,
            "text content must survive escaping"
        );
    }
}
