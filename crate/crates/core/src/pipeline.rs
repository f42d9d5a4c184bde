//! End-to-end orchestration of the annotation stages.

use crate::document::Document;
use crate::lingpipe::{gazetteer_lookup, pos_tag, split_sentences, tokenize};
use crate::resources::Resources;
use crate::rule::run_transducer;
use crate::uml::{build_model, UmlModel};

/// Runs every stage on a fresh document: tokenize, split sentences, POS-tag,
/// gazetteer lookup, then all transducer phases in order.
pub fn annotate(text: &str, resources: &Resources) -> Document {
    let mut doc = Document::new(text);
    tokenize(&mut doc).expect("fresh document has no tokens");
    split_sentences(&mut doc).expect("fresh document has no sentences");
    pos_tag(&mut doc, &resources.lexicon);
    gazetteer_lookup(&mut doc, &resources.gazetteers);
    run_transducer(&mut doc, &resources.phases);
    doc
}

/// [`annotate`] followed by model building.
pub fn process(text: &str, resources: &Resources) -> (Document, UmlModel) {
    let doc = annotate(text, resources);
    let model = build_model(&doc, &resources.determiners);
    (doc, model)
}
