//! Rule-based extraction of UML class models from natural-language
//! requirements.
//!
//! The crate runs a staged annotation pipeline over plain text:
//!
//! 1. [`lingpipe`] — tokenization, sentence splitting, lexicon-based POS
//!    tagging, and gazetteer lookup over phrase lists;
//! 2. [`rule`] — a pattern-rule transducer that turns `Token` and `Lookup`
//!    annotations into `classe`, `Association`, and `Attribut` annotations;
//! 3. [`uml`] — model building: class deduplication, association endpoint
//!    resolution, attribute attachment;
//! 4. [`emit`] — serializers for inline-annotated XML, a structured model
//!    file, and PlantUML/Mermaid class-diagram source.
//!
//! All stages communicate through a [`Document`]: immutable text plus an
//! ordered store of typed, feature-bearing annotations.
//!
//! ```
//! use req2uml_core::{Document, lingpipe, rule, uml};
//! use std::collections::BTreeSet;
//!
//! let mut lexicon = lingpipe::Lexicon::new(lingpipe::PosTag::Nn);
//! lexicon.insert("passe", lingpipe::PosTag::Vb);
//!
//! let phase = rule::parse_rule_file(
//!     "Phase: Classes\n\
//!      Input: Token\n\
//!      Rule: Classe\n\
//!      ({Token.category == NNP}{Token.category == V}):m\n\
//!      -->\n\
//!      :m.classe = {rule = Classe}",
//! )?;
//!
//! let mut doc = Document::new("client passe commande");
//! lingpipe::tokenize(&mut doc)?;
//! lingpipe::split_sentences(&mut doc)?;
//! lingpipe::pos_tag(&mut doc, &lexicon);
//! rule::apply_phase(&mut doc, &phase);
//!
//! // The noun+verb branch marks "client passe" as a class region; the
//! // model builder names the class after its first noun token.
//! let model = uml::build_model(&doc, &BTreeSet::new());
//! assert_eq!(model.classes.len(), 1);
//! assert_eq!(model.classes[0].name, "client");
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod document;
pub mod emit;
pub mod lingpipe;
pub mod pipeline;
pub mod resources;
pub mod rule;
pub mod uml;

/// Annotation type names shared across pipeline stages.
pub mod types {
    pub const TOKEN: &str = "Token";
    pub const SENTENCE: &str = "Sentence";
    pub const LOOKUP: &str = "Lookup";
    pub const CLASS: &str = "classe";
    pub const ASSOCIATION: &str = "Association";
    pub const ATTRIBUTE: &str = "Attribut";

    /// The three annotation types the model builder consumes.
    pub const UML_TYPES: [&str; 3] = [CLASS, ASSOCIATION, ATTRIBUTE];
}

pub use document::{Annotation, AnnotationId, Document, DocumentError, Span};
pub use emit::{
    emit_diagram, emit_inline_xml, emit_model_xml, DiagramDialect, EmitConfig, EmitError,
};
pub use lingpipe::{CasePolicy, GazetteerList, Lexicon, LingError, PosTag};
pub use pipeline::{annotate, process};
pub use resources::{ResourceError, Resources};
pub use rule::{
    apply_phase, parse_rule_file, run_transducer, ControlMode, RuleParseError, RulePhase,
};
pub use uml::{
    build_model, normalize_entity_name, UmlAssociation, UmlAttribute, UmlClass, UmlModel,
};
