//! Linguistic preprocessing: tokenizer, sentence splitter, lexicon-based POS
//! tagger, and gazetteer lookup.
//!
//! Every stage is a pure function of `(Document, config)`; distinct documents
//! can be processed in parallel with no shared mutable state.

mod gazetteer;
mod lexicon;
mod sentences;
mod tagger;
mod tokenizer;

pub use gazetteer::{gazetteer_lookup, CasePolicy, GazetteerList};
pub use lexicon::{
    categories_equivalent, is_noun_category, is_verb_category, Lexicon, LexiconError, PosTag,
};
pub use sentences::split_sentences;
pub use tagger::pos_tag;
pub use tokenizer::tokenize;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LingError {
    #[error("document already contains Token annotations")]
    TokensAlreadyPresent,
    #[error("document already contains Sentence annotations")]
    SentencesAlreadyPresent,
}
