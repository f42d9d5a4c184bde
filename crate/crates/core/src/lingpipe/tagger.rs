//! Lexicon-based POS tagging of word tokens.

use crate::document::Document;
use crate::types;

use super::{Lexicon, PosTag};

/// Writes a `category` feature onto every token: words through the lexicon
/// (exact form, then suffix rules, then the default tag), numbers as `NUM`,
/// punctuation as `PUNCT`, other symbols as `OTHER`.
pub fn pos_tag(doc: &mut Document, lexicon: &Lexicon) {
    let assignments: Vec<(u32, PosTag)> = doc
        .annotations_of(types::TOKEN)
        .iter()
        .map(|t| {
            let tag = match t.feature("kind") {
                Some("word") => lexicon.tag_for(doc.text_of(t.span)),
                Some("number") => PosTag::Num,
                Some("punctuation") => PosTag::Punct,
                _ => PosTag::Other,
            };
            (t.id, tag)
        })
        .collect();

    for (id, tag) in assignments {
        doc.set_feature(id, "category", tag.as_str())
            .expect("token ids come from this document");
    }
}
