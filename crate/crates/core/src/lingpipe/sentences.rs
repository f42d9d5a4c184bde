//! Sentence splitting over the token stream.

use std::collections::BTreeMap;

use crate::document::{Document, Span};
use crate::types;

use super::LingError;

/// Adds `Sentence` annotations that partition the token stream. A sentence
/// closes after a `.`, `!`, or `?` token, or before a token separated from
/// the previous one by a blank line. Trailing tokens without a terminator
/// form a final sentence.
pub fn split_sentences(doc: &mut Document) -> Result<(), LingError> {
    if doc.has_type(types::SENTENCE) {
        return Err(LingError::SentencesAlreadyPresent);
    }

    let tokens: Vec<(Span, bool)> = doc
        .annotations_of(types::TOKEN)
        .iter()
        .map(|t| {
            let terminator = t.feature("kind") == Some("punctuation")
                && matches!(doc.text_of(t.span), "." | "!" | "?");
            (t.span, terminator)
        })
        .collect();

    let mut sentences: Vec<Span> = Vec::new();
    let mut current_start: Option<usize> = None;
    for (i, (span, terminator)) in tokens.iter().enumerate() {
        let start = *current_start.get_or_insert(span.start);
        let paragraph_break = tokens.get(i + 1).is_some_and(|(next, _)| {
            doc.text_of(Span::new(span.end, next.start))
                .matches('\n')
                .count()
                >= 2
        });
        if *terminator || paragraph_break {
            sentences.push(Span::new(start, span.end));
            current_start = None;
        }
    }
    if let Some(start) = current_start {
        let last_end = tokens.last().expect("current_start implies a token").0.end;
        sentences.push(Span::new(start, last_end));
    }

    for span in sentences {
        doc.add_annotation(types::SENTENCE, span, BTreeMap::new())
            .expect("sentence spans are derived from token spans");
    }
    Ok(())
}
