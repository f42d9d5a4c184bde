//! Tokenization: maximal runs of letters and digits, single punctuation and
//! symbol marks, no tokens for whitespace.

use std::collections::BTreeMap;

use crate::document::{Document, Span};
use crate::types;

use super::LingError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CharClass {
    Letter,
    Digit,
    Whitespace,
    Punct,
    Symbol,
}

fn classify(c: char) -> CharClass {
    if c.is_whitespace() {
        CharClass::Whitespace
    } else if c.is_alphabetic() {
        CharClass::Letter
    } else if c.is_numeric() {
        CharClass::Digit
    } else if is_punctuation(c) {
        CharClass::Punct
    } else {
        CharClass::Symbol
    }
}

fn is_punctuation(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(
            c,
            '«' | '»' | '“' | '”' | '‘' | '’' | '–' | '—' | '…' | '¿' | '¡' | '·'
        )
}

/// Orthography of a word token: `lowercase`, `upperInitial`, `allCaps`, or
/// `mixedCaps`.
fn orth_of(word: &str) -> &'static str {
    let mut chars = word.chars();
    let first = chars.next().expect("word tokens are non-empty");
    let rest_has_upper = chars.clone().any(|c| c.is_uppercase());
    if !first.is_uppercase() && !rest_has_upper {
        "lowercase"
    } else if first.is_uppercase() && !rest_has_upper {
        "upperInitial"
    } else if word.chars().all(|c| !c.is_lowercase()) {
        "allCaps"
    } else {
        "mixedCaps"
    }
}

/// Adds `Token` annotations covering every non-whitespace character. Word
/// tokens carry `kind=word` and an `orth` feature; digit runs `kind=number`;
/// punctuation marks and other symbols one token per character.
///
/// Rejects documents that already contain tokens rather than silently
/// duplicating them.
pub fn tokenize(doc: &mut Document) -> Result<(), LingError> {
    if doc.has_type(types::TOKEN) {
        return Err(LingError::TokensAlreadyPresent);
    }

    let chars: Vec<char> = doc.text().chars().collect();
    let mut tokens: Vec<(Span, &'static str, Option<&'static str>)> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let class = classify(chars[i]);
        match class {
            CharClass::Whitespace => i += 1,
            CharClass::Letter | CharClass::Digit => {
                let start = i;
                while i < chars.len() && classify(chars[i]) == class {
                    i += 1;
                }
                let span = Span::new(start, i);
                if class == CharClass::Letter {
                    let word: String = chars[start..i].iter().collect();
                    tokens.push((span, "word", Some(orth_of(&word))));
                } else {
                    tokens.push((span, "number", None));
                }
            }
            CharClass::Punct => {
                tokens.push((Span::new(i, i + 1), "punctuation", None));
                i += 1;
            }
            CharClass::Symbol => {
                tokens.push((Span::new(i, i + 1), "symbol", None));
                i += 1;
            }
        }
    }

    for (span, kind, orth) in tokens {
        let mut features = BTreeMap::new();
        features.insert("kind".to_string(), kind.to_string());
        if let Some(orth) = orth {
            features.insert("orth".to_string(), orth.to_string());
        }
        doc.add_annotation(types::TOKEN, span, features)
            .expect("token spans are derived from the text");
    }
    Ok(())
}
