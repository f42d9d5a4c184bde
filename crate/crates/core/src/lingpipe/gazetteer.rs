//! Gazetteer lookup: case-policy-tagged phrase lists producing `Lookup`
//! annotations with `majorType`/`minorType` features.

use std::collections::{BTreeMap, BTreeSet};

use crate::document::{Document, Span};
use crate::types;

/// How the surface form of a phrase must be cased for a list to match it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CasePolicy {
    /// All letters lowercase.
    Minuscule,
    /// First letter uppercase, every other letter lowercase.
    JustPremierMaj,
    /// Each word's first letter uppercase, the rest lowercase.
    PremierMaj,
    /// All letters uppercase.
    Majuscule,
}

impl CasePolicy {
    pub const ALL: [CasePolicy; 4] = [
        CasePolicy::Minuscule,
        CasePolicy::JustPremierMaj,
        CasePolicy::PremierMaj,
        CasePolicy::Majuscule,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CasePolicy::Minuscule => "Minuscule",
            CasePolicy::JustPremierMaj => "JustPremierMaj",
            CasePolicy::PremierMaj => "PremierMaj",
            CasePolicy::Majuscule => "Majuscule",
        }
    }

    pub fn parse(s: &str) -> Option<CasePolicy> {
        Self::ALL.into_iter().find(|p| p.as_str() == s)
    }

    /// Whether `surface` satisfies this policy.
    pub fn admits(self, surface: &str) -> bool {
        match self {
            CasePolicy::Minuscule => !surface.chars().any(|c| c.is_uppercase()),
            CasePolicy::Majuscule => !surface.chars().any(|c| c.is_lowercase()),
            CasePolicy::JustPremierMaj => {
                let mut letters = surface.chars().filter(|c| c.is_alphabetic());
                match letters.next() {
                    Some(first) => first.is_uppercase() && letters.all(|c| !c.is_uppercase()),
                    None => false,
                }
            }
            CasePolicy::PremierMaj => {
                let mut any = false;
                for word in surface.split_whitespace() {
                    any = true;
                    let mut letters = word.chars().filter(|c| c.is_alphabetic());
                    match letters.next() {
                        Some(first) => {
                            if !first.is_uppercase() || letters.any(|c| c.is_uppercase()) {
                                return false;
                            }
                        }
                        None => continue,
                    }
                }
                any
            }
        }
    }
}

impl std::fmt::Display for CasePolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One phrase list bound to a concept and a case policy. The `major_type`
/// written onto matches is the concept name concatenated with the policy
/// name (`ClassMinuscule`, `AssociationMajuscule`, ...), exactly the
/// identifiers rule files constrain on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GazetteerList {
    pub concept: String,
    pub case_policy: CasePolicy,
    pub phrases: BTreeSet<String>,
    pub major_type: String,
    pub minor_type: Option<String>,
}

impl GazetteerList {
    pub fn new(
        concept: &str,
        case_policy: CasePolicy,
        phrases: impl IntoIterator<Item = String>,
        minor_type: Option<String>,
    ) -> Self {
        GazetteerList {
            concept: concept.to_string(),
            case_policy,
            phrases: phrases.into_iter().filter(|p| !p.is_empty()).collect(),
            major_type: format!("{concept}{}", case_policy.as_str()),
            minor_type,
        }
    }

    /// Parses a list file: one phrase per line, `#` lines are comments.
    pub fn parse_phrases(src: &str) -> BTreeSet<String> {
        src.lines()
            .map(|l| l.trim_end_matches('\r').trim())
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect()
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

fn chars_eq_ci(a: &[char], b: &[char]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b.iter())
            .all(|(x, y)| x.to_lowercase().eq(y.to_lowercase()))
}

/// Adds a `Lookup` annotation for every maximal, word-boundary-aligned
/// occurrence of a listed phrase whose surface form satisfies the list's
/// case policy. Within one list the longest phrase wins at a given start;
/// overlapping hits from different lists are all emitted.
pub fn gazetteer_lookup(doc: &mut Document, lists: &[GazetteerList]) {
    let chars: Vec<char> = doc.text().chars().collect();
    let n = chars.len();
    let mut hits: Vec<(Span, String, Option<String>)> = Vec::new();

    for list in lists {
        // Longest first; ties broken lexicographically for determinism.
        let mut phrases: Vec<Vec<char>> =
            list.phrases.iter().map(|p| p.chars().collect()).collect();
        phrases.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));

        for start in 0..n {
            if start > 0 && is_word_char(chars[start - 1]) {
                continue;
            }
            for phrase in &phrases {
                let end = start + phrase.len();
                if end > n || (end < n && is_word_char(chars[end])) {
                    continue;
                }
                if !chars_eq_ci(&chars[start..end], phrase) {
                    continue;
                }
                let surface: String = chars[start..end].iter().collect();
                if list.case_policy.admits(&surface) {
                    hits.push((
                        Span::new(start, end),
                        list.major_type.clone(),
                        list.minor_type.clone(),
                    ));
                    break;
                }
            }
        }
    }

    for (span, major, minor) in hits {
        let mut features = BTreeMap::new();
        features.insert("majorType".to_string(), major);
        if let Some(minor) = minor {
            features.insert("minorType".to_string(), minor);
        }
        doc.add_annotation(types::LOOKUP, span, features)
            .expect("lookup spans are derived from the text");
    }
}
