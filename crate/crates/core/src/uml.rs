//! Builds a coherent UML model from raw `classe`/`Association`/`Attribut`
//! annotations: name normalization, class deduplication, association
//! endpoint resolution, and attribute-to-class attachment.
//!
//! Endpoint resolution is deterministic proximity linking within one
//! sentence. The class phase may annotate a noun together with its verb, so
//! an association trigger can sit *inside* the span of its subject class;
//! resolution therefore keys on span starts: the source is the nearest class
//! mention beginning at or before the association, the target the nearest
//! one beginning after it.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::document::{Annotation, Document, Span};
use crate::lingpipe::{is_noun_category, is_verb_category};
use crate::types;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UmlClass {
    pub name: String,
    pub surface_forms: BTreeSet<String>,
    pub source_spans: Vec<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UmlAttribute {
    pub name: String,
    /// Name of the owning class; always present in `UmlModel::classes`.
    pub owner: String,
    pub source_span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UmlAssociation {
    pub name: String,
    pub source: String,
    pub target: String,
    pub source_span: Span,
}

/// Extracted classes, attributes, and associations, sorted for stable
/// serialization. `diagnostics` records mentions that could not be linked.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UmlModel {
    pub classes: Vec<UmlClass>,
    pub attributes: Vec<UmlAttribute>,
    pub associations: Vec<UmlAssociation>,
    pub diagnostics: Vec<String>,
}

impl UmlModel {
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty() && self.attributes.is_empty() && self.associations.is_empty()
    }

    pub fn class(&self, name: &str) -> Option<&UmlClass> {
        self.classes.iter().find(|c| c.name == name)
    }

    /// Structural invariants: unique non-empty class names, every attribute
    /// owner and association endpoint resolves to a class.
    pub fn validate(&self) -> Result<(), String> {
        let mut names = BTreeSet::new();
        for class in &self.classes {
            if class.name.is_empty() {
                return Err("class with empty name".into());
            }
            if !names.insert(class.name.as_str()) {
                return Err(format!("duplicate class name '{}'", class.name));
            }
        }
        for attr in &self.attributes {
            if !names.contains(attr.owner.as_str()) {
                return Err(format!(
                    "attribute '{}' owned by unknown class '{}'",
                    attr.name, attr.owner
                ));
            }
        }
        for assoc in &self.associations {
            for end in [&assoc.source, &assoc.target] {
                if !names.contains(end.as_str()) {
                    return Err(format!(
                        "association '{}' references unknown class '{}'",
                        assoc.name, end
                    ));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("entity name is empty after normalization")]
    Empty,
}

/// Lowercases, strips one leading determiner token if present, and collapses
/// internal whitespace.
pub fn normalize_entity_name(
    surface: &str,
    determiners: &BTreeSet<String>,
) -> Result<String, NormalizeError> {
    let lowered = surface.to_lowercase();
    let mut words: Vec<&str> = lowered.split_whitespace().collect();
    if let Some(first) = words.first() {
        if determiners.contains(*first) {
            words.remove(0);
        }
    }
    let name = words.join(" ");
    if name.is_empty() {
        Err(NormalizeError::Empty)
    } else {
        Ok(name)
    }
}

/// Builds the model from a document annotated by the transducer. Never
/// fails: mentions that cannot be named or linked are dropped and reported
/// in the model's diagnostics.
pub fn build_model(doc: &Document, determiners: &BTreeSet<String>) -> UmlModel {
    let builder = Builder::new(doc, determiners);
    builder.build()
}

struct Builder<'a> {
    doc: &'a Document,
    determiners: &'a BTreeSet<String>,
    sentences: Vec<Span>,
    tokens: Vec<&'a Annotation>,
    /// Class mentions in span order: (span, normalized name).
    class_mentions: Vec<(Span, String)>,
    diagnostics: Vec<String>,
}

impl<'a> Builder<'a> {
    fn new(doc: &'a Document, determiners: &'a BTreeSet<String>) -> Self {
        Builder {
            doc,
            determiners,
            sentences: doc
                .annotations_of(types::SENTENCE)
                .iter()
                .map(|s| s.span)
                .collect(),
            tokens: doc.annotations_of(types::TOKEN),
            class_mentions: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    fn sentence_of(&self, offset: usize) -> Option<usize> {
        self.sentences
            .iter()
            .position(|s| s.start <= offset && offset < s.end)
    }

    fn same_sentence(&self, a: usize, b: usize) -> bool {
        self.sentence_of(a) == self.sentence_of(b)
    }

    fn tokens_in(&self, span: Span) -> impl Iterator<Item = &'a Annotation> + '_ {
        self.tokens
            .iter()
            .copied()
            .filter(move |t| span.contains(t.span))
    }

    /// The mention name for an annotation: the first (or last) token whose
    /// category satisfies `pick`, falling back to the whole surface form.
    fn mention_name(
        &self,
        span: Span,
        pick: impl Fn(&str) -> bool,
        last: bool,
        exclude: impl Fn(&Annotation) -> bool,
    ) -> Result<String, NormalizeError> {
        let mut hit: Option<&'a Annotation> = None;
        for tok in self.tokens_in(span) {
            let matches = tok.feature("category").is_some_and(&pick) && !exclude(tok);
            if matches {
                hit = Some(tok);
                if !last {
                    break;
                }
            }
        }
        let raw = match hit {
            Some(tok) => self.doc.text_of(tok.span),
            None => self.doc.text_of(span),
        };
        normalize_entity_name(raw, self.determiners)
    }

    fn collect_classes(&mut self) -> BTreeMap<String, UmlClass> {
        let mut classes: BTreeMap<String, UmlClass> = BTreeMap::new();
        for ann in sorted_spans(self.doc.annotations_of(types::CLASS)) {
            let name = match self.mention_name(ann, is_noun_category, false, |_| false) {
                Ok(name) => name,
                Err(_) => {
                    self.diagnostics.push(format!(
                        "classe at {ann}: name is empty after normalization"
                    ));
                    continue;
                }
            };
            let surface = self.doc.text_of(ann).to_string();
            let class = classes.entry(name.clone()).or_insert_with(|| UmlClass {
                name,
                surface_forms: BTreeSet::new(),
                source_spans: Vec::new(),
            });
            class.surface_forms.insert(surface);
            class.source_spans.push(ann);
            self.class_mentions.push((ann, class.name.clone()));
        }
        classes
    }

    /// Nearest class mention beginning at or before `offset`, same sentence.
    fn class_before(&self, offset: usize) -> Option<&(Span, String)> {
        self.class_mentions
            .iter()
            .filter(|(span, _)| span.start <= offset && self.same_sentence(span.start, offset))
            .max_by_key(|(span, _)| (span.start, span.end))
    }

    /// Nearest class mention beginning after `offset`, same sentence.
    fn class_after(&self, offset: usize) -> Option<&(Span, String)> {
        self.class_mentions
            .iter()
            .filter(|(span, _)| span.start > offset && self.same_sentence(span.start, offset))
            .min_by_key(|(span, _)| (span.start, span.end))
    }

    fn build(mut self) -> UmlModel {
        let classes = self.collect_classes();

        let mut associations: Vec<UmlAssociation> = Vec::new();
        for ann in sorted_spans(self.doc.annotations_of(types::ASSOCIATION)) {
            let name = match self.mention_name(ann, is_verb_category, false, |_| false) {
                Ok(name) => name,
                Err(_) => {
                    self.diagnostics.push(format!(
                        "Association at {ann}: name is empty after normalization"
                    ));
                    continue;
                }
            };
            let source = self.class_before(ann.start).map(|(_, n)| n.clone());
            let target = self.class_after(ann.start).map(|(_, n)| n.clone());
            match (source, target) {
                (Some(source), Some(target)) => associations.push(UmlAssociation {
                    name,
                    source,
                    target,
                    source_span: ann,
                }),
                (source, _) => self.diagnostics.push(format!(
                    "Association '{name}' at {ann}: no {} class in the same sentence",
                    if source.is_none() { "source" } else { "target" }
                )),
            }
        }

        let mut attributes: Vec<UmlAttribute> = Vec::new();
        let mut seen_attrs: BTreeSet<(String, String)> = BTreeSet::new();
        let class_spans: Vec<Span> = self.class_mentions.iter().map(|(s, _)| *s).collect();
        for ann in sorted_spans(self.doc.annotations_of(types::ATTRIBUTE)) {
            let name = match self.mention_name(ann, is_noun_category, true, |tok| {
                class_spans.iter().any(|c| c.contains(tok.span))
            }) {
                Ok(name) => name,
                Err(_) => {
                    self.diagnostics.push(format!(
                        "Attribut at {ann}: name is empty after normalization"
                    ));
                    continue;
                }
            };
            match self.class_before(ann.start).map(|(_, n)| n.clone()) {
                Some(owner) => {
                    if seen_attrs.insert((owner.clone(), name.clone())) {
                        attributes.push(UmlAttribute {
                            name,
                            owner,
                            source_span: ann,
                        });
                    }
                }
                None => self.diagnostics.push(format!(
                    "Attribut '{name}' at {ann}: no preceding class in the same sentence"
                )),
            }
        }

        associations.sort_by(|a, b| {
            (&a.name, &a.source, &a.target, a.source_span).cmp(&(
                &b.name,
                &b.source,
                &b.target,
                b.source_span,
            ))
        });
        attributes.sort_by(|a, b| (&a.owner, &a.name).cmp(&(&b.owner, &b.name)));

        UmlModel {
            classes: classes.into_values().collect(),
            attributes,
            associations,
            diagnostics: self.diagnostics,
        }
    }
}

/// Spans of the given annotations in (start asc, end desc) order,
/// independent of insertion order.
fn sorted_spans(anns: Vec<&Annotation>) -> Vec<Span> {
    let mut spans: Vec<Span> = anns.iter().map(|a| a.span).collect();
    spans.sort_by(|a, b| a.start.cmp(&b.start).then(b.end.cmp(&a.end)));
    spans
}
