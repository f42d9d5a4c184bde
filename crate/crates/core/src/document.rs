//! The annotation data model shared by every pipeline stage.
//!
//! A [`Document`] owns an immutable source text plus a store of typed,
//! feature-bearing [`Annotation`]s. Offsets everywhere are Unicode scalar
//! positions, never bytes, so accented French input keeps stable spans.
//!
//! Retrieval is always in *canonical order*: span start ascending, span end
//! descending, then id ascending. Longer annotations at the same start come
//! first, which the longest-match rule matcher relies on.

use std::collections::BTreeMap;

use thiserror::Error;

/// A half-open character range `[start, end)` over document text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }

    /// True if `other` lies fully inside `self`.
    pub fn contains(&self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

pub type AnnotationId = u32;

/// A character span with a type name and a feature map — the universal
/// currency of the pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub id: AnnotationId,
    pub type_name: String,
    pub span: Span,
    pub features: BTreeMap<String, String>,
}

impl Annotation {
    pub fn feature(&self, key: &str) -> Option<&str> {
        self.features.get(key).map(String::as_str)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DocumentError {
    #[error("span {span} is out of bounds for text of length {len}")]
    SpanOutOfBounds { span: Span, len: usize },
    #[error("span start {0} is greater than span end {1}")]
    InvertedSpan(usize, usize),
    #[error("annotation type name must not be empty")]
    EmptyTypeName,
    #[error("no annotation with id {0}")]
    UnknownId(AnnotationId),
}

/// Immutable source text plus an ordered, typed annotation store.
///
/// Ids are dense and strictly increasing in insertion order. Duplicate
/// annotations (same type, span, and features) are allowed at store level;
/// deduplication is the model builder's job.
#[derive(Debug, Clone)]
pub struct Document {
    text: String,
    /// Byte offset of each char, plus a final entry holding `text.len()`.
    char_index: Vec<usize>,
    annotations: Vec<Annotation>,
}

impl Document {
    pub fn new(text: impl Into<String>) -> Self {
        let text = text.into();
        let mut char_index: Vec<usize> = text.char_indices().map(|(b, _)| b).collect();
        char_index.push(text.len());
        Document {
            text,
            char_index,
            annotations: Vec::new(),
        }
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Length of the text in Unicode scalar values.
    pub fn char_len(&self) -> usize {
        self.char_index.len() - 1
    }

    /// The span covering the whole text.
    pub fn whole_span(&self) -> Span {
        Span::new(0, self.char_len())
    }

    /// The text slice under `span`. Panics if the span is out of bounds;
    /// spans taken from stored annotations are always valid.
    pub fn text_of(&self, span: Span) -> &str {
        assert!(
            span.start <= span.end && span.end <= self.char_len(),
            "invalid span {span}"
        );
        &self.text[self.char_index[span.start]..self.char_index[span.end]]
    }

    /// Stores a new annotation and returns its fresh id.
    pub fn add_annotation(
        &mut self,
        type_name: &str,
        span: Span,
        features: BTreeMap<String, String>,
    ) -> Result<AnnotationId, DocumentError> {
        if type_name.is_empty() {
            return Err(DocumentError::EmptyTypeName);
        }
        if span.start > span.end {
            return Err(DocumentError::InvertedSpan(span.start, span.end));
        }
        if span.end > self.char_len() {
            return Err(DocumentError::SpanOutOfBounds {
                span,
                len: self.char_len(),
            });
        }
        let id = self.annotations.len() as AnnotationId;
        self.annotations.push(Annotation {
            id,
            type_name: type_name.to_string(),
            span,
            features,
        });
        Ok(id)
    }

    pub fn annotation(&self, id: AnnotationId) -> Option<&Annotation> {
        self.annotations.get(id as usize)
    }

    pub fn annotation_count(&self) -> usize {
        self.annotations.len()
    }

    /// Sets (or overwrites) one feature on an existing annotation.
    pub fn set_feature(
        &mut self,
        id: AnnotationId,
        key: &str,
        value: &str,
    ) -> Result<(), DocumentError> {
        let ann = self
            .annotations
            .get_mut(id as usize)
            .ok_or(DocumentError::UnknownId(id))?;
        ann.features.insert(key.to_string(), value.to_string());
        Ok(())
    }

    pub fn has_type(&self, type_name: &str) -> bool {
        self.annotations.iter().any(|a| a.type_name == type_name)
    }

    /// All annotations in canonical order.
    pub fn all_annotations(&self) -> Vec<&Annotation> {
        let mut v: Vec<&Annotation> = self.annotations.iter().collect();
        sort_canonical(&mut v);
        v
    }

    /// All annotations of one type, in canonical order.
    pub fn annotations_of(&self, type_name: &str) -> Vec<&Annotation> {
        let mut v: Vec<&Annotation> = self
            .annotations
            .iter()
            .filter(|a| a.type_name == type_name)
            .collect();
        sort_canonical(&mut v);
        v
    }

    /// Annotations whose type is in `types` and whose span lies fully inside
    /// `region`, in canonical order.
    pub fn annotations_in(&self, types: &[&str], region: Span) -> Vec<&Annotation> {
        let mut v: Vec<&Annotation> = self
            .annotations
            .iter()
            .filter(|a| types.contains(&a.type_name.as_str()) && region.contains(a.span))
            .collect();
        sort_canonical(&mut v);
        v
    }
}

fn sort_canonical(anns: &mut [&Annotation]) {
    anns.sort_by(|a, b| {
        a.span
            .start
            .cmp(&b.span.start)
            .then(b.span.end.cmp(&a.span.end))
            .then(a.id.cmp(&b.id))
    });
}
