//! Serializers: inline-annotated XML, the cleaned model XML, and
//! class-diagram source in PlantUML or Mermaid.
//!
//! Every emitter is deterministic: stable sort ordering everywhere so golden
//! files compare byte-exact.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::document::{Annotation, Document};
use crate::types;
use crate::uml::UmlModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramDialect {
    PlantUml,
    Mermaid,
}

impl DiagramDialect {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagramDialect::PlantUml => "plantuml",
            DiagramDialect::Mermaid => "mermaid",
        }
    }

    pub fn parse(s: &str) -> Option<DiagramDialect> {
        match s {
            "plantuml" => Some(DiagramDialect::PlantUml),
            "mermaid" => Some(DiagramDialect::Mermaid),
            _ => None,
        }
    }

    /// Conventional file extension for the dialect.
    pub fn extension(self) -> &'static str {
        match self {
            DiagramDialect::PlantUml => "puml",
            DiagramDialect::Mermaid => "mmd",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmitConfig {
    /// Annotation types serialized inline; defaults to the three UML types.
    pub keep_types: BTreeSet<String>,
    pub diagram_dialect: DiagramDialect,
}

impl Default for EmitConfig {
    fn default() -> Self {
        EmitConfig {
            keep_types: [types::CLASS, types::ASSOCIATION, types::ATTRIBUTE]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            diagram_dialect: DiagramDialect::PlantUml,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmitError {
    #[error("keep_types must not be empty")]
    NoKeepTypes,
    #[error("annotations cross and cannot be serialized inline: {0}")]
    CrossingSpans(String),
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn open_tag(ann: &Annotation) -> String {
    let mut out = String::new();
    out.push('<');
    out.push_str(&ann.type_name);
    for (k, v) in &ann.features {
        out.push(' ');
        out.push_str(k);
        out.push_str("=\"");
        out.push_str(&escape(v));
        out.push('"');
    }
    out.push('>');
    out
}

/// Serializes the document text with every kept annotation wrapped in an
/// element named after its type. Kept annotations may nest but must not
/// cross. The root element names the source when one is given.
pub fn emit_inline_xml(
    doc: &Document,
    cfg: &EmitConfig,
    source: Option<&str>,
) -> Result<String, EmitError> {
    if cfg.keep_types.is_empty() {
        return Err(EmitError::NoKeepTypes);
    }
    let keep: Vec<&str> = cfg.keep_types.iter().map(String::as_str).collect();
    let kept = doc.annotations_in(&keep, doc.whole_span());

    let mut out = String::new();
    out.push_str("<doc");
    if let Some(source) = source {
        out.push_str(" source=\"");
        out.push_str(&escape(source));
        out.push('"');
    }
    out.push('>');

    let mut stack: Vec<&Annotation> = Vec::new();
    let mut cursor = 0usize;
    let emit_text = |out: &mut String, from: usize, to: usize| {
        out.push_str(&escape(doc.text_of(crate::document::Span::new(from, to))));
    };
    for ann in kept {
        while let Some(top) = stack.last() {
            if top.span.end <= ann.span.start {
                emit_text(&mut out, cursor, top.span.end);
                cursor = top.span.end;
                out.push_str(&format!("</{}>", top.type_name));
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(top) = stack.last() {
            if ann.span.end > top.span.end {
                return Err(EmitError::CrossingSpans(format!(
                    "{} at {} crosses {} at {}",
                    ann.type_name, ann.span, top.type_name, top.span
                )));
            }
        }
        emit_text(&mut out, cursor, ann.span.start);
        cursor = ann.span.start;
        out.push_str(&open_tag(ann));
        stack.push(ann);
    }
    while let Some(top) = stack.pop() {
        emit_text(&mut out, cursor, top.span.end);
        cursor = top.span.end;
        out.push_str(&format!("</{}>", top.type_name));
    }
    emit_text(&mut out, cursor, doc.char_len());
    out.push_str("</doc>");
    Ok(out)
}

/// Serializes the model as stable-ordered XML on a single line: classes with
/// nested attributes, then associations.
pub fn emit_model_xml(model: &UmlModel) -> String {
    if model.is_empty() {
        return "<model/>".to_string();
    }
    let mut out = String::from("<model>");
    for class in &model.classes {
        let attrs: Vec<_> = model
            .attributes
            .iter()
            .filter(|a| a.owner == class.name)
            .collect();
        if attrs.is_empty() {
            out.push_str(&format!("<class name=\"{}\"/>", escape(&class.name)));
        } else {
            out.push_str(&format!("<class name=\"{}\">", escape(&class.name)));
            for attr in attrs {
                out.push_str(&format!("<attribute name=\"{}\"/>", escape(&attr.name)));
            }
            out.push_str("</class>");
        }
    }
    for assoc in &model.associations {
        out.push_str(&format!(
            "<association name=\"{}\" from=\"{}\" to=\"{}\"/>",
            escape(&assoc.name),
            escape(&assoc.source),
            escape(&assoc.target)
        ));
    }
    out.push_str("</model>");
    out
}

fn plantuml_name(name: &str) -> String {
    if name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('"', ""))
    }
}

fn mermaid_name(name: &str) -> String {
    if name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        name.to_string()
    } else {
        format!("`{}`", name.replace('`', ""))
    }
}

/// Emits class-diagram source: one class block per class with its
/// attributes, one labeled directed edge per association.
pub fn emit_diagram(model: &UmlModel, cfg: &EmitConfig) -> String {
    match cfg.diagram_dialect {
        DiagramDialect::PlantUml => {
            let mut out = String::from("@startuml\n");
            for class in &model.classes {
                let attrs: Vec<_> = model
                    .attributes
                    .iter()
                    .filter(|a| a.owner == class.name)
                    .collect();
                if attrs.is_empty() {
                    out.push_str(&format!("class {}\n", plantuml_name(&class.name)));
                } else {
                    out.push_str(&format!("class {} {{\n", plantuml_name(&class.name)));
                    for attr in attrs {
                        out.push_str(&format!("  {}\n", attr.name));
                    }
                    out.push_str("}\n");
                }
            }
            for assoc in &model.associations {
                out.push_str(&format!(
                    "{} --> {} : {}\n",
                    plantuml_name(&assoc.source),
                    plantuml_name(&assoc.target),
                    assoc.name
                ));
            }
            out.push_str("@enduml\n");
            out
        }
        DiagramDialect::Mermaid => {
            let mut out = String::from("classDiagram\n");
            for class in &model.classes {
                let attrs: Vec<_> = model
                    .attributes
                    .iter()
                    .filter(|a| a.owner == class.name)
                    .collect();
                if attrs.is_empty() {
                    out.push_str(&format!("    class {}\n", mermaid_name(&class.name)));
                } else {
                    out.push_str(&format!("    class {} {{\n", mermaid_name(&class.name)));
                    for attr in attrs {
                        out.push_str(&format!("        {}\n", attr.name));
                    }
                    out.push_str("    }\n");
                }
            }
            for assoc in &model.associations {
                out.push_str(&format!(
                    "    {} --> {} : {}\n",
                    mermaid_name(&assoc.source),
                    mermaid_name(&assoc.target),
                    assoc.name
                ));
            }
            out
        }
    }
}
