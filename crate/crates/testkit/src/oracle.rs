//! Reference implementations: a naive pattern matcher plus the
//! enumerate-then-select scan loop, a brute-force gazetteer scan, and a
//! reader for the model XML format.

use std::collections::{BTreeMap, BTreeSet};

use req2uml_core::document::{Annotation, Span};
use req2uml_core::lingpipe::{categories_equivalent, GazetteerList};
use req2uml_core::rule::{
    Constraint, ConstraintGroup, ConstraintOp, ControlMode, PatternExpr, Quantifier, RulePhase,
};
use req2uml_core::types;
use req2uml_core::uml::UmlModel;

/// One fired annotation: (type, span, features).
pub type Fired = (String, Span, BTreeMap<String, String>);

fn value_eq(annotation_type: &str, feature: &str, actual: &str, expected: &str) -> bool {
    let (actual, expected) = (actual.trim(), expected.trim());
    if annotation_type == types::TOKEN && feature == "category" {
        categories_equivalent(actual, expected)
    } else {
        actual == expected
    }
}

fn constraint_holds_on(ann: &Annotation, c: &Constraint) -> bool {
    match &c.test {
        None => true,
        Some(t) => {
            let actual = ann.feature(&t.feature);
            match t.op {
                ConstraintOp::Eq => actual
                    .map(|v| value_eq(&c.annotation_type, &t.feature, v, &t.value))
                    .unwrap_or(false),
                ConstraintOp::Ne => !actual
                    .map(|v| value_eq(&c.annotation_type, &t.feature, v, &t.value))
                    .unwrap_or(false),
            }
        }
    }
}

/// Position of the next annotated offset at or after `from`; linear scan.
fn next_position(anns: &[Annotation], from: usize) -> Option<usize> {
    anns.iter()
        .map(|a| a.span.start)
        .filter(|&s| s >= from)
        .min()
}

fn annotations_at(anns: &[Annotation], pos: usize) -> Vec<&Annotation> {
    anns.iter().filter(|a| a.span.start == pos).collect()
}

fn group_match_ends(anns: &[Annotation], group: &ConstraintGroup, from: usize) -> BTreeSet<usize> {
    let mut ends = BTreeSet::new();
    let Some(pos) = next_position(anns, from) else {
        return ends;
    };
    let here = annotations_at(anns, pos);

    // Group the entries by annotation type, preserving entry order.
    let mut type_order: Vec<&str> = Vec::new();
    let mut by_type: BTreeMap<&str, Vec<&Constraint>> = BTreeMap::new();
    for entry in &group.entries {
        if !by_type.contains_key(entry.annotation_type.as_str()) {
            type_order.push(&entry.annotation_type);
        }
        by_type
            .entry(entry.annotation_type.as_str())
            .or_default()
            .push(entry);
    }

    for (ty, entries) in &by_type {
        if entries.iter().any(|c| c.is_positive()) {
            let satisfied = here
                .iter()
                .filter(|a| a.type_name == *ty)
                .any(|a| entries.iter().all(|c| constraint_holds_on(a, c)));
            if !satisfied {
                return ends;
            }
        } else {
            // Only negated entries: fail if any co-located annotation of the
            // type carries a negated value.
            let violated = here.iter().filter(|a| a.type_name == *ty).any(|a| {
                entries.iter().any(|c| {
                    let t = c.test.as_ref().expect("negative entry has a test");
                    a.feature(&t.feature)
                        .map(|v| value_eq(ty, &t.feature, v, &t.value))
                        .unwrap_or(false)
                })
            });
            if violated {
                return ends;
            }
        }
    }

    let anchor = group.anchor_type();
    let anchor_entries = &by_type[anchor];
    for ann in here {
        if ann.type_name == anchor && anchor_entries.iter().all(|c| constraint_holds_on(ann, c)) {
            ends.insert(ann.span.end);
        }
    }
    ends
}

/// Every end offset `expr` can reach from `from`, by exhaustive recursion.
/// Quantifiers are unrolled step by step up to a fixpoint.
pub fn match_ends(anns: &[Annotation], expr: &PatternExpr, from: usize) -> BTreeSet<usize> {
    match expr {
        PatternExpr::Constraints(group) => group_match_ends(anns, group, from),
        PatternExpr::Alternation(branches) => {
            let mut ends = BTreeSet::new();
            for branch in branches {
                ends.extend(match_ends(anns, branch, from));
            }
            ends
        }
        PatternExpr::Sequence(items) => seq_ends(anns, items, from),
        PatternExpr::Group(inner, quantifier) => {
            let one = match_ends(anns, inner, from);
            match quantifier {
                Quantifier::One => one,
                Quantifier::Optional => {
                    let mut ends = one;
                    ends.insert(from);
                    ends
                }
                Quantifier::Star | Quantifier::Plus => {
                    let mut reachable: BTreeSet<usize> = if *quantifier == Quantifier::Star {
                        BTreeSet::from([from])
                    } else {
                        one.clone()
                    };
                    loop {
                        let mut grew = false;
                        for e in reachable.clone() {
                            for e2 in match_ends(anns, inner, e) {
                                grew |= reachable.insert(e2);
                            }
                        }
                        if !grew {
                            break;
                        }
                    }
                    reachable
                }
            }
        }
    }
}

fn seq_ends(anns: &[Annotation], items: &[PatternExpr], from: usize) -> BTreeSet<usize> {
    match items.split_first() {
        None => BTreeSet::from([from]),
        Some((head, tail)) => {
            let mut ends = BTreeSet::new();
            for e in match_ends(anns, head, from) {
                ends.extend(seq_ends(anns, tail, e));
            }
            ends
        }
    }
}

/// The reference phase run: enumerate every (rule, match-end) pair at every
/// position, then apply the control mode's selection policy.
pub fn run_phase(visible: &[Annotation], phase: &RulePhase) -> Vec<Fired> {
    let mut positions: Vec<usize> = visible
        .iter()
        .map(|a| a.span.start)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    positions.sort_unstable();

    let fire = |rule_idx: usize, start: usize, end: usize| -> Fired {
        let action = &phase.rules[rule_idx].action;
        (
            action.new_type.clone(),
            Span::new(start, end),
            action.features.clone(),
        )
    };

    // All (rule, end) matches at one position, zero-width discarded.
    let matches_at = |s: usize| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (idx, rule) in phase.rules.iter().enumerate() {
            for end in match_ends(visible, &rule.pattern, s) {
                if end > s {
                    out.push((idx, end));
                }
            }
        }
        out
    };

    let mut fired = Vec::new();
    match phase.control {
        ControlMode::All => {
            for &s in &positions {
                for (idx, end) in matches_at(s) {
                    fired.push(fire(idx, s, end));
                }
            }
        }
        ControlMode::Appelt => {
            let mut i = 0;
            while i < positions.len() {
                let s = positions[i];
                // Lexicographic selection: longest end, then highest
                // priority, then earliest rule.
                let mut candidates = matches_at(s);
                candidates.sort_by(|&(ia, ea), &(ib, eb)| {
                    eb.cmp(&ea)
                        .then(phase.rules[ib].priority.cmp(&phase.rules[ia].priority))
                        .then(ia.cmp(&ib))
                });
                match candidates.first() {
                    Some(&(idx, end)) => {
                        fired.push(fire(idx, s, end));
                        i += 1;
                        while i < positions.len() && positions[i] < end {
                            i += 1;
                        }
                    }
                    None => i += 1,
                }
            }
        }
        ControlMode::First => {
            let mut i = 0;
            while i < positions.len() {
                let s = positions[i];
                let mut candidates = matches_at(s);
                candidates.sort_by_key(|&(idx, end)| (idx, end));
                match candidates.first() {
                    Some(&(idx, end)) => {
                        fired.push(fire(idx, s, end));
                        i += 1;
                        while i < positions.len() && positions[i] < end {
                            i += 1;
                        }
                    }
                    None => i += 1,
                }
            }
        }
    }
    fired
}

/// Brute-force gazetteer scan: every (start, phrase) pair is tried with a
/// case-insensitive character comparison, a word-boundary check, and the
/// list's case policy; the longest phrase wins per list and start.
pub fn gazetteer_scan(text: &str, lists: &[GazetteerList]) -> BTreeSet<(Span, String)> {
    let chars: Vec<char> = text.chars().collect();
    let is_word = |i: usize| i < chars.len() && chars[i].is_alphanumeric();
    let mut hits = BTreeSet::new();
    for list in lists {
        for start in 0..chars.len() {
            if start > 0 && is_word(start - 1) {
                continue;
            }
            let mut best: Option<usize> = None;
            for phrase in &list.phrases {
                let pchars: Vec<char> = phrase.chars().collect();
                let end = start + pchars.len();
                if pchars.is_empty() || end > chars.len() || is_word(end) {
                    continue;
                }
                let surface: String = chars[start..end].iter().collect();
                if surface.to_lowercase() == phrase.to_lowercase()
                    && surface.chars().count() == pchars.len()
                    && list.case_policy.admits(&surface)
                    && best.is_none_or(|b| end > b)
                {
                    best = Some(end);
                }
            }
            if let Some(end) = best {
                hits.insert((Span::new(start, end), list.major_type.clone()));
            }
        }
    }
    hits
}

/// Reads the model XML format back into (classes, attributes, associations)
/// name tuples — the serialized projection of a model.
pub type ModelSignature = (
    Vec<String>,
    Vec<(String, String)>,
    Vec<(String, String, String)>,
);

pub fn model_signature(model: &UmlModel) -> ModelSignature {
    let mut classes: Vec<String> = model.classes.iter().map(|c| c.name.clone()).collect();
    classes.sort();
    let mut attributes: Vec<(String, String)> = model
        .attributes
        .iter()
        .map(|a| (a.owner.clone(), a.name.clone()))
        .collect();
    attributes.sort();
    let mut associations: Vec<(String, String, String)> = model
        .associations
        .iter()
        .map(|a| (a.name.clone(), a.source.clone(), a.target.clone()))
        .collect();
    associations.sort();
    (classes, attributes, associations)
}

pub fn parse_model_xml(xml: &str) -> Result<ModelSignature, String> {
    let doc = roxmltree::Document::parse(xml).map_err(|e| e.to_string())?;
    let root = doc.root_element();
    if root.tag_name().name() != "model" {
        return Err(format!("unexpected root element {:?}", root.tag_name()));
    }
    let mut classes = Vec::new();
    let mut attributes = Vec::new();
    let mut associations = Vec::new();
    for node in root.children().filter(|n| n.is_element()) {
        match node.tag_name().name() {
            "class" => {
                let name = node.attribute("name").ok_or("class without name")?;
                classes.push(name.to_string());
                for child in node.children().filter(|n| n.is_element()) {
                    if child.tag_name().name() != "attribute" {
                        return Err(format!(
                            "unexpected element {:?} inside class",
                            child.tag_name()
                        ));
                    }
                    let attr = child.attribute("name").ok_or("attribute without name")?;
                    attributes.push((name.to_string(), attr.to_string()));
                }
            }
            "association" => {
                let name = node.attribute("name").ok_or("association without name")?;
                let from = node.attribute("from").ok_or("association without from")?;
                let to = node.attribute("to").ok_or("association without to")?;
                associations.push((name.to_string(), from.to_string(), to.to_string()));
            }
            other => return Err(format!("unexpected element {other:?}")),
        }
    }
    classes.sort();
    attributes.sort();
    associations.sort();
    Ok((classes, attributes, associations))
}
