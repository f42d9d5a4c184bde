//! The transducer: applies parsed phases to a document's annotation store.
//!
//! A phase matches over a snapshot of the annotations whose type is in its
//! `Input` set, taken when the phase starts; annotations it creates become
//! visible to later phases only. Matching steps from one annotation to the
//! next visible annotation starting at or after the previous one's end, so
//! un-annotated gaps (whitespace) are skipped but annotated material cannot
//! be jumped over.
//!
//! A match must consume at least one annotation; zero-width matches are
//! discarded.

use std::collections::{BTreeMap, BTreeSet};

use crate::document::{Annotation, Document, Span};
use crate::lingpipe::categories_equivalent;
use crate::types;

use super::ast::{
    Constraint, ConstraintGroup, ConstraintOp, ControlMode, PatternExpr, Quantifier, RulePhase,
};

/// One annotation produced by a fired rule.
pub(crate) type FiredAnnotation = (String, Span, BTreeMap<String, String>);

/// Applies one phase to the document, adding the annotations its rules fire.
pub fn apply_phase(doc: &mut Document, phase: &RulePhase) {
    let input_types: Vec<&str> = phase.input_types.iter().map(String::as_str).collect();
    let visible: Vec<Annotation> = doc
        .annotations_in(&input_types, doc.whole_span())
        .into_iter()
        .cloned()
        .collect();
    for (type_name, span, features) in run_phase(&visible, phase) {
        doc.add_annotation(&type_name, span, features)
            .expect("fired spans lie within matched annotations");
    }
}

/// Applies phases strictly in order; later phases see annotations created by
/// earlier ones.
pub fn run_transducer(doc: &mut Document, phases: &[RulePhase]) {
    for phase in phases {
        apply_phase(doc, phase);
    }
}

/// Runs one phase over an already-snapshotted annotation stream and returns
/// the annotations its rules fire, in firing order.
pub(crate) fn run_phase(visible: &[Annotation], phase: &RulePhase) -> Vec<FiredAnnotation> {
    let stream = Stream::new(visible);
    match phase.control {
        ControlMode::Appelt => scan_appelt(&stream, phase),
        ControlMode::All => scan_all(&stream, phase),
        ControlMode::First => scan_first(&stream, phase),
    }
}

struct Stream<'a> {
    anns: Vec<&'a Annotation>,
    /// Distinct start offsets, ascending.
    starts: Vec<usize>,
    by_start: BTreeMap<usize, Vec<usize>>,
}

impl<'a> Stream<'a> {
    fn new(visible: &'a [Annotation]) -> Self {
        let mut anns: Vec<&Annotation> = visible.iter().collect();
        anns.sort_by(|a, b| {
            a.span
                .start
                .cmp(&b.span.start)
                .then(b.span.end.cmp(&a.span.end))
                .then(a.id.cmp(&b.id))
        });
        let mut by_start: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (idx, ann) in anns.iter().enumerate() {
            by_start.entry(ann.span.start).or_default().push(idx);
        }
        let starts = by_start.keys().copied().collect();
        Stream {
            anns,
            starts,
            by_start,
        }
    }

    /// The smallest annotation start at or after `offset`.
    fn next_start(&self, offset: usize) -> Option<usize> {
        self.by_start.range(offset..).next().map(|(s, _)| *s)
    }

    fn at(&self, start: usize) -> &[usize] {
        self.by_start.get(&start).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Feature-value comparison: plain trimmed string equality, except that
/// `Token.category` values compare modulo the noun/verb equivalence classes.
fn values_match(annotation_type: &str, feature: &str, actual: &str, expected: &str) -> bool {
    let actual = actual.trim();
    let expected = expected.trim();
    if annotation_type == types::TOKEN && feature == "category" {
        categories_equivalent(actual, expected)
    } else {
        actual == expected
    }
}

fn satisfies_positive(ann: &Annotation, entries: &[&Constraint]) -> bool {
    entries.iter().all(|c| match &c.test {
        None => true,
        Some(t) => match t.op {
            ConstraintOp::Eq => ann
                .feature(&t.feature)
                .is_some_and(|v| values_match(&c.annotation_type, &t.feature, v, &t.value)),
            ConstraintOp::Ne => !ann
                .feature(&t.feature)
                .is_some_and(|v| values_match(&c.annotation_type, &t.feature, v, &t.value)),
        },
    })
}

/// Possible end offsets of one `{...}` group anchored at `from`.
///
/// The group consumes one annotation of its anchor type (the type of its
/// first positive entry). Other types with positive entries need a
/// co-located annotation starting at the same offset; types with only
/// negated entries must have no annotation there satisfying the negated
/// equality.
fn group_ends(group: &ConstraintGroup, stream: &Stream, from: usize) -> BTreeSet<usize> {
    let mut ends = BTreeSet::new();
    let Some(pos) = stream.next_start(from) else {
        return ends;
    };
    let here = stream.at(pos);

    let mut by_type: BTreeMap<&str, Vec<&Constraint>> = BTreeMap::new();
    for entry in &group.entries {
        by_type
            .entry(entry.annotation_type.as_str())
            .or_default()
            .push(entry);
    }

    for (ty, entries) in &by_type {
        let has_positive = entries.iter().any(|c| c.is_positive());
        let candidates = here
            .iter()
            .map(|&i| stream.anns[i])
            .filter(|a| a.type_name == *ty);
        if has_positive {
            if !candidates
                .into_iter()
                .any(|a| satisfies_positive(a, entries))
            {
                return BTreeSet::new();
            }
        } else {
            // Absence semantics: no annotation of this type here may carry a
            // negated feature value.
            for ann in candidates {
                for c in entries.iter() {
                    let t = c.test.as_ref().expect("negative entries carry a test");
                    if ann
                        .feature(&t.feature)
                        .is_some_and(|v| values_match(ty, &t.feature, v, &t.value))
                    {
                        return BTreeSet::new();
                    }
                }
            }
        }
    }

    let anchor = group.anchor_type();
    let anchor_entries: Vec<&Constraint> = by_type.remove(anchor).unwrap_or_default();
    for &i in here {
        let ann = stream.anns[i];
        if ann.type_name == anchor && satisfies_positive(ann, &anchor_entries) {
            ends.insert(ann.span.end);
        }
    }
    ends
}

/// All possible end offsets of `expr` starting at offset `from`.
fn match_ends(expr: &PatternExpr, stream: &Stream, from: usize) -> BTreeSet<usize> {
    match expr {
        PatternExpr::Constraints(group) => group_ends(group, stream, from),
        PatternExpr::Sequence(items) => {
            let mut current = BTreeSet::from([from]);
            for item in items {
                let mut next = BTreeSet::new();
                for &e in &current {
                    next.extend(match_ends(item, stream, e));
                }
                if next.is_empty() {
                    return next;
                }
                current = next;
            }
            current
        }
        PatternExpr::Alternation(branches) => branches
            .iter()
            .flat_map(|b| match_ends(b, stream, from))
            .collect(),
        PatternExpr::Group(inner, quant) => match quant {
            Quantifier::One => match_ends(inner, stream, from),
            Quantifier::Optional => {
                let mut ends = match_ends(inner, stream, from);
                ends.insert(from);
                ends
            }
            Quantifier::Star => kleene(inner, stream, BTreeSet::from([from])),
            Quantifier::Plus => {
                let first = match_ends(inner, stream, from);
                if first.is_empty() {
                    first
                } else {
                    kleene(inner, stream, first)
                }
            }
        },
    }
}

/// Reflexive-transitive closure of one inner-pattern step. Terminates
/// because each round only adds offsets not seen before.
fn kleene(inner: &PatternExpr, stream: &Stream, seed: BTreeSet<usize>) -> BTreeSet<usize> {
    let mut acc = seed.clone();
    let mut frontier = seed;
    while !frontier.is_empty() {
        let mut next = BTreeSet::new();
        for &e in &frontier {
            for e2 in match_ends(inner, stream, e) {
                if !acc.contains(&e2) {
                    next.insert(e2);
                }
            }
        }
        acc.extend(next.iter().copied());
        frontier = next;
    }
    acc
}

fn fire(phase: &RulePhase, rule_idx: usize, start: usize, end: usize) -> FiredAnnotation {
    let action = &phase.rules[rule_idx].action;
    (
        action.new_type.clone(),
        Span::new(start, end),
        action.features.clone(),
    )
}

fn scan_appelt(stream: &Stream, phase: &RulePhase) -> Vec<FiredAnnotation> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < stream.starts.len() {
        let s = stream.starts[i];
        // (end, priority, rule index): longest, then highest priority, then
        // earliest definition.
        let mut best: Option<(usize, i64, usize)> = None;
        for (idx, rule) in phase.rules.iter().enumerate() {
            let Some(&end) = match_ends(&rule.pattern, stream, s)
                .iter()
                .next_back()
                .filter(|&&e| e > s)
            else {
                continue;
            };
            let better = match best {
                None => true,
                Some((be, bp, bi)) => {
                    end > be
                        || (end == be && (rule.priority > bp || (rule.priority == bp && idx < bi)))
                }
            };
            if better {
                best = Some((end, rule.priority, idx));
            }
        }
        match best {
            Some((end, _, idx)) => {
                out.push(fire(phase, idx, s, end));
                i = stream.starts.partition_point(|&p| p < end).max(i + 1);
            }
            None => i += 1,
        }
    }
    out
}

fn scan_all(stream: &Stream, phase: &RulePhase) -> Vec<FiredAnnotation> {
    let mut out = Vec::new();
    for &s in &stream.starts {
        for (idx, rule) in phase.rules.iter().enumerate() {
            for end in match_ends(&rule.pattern, stream, s) {
                if end > s {
                    out.push(fire(phase, idx, s, end));
                }
            }
        }
    }
    out
}

fn scan_first(stream: &Stream, phase: &RulePhase) -> Vec<FiredAnnotation> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < stream.starts.len() {
        let s = stream.starts[i];
        let hit = phase.rules.iter().enumerate().find_map(|(idx, rule)| {
            match_ends(&rule.pattern, stream, s)
                .into_iter()
                .find(|&e| e > s)
                .map(|end| (idx, end))
        });
        match hit {
            Some((idx, end)) => {
                out.push(fire(phase, idx, s, end));
                i = stream.starts.partition_point(|&p| p < end).max(i + 1);
            }
            None => i += 1,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::parse_rule_file;

    fn ann(id: u32, ty: &str, start: usize, end: usize, feats: &[(&str, &str)]) -> Annotation {
        Annotation {
            id,
            type_name: ty.to_string(),
            span: Span::new(start, end),
            features: feats
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }

    fn token(id: u32, start: usize, end: usize, category: &str) -> Annotation {
        ann(
            id,
            "Token",
            start,
            end,
            &[("kind", "word"), ("category", category)],
        )
    }

    #[test]
    fn no_matching_rule_leaves_document_unchanged() {
        let phase = parse_rule_file(
            "Phase:P\nInput: Token\nRule: R\n({Token.kind==number}):l\n-->\n:l.X={}",
        )
        .unwrap();
        let visible = vec![token(0, 0, 2, "NN")];
        assert!(run_phase(&visible, &phase).is_empty());
    }

    #[test]
    fn noun_verb_sequence_matches_across_a_gap() {
        let phase = parse_rule_file(
            "Phase:P\nInput: Token\nRule: R\n({Token.category==NNP}{Token.category==V}):l\n-->\n:l.classe={rule=R}",
        )
        .unwrap();
        // "client passe": NN and VB match via the category equivalence.
        let visible = vec![token(0, 3, 9, "NN"), token(1, 10, 15, "VB")];
        let fired = run_phase(&visible, &phase);
        assert_eq!(fired.len(), 1);
        assert_eq!(fired[0].1, Span::new(3, 15));
        assert_eq!(fired[0].0, "classe");
    }

    #[test]
    fn appelt_prefers_longest_match() {
        let phase = parse_rule_file(
            "Phase:P\nInput: Lookup Token\n\
             Rule: Short\nPriority: 99\n({Lookup.majorType==ClassMinuscule}):l\n-->\n:l.X={rule=Short}\n\
             Rule: Long\n({Token.category==NNP}{Token.category==V}):l\n-->\n:l.X={rule=Long}",
        )
        .unwrap();
        let visible = vec![
            ann(0, "Lookup", 3, 9, &[("majorType", "ClassMinuscule")]),
            token(1, 3, 9, "NN"),
            token(2, 10, 15, "V"),
        ];
        let fired = run_phase(&visible, &phase);
        assert_eq!(fired.len(), 1);
        assert_eq!(fired[0].1, Span::new(3, 15));
        assert_eq!(fired[0].2.get("rule").unwrap(), "Long");
    }

    #[test]
    fn appelt_breaks_length_ties_by_priority_then_order() {
        // Expected outcome frozen from the brute-force selection oracle:
        // both rules match [0,2), priority 20 beats 10.
        let phase = parse_rule_file(
            "Phase:P\nInput: Token\n\
             Rule: Low\nPriority: 10\n({Token.kind==word}):l\n-->\n:l.X={rule=Low}\n\
             Rule: High\nPriority: 20\n({Token.kind==word}):l\n-->\n:l.X={rule=High}",
        )
        .unwrap();
        let visible = vec![token(0, 0, 2, "NN")];
        let fired = run_phase(&visible, &phase);
        assert_eq!(fired.len(), 1);
        assert_eq!(fired[0].2.get("rule").unwrap(), "High");

        let tie = parse_rule_file(
            "Phase:P\nInput: Token\n\
             Rule: A\nPriority: 20\n({Token.kind==word}):l\n-->\n:l.X={rule=A}\n\
             Rule: B\nPriority: 20\n({Token.kind==word}):l\n-->\n:l.X={rule=B}",
        )
        .unwrap();
        let fired = run_phase(&visible, &tie);
        assert_eq!(fired.len(), 1);
        assert_eq!(fired[0].2.get("rule").unwrap(), "A");
    }

    #[test]
    fn appelt_resumes_after_the_fired_region() {
        let phase = parse_rule_file(
            "Phase:P\nInput: Token\nRule: R\n({Token.category==NNP}{Token.category==V}):l\n-->\n:l.X={}",
        )
        .unwrap();
        // Overlapping chance at offset 10 is consumed by the match from 3.
        let visible = vec![
            token(0, 3, 9, "NN"),
            token(1, 10, 15, "V"),
            token(2, 16, 19, "NN"),
        ];
        let fired = run_phase(&visible, &phase);
        assert_eq!(fired.len(), 1);
    }

    #[test]
    fn all_control_fires_every_match() {
        let phase = parse_rule_file(
            "Phase:P\nInput: Token\nOptions: control = all\nRule: R\n({Token.kind==word}{Token.kind==word}?):l\n-->\n:l.X={}",
        )
        .unwrap();
        let visible = vec![token(0, 0, 1, "NN"), token(1, 2, 3, "NN")];
        let fired = run_phase(&visible, &phase);
        // From 0: ends 1 and 3; from 2: end 3.
        let spans: Vec<Span> = fired.iter().map(|f| f.1).collect();
        assert_eq!(
            spans,
            vec![Span::new(0, 1), Span::new(0, 3), Span::new(2, 3)]
        );
    }

    #[test]
    fn first_control_takes_first_rule_shortest_match() {
        let phase = parse_rule_file(
            "Phase:P\nInput: Token\nOptions: control = first\n\
             Rule: A\n({Token.kind==word}{Token.kind==word}?):l\n-->\n:l.X={rule=A}\n\
             Rule: B\nPriority: 99\n({Token.kind==word}{Token.kind==word}):l\n-->\n:l.X={rule=B}",
        )
        .unwrap();
        let visible = vec![token(0, 0, 1, "NN"), token(1, 2, 3, "NN")];
        let fired = run_phase(&visible, &phase);
        assert_eq!(fired.len(), 2);
        assert_eq!(fired[0].1, Span::new(0, 1));
        assert_eq!(fired[0].2.get("rule").unwrap(), "A");
        assert_eq!(fired[1].1, Span::new(2, 3));
    }

    #[test]
    fn negated_constraint_passes_when_annotation_is_absent() {
        let phase = parse_rule_file(
            "Phase:P\nInput: Lookup Token\nRule: R\n({Token.kind==word, Lookup.majorType != class}):l\n-->\n:l.X={}",
        )
        .unwrap();
        // No Lookup at all: passes.
        let fired = run_phase(&[token(0, 0, 4, "NN")], &phase);
        assert_eq!(fired.len(), 1);
        // Lookup with a different majorType: passes.
        let visible = vec![
            token(0, 0, 4, "NN"),
            ann(1, "Lookup", 0, 4, &[("majorType", "attribut")]),
        ];
        assert_eq!(run_phase(&visible, &phase).len(), 1);
        // Lookup with the negated value: blocked.
        let visible = vec![
            token(0, 0, 4, "NN"),
            ann(1, "Lookup", 0, 4, &[("majorType", "class")]),
        ];
        assert!(run_phase(&visible, &phase).is_empty());
    }

    #[test]
    fn bare_type_constraint_consumes_one_annotation() {
        let phase =
            parse_rule_file("Phase:P\nInput: classe Token\nRule: R\n({classe}{Token.category==V}{classe}):l\n-->\n:l.Association={rule=R}")
                .unwrap();
        let visible = vec![
            ann(0, "classe", 0, 14, &[]),
            token(1, 15, 23, "V"),
            ann(2, "classe", 24, 32, &[]),
        ];
        let fired = run_phase(&visible, &phase);
        assert_eq!(fired.len(), 1);
        assert_eq!(fired[0].1, Span::new(0, 32));
    }

    #[test]
    fn annotated_material_cannot_be_jumped_over() {
        let phase = parse_rule_file(
            "Phase:P\nInput: Token\nRule: R\n({Token.category==NNP}{Token.category==V}):l\n-->\n:l.X={}",
        )
        .unwrap();
        // A non-matching token sits between the noun and the verb.
        let visible = vec![
            token(0, 0, 2, "NN"),
            token(1, 3, 5, "DET"),
            token(2, 6, 8, "V"),
        ];
        assert!(run_phase(&visible, &phase).is_empty());
    }

    #[test]
    fn star_is_greedy_under_appelt() {
        let phase = parse_rule_file(
            "Phase:P\nInput: Token\nRule: R\n(({Token.kind==word})+):l\n-->\n:l.X={}",
        )
        .unwrap();
        let visible = vec![
            token(0, 0, 1, "NN"),
            token(1, 2, 3, "NN"),
            token(2, 4, 5, "NN"),
        ];
        let fired = run_phase(&visible, &phase);
        assert_eq!(fired.len(), 1);
        assert_eq!(fired[0].1, Span::new(0, 5));
    }
}
