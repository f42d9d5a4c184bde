//! Parsed representation of rule files: phases, rules, patterns, actions.

use std::collections::{BTreeMap, BTreeSet};

/// Match-selection policy of a phase.
///
/// * `appelt` — at each start position the longest match wins, ties broken
///   by higher priority then earlier definition; scanning resumes after the
///   fired match.
/// * `all` — every match of every rule fires; scanning advances one
///   position at a time.
/// * `first` — the first rule in definition order that matches fires with
///   its shortest match, then scanning resumes after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ControlMode {
    Appelt,
    All,
    First,
}

impl ControlMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ControlMode::Appelt => "appelt",
            ControlMode::All => "all",
            ControlMode::First => "first",
        }
    }

    pub fn parse(s: &str) -> Option<ControlMode> {
        match s {
            "appelt" => Some(ControlMode::Appelt),
            "all" => Some(ControlMode::All),
            "first" => Some(ControlMode::First),
            _ => None,
        }
    }
}

impl std::fmt::Display for ControlMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One parsed rule file: a named transducer pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RulePhase {
    pub name: String,
    /// Annotation types visible to this phase's matcher.
    pub input_types: BTreeSet<String>,
    pub control: ControlMode,
    pub rules: Vec<Rule>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub name: String,
    pub priority: i64,
    /// The pattern inside the single labeled group.
    pub pattern: PatternExpr,
    pub label: String,
    pub action: Action,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    One,
    Optional,
    Star,
    Plus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternExpr {
    /// Elements matched one after another over the annotation stream.
    Sequence(Vec<PatternExpr>),
    /// Branches tried independently; all resulting ends are candidates.
    Alternation(Vec<PatternExpr>),
    /// A quantified sub-pattern.
    Group(Box<PatternExpr>, Quantifier),
    /// One `{...}` group consuming exactly one annotation.
    Constraints(ConstraintGroup),
}

/// The constraints of one brace group. Constraints sharing a type apply to
/// the same annotation; constraints on other types require co-located
/// annotations starting at the same offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintGroup {
    pub entries: Vec<Constraint>,
}

impl ConstraintGroup {
    /// The type of the first positive entry: the annotation the group
    /// consumes. The parser guarantees at least one positive entry.
    pub fn anchor_type(&self) -> &str {
        self.entries
            .iter()
            .find(|e| e.is_positive())
            .map(|e| e.annotation_type.as_str())
            .expect("parser rejects groups without a positive constraint")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub annotation_type: String,
    /// `None` for a bare type-presence constraint like `{classe}`.
    pub test: Option<FeatureTest>,
}

impl Constraint {
    pub fn is_positive(&self) -> bool {
        self.test.as_ref().is_none_or(|t| t.op == ConstraintOp::Eq)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureTest {
    pub feature: String,
    pub op: ConstraintOp,
    pub value: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintOp {
    Eq,
    Ne,
}

/// Declarative right-hand side: annotate the labeled span with a new type
/// and a constant feature map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    pub new_type: String,
    pub features: BTreeMap<String, String>,
}
