//! An annotation pattern engine: rule files are parsed into phases
//! ([`parse_rule_file`]) and executed as a transducer over the annotation
//! store ([`apply_phase`], [`run_transducer`]).

mod ast;
mod matcher;
mod parser;

pub use ast::{
    Action, Constraint, ConstraintGroup, ConstraintOp, ControlMode, FeatureTest, PatternExpr,
    Quantifier, Rule, RulePhase,
};
pub use matcher::{apply_phase, run_transducer};
pub use parser::{parse_rule_file, RuleParseError};
