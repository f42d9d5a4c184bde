//! Parser for the rule-file DSL.
//!
//! ```text
//! Phase: IdentifClasse
//! Input: Lookup Token
//! Options: control = appelt
//!
//! Rule: Classe
//! Priority: 20
//! (
//!     {Lookup.majorType == ClassMinuscule}
//!     |
//!     ({Token.kind == word, Token.category == NNP}
//!      {Token.kind == word, Token.category == V})
//! ):label
//! -->
//! :label.classe = {rule = Classe}
//! ```
//!
//! Whitespace around `==`, `=`, and identifiers is tolerated; identifiers
//! themselves may not contain spaces. `//` and `/* */` comments are skipped.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::ast::{
    Action, Constraint, ConstraintGroup, ConstraintOp, ControlMode, FeatureTest, PatternExpr,
    Quantifier, Rule, RulePhase,
};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
#[error("line {line}: {message}")]
pub struct RuleParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, RuleParseError> {
    Err(RuleParseError {
        line,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Pipe,
    Comma,
    Dot,
    Colon,
    EqEq,
    Ne,
    Eq,
    Arrow,
    Question,
    Star,
    Plus,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Int(i) => format!("integer {i}"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Pipe => "'|'".into(),
            Tok::Comma => "','".into(),
            Tok::Dot => "'.'".into(),
            Tok::Colon => "':'".into(),
            Tok::EqEq => "'=='".into(),
            Tok::Ne => "'!='".into(),
            Tok::Eq => "'='".into(),
            Tok::Arrow => "'-->'".into(),
            Tok::Question => "'?'".into(),
            Tok::Star => "'*'".into(),
            Tok::Plus => "'+'".into(),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn lex(source: &str) -> Result<Vec<(usize, Tok)>, RuleParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let mut line = 1;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                line += 1;
                i += 1;
            }
            _ if c.is_whitespace() => i += 1,
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'*') => {
                let open_line = line;
                i += 2;
                loop {
                    if i >= chars.len() {
                        return err(open_line, "unterminated comment");
                    }
                    if chars[i] == '\n' {
                        line += 1;
                    }
                    if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                        i += 2;
                        break;
                    }
                    i += 1;
                }
            }
            '{' => {
                toks.push((line, Tok::LBrace));
                i += 1;
            }
            '}' => {
                toks.push((line, Tok::RBrace));
                i += 1;
            }
            '(' => {
                toks.push((line, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((line, Tok::RParen));
                i += 1;
            }
            '|' => {
                toks.push((line, Tok::Pipe));
                i += 1;
            }
            ',' => {
                toks.push((line, Tok::Comma));
                i += 1;
            }
            '.' => {
                toks.push((line, Tok::Dot));
                i += 1;
            }
            ':' => {
                toks.push((line, Tok::Colon));
                i += 1;
            }
            '?' => {
                toks.push((line, Tok::Question));
                i += 1;
            }
            '*' => {
                toks.push((line, Tok::Star));
                i += 1;
            }
            '+' => {
                toks.push((line, Tok::Plus));
                i += 1;
            }
            '=' if chars.get(i + 1) == Some(&'=') => {
                toks.push((line, Tok::EqEq));
                i += 2;
            }
            '=' => {
                toks.push((line, Tok::Eq));
                i += 1;
            }
            '!' if chars.get(i + 1) == Some(&'=') => {
                toks.push((line, Tok::Ne));
                i += 2;
            }
            '-' => {
                if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                    toks.push((line, Tok::Arrow));
                    i += 3;
                } else {
                    return err(line, "expected '-->'");
                }
            }
            '"' => {
                let start_line = line;
                i += 1;
                let mut s = String::new();
                loop {
                    match chars.get(i) {
                        None => return err(start_line, "unterminated string literal"),
                        Some('\n') => return err(start_line, "unterminated string literal"),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                toks.push((start_line, Tok::Str(s)));
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                match text.parse::<i64>() {
                    Ok(v) => toks.push((line, Tok::Int(v))),
                    Err(_) => return err(line, format!("integer out of range: {text}")),
                }
            }
            _ if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident_continue(chars[i]) {
                    i += 1;
                }
                toks.push((line, Tok::Ident(chars[start..i].iter().collect())));
            }
            _ => return err(line, format!("unexpected character {c:?}")),
        }
    }
    Ok(toks)
}

/// Parses one rule file into a phase.
pub fn parse_rule_file(source: &str) -> Result<RulePhase, RuleParseError> {
    let toks = lex(source)?;
    Parser { toks, pos: 0 }.parse_phase()
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(_, t)| t)
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|(l, _)| *l)
            .unwrap_or(1)
    }

    fn next(&mut self, expected: &str) -> Result<(usize, Tok), RuleParseError> {
        match self.toks.get(self.pos) {
            Some((l, t)) => {
                let out = (*l, t.clone());
                self.pos += 1;
                Ok(out)
            }
            None => err(
                self.line(),
                format!("expected {expected}, found end of file"),
            ),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<usize, RuleParseError> {
        let (line, got) = self.next(&tok.describe())?;
        if got == tok {
            Ok(line)
        } else {
            err(
                line,
                format!("expected {}, found {}", tok.describe(), got.describe()),
            )
        }
    }

    fn ident(&mut self, what: &str) -> Result<(usize, String), RuleParseError> {
        let (line, got) = self.next(what)?;
        match got {
            Tok::Ident(s) => Ok((line, s)),
            other => err(line, format!("expected {what}, found {}", other.describe())),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<usize, RuleParseError> {
        let (line, got) = self.next(&format!("'{kw}'"))?;
        match got {
            Tok::Ident(ref s) if s == kw => Ok(line),
            other => err(line, format!("expected '{kw}', found {}", other.describe())),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
            && matches!(self.peek2(), Some(Tok::Colon))
    }

    fn parse_phase(mut self) -> Result<RulePhase, RuleParseError> {
        self.keyword("Phase")?;
        self.expect(Tok::Colon)?;
        let (_, name) = self.ident("phase name")?;

        self.keyword("Input")?;
        self.expect(Tok::Colon)?;
        let mut input_types = BTreeSet::new();
        let input_line = self.line();
        while matches!(self.peek(), Some(Tok::Ident(_)))
            && !self.at_keyword("Options")
            && !self.at_keyword("Rule")
        {
            let (_, ty) = self.ident("input type")?;
            input_types.insert(ty);
        }
        if input_types.is_empty() {
            return err(input_line, "Input must name at least one annotation type");
        }

        let mut control = ControlMode::Appelt;
        if self.at_keyword("Options") {
            self.keyword("Options")?;
            self.expect(Tok::Colon)?;
            loop {
                let (opt_line, key) = self.ident("option name")?;
                self.expect(Tok::Eq)?;
                let (val_line, value) = self.ident("option value")?;
                match key.as_str() {
                    "control" => {
                        control = ControlMode::parse(&value).ok_or_else(|| RuleParseError {
                            line: val_line,
                            message: if value == "once" || value == "brill" {
                                format!("control mode '{value}' is not supported")
                            } else {
                                format!("unknown control mode '{value}'")
                            },
                        })?;
                    }
                    other => return err(opt_line, format!("unknown option '{other}'")),
                }
                if matches!(self.peek(), Some(Tok::Comma)) {
                    self.expect(Tok::Comma)?;
                } else {
                    break;
                }
            }
        }

        let mut rules: Vec<Rule> = Vec::new();
        while self.pos < self.toks.len() {
            if !self.at_keyword("Rule") {
                let line = self.line();
                let found = self
                    .peek()
                    .map(|t| t.describe())
                    .unwrap_or_else(|| "end of file".into());
                return err(line, format!("expected 'Rule', found {found}"));
            }
            let rule = self.parse_rule()?;
            if rules.iter().any(|r| r.name == rule.name) {
                return err(
                    self.line(),
                    format!("duplicate rule name '{}' in phase '{name}'", rule.name),
                );
            }
            rules.push(rule);
        }

        Ok(RulePhase {
            name,
            input_types,
            control,
            rules,
        })
    }

    fn parse_rule(&mut self) -> Result<Rule, RuleParseError> {
        self.keyword("Rule")?;
        self.expect(Tok::Colon)?;
        let (_, name) = self.ident("rule name")?;

        let mut priority = 0;
        if self.at_keyword("Priority") {
            self.keyword("Priority")?;
            self.expect(Tok::Colon)?;
            let (line, got) = self.next("priority value")?;
            match got {
                Tok::Int(v) => priority = v,
                other => {
                    return err(
                        line,
                        format!("expected priority value, found {}", other.describe()),
                    )
                }
            }
        }

        self.expect(Tok::LParen)?;
        let pattern = self.parse_alternation()?;
        self.expect(Tok::RParen)?;
        self.expect(Tok::Colon)?;
        let (label_line, label) = self.ident("binding label")?;

        match self.peek() {
            Some(Tok::Arrow) => {
                self.expect(Tok::Arrow)?;
            }
            _ => return err(self.line(), "expected '-->' separator"),
        }

        self.expect(Tok::Colon)?;
        let (action_line, action_label) = self.ident("action label")?;
        if action_label != label {
            return err(
                action_line,
                format!(
                    "action label ':{action_label}' does not match pattern label ':{label}' (line {label_line})"
                ),
            );
        }
        self.expect(Tok::Dot)?;
        let (_, new_type) = self.ident("output annotation type")?;
        self.expect(Tok::Eq)?;
        self.expect(Tok::LBrace)?;
        let mut features = BTreeMap::new();
        if !matches!(self.peek(), Some(Tok::RBrace)) {
            loop {
                let (_, key) = self.ident("feature name")?;
                self.expect(Tok::Eq)?;
                let value = self.value()?;
                features.insert(key, value);
                if matches!(self.peek(), Some(Tok::Comma)) {
                    self.expect(Tok::Comma)?;
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBrace)?;

        Ok(Rule {
            name,
            priority,
            pattern,
            label,
            action: Action { new_type, features },
        })
    }

    fn value(&mut self) -> Result<String, RuleParseError> {
        let (line, got) = self.next("value")?;
        match got {
            Tok::Ident(s) => Ok(s),
            Tok::Int(v) => Ok(v.to_string()),
            Tok::Str(s) => Ok(s),
            other => err(line, format!("expected value, found {}", other.describe())),
        }
    }

    fn parse_alternation(&mut self) -> Result<PatternExpr, RuleParseError> {
        let mut branches = vec![self.parse_sequence()?];
        while matches!(self.peek(), Some(Tok::Pipe)) {
            self.expect(Tok::Pipe)?;
            branches.push(self.parse_sequence()?);
        }
        Ok(if branches.len() == 1 {
            branches.pop().unwrap()
        } else {
            PatternExpr::Alternation(branches)
        })
    }

    fn parse_sequence(&mut self) -> Result<PatternExpr, RuleParseError> {
        let mut elements = vec![self.parse_element()?];
        while matches!(self.peek(), Some(Tok::LBrace) | Some(Tok::LParen)) {
            elements.push(self.parse_element()?);
        }
        Ok(if elements.len() == 1 {
            elements.pop().unwrap()
        } else {
            PatternExpr::Sequence(elements)
        })
    }

    fn parse_element(&mut self) -> Result<PatternExpr, RuleParseError> {
        let inner = match self.peek() {
            Some(Tok::LBrace) => PatternExpr::Constraints(self.parse_constraint_group()?),
            Some(Tok::LParen) => {
                self.expect(Tok::LParen)?;
                let inner = self.parse_alternation()?;
                self.expect(Tok::RParen)?;
                inner
            }
            _ => {
                let found = self
                    .peek()
                    .map(|t| t.describe())
                    .unwrap_or_else(|| "end of file".into());
                return err(
                    self.line(),
                    format!("expected constraint group or '(', found {found}"),
                );
            }
        };
        let quant = match self.peek() {
            Some(Tok::Question) => {
                self.expect(Tok::Question)?;
                Some(Quantifier::Optional)
            }
            Some(Tok::Star) => {
                self.expect(Tok::Star)?;
                Some(Quantifier::Star)
            }
            Some(Tok::Plus) => {
                self.expect(Tok::Plus)?;
                Some(Quantifier::Plus)
            }
            _ => None,
        };
        Ok(match quant {
            Some(q) => PatternExpr::Group(Box::new(inner), q),
            None => inner,
        })
    }

    fn parse_constraint_group(&mut self) -> Result<ConstraintGroup, RuleParseError> {
        let open_line = self.expect(Tok::LBrace)?;
        let mut entries = Vec::new();
        loop {
            let (_, annotation_type) = self.ident("annotation type")?;
            let test = if matches!(self.peek(), Some(Tok::Dot)) {
                self.expect(Tok::Dot)?;
                let (_, feature) = self.ident("feature name")?;
                let (op_line, got) = self.next("'==' or '!='")?;
                let op = match got {
                    Tok::EqEq => ConstraintOp::Eq,
                    Tok::Ne => ConstraintOp::Ne,
                    other => {
                        return err(
                            op_line,
                            format!("expected '==' or '!=', found {}", other.describe()),
                        )
                    }
                };
                let value = self.value()?;
                Some(FeatureTest { feature, op, value })
            } else {
                None
            };
            entries.push(Constraint {
                annotation_type,
                test,
            });
            match self.peek() {
                Some(Tok::Comma) => {
                    self.expect(Tok::Comma)?;
                }
                Some(Tok::RBrace) => {
                    self.expect(Tok::RBrace)?;
                    break;
                }
                _ => {
                    let found = self
                        .peek()
                        .map(|t| t.describe())
                        .unwrap_or_else(|| "end of file".into());
                    return err(self.line(), format!("expected ',' or '}}', found {found}"));
                }
            }
        }
        let group = ConstraintGroup { entries };
        if !group.entries.iter().any(Constraint::is_positive) {
            return err(
                open_line,
                "constraint group must contain at least one positive constraint",
            );
        }
        Ok(group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str =
        "Phase:P\nInput: Token\nRule: R\n({Token.kind==word}):l\n-->\n:l.X={rule=R}";

    #[test]
    fn parses_minimal_phase_with_default_control() {
        let phase = parse_rule_file(MINIMAL).unwrap();
        assert_eq!(phase.name, "P");
        assert_eq!(phase.control, ControlMode::Appelt);
        assert_eq!(phase.rules.len(), 1);
        let rule = &phase.rules[0];
        assert_eq!(rule.name, "R");
        assert_eq!(rule.priority, 0);
        assert_eq!(rule.label, "l");
        assert_eq!(rule.action.new_type, "X");
        assert_eq!(rule.action.features.get("rule").unwrap(), "R");
        match &rule.pattern {
            PatternExpr::Constraints(g) => {
                assert_eq!(g.entries.len(), 1);
                assert_eq!(g.entries[0].annotation_type, "Token");
            }
            other => panic!("unexpected pattern {other:?}"),
        }
    }

    #[test]
    fn missing_arrow_is_a_syntax_error_with_line() {
        let src = "Phase:P\nInput: Token\nRule: R\n({Token.kind==word}):l\n:l.X={rule=R}";
        let e = parse_rule_file(src).unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("-->"), "message: {}", e.message);
    }

    #[test]
    fn whitespace_around_equals_is_tolerated() {
        let src = "Phase:P\nInput: Token\nOptions: control =appelt\nRule: R\n({Token.kind ==word}):l\n-->\n:l.X = {rule= R}";
        let phase = parse_rule_file(src).unwrap();
        assert_eq!(phase.control, ControlMode::Appelt);
    }

    #[test]
    fn unknown_and_unsupported_control_modes() {
        let mk = |mode: &str| {
            format!("Phase:P\nInput: Token\nOptions: control = {mode}\nRule: R\n({{Token}}):l\n-->\n:l.X={{}}")
        };
        let e = parse_rule_file(&mk("once")).unwrap_err();
        assert!(e.message.contains("not supported"), "{}", e.message);
        let e = parse_rule_file(&mk("brill")).unwrap_err();
        assert!(e.message.contains("not supported"), "{}", e.message);
        let e = parse_rule_file(&mk("sideways")).unwrap_err();
        assert!(e.message.contains("unknown control mode"), "{}", e.message);
        assert_eq!(e.line, 3);
    }

    #[test]
    fn duplicate_rule_names_are_rejected() {
        let src = "Phase:P\nInput: Token\nRule: R\n({Token}):l\n-->\n:l.X={}\nRule: R\n({Token}):l\n-->\n:l.Y={}";
        let e = parse_rule_file(src).unwrap_err();
        assert!(
            e.message.contains("duplicate rule name 'R'"),
            "{}",
            e.message
        );
    }

    #[test]
    fn empty_input_list_is_rejected() {
        let src = "Phase:P\nInput:\nRule: R\n({Token}):l\n-->\n:l.X={}";
        let e = parse_rule_file(src).unwrap_err();
        assert!(e.message.contains("at least one annotation type"));
    }

    #[test]
    fn mismatched_action_label_is_rejected() {
        let src = "Phase:P\nInput: Token\nRule: R\n({Token}):l\n-->\n:other.X={}";
        let e = parse_rule_file(src).unwrap_err();
        assert!(e.message.contains("does not match"), "{}", e.message);
    }

    #[test]
    fn pure_negative_group_is_rejected() {
        let src = "Phase:P\nInput: Token\nRule: R\n({Lookup.majorType != class}):l\n-->\n:l.X={}";
        let e = parse_rule_file(src).unwrap_err();
        assert!(e.message.contains("positive constraint"), "{}", e.message);
        assert_eq!(e.line, 4);
    }

    #[test]
    fn quantifiers_and_nesting_parse() {
        let src = "Phase:P\nInput: Token\nRule: R\n(({Token.kind==word})* {Token.kind==punctuation}?):l\n-->\n:l.X={}";
        let phase = parse_rule_file(src).unwrap();
        match &phase.rules[0].pattern {
            PatternExpr::Sequence(items) => {
                assert!(matches!(items[0], PatternExpr::Group(_, Quantifier::Star)));
                assert!(matches!(
                    items[1],
                    PatternExpr::Group(_, Quantifier::Optional)
                ));
            }
            other => panic!("unexpected pattern {other:?}"),
        }
    }

    #[test]
    fn comments_are_skipped() {
        let src =
            "// header\nPhase:P /* inline */\nInput: Token\nRule: R\n({Token}):l\n-->\n:l.X={}";
        assert!(parse_rule_file(src).is_ok());
    }

    #[test]
    fn comma_between_groups_is_rejected() {
        let src = "Phase:P\nInput: Token\nRule: R\n({Token},{Token}):l\n-->\n:l.X={}";
        let e = parse_rule_file(src).unwrap_err();
        assert_eq!(e.line, 4);
    }
}
