//! The closed POS tagset and the word-form lexicon behind [`pos_tag`].
//!
//! [`pos_tag`]: super::pos_tag

use std::collections::HashMap;

use thiserror::Error;

/// Closed tagset. The matcher treats `NN`/`NNP`/`NNS` as one equivalence
/// class and `V`/`VB` as another when comparing `Token.category` values; see
/// [`categories_equivalent`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PosTag {
    Prp,
    Det,
    Nn,
    Nnp,
    Nns,
    V,
    Vb,
    Adj,
    Num,
    Punct,
    Other,
}

impl PosTag {
    pub const ALL: [PosTag; 11] = [
        PosTag::Prp,
        PosTag::Det,
        PosTag::Nn,
        PosTag::Nnp,
        PosTag::Nns,
        PosTag::V,
        PosTag::Vb,
        PosTag::Adj,
        PosTag::Num,
        PosTag::Punct,
        PosTag::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Prp => "PRP",
            PosTag::Det => "DET",
            PosTag::Nn => "NN",
            PosTag::Nnp => "NNP",
            PosTag::Nns => "NNS",
            PosTag::V => "V",
            PosTag::Vb => "VB",
            PosTag::Adj => "ADJ",
            PosTag::Num => "NUM",
            PosTag::Punct => "PUNCT",
            PosTag::Other => "OTHER",
        }
    }

    pub fn parse(s: &str) -> Option<PosTag> {
        Self::ALL.into_iter().find(|t| t.as_str() == s)
    }
}

impl std::fmt::Display for PosTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn is_noun_category(category: &str) -> bool {
    matches!(category, "NN" | "NNP" | "NNS")
}

pub fn is_verb_category(category: &str) -> bool {
    matches!(category, "V" | "VB")
}

/// Equality modulo the noun and verb equivalence classes. Applied only to
/// the `category` feature of `Token` annotations.
pub fn categories_equivalent(a: &str, b: &str) -> bool {
    a == b
        || (is_noun_category(a) && is_noun_category(b))
        || (is_verb_category(a) && is_verb_category(b))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Word-form → tag lookup with ordered suffix fallback rules.
///
/// Lookup order: exact lowercased form, then suffix rules in declaration
/// order (first match wins), then the default tag.
#[derive(Debug, Clone)]
pub struct Lexicon {
    entries: HashMap<String, PosTag>,
    suffix_rules: Vec<(String, PosTag)>,
    default_tag: PosTag,
}

impl Lexicon {
    pub fn new(default_tag: PosTag) -> Self {
        Lexicon {
            entries: HashMap::new(),
            suffix_rules: Vec::new(),
            default_tag,
        }
    }

    pub fn insert(&mut self, word: &str, tag: PosTag) {
        self.entries.insert(word.to_lowercase(), tag);
    }

    pub fn add_suffix_rule(&mut self, suffix: &str, tag: PosTag) {
        self.suffix_rules.push((suffix.to_lowercase(), tag));
    }

    pub fn default_tag(&self) -> PosTag {
        self.default_tag
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    pub fn tag_for(&self, word: &str) -> PosTag {
        let lowered = word.to_lowercase();
        if let Some(tag) = self.entries.get(&lowered) {
            return *tag;
        }
        for (suffix, tag) in &self.suffix_rules {
            if lowered.ends_with(suffix.as_str()) {
                return *tag;
            }
        }
        self.default_tag
    }

    /// Parses the lexicon file format: one `word<TAB>TAG` entry per line,
    /// `#suffix<TAB>SUF<TAB>TAG` for suffix rules, `#default<TAB>TAG` for the
    /// fallback tag. Other `#` lines are comments.
    pub fn parse(src: &str) -> Result<Self, LexiconError> {
        let mut lex = Lexicon::new(PosTag::Other);
        for (idx, raw) in src.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            match fields[0] {
                "#default" => {
                    let tag = parse_tag(&fields, 1, line_no)?;
                    lex.default_tag = tag;
                }
                "#suffix" => {
                    if fields.len() < 3 {
                        return Err(LexiconError::Parse {
                            line: line_no,
                            message: "expected #suffix<TAB>SUFFIX<TAB>TAG".into(),
                        });
                    }
                    let tag = parse_tag(&fields, 2, line_no)?;
                    lex.add_suffix_rule(fields[1], tag);
                }
                word if word.starts_with('#') => continue,
                word => {
                    if word.is_empty() {
                        return Err(LexiconError::Parse {
                            line: line_no,
                            message: "empty word form".into(),
                        });
                    }
                    let tag = parse_tag(&fields, 1, line_no)?;
                    lex.insert(word, tag);
                }
            }
        }
        Ok(lex)
    }
}

fn parse_tag(fields: &[&str], idx: usize, line: usize) -> Result<PosTag, LexiconError> {
    let raw = fields.get(idx).map(|s| s.trim()).unwrap_or("");
    PosTag::parse(raw).ok_or_else(|| LexiconError::Parse {
        line,
        message: format!("unknown POS tag {raw:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_order_exact_then_suffix_then_default() {
        let mut lex = Lexicon::new(PosTag::Nn);
        lex.insert("passe", PosTag::Vb);
        lex.add_suffix_rule("tion", PosTag::Nn);
        lex.add_suffix_rule("er", PosTag::Vb);
        assert_eq!(lex.tag_for("Passe"), PosTag::Vb);
        assert_eq!(lex.tag_for("commander"), PosTag::Vb);
        assert_eq!(lex.tag_for("zorglub"), PosTag::Nn);
    }

    #[test]
    fn first_suffix_rule_wins() {
        let mut lex = Lexicon::new(PosTag::Other);
        lex.add_suffix_rule("e", PosTag::Nn);
        lex.add_suffix_rule("ne", PosTag::Vb);
        assert_eq!(lex.tag_for("chaine"), PosTag::Nn);
    }

    #[test]
    fn parses_file_format() {
        let src = "# comment\n#default\tNN\n#suffix\ter\tVB\nle\tPRP\ncommande\tNN\n";
        let lex = Lexicon::parse(src).unwrap();
        assert_eq!(lex.default_tag(), PosTag::Nn);
        assert_eq!(lex.tag_for("LE"), PosTag::Prp);
        assert_eq!(lex.tag_for("manger"), PosTag::Vb);
        assert_eq!(lex.tag_for("inconnu"), PosTag::Nn);
    }

    #[test]
    fn rejects_unknown_tag() {
        let err = Lexicon::parse("mot\tXYZ\n").unwrap_err();
        assert_eq!(
            err,
            LexiconError::Parse {
                line: 1,
                message: "unknown POS tag \"XYZ\"".into()
            }
        );
    }

    #[test]
    fn category_equivalence_is_scoped() {
        assert!(categories_equivalent("NN", "NNP"));
        assert!(categories_equivalent("NNS", "NN"));
        assert!(categories_equivalent("V", "VB"));
        assert!(!categories_equivalent("NN", "V"));
        assert!(!categories_equivalent("PRP", "DET"));
        assert!(categories_equivalent("PRP", "PRP"));
    }
}
