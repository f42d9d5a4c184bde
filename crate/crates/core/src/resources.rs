//! Loading of the four resource kinds a pipeline run needs: lexicon,
//! gazetteer lists, rule phases, and the determiner list.
//!
//! Expected layout under the resource root:
//!
//! ```text
//! resources/
//!   lexicon.tsv          word<TAB>TAG entries, #suffix / #default lines
//!   determiners.txt      one determiner per line
//!   gazetteer/
//!     lists.def          file<TAB>concept<TAB>policies[<TAB>minorType]
//!     *.lst              one phrase per line
//!   rules/
//!     phases.def         rule file names, one per line, in application order
//!     *.jape
//! ```
//!
//! Missing resources are a startup error, not a runtime surprise.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::lingpipe::{CasePolicy, GazetteerList, Lexicon};
use crate::rule::{parse_rule_file, RuleParseError, RulePhase};

#[derive(Debug, Error)]
pub enum ResourceError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Malformed {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    RuleSyntax {
        path: PathBuf,
        source: RuleParseError,
    },
    #[error("missing resource: {0}")]
    Missing(PathBuf),
}

impl ResourceError {
    /// True for rule-file syntax errors, which callers report differently
    /// from plain input errors.
    pub fn is_rule_syntax(&self) -> bool {
        matches!(self, ResourceError::RuleSyntax { .. })
    }
}

/// Everything a pipeline run needs, loaded once and shared.
#[derive(Debug, Clone)]
pub struct Resources {
    pub lexicon: Lexicon,
    pub gazetteers: Vec<GazetteerList>,
    /// Phases in application order.
    pub phases: Vec<RulePhase>,
    pub determiners: BTreeSet<String>,
}

fn read(path: &Path) -> Result<String, ResourceError> {
    if !path.exists() {
        return Err(ResourceError::Missing(path.to_path_buf()));
    }
    std::fs::read_to_string(path).map_err(|source| ResourceError::Io {
        path: path.to_path_buf(),
        source,
    })
}

impl Resources {
    pub fn load(root: &Path) -> Result<Self, ResourceError> {
        let lexicon_path = root.join("lexicon.tsv");
        let lexicon = Lexicon::parse(&read(&lexicon_path)?).map_err(|e| match e {
            crate::lingpipe::LexiconError::Parse { line, message } => ResourceError::Malformed {
                path: lexicon_path.clone(),
                line,
                message,
            },
        })?;

        let determiners = read(&root.join("determiners.txt"))?
            .lines()
            .map(|l| l.trim().to_lowercase())
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();

        let gazetteers = load_gazetteers(&root.join("gazetteer"))?;
        let phases = load_phases(&root.join("rules"))?;

        Ok(Resources {
            lexicon,
            gazetteers,
            phases,
            determiners,
        })
    }
}

fn load_gazetteers(dir: &Path) -> Result<Vec<GazetteerList>, ResourceError> {
    let index_path = dir.join("lists.def");
    let index = read(&index_path)?;
    let mut lists = Vec::new();
    for (idx, raw) in index.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() < 3 {
            return Err(ResourceError::Malformed {
                path: index_path.clone(),
                line: line_no,
                message: "expected file<TAB>concept<TAB>policies[<TAB>minorType]".into(),
            });
        }
        let (file, concept, policies) = (fields[0], fields[1], fields[2]);
        if concept.is_empty() {
            return Err(ResourceError::Malformed {
                path: index_path.clone(),
                line: line_no,
                message: "empty concept name".into(),
            });
        }
        let minor_type = fields
            .get(3)
            .filter(|s| !s.is_empty())
            .map(|s| s.to_string());
        let policies: Vec<CasePolicy> = if policies == "all" {
            CasePolicy::ALL.to_vec()
        } else {
            policies
                .split(',')
                .map(|p| {
                    CasePolicy::parse(p.trim()).ok_or_else(|| ResourceError::Malformed {
                        path: index_path.clone(),
                        line: line_no,
                        message: format!("unknown case policy {p:?}"),
                    })
                })
                .collect::<Result<_, _>>()?
        };
        let phrases = GazetteerList::parse_phrases(&read(&dir.join(file))?);
        for policy in policies {
            lists.push(GazetteerList::new(
                concept,
                policy,
                phrases.iter().cloned(),
                minor_type.clone(),
            ));
        }
    }
    Ok(lists)
}

fn load_phases(dir: &Path) -> Result<Vec<RulePhase>, ResourceError> {
    let manifest_path = dir.join("phases.def");
    let manifest = read(&manifest_path)?;
    let mut phases = Vec::new();
    for raw in manifest.lines() {
        let name = raw.trim();
        if name.is_empty() || name.starts_with('#') {
            continue;
        }
        let path = dir.join(name);
        let source = read(&path)?;
        let phase = parse_rule_file(&source)
            .map_err(|source| ResourceError::RuleSyntax { path, source })?;
        phases.push(phase);
    }
    if phases.is_empty() {
        return Err(ResourceError::Malformed {
            path: manifest_path,
            line: 1,
            message: "phase manifest lists no rule files".into(),
        });
    }
    Ok(phases)
}
