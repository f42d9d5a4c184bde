//! Corpus evaluation: exact-span, exact-type comparison of pipeline output
//! against hand-authored gold files, with precision/recall/F1 per type and
//! micro-averaged.
//!
//! Gold files are TSV, one annotation per line: `type<TAB>start<TAB>end`,
//! offsets in Unicode scalar values. `#` lines are comments.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use req2uml_core::types;

/// Span sets per annotation type for one document.
pub type SpanSets = BTreeMap<String, BTreeSet<(usize, usize)>>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Counts {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Counts {
    /// Precision and recall define 0/0 as 1.0; F1 of two zeros is 0.
    pub fn from_raw(tp: usize, fp: usize, fn_: usize) -> Self {
        let ratio = |num: usize, den: usize| {
            if den == 0 {
                1.0
            } else {
                num as f64 / den as f64
            }
        };
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Counts {
            tp,
            fp,
            fn_,
            precision,
            recall,
            f1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub per_type: BTreeMap<String, Counts>,
    /// Micro-average across the three UML annotation types.
    pub micro: Counts,
    pub evaluated: usize,
    /// Inputs that had no gold counterpart.
    pub skipped: Vec<String>,
}

impl EvalReport {
    /// Micro-average over a subset of the annotation types.
    pub fn micro_over(&self, types: &[&str]) -> Counts {
        let mut tp = 0;
        let mut fp = 0;
        let mut fn_ = 0;
        for ty in types {
            if let Some(c) = self.per_type.get(*ty) {
                tp += c.tp;
                fp += c.fp;
                fn_ += c.fn_;
            }
        }
        Counts::from_raw(tp, fp, fn_)
    }

    /// Aligned text table, one row per type plus the micro row.
    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<12} {:>5} {:>5} {:>5} {:>10} {:>10} {:>10}\n",
            "type", "TP", "FP", "FN", "precision", "recall", "F1"
        ));
        for (ty, c) in &self.per_type {
            out.push_str(&format!(
                "{:<12} {:>5} {:>5} {:>5} {:>10.4} {:>10.4} {:>10.4}\n",
                ty, c.tp, c.fp, c.fn_, c.precision, c.recall, c.f1
            ));
        }
        let m = &self.micro;
        out.push_str(&format!(
            "{:<12} {:>5} {:>5} {:>5} {:>10.4} {:>10.4} {:>10.4}\n",
            "micro", m.tp, m.fp, m.fn_, m.precision, m.recall, m.f1
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Parses a gold TSV into span sets; errors carry the 1-based line number.
pub fn parse_gold(src: &str) -> Result<SpanSets, String> {
    let mut sets: SpanSets = SpanSets::new();
    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(format!("line {line_no}: expected type<TAB>start<TAB>end"));
        }
        let start: usize = fields[1]
            .trim()
            .parse()
            .map_err(|_| format!("line {line_no}: bad start offset {:?}", fields[1]))?;
        let end: usize = fields[2]
            .trim()
            .parse()
            .map_err(|_| format!("line {line_no}: bad end offset {:?}", fields[2]))?;
        if start > end {
            return Err(format!("line {line_no}: start {start} after end {end}"));
        }
        sets.entry(fields[0].trim().to_string())
            .or_default()
            .insert((start, end));
    }
    Ok(sets)
}

/// Accumulates per-type confusion counts over (gold, system) pairs.
#[derive(Debug, Default)]
pub struct Scorer {
    raw: BTreeMap<String, (usize, usize, usize)>,
    evaluated: usize,
    skipped: Vec<String>,
}

impl Scorer {
    pub fn new() -> Self {
        let mut raw = BTreeMap::new();
        for ty in types::UML_TYPES {
            raw.insert(ty.to_string(), (0, 0, 0));
        }
        Scorer {
            raw,
            evaluated: 0,
            skipped: Vec::new(),
        }
    }

    pub fn skip(&mut self, input: String) {
        self.skipped.push(input);
    }

    pub fn add_document(&mut self, gold: &SpanSets, system: &SpanSets) {
        self.evaluated += 1;
        let empty = BTreeSet::new();
        for ty in types::UML_TYPES {
            let g = gold.get(ty).unwrap_or(&empty);
            let s = system.get(ty).unwrap_or(&empty);
            let tp = g.intersection(s).count();
            let entry = self.raw.get_mut(ty).expect("seeded");
            entry.0 += tp;
            entry.1 += s.len() - tp;
            entry.2 += g.len() - tp;
        }
    }

    pub fn finish(self) -> EvalReport {
        let per_type: BTreeMap<String, Counts> = self
            .raw
            .iter()
            .map(|(ty, &(tp, fp, fn_))| (ty.clone(), Counts::from_raw(tp, fp, fn_)))
            .collect();
        let (tp, fp, fn_) = self.raw.values().fold((0, 0, 0), |acc, &(tp, fp, fn_)| {
            (acc.0 + tp, acc.1 + fp, acc.2 + fn_)
        });
        EvalReport {
            per_type,
            micro: Counts::from_raw(tp, fp, fn_),
            evaluated: self.evaluated,
            skipped: self.skipped,
        }
    }
}
