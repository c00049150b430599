//! Golden corpus: entries with expected values, replayed against the library.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::input::CliError;
use crate::render::lookup;
use crate::report::{self, Outcome};

/// Corpus shipped with the binary.
pub const DEFAULT_CORPUS: &str = include_str!("../data/corpus.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    pub version: u32,
    pub entries: Vec<CorpusEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Theorem,
    Corollary,
    Resolve,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Value printed in a published source.
    Literature,
    /// Instance of a closed formula of the family.
    ClosedForm,
    /// Worked out by hand for this corpus.
    HandComputed,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub value: Value,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub kind: EntryKind,
    pub form: String,
    pub curves: Vec<String>,
    #[serde(default)]
    pub assume_irreducible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<u32>,
    /// Dotted path into the report to expected value.
    #[serde(default)]
    pub expected: BTreeMap<String, Expected>,
    /// Error class the entry must be rejected with, instead of a report.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_error: Option<String>,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diff {
    pub path: String,
    pub expected: Value,
    pub actual: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub status: &'static str,
    pub checked: usize,
    pub diffs: Vec<Diff>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl EntryResult {
    pub fn passed(&self) -> bool {
        self.status == "ok"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub diffs: usize,
    pub entries: Vec<EntryResult>,
}

pub fn parse(text: &str) -> Result<Corpus, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Corpus(e.to_string()))
}

fn evaluate(entry: &CorpusEntry) -> Result<Outcome, CliError> {
    let curve = || {
        entry
            .curves
            .first()
            .map(String::as_str)
            .ok_or_else(|| CliError::Corpus(format!("{}: no curve given", entry.name)))
    };
    match entry.kind {
        EntryKind::Theorem => report::theorem(&entry.form, curve()?, entry.assume_irreducible),
        EntryKind::Corollary => report::corollary_curves(&entry.form, &entry.curves, entry.assume_irreducible),
        EntryKind::Resolve => {
            let steps = entry.max_steps.unwrap_or(gsvbound_core::blowup::DEFAULT_MAX_STEPS);
            report::resolution(&entry.form, curve()?, steps).map(|(_, o)| o)
        }
    }
}

pub fn replay_entry(entry: &CorpusEntry) -> EntryResult {
    let mut result = EntryResult {
        name: entry.name.clone(),
        status: "ok",
        checked: 0,
        diffs: Vec::new(),
        error: None,
    };
    match (evaluate(entry), &entry.expect_error) {
        (Ok(outcome), None) => {
            for (path, exp) in &entry.expected {
                result.checked += 1;
                let actual = lookup(&outcome.value, path).cloned();
                if actual.as_ref() != Some(&exp.value) {
                    result.diffs.push(Diff { path: path.clone(), expected: exp.value.clone(), actual });
                }
            }
            if !result.diffs.is_empty() {
                result.status = "diff";
            }
        }
        (Ok(_), Some(class)) => {
            result.checked = 1;
            result.status = "diff";
            result.diffs.push(Diff { path: "error".into(), expected: json!(class), actual: None });
        }
        (Err(e), Some(class)) => {
            result.checked = 1;
            if e.class() != class {
                result.status = "diff";
                result.diffs.push(Diff {
                    path: "error".into(),
                    expected: json!(class),
                    actual: Some(json!(e.class())),
                });
            }
        }
        (Err(e), None) => {
            result.status = "error";
            result.error = Some(format!("{}: {e}", e.class()));
        }
    }
    result
}

/// Entries whose name contains `filter`, evaluated in parallel, reported in corpus order.
pub fn replay(corpus: &Corpus, filter: Option<&str>) -> Summary {
    let selected: Vec<&CorpusEntry> =
        corpus.entries.iter().filter(|e| filter.is_none_or(|f| e.name.contains(f))).collect();
    let entries: Vec<EntryResult> = selected.par_iter().map(|e| replay_entry(e)).collect();
    let passed = entries.iter().filter(|r| r.passed()).count();
    let diffs = entries.iter().map(|r| r.diffs.len()).sum();
    Summary { total: entries.len(), passed, diffs, entries }
}
