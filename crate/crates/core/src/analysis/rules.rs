use std::collections::BTreeSet;

use serde::Serialize;

use super::{AnalysisError, StateSpaceReport};
use crate::model::Logic;

/// Implications holding in every two-valued state, over atom labels.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RuleSet {
    /// `(x, y)`: whenever `x` is true, `y` is false.
    pub one_zero: BTreeSet<(String, String)>,
    /// `(x, y)`: whenever `x` is true, `y` is true. Contains `(x, x)` for
    /// every atom that is ever true.
    pub one_one: BTreeSet<(String, String)>,
    /// `{x, y}` (stored sorted, `x < y`): equal values in every state.
    pub equivalences: BTreeSet<(String, String)>,
    /// Atoms false in every state; implications from them are vacuous.
    pub never_true: BTreeSet<String>,
}

impl RuleSet {
    pub fn is_one_zero(&self, x: &str, y: &str) -> bool {
        self.one_zero.contains(&(x.to_string(), y.to_string()))
    }

    pub fn is_one_one(&self, x: &str, y: &str) -> bool {
        self.one_one.contains(&(x.to_string(), y.to_string()))
    }

    pub fn are_equivalent(&self, x: &str, y: &str) -> bool {
        let key = if x <= y { (x, y) } else { (y, x) };
        self.equivalences.contains(&(key.0.to_string(), key.1.to_string()))
    }
}

/// Outcome of rule derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Derivation {
    Rules(RuleSet),
    /// No two-valued state exists, so every implication holds vacuously.
    Explosion,
}

impl Derivation {
    pub fn rules(&self) -> Option<&RuleSet> {
        match self {
            Derivation::Rules(r) => Some(r),
            Derivation::Explosion => None,
        }
    }
}

/// Checks every ordered atom pair against the state list.
pub fn derive_rules(report: &StateSpaceReport, logic: &Logic) -> Result<Derivation, AnalysisError> {
    if report.labels.iter().map(String::as_str).ne(logic.sorted_labels()) {
        return Err(AnalysisError::ReportMismatch);
    }
    if report.empty {
        return Ok(Derivation::Explosion);
    }
    let n = report.labels.len();
    let column = |a: usize| report.states.iter().map(move |s| s.get(a));
    let sometimes_true: Vec<bool> = (0..n).map(|a| column(a).any(|v| v)).collect();

    let mut rules = RuleSet::default();
    for (x, lx) in report.labels.iter().enumerate() {
        if !sometimes_true[x] {
            rules.never_true.insert(lx.clone());
            continue;
        }
        for y in 0..n {
            let ly = &report.labels[y];
            let when_x: Vec<bool> = report.states.iter().filter(|s| s.get(x)).map(|s| s.get(y)).collect();
            if when_x.iter().all(|&v| !v) {
                rules.one_zero.insert((lx.clone(), ly.clone()));
            }
            if when_x.iter().all(|&v| v) {
                rules.one_one.insert((lx.clone(), ly.clone()));
            }
            if x < y && column(x).eq(column(y)) {
                rules.equivalences.insert((lx.clone(), ly.clone()));
            }
        }
    }
    Ok(Derivation::Rules(rules))
}
