use std::collections::BTreeMap;

use serde::Serialize;

use crate::model::Logic;

/// Counting proof that no two-valued state exists: each state would make
/// exactly one atom per context true, so summing over contexts counts
/// `context_count` (odd) truths, while every true atom is counted an even
/// number of times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityCertificate {
    pub context_count: usize,
    pub atom_multiplicities: BTreeMap<String, usize>,
}

pub fn parity_obstruction(logic: &Logic) -> Option<ParityCertificate> {
    let context_count = logic.contexts().len();
    if context_count.is_multiple_of(2) {
        return None;
    }
    let multiplicities = logic.multiplicities();
    if multiplicities.values().any(|m| m % 2 != 0) {
        return None;
    }
    Some(ParityCertificate {
        context_count,
        atom_multiplicities: multiplicities.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    })
}
