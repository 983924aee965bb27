use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::model::{Incidence, Logic};

/// A noncontextual truth assignment: one bit per atom, in sorted-label
/// order, with exactly one true atom in every context.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoValuedState {
    bits: Vec<bool>,
}

impl TwoValuedState {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        TwoValuedState { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, index: usize) -> bool {
        self.bits[index]
    }

    /// `0`/`1` string in sorted-label column order.
    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

impl Serialize for TwoValuedState {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.bit_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateSpaceReport {
    /// Column order of every state's bits.
    pub labels: Vec<String>,
    pub states: Vec<TwoValuedState>,
    pub count: usize,
    pub empty: bool,
    /// Every atom is true in some state.
    pub unital: bool,
    /// Every pair of distinct atoms is told apart by some state.
    pub separating: bool,
    pub non_maximal_contexts: Vec<String>,
}

impl StateSpaceReport {
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    /// Value of `label` in state `state`.
    pub fn value(&self, state: usize, label: &str) -> Option<bool> {
        Some(self.states.get(state)?.get(self.index_of(label)?))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Value {
    Unknown,
    False,
    True,
}

struct Search<'a> {
    inc: &'a Incidence,
}

impl Search<'_> {
    /// Sets `atom` and propagates: a true atom falsifies its context peers,
    /// a context left with a single undecided atom and no true one makes
    /// that atom true. Returns false on conflict.
    fn assign(&self, values: &mut [Value], atom: usize, value: Value) -> bool {
        let mut queue = vec![(atom, value)];
        while let Some((a, v)) = queue.pop() {
            match values[a] {
                Value::Unknown => values[a] = v,
                current if current == v => continue,
                _ => return false,
            }
            for &ci in &self.inc.atom_contexts[a] {
                let members = &self.inc.contexts[ci];
                if v == Value::True {
                    for &m in members {
                        if m == a {
                            continue;
                        }
                        match values[m] {
                            Value::True => return false,
                            Value::Unknown => queue.push((m, Value::False)),
                            Value::False => {}
                        }
                    }
                } else {
                    let mut open = None;
                    let mut open_count = 0;
                    let mut has_true = false;
                    for &m in members {
                        match values[m] {
                            Value::True => has_true = true,
                            Value::Unknown => {
                                open_count += 1;
                                open = Some(m);
                            }
                            Value::False => {}
                        }
                    }
                    if !has_true {
                        match open_count {
                            0 => return false,
                            1 => queue.push((open.expect("one open member"), Value::True)),
                            _ => {}
                        }
                    }
                }
            }
        }
        true
    }

    fn first_open_context(&self, values: &[Value]) -> Option<usize> {
        self.inc.contexts.iter().position(|members| !members.iter().any(|&m| values[m] == Value::True))
    }

    fn branches(&self, values: &[Value], ci: usize) -> Vec<Vec<Value>> {
        self.inc.contexts[ci]
            .iter()
            .filter(|&&m| values[m] == Value::Unknown)
            .filter_map(|&m| {
                let mut next = values.to_vec();
                self.assign(&mut next, m, Value::True).then_some(next)
            })
            .collect()
    }

    fn dfs(&self, values: Vec<Value>, out: &mut Vec<TwoValuedState>) {
        match self.first_open_context(&values) {
            None => out.push(TwoValuedState::from_bits(values.iter().map(|v| *v == Value::True).collect())),
            Some(ci) => {
                for next in self.branches(&values, ci) {
                    self.dfs(next, out);
                }
            }
        }
    }
}

/// All two-valued states of `logic`, sorted by bit string.
///
/// Depth-first over contexts in declaration order, branching on the
/// undecided members of the first context that has no true atom yet.
/// Subtrees below the first branching point run in parallel; the result is
/// sorted afterwards, so the output does not depend on scheduling.
pub fn enumerate_states(logic: &Logic) -> StateSpaceReport {
    let inc = logic.incidence();
    let search = Search { inc: &inc };
    let root = vec![Value::Unknown; inc.labels.len()];
    let mut states: Vec<TwoValuedState> = match search.first_open_context(&root) {
        None => Vec::new(),
        Some(ci) => search
            .branches(&root, ci)
            .into_par_iter()
            .flat_map_iter(|start| {
                let mut out = Vec::new();
                search.dfs(start, &mut out);
                out
            })
            .collect(),
    };
    states.sort_unstable();
    summarize(logic, inc.labels, states)
}

fn summarize(logic: &Logic, labels: Vec<String>, states: Vec<TwoValuedState>) -> StateSpaceReport {
    let n = labels.len();
    let unital = !states.is_empty() && (0..n).all(|a| states.iter().any(|s| s.get(a)));
    let separating = !states.is_empty() && {
        let mut columns: Vec<Vec<bool>> = (0..n).map(|a| states.iter().map(|s| s.get(a)).collect()).collect();
        columns.sort_unstable();
        columns.windows(2).all(|w| w[0] != w[1])
    };
    StateSpaceReport {
        labels,
        count: states.len(),
        empty: states.is_empty(),
        states,
        unital,
        separating,
        non_maximal_contexts: logic.non_maximal_contexts().into_iter().map(String::from).collect(),
    }
}
