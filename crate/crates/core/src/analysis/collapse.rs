use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::model::Logic;

/// Two atoms that any realization in the declared dimension puts on the
/// same ray.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Identification {
    /// Sorted label pair.
    pub atoms: (String, String),
    /// `d - 1` mutually orthogonal atoms both members are orthogonal to.
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CollapseReport {
    pub identifications: Vec<Identification>,
    /// Final classes of atoms forced onto a common ray (size ≥ 2).
    pub classes: Vec<Vec<String>>,
    /// Classes that ended up orthogonal to themselves; such a logic has no
    /// realization in the declared dimension at all.
    pub self_orthogonal: Vec<Vec<String>>,
}

impl CollapseReport {
    pub fn identified_pairs(&self) -> BTreeSet<(String, String)> {
        self.identifications.iter().map(|i| i.atoms.clone()).collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Keeps the smaller index as root, so a class is named by its
    /// alphabetically first atom.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Extends `clique` (sorted ascending) by higher-numbered vertices until it
/// has `size` members, reporting each completed clique.
fn cliques_of_size(
    adj: &BTreeMap<usize, BTreeSet<usize>>,
    size: usize,
    clique: &mut Vec<usize>,
    candidates: &BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if clique.len() == size {
        out.push(clique.clone());
        return;
    }
    for &v in candidates {
        let next: BTreeSet<usize> = candidates.iter().copied().filter(|&w| w > v && adj[&v].contains(&w)).collect();
        if clique.len() + 1 + next.len() < size {
            continue;
        }
        clique.push(v);
        cliques_of_size(adj, size, clique, &next, out);
        clique.pop();
    }
}

/// Closes the orthogonality relation of `logic` under the rule that in
/// dimension `d` a set of `d - 1` mutually orthogonal rays has a unique
/// orthogonal complement: any two atoms orthogonal to all of such a set
/// must coincide. Identified atoms are merged and the rule reapplied until
/// nothing changes.
///
/// Sound but incomplete; it does not decide realizability in general.
pub fn infer_collapses(logic: &Logic) -> CollapseReport {
    let inc = logic.incidence();
    let n = inc.labels.len();
    let d = logic.dimension();
    let orth = inc.orthogonality();
    let mut uf = UnionFind::new(n);
    let mut identifications = Vec::new();

    loop {
        // class-level orthogonality graph
        let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for a in 0..n {
            adj.entry(uf.find(a)).or_default();
        }
        for (a, neighbours) in orth.iter().enumerate() {
            for &b in neighbours {
                let (ra, rb) = (uf.find(a), uf.find(b));
                if ra != rb {
                    adj.get_mut(&ra).expect("class").insert(rb);
                }
            }
        }

        let mut witnesses = Vec::new();
        let all: BTreeSet<usize> = adj.keys().copied().collect();
        cliques_of_size(&adj, d - 1, &mut Vec::new(), &all, &mut witnesses);

        let mut pending = Vec::new();
        for w in &witnesses {
            let common: Vec<usize> =
                adj.keys().copied().filter(|c| !w.contains(c) && w.iter().all(|m| adj[m].contains(c))).collect();
            for pair in common.windows(2) {
                pending.push((pair[0], pair[1], w.clone()));
            }
        }

        let mut changed = false;
        for (a, b, w) in pending {
            if uf.find(a) == uf.find(b) {
                continue;
            }
            let (la, lb) = (inc.labels[a].clone(), inc.labels[b].clone());
            let atoms = if la < lb { (la, lb) } else { (lb, la) };
            let witness = w.iter().map(|&m| inc.labels[m].clone()).collect();
            identifications.push(Identification { atoms, witness });
            uf.union(a, b);
            changed = true;
        }
        if !changed {
            break;
        }
    }

    let root: Vec<usize> = (0..n).map(|a| uf.find(a)).collect();
    let mut members: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (r, label) in root.iter().zip(&inc.labels) {
        members.entry(*r).or_default().push(label.clone());
    }
    let mut self_orthogonal = Vec::new();
    for (&r, labels) in &members {
        let touches_itself = (0..n).filter(|&a| root[a] == r).any(|a| orth[a].iter().any(|&b| root[b] == r));
        if touches_itself {
            self_orthogonal.push(labels.clone());
        }
    }
    let classes = members.into_values().filter(|c| c.len() > 1).collect();
    identifications.sort();
    CollapseReport { identifications, classes, self_orthogonal }
}
