use std::collections::BTreeSet;

use super::AnalysisError;
use crate::model::{inner_product, rays_collinear, valid_label, Atom, Context, Logic, ModelError, Ray};

/// Deterministic names for the `index`-th of `total` generated items:
/// `a`..`z` while they suffice, `c1`, `c2`, ... beyond.
pub fn sequence_label(index: usize, total: usize) -> String {
    if total <= 26 {
        char::from(b'a' + index as u8).to_string()
    } else {
        format!("c{}", index + 1)
    }
}

fn member_label(context: &str, j: usize, numeric: bool) -> String {
    if numeric {
        format!("{context}_{j}")
    } else {
        format!("{context}{j}")
    }
}

/// Abstract `d`-star: a center context `a` of `d` atoms, each of which also
/// belongs to one outer context completed by `d - 1` fresh atoms.
pub fn make_star(d: usize) -> Result<Logic, AnalysisError> {
    if d < 3 {
        return Err(AnalysisError::StarDimension(d));
    }
    let total = d + 1;
    let numeric = total > 26;
    let center = sequence_label(0, total);
    let center_atoms: Vec<String> = (1..=d).map(|j| member_label(&center, j, numeric)).collect();

    let mut atoms: Vec<Atom> = center_atoms.iter().map(Atom::abstract_atom).collect();
    let mut contexts = vec![Context::new(center.clone(), center_atoms.iter().cloned())];
    for (k, anchor) in center_atoms.iter().enumerate() {
        let label = sequence_label(k + 1, total);
        let fresh: Vec<String> = (1..d).map(|j| member_label(&label, j, numeric)).collect();
        atoms.extend(fresh.iter().map(Atom::abstract_atom));
        let mut members = vec![anchor.clone()];
        members.extend(fresh);
        contexts.push(Context::new(label, members));
    }
    Ok(Logic::new(d, atoms, contexts)?)
}

/// Builds the logic whose contexts are all maximal sets (size ≥ 2) of
/// mutually orthogonal vectors among `vectors`.
///
/// Contexts are listed in lexicographic order of their sorted member
/// labels and named by [`sequence_label`].
pub fn complete_contexts(vectors: &[(String, Ray)], dim: usize) -> Result<Logic, AnalysisError> {
    if dim < 3 {
        return Err(ModelError::InvalidDimension(dim).into());
    }
    let mut sorted: Vec<&(String, Ray)> = vectors.iter().collect();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    for (label, ray) in &sorted {
        if !valid_label(label) {
            return Err(ModelError::InvalidLabel(label.clone()).into());
        }
        if ray.len() != dim {
            return Err(ModelError::RayDimension { atom: label.clone(), expected: dim, found: ray.len() }.into());
        }
    }
    for w in sorted.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(ModelError::DuplicateAtom(w[0].0.clone()).into());
        }
    }
    let n = sorted.len();
    let mut adj = vec![BTreeSet::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if rays_collinear(&sorted[i].1, &sorted[j].1)? {
                return Err(AnalysisError::CollinearInputs(sorted[i].0.clone(), sorted[j].0.clone()));
            }
            if inner_product(&sorted[i].1, &sorted[j].1)?.is_zero() {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    if let Some(i) = (0..n).find(|&i| adj[i].is_empty()) {
        return Err(AnalysisError::IsolatedVector(sorted[i].0.clone()));
    }

    let mut cliques = Vec::new();
    bron_kerbosch(&adj, Vec::new(), (0..n).collect(), BTreeSet::new(), &mut cliques);
    for c in &mut cliques {
        c.sort_unstable();
    }
    // indices follow sorted labels, so index order is label order
    cliques.sort();

    let total = cliques.len();
    let atoms = sorted.iter().map(|(l, r)| Atom::new(l.clone(), Some(r.clone()))).collect();
    let contexts = cliques
        .iter()
        .enumerate()
        .map(|(k, c)| Context::new(sequence_label(k, total), c.iter().map(|&i| sorted[i].0.clone())))
        .collect();
    Ok(Logic::new(dim, atoms, contexts)?)
}

/// Maximal cliques with pivoting; `out` receives cliques of size ≥ 2.
fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    r: Vec<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        if r.len() >= 2 {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| p.iter().filter(|v| adj[u].contains(v)).count())
        .expect("p or x nonempty");
    let candidates: Vec<usize> = p.iter().copied().filter(|v| !adj[pivot].contains(v)).collect();
    for v in candidates {
        let mut next = r.clone();
        next.push(v);
        let np = p.iter().copied().filter(|w| adj[v].contains(w)).collect();
        let nx = x.iter().copied().filter(|w| adj[v].contains(w)).collect();
        bron_kerbosch(adj, next, np, nx, out);
        p.remove(&v);
        x.insert(v);
    }
}
