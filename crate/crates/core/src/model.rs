//! Rays, atoms, contexts and the logics pasted from them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::quad::Quad;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("dimension must be at least 3, got {0}")]
    InvalidDimension(usize),
    #[error("a ray needs at least one nonzero component")]
    ZeroRay,
    #[error("vector lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("atom `{0}` declared twice")]
    DuplicateAtom(String),
    #[error("ray of atom `{atom}` has {found} components, dimension is {expected}")]
    RayDimension { atom: String, expected: usize, found: usize },
    #[error("context `{0}` declared twice")]
    DuplicateContextLabel(String),
    #[error("context `{context}` names undeclared atom `{atom}`")]
    UndeclaredMember { context: String, atom: String },
    #[error("context `{context}` lists atom `{atom}` twice")]
    DuplicateMember { context: String, atom: String },
    #[error("context `{context}` has {size} member(s); at least 2 are required")]
    ContextTooSmall { context: String, size: usize },
    #[error("context `{context}` has {size} members but the dimension is {dimension}")]
    ContextTooLarge { context: String, size: usize, dimension: usize },
    #[error("contexts `{context}` and `{other}` have the same members")]
    DuplicateContext { context: String, other: String },
    #[error("atom `{0}` belongs to no context")]
    UnusedAtom(String),
    #[error("no atom labeled `{0}`")]
    UnknownAtom(String),
}

/// A nonzero real vector standing for the one-dimensional subspace it spans.
/// Stored unnormalized.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ray {
    components: Vec<Quad>,
}

impl Ray {
    pub fn new(components: Vec<Quad>) -> Result<Self, ModelError> {
        if components.iter().all(Quad::is_zero) {
            return Err(ModelError::ZeroRay);
        }
        Ok(Ray { components })
    }

    /// Integer coordinates, mostly for tests and generators.
    pub fn from_ints(coords: &[i64]) -> Result<Self, ModelError> {
        Ray::new(coords.iter().map(|&c| Quad::integer(c)).collect())
    }

    pub fn components(&self) -> &[Quad] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Multiplies every component by `factor`; fails for a zero factor.
    pub fn scaled(&self, factor: &Quad) -> Result<Ray, ModelError> {
        Ray::new(self.components.iter().map(|c| c * factor).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.components.iter().map(Quad::to_f64).collect()
    }
}

/// Exact `Σ rᵢ·sᵢ` (real rays, no conjugation).
pub fn inner_product(r: &Ray, s: &Ray) -> Result<Quad, ModelError> {
    if r.len() != s.len() {
        return Err(ModelError::LengthMismatch(r.len(), s.len()));
    }
    Ok(r.components.iter().zip(&s.components).fold(Quad::zero(), |acc, (a, b)| acc + a * b))
}

/// True iff every 2×2 minor of the stacked matrix `[r; s]` vanishes.
pub fn rays_collinear(r: &Ray, s: &Ray) -> Result<bool, ModelError> {
    if r.len() != s.len() {
        return Err(ModelError::LengthMismatch(r.len(), s.len()));
    }
    let (r, s) = (&r.components, &s.components);
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            if &r[i] * &s[j] != &r[j] * &s[i] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(crate) fn valid_label(label: &str) -> bool {
    let mut chars = label.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '.' | '-'))
}

/// An elementary proposition, optionally realized by a ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub label: String,
    pub ray: Option<Ray>,
}

impl Atom {
    pub fn new(label: impl Into<String>, ray: Option<Ray>) -> Self {
        Atom { label: label.into(), ray }
    }

    pub fn abstract_atom(label: impl Into<String>) -> Self {
        Atom::new(label, None)
    }
}

/// A block of mutually exclusive, jointly exhaustive atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    pub label: String,
    pub members: Vec<String>,
}

impl Context {
    pub fn new<S: Into<String>>(label: impl Into<String>, members: impl IntoIterator<Item = S>) -> Self {
        Context { label: label.into(), members: members.into_iter().map(Into::into).collect() }
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.members.iter().any(|m| m == atom)
    }
}

/// A finite pasting of contexts in a fixed Hilbert-space dimension.
///
/// Construction checks the structural invariants only. Whether the rays
/// actually realize the logic (orthogonality inside contexts, distinct
/// atoms on distinct rays) is a question for
/// [`verify_realization`](crate::analysis::verify_realization).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Logic {
    dimension: usize,
    atoms: Vec<Atom>,
    contexts: Vec<Context>,
}

impl Logic {
    pub fn new(dimension: usize, atoms: Vec<Atom>, contexts: Vec<Context>) -> Result<Self, ModelError> {
        if dimension < 3 {
            return Err(ModelError::InvalidDimension(dimension));
        }
        let mut seen = HashMap::new();
        for (i, atom) in atoms.iter().enumerate() {
            if !valid_label(&atom.label) {
                return Err(ModelError::InvalidLabel(atom.label.clone()));
            }
            if seen.insert(atom.label.as_str(), i).is_some() {
                return Err(ModelError::DuplicateAtom(atom.label.clone()));
            }
            if let Some(ray) = &atom.ray {
                if ray.len() != dimension {
                    return Err(ModelError::RayDimension {
                        atom: atom.label.clone(),
                        expected: dimension,
                        found: ray.len(),
                    });
                }
            }
        }

        let mut context_labels = BTreeSet::new();
        let mut member_sets: BTreeMap<BTreeSet<&str>, &str> = BTreeMap::new();
        let mut used = BTreeSet::new();
        for ctx in &contexts {
            if !valid_label(&ctx.label) {
                return Err(ModelError::InvalidLabel(ctx.label.clone()));
            }
            if !context_labels.insert(ctx.label.as_str()) {
                return Err(ModelError::DuplicateContextLabel(ctx.label.clone()));
            }
            let mut set = BTreeSet::new();
            for m in &ctx.members {
                if !seen.contains_key(m.as_str()) {
                    return Err(ModelError::UndeclaredMember { context: ctx.label.clone(), atom: m.clone() });
                }
                if !set.insert(m.as_str()) {
                    return Err(ModelError::DuplicateMember { context: ctx.label.clone(), atom: m.clone() });
                }
                used.insert(m.as_str());
            }
            if set.len() < 2 {
                return Err(ModelError::ContextTooSmall { context: ctx.label.clone(), size: set.len() });
            }
            if set.len() > dimension {
                return Err(ModelError::ContextTooLarge { context: ctx.label.clone(), size: set.len(), dimension });
            }
            if let Some(other) = member_sets.insert(set, &ctx.label) {
                return Err(ModelError::DuplicateContext { context: ctx.label.clone(), other: other.to_string() });
            }
        }
        if let Some(unused) = atoms.iter().find(|a| !used.contains(a.label.as_str())) {
            return Err(ModelError::UnusedAtom(unused.label.clone()));
        }

        Ok(Logic { dimension, atoms, contexts })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Atoms in declaration order.
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn atom(&self, label: &str) -> Option<&Atom> {
        self.atoms.iter().find(|a| a.label == label)
    }

    pub fn context(&self, label: &str) -> Option<&Context> {
        self.contexts.iter().find(|c| c.label == label)
    }

    pub fn sorted_labels(&self) -> Vec<&str> {
        let mut labels: Vec<&str> = self.atoms.iter().map(|a| a.label.as_str()).collect();
        labels.sort_unstable();
        labels
    }

    /// Labels of contexts with fewer members than the dimension.
    pub fn non_maximal_contexts(&self) -> Vec<&str> {
        self.contexts.iter().filter(|c| c.members.len() < self.dimension).map(|c| c.label.as_str()).collect()
    }

    /// True when every atom carries a ray.
    pub fn is_realized(&self) -> bool {
        self.atoms.iter().all(|a| a.ray.is_some())
    }

    /// Number of contexts each atom belongs to, keyed by label.
    pub fn multiplicities(&self) -> BTreeMap<&str, usize> {
        let mut counts: BTreeMap<&str, usize> = self.atoms.iter().map(|a| (a.label.as_str(), 0)).collect();
        for ctx in &self.contexts {
            for m in &ctx.members {
                *counts.get_mut(m.as_str()).expect("validated member") += 1;
            }
        }
        counts
    }

    /// Pairs of distinct atoms (sorted labels) whose rays are collinear.
    pub fn collinear_pairs(&self) -> Vec<(String, String)> {
        let mut with_rays: Vec<(&str, &Ray)> =
            self.atoms.iter().filter_map(|a| a.ray.as_ref().map(|r| (a.label.as_str(), r))).collect();
        with_rays.sort_by(|a, b| a.0.cmp(b.0));
        let mut out = Vec::new();
        for (i, (la, ra)) in with_rays.iter().enumerate() {
            for (lb, rb) in &with_rays[i + 1..] {
                if rays_collinear(ra, rb).expect("validated dimension") {
                    out.push((la.to_string(), lb.to_string()));
                }
            }
        }
        out
    }

    /// Copy of the logic with `label`'s ray replaced.
    pub fn with_ray(&self, label: &str, ray: Option<Ray>) -> Result<Logic, ModelError> {
        let mut atoms = self.atoms.clone();
        match atoms.iter_mut().find(|a| a.label == label) {
            Some(atom) => atom.ray = ray,
            None => return Err(ModelError::UnknownAtom(label.to_string())),
        }
        Logic::new(self.dimension, atoms, self.contexts.clone())
    }

    /// Dense index view used by the combinatorial routines.
    pub fn incidence(&self) -> Incidence {
        let labels: Vec<String> = self.sorted_labels().into_iter().map(String::from).collect();
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let contexts: Vec<Vec<usize>> =
            self.contexts.iter().map(|c| c.members.iter().map(|m| index[m.as_str()]).collect()).collect();
        let mut atom_contexts = vec![Vec::new(); labels.len()];
        for (ci, members) in contexts.iter().enumerate() {
            for &a in members {
                atom_contexts[a].push(ci);
            }
        }
        Incidence { labels, contexts, atom_contexts }
    }
}

/// Atoms numbered in sorted-label order, contexts in declaration order.
#[derive(Debug, Clone)]
pub struct Incidence {
    pub labels: Vec<String>,
    pub contexts: Vec<Vec<usize>>,
    pub atom_contexts: Vec<Vec<usize>>,
}

impl Incidence {
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    /// Symmetric adjacency: two atoms are orthogonal when they share a context.
    pub fn orthogonality(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.labels.len()];
        for members in &self.contexts {
            for &a in members {
                for &b in members {
                    if a != b {
                        adj[a].insert(b);
                    }
                }
            }
        }
        adj
    }
}
