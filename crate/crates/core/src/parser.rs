//! The `.gls` text format.
//!
//! One declaration per line, whitespace-separated tokens, `#` starts a
//! comment:
//!
//! ```text
//! # one context of the one-zero configuration
//! dim 3
//! atom A 1 r2 -1
//! atom B 1 0 1
//! atom C -1 r2 1
//! context a A B C
//! ```
//!
//! An `atom` line carries either no components (an abstract atom) or exactly
//! `dim` of them, in the component grammar documented on [`Quad`]. LF and
//! CRLF line endings are accepted; [`serialize_logic`] emits LF.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::model::{rays_collinear, valid_label, Atom, Context, Logic, Ray};
use crate::quad::{Quad, QuadParseError};

/// 1-based line and column (in characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("expected {0}")]
    MissingToken(&'static str),
    #[error("`dim` must come before any atom or context")]
    MissingDimension,
    #[error("`dim` declared twice")]
    DuplicateDimension,
    #[error("dimension must be an integer of at least 3, got `{0}`")]
    InvalidDimension(String),
    #[error("label `{0}` already declared")]
    DuplicateLabel(String),
    #[error("atom `{0}` is not declared before this context")]
    UndeclaredMember(String),
    #[error("atom `{0}` listed twice in one context")]
    DuplicateMember(String),
    #[error("context has {size} member(s); at least 2 are required")]
    ContextTooSmall { size: usize },
    #[error("context has {size} members but the dimension is {dimension}")]
    ContextTooLarge { size: usize, dimension: usize },
    #[error("same member set as context `{0}`")]
    DuplicateContext(String),
    #[error("expected {expected} components, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("all components are zero")]
    ZeroRay,
    #[error("ray is collinear with the ray of atom `{0}`")]
    DuplicateRay(String),
    #[error("irrational `{0}` lies outside Q(sqrt 2); only `r2` is supported")]
    Irrational(String),
    #[error("malformed number: {0}")]
    MalformedNumber(&'static str),
    #[error("atom `{0}` belongs to no context")]
    UnusedAtom(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{position}: {kind}")]
pub struct ParseError {
    pub position: Position,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn at(position: Position, kind: ParseErrorKind) -> Self {
        ParseError { position, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned<T> {
    pub value: T,
    pub position: Position,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomDecl {
    pub label: Spanned<String>,
    pub components: Vec<Spanned<Quad>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextDecl {
    pub label: Spanned<String>,
    pub members: Vec<Spanned<String>>,
}

/// Syntactic view of a `.gls` file, before any cross-line validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlsDocument {
    pub dimension: Spanned<usize>,
    pub atoms: Vec<AtomDecl>,
    pub contexts: Vec<ContextDecl>,
    /// `(line, text after '#')`.
    pub comments: Vec<(usize, String)>,
    /// Order in which atom and context lines occurred, to check that atoms
    /// precede the contexts using them.
    order: Vec<DeclRef>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DeclRef {
    Atom(usize),
    Context(usize),
}

fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((c, b)) = start.take() {
                out.push((c + 1, &line[b..byte]));
            }
        } else if start.is_none() {
            start = Some((col, byte));
        }
    }
    if let Some((c, b)) = start {
        out.push((c + 1, &line[b..]));
    }
    out.into_iter()
}

fn column_of(token: &str, token_col: usize, byte_offset: usize) -> usize {
    token_col + token[..byte_offset.min(token.len())].chars().count()
}

fn label_token(line: usize, col: usize, tok: &str) -> Result<Spanned<String>, ParseError> {
    if !valid_label(tok) {
        return Err(ParseError::at(Position { line, column: col }, ParseErrorKind::InvalidLabel(tok.into())));
    }
    Ok(Spanned { value: tok.to_string(), position: Position { line, column: col } })
}

/// Tokenizes and checks the per-line syntax.
pub fn parse_document(text: &str) -> Result<GlsDocument, ParseError> {
    let mut dimension: Option<Spanned<usize>> = None;
    let mut atoms = Vec::new();
    let mut contexts = Vec::new();
    let mut comments = Vec::new();
    let mut order = Vec::new();
    let mut last_line = 1;

    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let body = match raw.find('#') {
            Some(h) => {
                comments.push((line_no, raw[h + 1..].to_string()));
                &raw[..h]
            }
            None => raw,
        };
        let mut toks = tokens(body);
        let Some((kw_col, keyword)) = toks.next() else { continue };
        let here = |column| Position { line: line_no, column };
        match keyword {
            "dim" => {
                if dimension.is_some() {
                    return Err(ParseError::at(here(kw_col), ParseErrorKind::DuplicateDimension));
                }
                let (col, tok) = toks.next().ok_or_else(|| {
                    ParseError::at(here(kw_col), ParseErrorKind::MissingToken("a dimension after `dim`"))
                })?;
                let d: usize = match tok.parse() {
                    Ok(d) if d >= 3 => d,
                    _ => return Err(ParseError::at(here(col), ParseErrorKind::InvalidDimension(tok.into()))),
                };
                if let Some((col, extra)) = toks.next() {
                    return Err(ParseError::at(here(col), ParseErrorKind::UnknownToken(extra.into())));
                }
                dimension = Some(Spanned { value: d, position: here(kw_col) });
            }
            "atom" | "context" => {
                if dimension.is_none() {
                    return Err(ParseError::at(here(kw_col), ParseErrorKind::MissingDimension));
                }
                let what = if keyword == "atom" { "an atom label" } else { "a context label" };
                let (col, tok) =
                    toks.next().ok_or_else(|| ParseError::at(here(kw_col), ParseErrorKind::MissingToken(what)))?;
                let label = label_token(line_no, col, tok)?;
                if keyword == "atom" {
                    let mut components = Vec::new();
                    for (col, tok) in toks {
                        let value: Quad = tok.parse().map_err(|e: QuadParseError| {
                            let pos = here(column_of(tok, col, e.offset()));
                            match e {
                                QuadParseError::Irrational { found, .. } => {
                                    ParseError::at(pos, ParseErrorKind::Irrational(found))
                                }
                                QuadParseError::Malformed { reason, .. } => {
                                    ParseError::at(pos, ParseErrorKind::MalformedNumber(reason))
                                }
                            }
                        })?;
                        components.push(Spanned { value, position: here(col) });
                    }
                    order.push(DeclRef::Atom(atoms.len()));
                    atoms.push(AtomDecl { label, components });
                } else {
                    let members =
                        toks.map(|(col, tok)| label_token(line_no, col, tok)).collect::<Result<Vec<_>, _>>()?;
                    order.push(DeclRef::Context(contexts.len()));
                    contexts.push(ContextDecl { label, members });
                }
            }
            other => {
                return Err(ParseError::at(here(kw_col), ParseErrorKind::UnknownToken(other.into())));
            }
        }
    }

    let dimension = dimension
        .ok_or_else(|| ParseError::at(Position { line: last_line, column: 1 }, ParseErrorKind::MissingDimension))?;
    Ok(GlsDocument { dimension, atoms, contexts, comments, order })
}

impl GlsDocument {
    /// Checks every cross-line invariant and builds the [`Logic`].
    pub fn to_logic(&self) -> Result<Logic, ParseError> {
        let dim = self.dimension.value;
        let mut declared: HashMap<&str, usize> = HashMap::new();
        let mut rays: Vec<Option<Ray>> = Vec::with_capacity(self.atoms.len());
        let mut context_labels: BTreeSet<&str> = BTreeSet::new();
        let mut member_sets: BTreeMap<BTreeSet<&str>, &str> = BTreeMap::new();
        let mut used: BTreeSet<&str> = BTreeSet::new();

        for decl in &self.order {
            match *decl {
                DeclRef::Atom(i) => {
                    let a = &self.atoms[i];
                    if declared.insert(&a.label.value, i).is_some() {
                        return Err(ParseError::at(
                            a.label.position,
                            ParseErrorKind::DuplicateLabel(a.label.value.clone()),
                        ));
                    }
                    rays.push(self.atom_ray(a)?);
                }
                DeclRef::Context(i) => {
                    let c = &self.contexts[i];
                    if !context_labels.insert(&c.label.value) {
                        return Err(ParseError::at(
                            c.label.position,
                            ParseErrorKind::DuplicateLabel(c.label.value.clone()),
                        ));
                    }
                    let mut set = BTreeSet::new();
                    for m in &c.members {
                        if !declared.contains_key(m.value.as_str()) {
                            return Err(ParseError::at(m.position, ParseErrorKind::UndeclaredMember(m.value.clone())));
                        }
                        if !set.insert(m.value.as_str()) {
                            return Err(ParseError::at(m.position, ParseErrorKind::DuplicateMember(m.value.clone())));
                        }
                        used.insert(m.value.as_str());
                    }
                    if set.len() < 2 {
                        return Err(ParseError::at(
                            c.label.position,
                            ParseErrorKind::ContextTooSmall { size: set.len() },
                        ));
                    }
                    if set.len() > dim {
                        return Err(ParseError::at(
                            c.members[dim].position,
                            ParseErrorKind::ContextTooLarge { size: set.len(), dimension: dim },
                        ));
                    }
                    if let Some(other) = member_sets.insert(set, &c.label.value) {
                        return Err(ParseError::at(
                            c.label.position,
                            ParseErrorKind::DuplicateContext(other.to_string()),
                        ));
                    }
                }
            }
        }

        for (i, a) in self.atoms.iter().enumerate() {
            let Some(ray) = &rays[i] else { continue };
            for (j, b) in self.atoms[..i].iter().enumerate() {
                if let Some(other) = &rays[j] {
                    if rays_collinear(ray, other).expect("same dimension") {
                        return Err(ParseError::at(
                            a.label.position,
                            ParseErrorKind::DuplicateRay(b.label.value.clone()),
                        ));
                    }
                }
            }
        }

        if let Some(a) = self.atoms.iter().find(|a| !used.contains(a.label.value.as_str())) {
            return Err(ParseError::at(a.label.position, ParseErrorKind::UnusedAtom(a.label.value.clone())));
        }

        let atoms = self.atoms.iter().zip(rays).map(|(a, ray)| Atom::new(a.label.value.clone(), ray)).collect();
        let contexts = self
            .contexts
            .iter()
            .map(|c| Context::new(c.label.value.clone(), c.members.iter().map(|m| m.value.clone())))
            .collect();
        // Every invariant Logic::new checks has been checked above with a
        // position attached.
        Ok(Logic::new(dim, atoms, contexts).expect("document validated"))
    }

    fn atom_ray(&self, a: &AtomDecl) -> Result<Option<Ray>, ParseError> {
        let dim = self.dimension.value;
        if a.components.is_empty() {
            return Ok(None);
        }
        if a.components.len() != dim {
            let position = a.components.get(dim).map_or(a.label.position, |c| c.position);
            return Err(ParseError::at(
                position,
                ParseErrorKind::ComponentCount { expected: dim, found: a.components.len() },
            ));
        }
        Ray::new(a.components.iter().map(|c| c.value.clone()).collect())
            .map(Some)
            .map_err(|_| ParseError::at(a.components[0].position, ParseErrorKind::ZeroRay))
    }
}

/// Parses and validates a `.gls` text.
pub fn parse_logic(text: &str) -> Result<Logic, ParseError> {
    parse_document(text)?.to_logic()
}

/// Canonical text: `dim`, atoms sorted by label, contexts in declared order.
pub fn serialize_logic(logic: &Logic) -> String {
    let mut out = format!("dim {}\n", logic.dimension());
    let mut atoms: Vec<&Atom> = logic.atoms().iter().collect();
    atoms.sort_by(|a, b| a.label.cmp(&b.label));
    for atom in atoms {
        out.push_str("atom ");
        out.push_str(&atom.label);
        if let Some(ray) = &atom.ray {
            for c in ray.components() {
                out.push(' ');
                out.push_str(&c.to_string());
            }
        }
        out.push('\n');
    }
    for ctx in logic.contexts() {
        out.push_str("context ");
        out.push_str(&ctx.label);
        for m in &ctx.members {
            out.push(' ');
            out.push_str(m);
        }
        out.push('\n');
    }
    out
}
