//! Greechie and Tkadlec diagrams as Graphviz DOT.
//!
//! The Greechie diagram is drawn as its incidence graph (atoms as circles,
//! contexts as boxes, one edge per membership) rather than with smooth
//! curves through the atoms. The Tkadlec diagram is the dual: contexts as
//! nodes, joined when they share atoms, each edge labeled by the shared
//! atoms.

use std::fmt::Write as _;

use serde::Serialize;

use crate::model::Logic;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualEdge {
    pub first: String,
    pub second: String,
    /// Shared atoms, sorted.
    pub shared: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    /// Context labels in declaration order.
    pub nodes: Vec<String>,
    /// Ordered by the declaration positions of `(first, second)`.
    pub edges: Vec<DualEdge>,
}

pub fn tkadlec_dual(logic: &Logic) -> DualGraph {
    let contexts = logic.contexts();
    let nodes = contexts.iter().map(|c| c.label.clone()).collect();
    let mut edges = Vec::new();
    for (i, a) in contexts.iter().enumerate() {
        for b in &contexts[i + 1..] {
            let mut shared: Vec<String> = a.members.iter().filter(|m| b.contains(m)).cloned().collect();
            if !shared.is_empty() {
                shared.sort();
                edges.push(DualEdge { first: a.label.clone(), second: b.label.clone(), shared });
            }
        }
    }
    DualGraph { nodes, edges }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotMode {
    GreechieIncidence,
    Tkadlec,
}

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn atom_id(label: &str) -> String {
    quoted(&format!("atom:{label}"))
}

fn context_id(label: &str) -> String {
    quoted(&format!("context:{label}"))
}

pub fn emit_dot(logic: &Logic, mode: DotMode) -> String {
    let mut out = String::new();
    match mode {
        DotMode::GreechieIncidence => {
            out.push_str("graph greechie {\n");
            for atom in logic.atoms() {
                let _ = writeln!(out, "  {} [label={}, shape=circle];", atom_id(&atom.label), quoted(&atom.label));
            }
            for ctx in logic.contexts() {
                let _ = writeln!(out, "  {} [label={}, shape=box];", context_id(&ctx.label), quoted(&ctx.label));
            }
            for ctx in logic.contexts() {
                for m in &ctx.members {
                    let _ = writeln!(out, "  {} -- {};", context_id(&ctx.label), atom_id(m));
                }
            }
        }
        DotMode::Tkadlec => {
            let dual = tkadlec_dual(logic);
            out.push_str("graph tkadlec {\n");
            for node in &dual.nodes {
                let _ = writeln!(out, "  {} [label={}, shape=box];", context_id(node), quoted(node));
            }
            for e in &dual.edges {
                let _ = writeln!(
                    out,
                    "  {} -- {} [label={}];",
                    context_id(&e.first),
                    context_id(&e.second),
                    quoted(&e.shared.join(","))
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{corpus, parse_logic};

    #[test]
    fn single_context() {
        let l = parse_logic("dim 3\natom A\natom B\natom C\ncontext a A B C\n").unwrap();
        let d = tkadlec_dual(&l);
        assert_eq!(d.nodes, ["a"]);
        assert!(d.edges.is_empty());
        let dot = emit_dot(&l, DotMode::GreechieIncidence);
        assert_eq!(dot.matches("shape=").count(), 4);
        assert_eq!(dot.matches(" -- ").count(), 3);
    }

    #[test]
    fn one_zero_configuration_dual() {
        let d = tkadlec_dual(&parse_logic(corpus::GAMMA1).unwrap());
        let got: Vec<(String, String, String)> =
            d.edges.iter().map(|e| (e.first.clone(), e.second.clone(), e.shared.join(","))).collect();
        let want = [
            ("a", "b", "C"),
            ("a", "f", "A"),
            ("a", "g", "B"),
            ("b", "c", "E"),
            ("c", "d", "G"),
            ("d", "e", "I"),
            ("d", "g", "H"),
            ("e", "f", "K"),
        ];
        let want: Vec<(String, String, String)> =
            want.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn shared_pairs_become_one_edge() {
        let l = parse_logic("dim 4\natom A\natom B\natom C\natom D\ncontext a A B C\ncontext b A B D\n").unwrap();
        let dot = emit_dot(&l, DotMode::Tkadlec);
        assert!(dot.contains("\"context:a\" -- \"context:b\" [label=\"A,B\"];"));
    }

    #[test]
    fn quoting() {
        assert_eq!(quoted("K'"), "\"K'\"");
        assert_eq!(quoted("a\"b\\"), "\"a\\\"b\\\\\"");
    }
}
