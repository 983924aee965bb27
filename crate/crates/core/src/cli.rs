//! The `qlogic` command-line driver.
//!
//! Every subcommand except `star` takes one or more `.gls` files. With more
//! than one file each report gets a `== path ==` header and a final
//! `summary:` line. `--format json` wraps everything in one object
//! `{command, results: [...], summary}` described by
//! `schemas/qlogic-report.schema.json`.
//!
//! Exit status: 0 on success, 1 when `--strict` is given and the analysis
//! reports a negative finding, 2 on usage, I/O or input errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::analysis::{self, Derivation};
use crate::diagrams::{self, DotMode};
use crate::model::Logic;
use crate::parser::{parse_logic, serialize_logic};
use crate::quantum::{self, EntangledPair};

#[derive(Debug, Parser)]
#[command(name = "qlogic", version, about = "Analyse finite quantum logics stored as .gls files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Greechie,
    Tkadlec,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Exit with status 1 when the analysis finds a negative result.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Debug, Args)]
struct Files {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that the rays realize every context exactly.
    Check(Files),
    /// Enumerate the two-valued states.
    States {
        #[command(flatten)]
        files: Files,
        /// Print only the number of states.
        #[arg(long, conflicts_with = "list")]
        count_only: bool,
        /// Print every state as a bit string.
        #[arg(long)]
        list: bool,
    },
    /// Derive the one-zero and one-one rules obeyed by all states.
    Rules(Files),
    /// Look for a parity proof that no state exists.
    Parity(Files),
    /// Infer atoms that any realization must identify.
    Collapse(Files),
    /// Print the Tkadlec dual graph.
    Dual(Files),
    /// Emit a Greechie or Tkadlec diagram as DOT.
    Dot {
        #[command(flatten)]
        files: Files,
        #[arg(long, value_enum, default_value = "greechie")]
        mode: Mode,
    },
    /// Compare classical rules with maximally entangled pair predictions.
    Quantum {
        #[command(flatten)]
        files: Files,
        /// A single pair of atoms, `x,y`.
        #[arg(long, value_parser = parse_pair)]
        pair: Option<(String, String)>,
    },
    /// Print the n-star logic as .gls text.
    Star {
        n: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_pair(s: &str) -> Result<(String, String), String> {
    match s.split_once(',') {
        Some((x, y)) if !x.is_empty() && !y.is_empty() && !y.contains(',') => {
            Ok((x.trim().to_string(), y.trim().to_string()))
        }
        _ => Err(format!("expected `x,y`, got `{s}`")),
    }
}

/// Result of analysing one input.
struct Outcome {
    text: String,
    json: Value,
    negative: bool,
}

struct InputError {
    message: String,
    json: Value,
}

impl InputError {
    fn plain(message: String) -> Self {
        InputError { json: json!({ "message": message }), message }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn object(value: Value) -> Map<String, Value> {
    match value {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn load(path: &PathBuf) -> Result<Logic, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::plain(format!("{}: {e}", path.display())))?;
    parse_logic(&text).map_err(|e| InputError {
        message: format!("{}:{}:{}: {}", path.display(), e.position.line, e.position.column, e.kind),
        json: json!({
            "message": e.kind.to_string(),
            "line": e.position.line,
            "column": e.position.column,
        }),
    })
}

fn check(logic: &Logic) -> Result<Outcome, InputError> {
    let r = analysis::verify_realization(logic).map_err(|e| InputError::plain(e.to_string()))?;
    let mut text = format!(
        "realization: {} ({}/{} contexts orthogonal)\n",
        if r.pass { "pass" } else { "fail" },
        r.orthogonal_count(),
        r.contexts.len()
    );
    for c in &r.contexts {
        match &c.offending {
            None => {
                let _ = writeln!(text, "  {}: ok", c.label);
            }
            Some(p) => {
                let _ =
                    writeln!(text, "  {}: FAIL {},{} inner product {}", c.label, p.first, p.second, p.inner_product);
            }
        }
    }
    if r.collinear.is_empty() {
        text.push_str("collinear: none\n");
    } else {
        let pairs: Vec<String> = r.collinear.iter().map(|(a, b)| format!("{a}={b}")).collect();
        let _ = writeln!(text, "collinear: {}", pairs.join(" "));
    }
    if !r.non_maximal_contexts.is_empty() {
        let _ = writeln!(text, "non-maximal contexts: {}", r.non_maximal_contexts.join(" "));
    }
    Ok(Outcome { text, negative: !r.pass, json: to_json(&r) })
}

fn states(logic: &Logic, count_only: bool, list: bool) -> Outcome {
    let r = analysis::enumerate_states(logic);
    let mut json = object(to_json(&r));
    if !list {
        json.remove("states");
    }
    let text = if count_only {
        format!("{}\n", r.count)
    } else {
        let mut t = format!(
            "states: {}\nempty: {}\nunital: {}\nseparating: {}\n",
            r.count,
            yes_no(r.empty),
            yes_no(r.unital),
            yes_no(r.separating)
        );
        if !r.non_maximal_contexts.is_empty() {
            let _ = writeln!(t, "non-maximal contexts: {}", r.non_maximal_contexts.join(" "));
        }
        if list {
            let _ = writeln!(t, "# columns: {}", r.labels.join(" "));
            for s in &r.states {
                t.push_str(&s.bit_string());
                t.push('\n');
            }
        }
        t
    };
    Outcome { text, negative: r.empty, json: Value::Object(json) }
}

fn derivation(logic: &Logic) -> Derivation {
    analysis::derive_rules(&analysis::enumerate_states(logic), logic).expect("report from the same logic")
}

fn rules(logic: &Logic) -> Outcome {
    let d = derivation(logic);
    let mut text = String::new();
    match &d {
        Derivation::Explosion => {
            text.push_str("explosion: no two-valued state exists, every implication holds vacuously\n");
        }
        Derivation::Rules(r) => {
            for (x, y) in &r.one_zero {
                let _ = writeln!(text, "one-zero: {x} -> {y}");
            }
            for (x, y) in r.one_one.iter().filter(|(x, y)| x != y) {
                let _ = writeln!(text, "one-one: {x} -> {y}");
            }
            for (x, y) in &r.equivalences {
                let _ = writeln!(text, "equivalent: {x} <-> {y}");
            }
            for x in &r.never_true {
                let _ = writeln!(text, "never-true: {x}");
            }
        }
    }
    Outcome { text, negative: d == Derivation::Explosion, json: to_json(&d) }
}

fn parity(logic: &Logic) -> Outcome {
    match analysis::parity_obstruction(logic) {
        Some(cert) => {
            let mults: Vec<String> = cert.atom_multiplicities.iter().map(|(a, m)| format!("{a}:{m}")).collect();
            let text = format!(
                "certificate: {} contexts (odd), every atom in an even number of contexts\nmultiplicities: {}\n",
                cert.context_count,
                mults.join(" ")
            );
            Outcome { text, negative: false, json: json!({ "certificate": cert }) }
        }
        None => {
            Outcome { text: "no parity certificate\n".into(), negative: true, json: json!({ "certificate": null }) }
        }
    }
}

fn collapse(logic: &Logic) -> Outcome {
    let r = analysis::infer_collapses(logic);
    let mut text = String::new();
    if r.identifications.is_empty() {
        let _ = writeln!(text, "no forced identifications in dimension {}", logic.dimension());
    }
    for i in &r.identifications {
        let _ = writeln!(text, "identify: {} = {} (witness: {})", i.atoms.0, i.atoms.1, i.witness.join(" "));
    }
    for c in &r.self_orthogonal {
        let _ = writeln!(text, "self-orthogonal: {}", c.join(" "));
    }
    Outcome { text, negative: !r.identifications.is_empty(), json: to_json(&r) }
}

fn dual(logic: &Logic) -> Outcome {
    let g = diagrams::tkadlec_dual(logic);
    let mut text = format!("nodes: {}\n", g.nodes.join(" "));
    for e in &g.edges {
        let _ = writeln!(text, "{} -- {} [{}]", e.first, e.second, e.shared.join(","));
    }
    Outcome { text, negative: false, json: to_json(&g) }
}

fn dot(logic: &Logic, mode: Mode) -> Outcome {
    let mode = match mode {
        Mode::Greechie => DotMode::GreechieIncidence,
        Mode::Tkadlec => DotMode::Tkadlec,
    };
    let text = diagrams::emit_dot(logic, mode);
    let json = json!({ "dot": text });
    Outcome { text, negative: false, json }
}

fn quantum_report(logic: &Logic, pair_arg: Option<&(String, String)>) -> Result<Outcome, InputError> {
    let pair = EntangledPair::maximally_entangled(logic.dimension()).map_err(|e| InputError::plain(e.to_string()))?;
    let d = derivation(logic);
    let empty = analysis::RuleSet::default();
    let rules = d.rules().unwrap_or(&empty);
    if let Some((x, y)) = pair_arg {
        for l in [x, y] {
            if logic.atom(l).is_none() {
                return Err(InputError::plain(format!("no atom labeled `{l}`")));
            }
        }
        let p = quantum::predict_pair(logic, rules, &pair, x, y).map_err(|e| InputError::plain(e.to_string()))?;
        let (classical, quantum, event) = match p.classical_bound {
            quantum::ClassicalBound::Zero => (Some(0.0), p.prob_both, format!("{x}=1,{y}=1")),
            quantum::ClassicalBound::Equal => {
                (Some(0.0), (p.marginal_left - p.prob_both).max(0.0), format!("{x}=1,{y}=0"))
            }
            quantum::ClassicalBound::Unconstrained => (None, p.prob_both, format!("{x}=1,{y}=1")),
        };
        let violated = classical.is_some() && quantum > quantum::TOLERANCE;
        let bound = match p.classical_bound {
            quantum::ClassicalBound::Zero => "one-zero",
            quantum::ClassicalBound::Equal => "equivalence",
            quantum::ClassicalBound::Unconstrained => "unconstrained",
        };
        let text = format!(
            "pair: {x},{y}\nclassical rule: {bound}\nevent: {event}\nclassical: {}\nquantum: {quantum:.6}\nviolated: {}\n",
            classical.map_or("-".to_string(), |c| format!("{c}")),
            yes_no(violated)
        );
        let json = json!({
            "pair": [x, y],
            "rule": bound,
            "event": event,
            "classical": classical,
            "quantum": quantum,
            "prediction": p,
            "violated": violated,
        });
        return Ok(Outcome { text, negative: !violated, json });
    }
    let rows = quantum::falsification_report(logic, rules, &pair).map_err(|e| InputError::plain(e.to_string()))?;
    let mut text = String::new();
    if d == Derivation::Explosion {
        text.push_str("explosion: no two-valued state exists, no classical rule to test\n");
    }
    let _ = writeln!(text, "{:<12} {:<16} {:>9} {:>9}  violated", "rule", "event", "classical", "quantum");
    for r in &rows {
        let kind = match r.kind {
            quantum::RuleKind::OneZero => "one-zero",
            quantum::RuleKind::Equivalence => "equivalence",
        };
        let _ = writeln!(
            text,
            "{:<12} {:<16} {:>9} {:>9.6}  {}",
            kind,
            r.event,
            r.classical,
            r.quantum,
            yes_no(r.violated)
        );
    }
    let violated = rows.iter().filter(|r| r.violated).count();
    let _ = writeln!(text, "violated: {violated}/{}", rows.len());
    Ok(Outcome { text, negative: violated == 0, json: json!({ "rows": rows, "violated": violated }) })
}

fn emit(common: &Common, content: &str, stdout: &mut dyn Write, stderr: &mut dyn Write) -> bool {
    let res = match &common.out {
        Some(path) => std::fs::write(path, content),
        None => stdout.write_all(content.as_bytes()),
    };
    match res {
        Ok(()) => true,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot write output: {e}");
            false
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check(_) => "check",
        Command::States { .. } => "states",
        Command::Rules(_) => "rules",
        Command::Parity(_) => "parity",
        Command::Collapse(_) => "collapse",
        Command::Dual(_) => "dual",
        Command::Dot { .. } => "dot",
        Command::Quantum { .. } => "quantum",
        Command::Star { .. } => "star",
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let name = command_name(&cli.command);

    if let Command::Star { n, common } = &cli.command {
        let logic = match analysis::make_star(*n) {
            Ok(l) => l,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
        };
        let gls = serialize_logic(&logic);
        let content = match common.format {
            Format::Text => gls,
            Format::Json => {
                let v = json!({
                    "command": name,
                    "results": [{
                        "dimension": n,
                        "atoms": logic.atoms().len(),
                        "contexts": logic.contexts().len(),
                        "gls": gls,
                    }],
                    "summary": { "files": 0, "ok": 1, "failed": 0 },
                });
                serde_json::to_string_pretty(&v).expect("json") + "\n"
            }
        };
        return if emit(common, &content, stdout, stderr) { 0 } else { 2 };
    }

    let files = match &cli.command {
        Command::Check(f) | Command::Rules(f) | Command::Parity(f) | Command::Collapse(f) | Command::Dual(f) => f,
        Command::States { files, .. } | Command::Dot { files, .. } | Command::Quantum { files, .. } => files,
        Command::Star { .. } => unreachable!("handled above"),
    };
    let common = &files.common;
    let batch = files.files.len() > 1;

    let mut text = String::new();
    let mut results = Vec::new();
    let (mut ok, mut failed, mut negatives) = (0usize, 0usize, 0usize);
    for path in &files.files {
        let outcome = load(path).and_then(|logic| match &cli.command {
            Command::Check(_) => check(&logic),
            Command::States { count_only, list, .. } => Ok(states(&logic, *count_only, *list)),
            Command::Rules(_) => Ok(rules(&logic)),
            Command::Parity(_) => Ok(parity(&logic)),
            Command::Collapse(_) => Ok(collapse(&logic)),
            Command::Dual(_) => Ok(dual(&logic)),
            Command::Dot { mode, .. } => Ok(dot(&logic, *mode)),
            Command::Quantum { pair, .. } => quantum_report(&logic, pair.as_ref()),
            Command::Star { .. } => unreachable!("handled above"),
        });
        let file = path.display().to_string();
        match outcome {
            Ok(o) => {
                ok += 1;
                if o.negative {
                    negatives += 1;
                }
                if batch {
                    let _ = writeln!(text, "== {file} ==");
                }
                text.push_str(&o.text);
                let mut m = Map::new();
                m.insert("file".into(), Value::String(file));
                m.extend(object(o.json));
                results.push(Value::Object(m));
            }
            Err(e) => {
                failed += 1;
                let _ = writeln!(stderr, "error: {}", e.message);
                if batch {
                    let _ = writeln!(text, "== {file} ==\nerror: {}", e.message);
                }
                results.push(json!({ "file": file, "error": e.json }));
            }
        }
    }
    if batch {
        let _ = writeln!(text, "summary: {} files, {ok} ok, {failed} failed", files.files.len());
    }

    let content = match common.format {
        Format::Text => text,
        Format::Json => {
            let v = json!({
                "command": name,
                "results": results,
                "summary": { "files": files.files.len(), "ok": ok, "failed": failed },
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
    };
    if !emit(common, &content, stdout, stderr) || failed > 0 {
        return 2;
    }
    if common.strict && negatives > 0 {
        1
    } else {
        0
    }
}
