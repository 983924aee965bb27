use std::path::PathBuf;

use qlogic::cli::run;
use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus(name: &str) -> String {
    root().join("corpus").join(name).to_string_lossy().into_owned()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["qlogic"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(root().join("schemas/qlogic-report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn cabello_count_only_prints_zero() {
    let (code, out, _) = invoke(&["states", &corpus("cabello18.gls"), "--count-only"]);
    assert_eq!(code, 0);
    assert_eq!(out, "0\n");
    let (code, _, _) = invoke(&["states", &corpus("cabello18.gls"), "--count-only", "--strict"]);
    assert_eq!(code, 1);
}

#[test]
fn gamma1_rules_text() {
    let (code, out, _) = invoke(&["rules", &corpus("gamma1.gls")]);
    assert_eq!(code, 0);
    assert!(out.contains("one-zero: K -> E\n"));
    assert!(out.contains("one-zero: E -> K\n"));
}

#[test]
fn quantum_pair_k_e() {
    let (code, out, _) = invoke(&["quantum", &corpus("gamma1.gls"), "--pair", "K,E"]);
    assert_eq!(code, 0);
    assert!(out.contains("classical: 0\n"), "{out}");
    assert!(out.contains("quantum: 0.037037\n"), "{out}");
    assert!(out.contains("violated: yes\n"), "{out}");
    let (_, out, _) = invoke(&["quantum", &corpus("gamma1.gls"), "--pair", "K,E", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let q = v["results"][0]["quantum"].as_f64().unwrap();
    assert!((q - 1.0 / 27.0).abs() <= 1e-9);
    assert_eq!(v["results"][0]["classical"], 0.0);
    assert_eq!(v["results"][0]["violated"], true);
}

#[test]
fn states_list_is_one_bit_string_per_line() {
    let (code, out, _) = invoke(&["states", &corpus("tight3.gls"), "--list"]);
    assert_eq!(code, 0);
    assert!(out.contains("# columns: A B C D K L\n001100\n010010\n010101\n100001\n"), "{out}");
}

#[test]
fn check_strict_and_exit_codes() {
    assert_eq!(invoke(&["check", &corpus("gamma1.gls"), "--strict"]).0, 0);
    assert_eq!(invoke(&["parity", &corpus("cabello18.gls"), "--strict"]).0, 0);
    assert_eq!(invoke(&["parity", &corpus("gamma1.gls"), "--strict"]).0, 1);
    assert_eq!(invoke(&["parity", &corpus("gamma1.gls")]).0, 0);
    assert_eq!(invoke(&["collapse", &corpus("tight3.gls"), "--strict"]).0, 1);
    assert_eq!(invoke(&["check", &corpus("l12.gls")]).0, 2);
    assert_eq!(invoke(&["check", "/nonexistent/x.gls"]).0, 2);
    assert_eq!(invoke(&["bogus"]).0, 2);
    assert_eq!(invoke(&["dot", &corpus("gamma1.gls"), "--mode", "venn"]).0, 2);
    assert_eq!(invoke(&["quantum", &corpus("gamma1.gls"), "--pair", "K"]).0, 2);
    assert_eq!(invoke(&["quantum", &corpus("gamma1.gls"), "--pair", "K,Q"]).0, 2);
    assert_eq!(invoke(&["star", "2"]).0, 2);
}

#[test]
fn parse_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.gls");
    std::fs::write(&path, "dim 3\natom A 1r3 0 0\n").unwrap();
    let p = path.to_string_lossy().into_owned();
    let (code, _, err) = invoke(&["check", &p]);
    assert_eq!(code, 2);
    assert!(err.contains(&format!("{p}:2:9:")), "{err}");
    let (_, out, _) = invoke(&["check", &p, "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"][0]["error"]["line"], 2);
    assert_eq!(v["results"][0]["error"]["column"], 9);
    assert!(validator().is_valid(&v));
}

#[test]
fn batch_runs_end_with_summary() {
    let (code, out, _) = invoke(&["states", &corpus("gamma1.gls"), &corpus("cabello18.gls"), "--count-only"]);
    assert_eq!(code, 0);
    let want = format!(
        "== {} ==\n14\n== {} ==\n0\nsummary: 2 files, 2 ok, 0 failed\n",
        corpus("gamma1.gls"),
        corpus("cabello18.gls")
    );
    assert_eq!(out, want);
}

#[test]
fn star_prints_gls() {
    let (code, out, _) = invoke(&["star", "4"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        std::fs::read_to_string(corpus("star4.gls"))
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with('#'))
            .map(|l| format!("{l}\n"))
            .collect::<String>()
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.dot");
    let p = path.to_string_lossy().into_owned();
    let (code, out, _) = invoke(&["dot", &corpus("gamma1.gls"), "--mode", "tkadlec", "--out", &p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph tkadlec {\n"));
    graphviz_rust::parse(&dot).unwrap();
}

#[test]
fn json_output_matches_schema_and_is_deterministic() {
    let v = validator();
    let files: Vec<String> = qlogic::corpus::ALL.iter().map(|(n, _)| corpus(n)).collect();
    let realized: Vec<String> =
        ["gamma1.gls", "gamma3pair.gls", "cabello18.gls", "tight3_4d.gls"].iter().map(|n| corpus(n)).collect();
    let mut runs: Vec<Vec<String>> = Vec::new();
    for cmd in ["check", "rules", "parity", "collapse", "dual", "dot"] {
        let mut a = vec![cmd.to_string()];
        a.extend(files.iter().cloned());
        runs.push(a);
    }
    let mut a = vec!["states".to_string(), "--list".into()];
    a.extend(files.iter().cloned());
    runs.push(a);
    let mut a = vec!["quantum".to_string()];
    a.extend(realized.iter().cloned());
    runs.push(a);
    runs.push(vec!["quantum".into(), corpus("gamma3pair.gls"), "--pair".into(), "K,K'".into()]);
    runs.push(vec!["quantum".into(), corpus("gamma1.gls"), "--pair".into(), "A,M".into()]);
    runs.push(vec!["star".into(), "5".into()]);
    for mut args in runs {
        args.push("--format".into());
        args.push("json".into());
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (_, first, _) = invoke(&argv);
        let (_, second, _) = invoke(&argv);
        assert_eq!(first, second, "{args:?}");
        let doc: Value = serde_json::from_str(&first).unwrap();
        let errors: Vec<String> = v.iter_errors(&doc).map(|e| format!("{e} at {}", e.instance_path())).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

#[test]
fn failed_realization_reports_exact_inner_product() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("skew.gls");
    std::fs::write(&path, "dim 3\natom A 1 0 0\natom B 1r2 1 0\natom C 0 0 1\ncontext a A B C\n").unwrap();
    let p = path.to_string_lossy().into_owned();
    let (code, out, _) = invoke(&["check", &p, "--format", "json", "--strict"]);
    assert_eq!(code, 1);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert!(validator().is_valid(&doc));
    assert_eq!(doc["results"][0]["contexts"][0]["offending"]["inner_product"], "1r2");
    let (_, text, _) = invoke(&["check", &p]);
    assert!(text.contains("a: FAIL A,B inner product 1r2\n"), "{text}");
}

#[test]
fn schema_rejects_malformed_reports() {
    let v = validator();
    let bad = serde_json::json!({ "command": "states", "results": [{ "file": "x", "count": -1 }], "summary": { "files": 1, "ok": 1, "failed": 0 } });
    assert!(!v.is_valid(&bad));
    let bad = serde_json::json!({ "command": "check", "results": [], "summary": { "files": 0, "ok": 0, "failed": 0 }, "extra": 1 });
    assert!(!v.is_valid(&bad));
}

#[test]
fn text_output_is_deterministic() {
    for cmd in ["check", "states", "rules", "collapse", "quantum"] {
        let a = invoke(&[cmd, &corpus("gamma3pair.gls")]);
        let b = invoke(&[cmd, &corpus("gamma3pair.gls")]);
        assert_eq!(a, b, "{cmd}");
    }
}
