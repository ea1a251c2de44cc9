use std::process::{Command, Output};

fn fd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fd"))
        .args(args)
        .env_remove("FD_MAX_SIZE")
        .output()
        .expect("fd runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hom_lists_both_morphisms() {
    let o = fd(&["hom", "", "-"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("2 morphisms\n"));
}

#[test]
fn hom_json_parses() {
    let o = fd(&["--json", "hom", "", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["morphisms"].as_array().unwrap().len(), 2);
}

#[test]
fn bad_literal_exits_one() {
    let o = fd(&["parse", "-%"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 1"));
}

#[test]
fn non_commuting_square_is_rejected() {
    let o = fd(&["parse", r#"{"dom":"-","cod":"-","top":[0,1],"bot":[1]}"#]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(fd(&["--frobnicate"]).status.code(), Some(1));
    assert_eq!(fd(&["--help"]).status.code(), Some(0));
    assert_eq!(fd(&["--version"]).status.code(), Some(0));
}

#[test]
fn parse_object_json() {
    let o = fd(&["--json", "parse", "-=-"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "object");
    assert_eq!(v["canonical"], "-=-");
    assert_eq!(v["fibres"], serde_json::json!([0, 1, 0]));
}

#[test]
fn normalize_and_word_eq() {
    let o = fd(&["normalize", "-- | d0;d0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = fd(&["--json", "word-eq", "-- | d0;d0", "-- | d1;d0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["equal"], true);
}

#[test]
fn audit_passes_at_default_size() {
    let o = fd(&["audit"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("audit up to m = 3\n"));
}

#[test]
fn max_size_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_fd"))
        .args(["--json", "enumerate", "objects"])
        .env("FD_MAX_SIZE", "1")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let n = v.as_array().unwrap().len();
    let o = fd(&["--json", "--max-size", "1", "enumerate", "objects"]);
    let w: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(n, w.as_array().unwrap().len());
    let o = fd(&["--json", "enumerate", "objects"]);
    let big: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(big.as_array().unwrap().len() > n);
}

#[test]
fn check_relations_exit_codes() {
    assert_eq!(fd(&["--max-size", "2", "check-relations"]).status.code(), Some(0));
    assert_eq!(fd(&["--max-size", "2", "check-relations", "--rule", "dd", "--rule", "sw"]).status.code(), Some(0));
    assert_eq!(fd(&["check-relations", "--rule", "zz"]).status.code(), Some(1));
    assert_eq!(fd(&["--max-size", "2", "check-factorization"]).status.code(), Some(0));
}

#[test]
fn render_dot_and_tikz() {
    let o = fd(&["render", "- | d0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("digraph {"));
    let o = fd(&["render", "--format", "tikz", "- | d0"]);
    assert!(stdout(&o).starts_with("\\begin{tikzcd}"));
    assert_eq!(fd(&["render", "--format", "svg", "- | d0"]).status.code(), Some(1));
}

#[test]
fn render_to_file() {
    let path = std::env::temp_dir().join(format!("fd-render-{}.dot", std::process::id()));
    let o = fd(&["render", "- | d0", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("digraph {"));
}

#[test]
fn word_eq_reports_inequality_with_exit_zero() {
    let o = fd(&["word-eq", "-- | d0", "-- | d1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("not equal\n"));
}
