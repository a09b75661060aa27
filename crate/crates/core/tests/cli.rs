mod common;

use std::process::{Command, Output};

use common::{golden_path, golden_text};
use supersquares::document::parse_documents;

fn ssq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssq")).args(args).env_remove("SSQ_JOBS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn golden(name: &str) -> String {
    golden_path(name).to_string_lossy().into_owned()
}

#[test]
fn field_gf4_reports_k() {
    let o = ssq(&["field", "--p", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("K = {0, 1}"), "{out}");
    assert!(out.contains("x^2 + x + 1"));
    assert!(out.contains("tr(m) = 1"));
}

#[test]
fn field_gf8_has_four_trace_zero_elements() {
    let o = ssq(&["field", "--p", "2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("|K| = 4"));
}

#[test]
fn field_rejects_composite_p() {
    let o = ssq(&["field", "--p", "4", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("p must be prime"));
}

#[test]
fn missing_arguments_are_usage_errors() {
    assert_eq!(ssq(&["field", "--p", "2"]).status.code(), Some(2));
    assert_eq!(ssq(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ssq(&["construct", "--type", "typeIII", "--d", "4", "--v1", "1,0", "--v2", "0,1"]).status.code(), Some(2));
    assert_eq!(ssq(&["--help"]).status.code(), Some(0));
}

#[test]
fn construct_type_i_ascii() {
    let o = ssq(&["construct", "--type", "typeI", "--d", "4", "--v1", "1,m^2", "--v2", "0,m", "--format", "ascii"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("latin, supersquare, extraordinary").count(), 5);
    assert_eq!(out.lines().filter(|l| l.len() == 7).count(), 20);
}

#[test]
fn construct_type_ii_rejects_non_unit_determinant() {
    let o = ssq(&["construct", "--type", "typeII", "--d", "4", "--v1", "1,m^2", "--v2", "0,m"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("determinant must equal 1"));
}

#[test]
fn construct_rejects_dependent_vectors() {
    let o = ssq(&["construct", "--type", "fan", "--d", "4", "--v1", "1,1", "--v2", "m,m"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("basis"));
}

#[test]
fn construct_bad_point_syntax_is_usage() {
    let o = ssq(&["construct", "--type", "fan", "--d", "4", "--v1", "1;1", "--v2", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ssq(&["construct", "--type", "fan", "--d", "6", "--v1", "1,0", "--v2", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn construct_json_feeds_check_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    let o = ssq(&["construct", "--type", "example", "--d", "4", "--v1", "1,0", "--v2", "0,1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let path = dir.path().join("fig4.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let docs = parse_documents(&stdout(&o)).unwrap();
    assert_eq!(docs.len(), 5);

    let c = ssq(&["check", path.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0), "{}", stdout(&c));

    let k = ssq(&["classify", path.to_str().unwrap()]);
    assert_eq!(k.status.code(), Some(0));
    let out = stdout(&k);
    assert_eq!(out.matches("latin, supersquare").count(), 2, "{out}");
}

#[test]
fn check_figure_documents() {
    assert_eq!(ssq(&["check", &golden("fig4.json")]).status.code(), Some(0));
    assert_eq!(ssq(&["check", &golden("fig5.json")]).status.code(), Some(0));
    assert_eq!(ssq(&["check", &golden("fig6.json")]).status.code(), Some(0));
}

#[test]
fn check_square_against_itself() {
    let o = ssq(&["check", &golden("fig2.json"), &golden("fig2.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("label pair"));
}

#[test]
fn check_needs_two_squares() {
    assert_eq!(ssq(&["check", &golden("fig2.json")]).status.code(), Some(2));
}

#[test]
fn check_truncated_json() {
    let dir = tempfile::tempdir().unwrap();
    let text = golden_text("fig4.json");
    let path = dir.path().join("broken.json");
    std::fs::write(&path, &text[..text.len() / 2]).unwrap();
    let o = ssq(&["check", path.to_str().unwrap(), &golden("fig2.json")]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(ssq(&["check", "/nonexistent/a.json", &golden("fig2.json")]).status.code(), Some(3));
}

#[test]
fn classify_figures() {
    let first = |name: &str| stdout(&ssq(&["classify", &golden(name)])).lines().next().unwrap_or("").to_string();
    // its block through (0,0) is the diagonal subgroup, so it is extraordinary but not a supersquare
    assert_eq!(first("fig1.json"), "row-latin, extraordinary");
    assert_eq!(first("fig2.json"), "latin, supersquare, extraordinary");
    assert_eq!(first("fig6e.json"), "general, supersquare, extraordinary");
    let out = stdout(&ssq(&["classify", &golden("fig2.json")]));
    assert!(out.contains("generating subgroup {(0,0), (1,1), (m,m), (m^2,m^2)}"), "{out}");
}

#[test]
fn render_reproduces_figure_text() {
    let o = ssq(&["render", &golden("fig1.json")]);
    assert_eq!(stdout(&o), golden_text("fig1.txt"));
    let o = ssq(&["render", &golden("fig5.json")]);
    assert_eq!(stdout(&o), golden_text("fig5.txt"));
    let o = ssq(&["render", "--canonical", &golden("fig6.json")]);
    assert_eq!(stdout(&o), golden_text("fig6.canonical.txt"));
    let top = stdout(&ssq(&["render", "--origin", "top", &golden("fig2.json")]));
    assert_eq!(top.lines().next(), Some("1 2 3 4"));
}

fn report(args: &[&str]) -> serde_json::Value {
    let o = ssq(args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn enumerate_extraordinary_d4() {
    let r = report(&["enumerate", "extraordinary", "--d", "4"]);
    assert_eq!(r["counts"]["extraordinary"], 15);
    assert_eq!(r["counts"]["listed"], 15);
}

#[test]
fn enumerate_complete_sets_d4() {
    let r = report(&["enumerate", "complete-sets", "--d", "4", "--extraordinary", "--list"]);
    assert_eq!(r["counts"]["complete_sets"], 6);
    assert_eq!(r["counts"]["TypeI"], 1);
    assert_eq!(r["counts"]["TypeII"], 5);
    assert_eq!(r["items"].as_array().unwrap().len(), 6);
}

#[test]
fn enumerate_d8_digest_is_stable_across_jobs() {
    let a = report(&["enumerate", "complete-sets", "--d", "8", "--extraordinary", "--count-only", "--jobs", "1"]);
    let o = Command::new(env!("CARGO_BIN_EXE_ssq"))
        .args(["enumerate", "complete-sets", "--d", "8", "--extraordinary", "--count-only"])
        .env("SSQ_JOBS", "4")
        .output()
        .unwrap();
    let b: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(a["counts"]["complete_sets"].as_u64().unwrap() > 0);
    assert_eq!(a["digest"], b["digest"]);
    assert_eq!(a["counts"], b["counts"]);
    assert!(a.get("items").is_none());
}

#[test]
fn enumerate_unsupported_order() {
    assert_eq!(ssq(&["enumerate", "complete-sets", "--d", "9"]).status.code(), Some(2));
    assert_eq!(ssq(&["enumerate", "subgroups", "--d", "32"]).status.code(), Some(2));
    assert_eq!(ssq(&["enumerate", "subgroups", "--d", "4", "--jobs", "0"]).status.code(), Some(2));
}

#[test]
fn verify_selections() {
    let o = ssq(&["verify", "--theorem", "4.13", "--d", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));
    let o = ssq(&["verify", "--theorem", "3.5b", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("max = 4 = d+1"));
    assert_eq!(ssq(&["verify", "--theorem", "4.7", "--d", "4"]).status.code(), Some(0));
    assert_eq!(ssq(&["verify", "--theorem", "4.8", "--d", "4"]).status.code(), Some(0));
    assert_eq!(ssq(&["verify", "--theorem", "4.3", "--d", "5"]).status.code(), Some(0));
    assert_eq!(ssq(&["verify", "--theorem", "4.8", "--d", "3"]).status.code(), Some(2));
    assert_eq!(ssq(&["verify", "--theorem", "4.3", "--d", "4"]).status.code(), Some(2));
    assert_eq!(ssq(&["verify", "--theorem", "9.9", "--d", "4"]).status.code(), Some(2));
}
