use std::path::PathBuf;
use std::process::{Command, Output};

use hplane_core::{normalize, parse, Expr};

fn hplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hplane")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

/// Parse CLI output and the expected string, then compare as algebra elements.
fn same_element(printed: &str, expected: &str) -> bool {
    let a: Expr = parse(printed.trim()).expect("output parses");
    normalize(&a).unwrap() == normalize(&parse(expected).unwrap()).unwrap()
}

#[test]
fn normalize_examples() {
    let o = hplane(&["normalize", "theta*x"]);
    assert!(o.status.success());
    assert!(same_element(&stdout(&o), "x*theta - h*x*phi + h*y*theta + h*hp*y*phi"));

    let o = hplane(&["normalize", "x*y - y*x", "--subst", "hp=0"]);
    assert_eq!(stdout(&o).trim(), "0");

    let o = hplane(&["normalize", "pph*phi"]);
    assert!(same_element(&stdout(&o), "1 - phi*pph + hp*phi*pth"));
}

#[test]
fn normalize_formats() {
    let o = hplane(&["normalize", "phi*theta", "--format", "latex"]);
    assert_eq!(stdout(&o).trim(), "- \\theta \\phi");
    let o = hplane(&["normalize", "1/2*h*pph*theta", "--format", "json"]);
    let json = stdout(&o);
    assert!(json.starts_with("{\"version\":1"));
    assert!(!json.contains('.'));
}

#[test]
fn normalize_substitutions_compose() {
    let o = hplane(&["normalize", "pph*theta", "--subst", "hp=-h"]);
    assert!(same_element(&stdout(&o), "-theta*pph - h*theta*pth + h*phi*pph + h^2*phi*pth"));
    let o = hplane(&["normalize", "pph*theta", "--subst", "h=hp", "--subst", "hp=0"]);
    assert!(same_element(&stdout(&o), "-theta*pph"));
    let o = hplane(&["normalize", "theta*theta", "--subst", "h=0"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hplane(&["normalize", "theta +"]).status.code(), Some(2));
    assert_eq!(hplane(&["normalize", "theta", "--subst", "h=2"]).status.code(), Some(2));
    assert_eq!(hplane(&["normalize", "theta", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(hplane(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(hplane(&["matrix", "--t", "1/0"]).status.code(), Some(2));
    assert_eq!(hplane(&["matrix", "--t", "theta"]).status.code(), Some(2));
    assert_eq!(hplane(&["derive", "nonsense"]).status.code(), Some(2));
    assert_eq!(hplane(&["verify", "--rules-file", "/nonexistent/rules.txt"]).status.code(), Some(2));
}

#[test]
fn fuel_limit_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_hplane"))
        .args(["normalize", "pph*theta*x*y*x*theta"])
        .env("HPLANE_FUEL", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn matrix_output() {
    let o = hplane(&["matrix", "--t", "0"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().next().unwrap().contains("h*hp"));
    let o = hplane(&["matrix", "--t", "1"]);
    let rows: Vec<Vec<String>> = stdout(&o)
        .lines()
        .map(|l| l.trim_matches(|c| c == '[' || c == ']' || c == ' ').split_whitespace().map(String::from).collect())
        .collect();
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            assert_eq!(v, if r == c { "1" } else { "0" });
        }
    }
    let o = hplane(&["matrix", "--t", "0", "--format", "latex"]);
    assert!(stdout(&o).starts_with("\\begin{pmatrix}"));
    let o = hplane(&["matrix", "--t", "-1/2", "--format", "json"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"order\":[\"11\",\"12\",\"21\",\"22\"]"));
}

#[test]
fn derive_phase_space_sets() {
    let o = hplane(&["derive", "phase-space"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 10);
    assert!(text.contains("pi_phi^2 = hp*pi_theta*pi_phi"));
    assert!(text.contains("pi_phi*theta_hat = (1/2*hp + 1/2*h)"));

    let o = hplane(&["derive", "phase-space", "--hprime", "minus-h"]);
    let text = stdout(&o);
    assert!(text.contains("pi_phi^2 = - h*pi_theta*pi_phi"));
    assert!(text.contains("pi_phi*phi_hat = 1 - h*phi_hat*pi_theta - phi_hat*pi_phi"));

    let o = hplane(&["derive", "phase-space", "--hprime", "equal-h"]);
    assert!(stdout(&o).contains("pi_phi*theta_hat = h - "));

    let o = hplane(&["derive", "phase-space", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["relations"].as_array().unwrap().len(), 10);
}

#[test]
fn verify_exit_codes() {
    for suite in ["calculus", "rmatrix", "confluence", "phase-space"] {
        assert_eq!(hplane(&["verify", "--suite", suite]).status.code(), Some(0), "{suite}");
    }
    let o = hplane(&["verify", "--suite", "rmatrix", "--rules-file", &fixture("corrupted_rules.txt")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL relations/derivative-differential(2,1)"));
    let o = hplane(&["verify", "--suite", "confluence", "--rules-file", &fixture("corrupted_rules.txt")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_json_is_deterministic() {
    let a = hplane(&["verify", "--suite", "confluence", "--json"]);
    let b = hplane(&["verify", "--suite", "confluence", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["suite"], "confluence");
    assert_eq!(v["pass"], true);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}
