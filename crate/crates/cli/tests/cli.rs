use std::path::PathBuf;
use std::process::{Command, Output};

use genuslab::catalog::{build, VarietyJson};
use genuslab::arith::Rational;

fn genuslab(args: &[&str]) -> Output {
    genuslab_env(args, &[])
}

fn genuslab_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_genuslab"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("genuslab-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn compute_k3_row() {
    let o = genuslab(&["compute", "--variety", "k3-quartic", "--qmax", "24"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("q^(0): 2*y^(-1) + 20 + 2*y\n"), "{s}");
    assert!(s.contains("truncation: q^(3)"));
}

#[test]
fn compute_p2_row() {
    let o = genuslab(&["compute", "--variety", "p2", "--alpha", "none", "--qmax", "8"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("q^(0): y^(-1) + 1 + y\n"));
}

#[test]
fn compute_torus_json() {
    let o = genuslab(&["compute", "--variety", "torus2", "--alpha", "omega", "--qmax", "8", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["weight"], -1);
    assert_eq!(v["index"], serde_json::json!([1, 2]));
    assert_eq!(v["truncation"], 8);
}

#[test]
fn check_passes_and_fails() {
    let ok = genuslab(&["check", "--variety", "quintic"]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));
    let bad = genuslab(&["check", "--variety", "p2", "--check", "m3"]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("modular3: FAIL y^("));
}

#[test]
fn membership_needs_enough_coefficients() {
    let o = genuslab(&["check", "--variety", "k3-quartic", "--qmax", "0", "--check", "membership"]);
    assert_eq!(code(&o), 4);
    let o = genuslab(&["check", "--variety", "torus2", "--qmax", "0", "--check", "m3"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn specialize_values() {
    let o = genuslab(&["specialize", "--variety", "k3-quartic", "--kind", "signature"]);
    assert_eq!(stdout(&o), "k3-quartic signature: -16\n");
    let o = genuslab(&["specialize", "--variety", "p2", "--kind", "euler", "--convention", "normalized"]);
    assert_eq!(stdout(&o), "p2 euler: 3\n");
}

#[test]
fn identities() {
    for args in [vec!["mckay"], vec!["kequiv"], vec!["kequiv", "--convention", "normalized"]] {
        let o = genuslab(&args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
    }
    let o = genuslab(&["kequiv", "--variety", "p1xp1", "--target", "p2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("first difference at q^(0)"));
}

#[test]
fn validation_errors_exit_2() {
    assert_eq!(code(&genuslab(&["compute", "--variety", "nowhere"])), 2);
    assert_eq!(code(&genuslab(&["compute", "--variety", "p2", "--alpha", "missing"])), 2);
    assert_eq!(code(&genuslab(&["compute", "--variety", "p2", "--convention", "odd"])), 2);

    let mut j = VarietyJson::from(&build("blowup-p2").unwrap());
    j.divisors[0].delta = Rational::from_integer(-1);
    let p = temp_file("notklt.json", &serde_json::to_string(&j).unwrap());
    let o = genuslab(&["compute", "--file", p.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Kawamata"));
}

#[test]
fn bookkeeping_errors_exit_3() {
    let mut j = VarietyJson::from(&build("kummer").unwrap());
    let t = &mut j.sectors[1].components[0].twisted_parts[0];
    t.lambda_g = Rational::zero();
    t.lambda_h = Rational::zero();
    let p = temp_file("bookkeeping.json", &serde_json::to_string(&j).unwrap());
    let o = genuslab(&["compute", "--file", p.to_str().unwrap()]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn torsion_tables() {
    let trivial = temp_file("trivial.json", r#"{"entries": []}"#);
    let a = genuslab(&["compute", "--variety", "kummer", "--json"]);
    let b = genuslab(&["compute", "--variety", "kummer", "--json", "--torsion", trivial.to_str().unwrap()]);
    assert_eq!(code(&b), 0);
    assert_eq!(a.stdout, b.stdout);

    let bad = temp_file(
        "bad.json",
        r#"{"entries": [{"g": "s", "h": "1", "root": "1/2"}]}"#,
    );
    let o = genuslab(&["compute", "--variety", "kummer", "--torsion", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn output_is_stable_across_thread_counts() {
    let args = ["compute", "--variety", "kummer", "--json"];
    let one = genuslab_env(&args, &[("GENUSLAB_THREADS", "1")]);
    let four = genuslab_env(&args, &[("GENUSLAB_THREADS", "4")]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn out_file_matches_json() {
    let p = std::env::temp_dir().join(format!("genuslab-cli-{}-out.json", std::process::id()));
    let o = genuslab(&["compute", "--variety", "p1", "--json", "--out", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read(&p).unwrap(), o.stdout);
}
