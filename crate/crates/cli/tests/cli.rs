use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn quadlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadlat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn list_is_sorted() {
    let o = quadlat(&["checks", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let ids: Vec<String> = stdout(&o).lines().map(|l| l.split_whitespace().next().unwrap().to_owned()).collect();
    assert!(ids.len() >= 20);
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn unknown_id_is_usage_error() {
    let o = quadlat(&["checks", "run", "--name", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("nosuch"));
    assert!(err.contains("sat.511"));
}

#[test]
fn missing_selector_is_usage_error() {
    assert_eq!(quadlat(&["checks", "run"]).status.code(), Some(2));
    assert_eq!(quadlat(&["checks", "run", "--all", "--name", "oadp"]).status.code(), Some(2));
    assert_eq!(quadlat(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_reports_are_sorted_and_complete() {
    let o = quadlat(&["checks", "run", "--name", "pfaffian", "--name", "lattice.m.gram", "--name", "oadp", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let ids: Vec<&str> = reports.iter().map(|r| r["check_id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["lattice.m.gram", "oadp", "pfaffian"]);
    for r in &reports {
        assert_eq!(r["status"], "pass");
        assert!(r["elapsed_ms"].is_u64());
        assert!(r["reference"].is_string());
        assert!(r["details"].is_object());
    }
    assert_eq!(reports[0]["details"]["determinant"], 3072);
}

#[test]
fn results_independent_of_thread_count() {
    let strip = |o: &Output| -> Vec<Value> {
        stdout(o)
            .lines()
            .map(|l| {
                let mut v: Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("elapsed_ms");
                v
            })
            .collect()
    };
    let args = ["checks", "run", "--name", "scroll.screen", "--name", "lattice.n.planes", "--name", "phi3.k3-exists", "--json"];
    let one = quadlat(&[&args[..], &["--threads", "1"]].concat());
    let four = quadlat(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(strip(&one), strip(&four));
}

#[test]
fn single_saturation_run() {
    let o = quadlat(&["checks", "run", "--name", "sat.511", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    let r: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(r["details"]["classes"], 511);
}

#[test]
fn show_m_invariants() {
    let o = quadlat(&["lat", "show", "M", "--invariants"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("determinant: 3072"));
    assert!(s.contains("signature: (10, 0)"));
    assert!(s.contains("parity: even"));
}

#[test]
fn show_n_planes() {
    let o = quadlat(&["lat", "show", "N", "--planes", "--json"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["plane_count"], 19);
    assert_eq!(v["planes"].as_array().unwrap().len(), 19);
}

#[test]
fn show_e8_2_roots() {
    let o = quadlat(&["lat", "show", "E8(2)", "--roots", "4", "--json"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["count"], 240);
    let o = quadlat(&["lat", "show", "A2", "--roots", "2", "--vectors", "--json"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["vectors"], serde_json::json!([[-1, -1], [-1, 0], [0, -1], [0, 1], [1, 0], [1, 1]]));
}

#[test]
fn show_output_is_stable() {
    let a = quadlat(&["lat", "show", "Ktilde", "--disc", "--invariants", "--json"]);
    let b = quadlat(&["lat", "show", "Ktilde", "--disc", "--invariants", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn file_targets() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("u.json");
    std::fs::write(&good, r#"{"name": "U", "labels": ["e", "f"], "gram": [[0, 1], [1, 0]]}"#).unwrap();
    let o = quadlat(&["lat", "show", good.to_str().unwrap(), "--invariants"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("signature: (1, 1)"));

    let asym = dir.path().join("asym.json");
    std::fs::write(&asym, r#"{"name": "x", "labels": ["a", "b"], "gram": [[2, 1], [0, 2]]}"#).unwrap();
    let o = quadlat(&["lat", "show", asym.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not symmetric"));

    let broken = dir.path().join("broken.json");
    let mut f = std::fs::File::create(&broken).unwrap();
    write!(f, "{{\n  \"name\": \"x\",\n  \"gram\": [[1,\n}}").unwrap();
    let o = quadlat(&["lat", "show", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn export_round_trips() {
    let o = quadlat(&["lat", "export", "Ktilde"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kt.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let o = quadlat(&["lat", "show", path.to_str().unwrap(), "--invariants"]);
    assert!(stdout(&o).contains("determinant: 49152"));
}

#[test]
fn unknown_lattice_is_usage_error() {
    let o = quadlat(&["lat", "show", "Q7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("catalog names"));
}

#[test]
fn hassett_sweep_rows() {
    let o = quadlat(&["hassett", "sweep", "--dmax", "100", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 31);
    assert!(rows.iter().all(|r| r["disc_check"] == true));
    let d14 = rows.iter().find(|r| r["d"] == 14).unwrap();
    assert_eq!(d14["v_coords"], serde_json::json!([0, 1, 0, -1, 0, -1, 0, -1, 0, -1, 0]));
}

#[test]
fn delpezzo_json() {
    let o = quadlat(&["delpezzo", "verify", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["details"]["lines"], 27);
    assert_eq!(v["details"]["sixers"], 72);
    assert_eq!(v["details"]["double_sixes"], 36);
}
