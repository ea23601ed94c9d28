use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn homfly(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homfly"))
        .args(args)
        .arg("--cache")
        .arg(cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn torus_trefoil_layout() {
    let dir = tempfile::tempdir().unwrap();
    let o = homfly(
        &["torus", "-r", "2", "-k", "3", "-l", "1", "--colors", "1"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("W_{1}(T(2, 3)) = nu^(3/2) [ t^(-3/2) s*(2) - t^(3/2) s*(1,1) ]")
    );
}

#[test]
fn torus_hopf_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = homfly(
        &[
            "torus", "-r", "1", "-k", "1", "-l", "2", "--colors", "1|1", "--json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["link"]["name"], "T(2, 2)");
    let basis = v["sstar_basis"].as_array().unwrap();
    assert_eq!(basis.len(), 2);
    assert_eq!(basis[0]["lambda"], "2");
    assert_eq!(basis[0]["t_exp"], "-1");
    assert_eq!(basis[1]["lambda"], "1,1");
    assert_eq!(basis[1]["t_exp"], "1");
}

#[test]
fn validation_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = homfly(
        &["torus", "-r", "2", "-k", "2", "--colors", "1"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not coprime"));
    let o = homfly(&["torus", "-r", "2"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = homfly(
        &["torus", "-r", "1", "-k", "1", "-l", "2", "--colors", "1"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let o = homfly(&["lmv", "-r", "2", "-k", "3", "--caps", "9"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = homfly(&["oracle", "--max-cells", "7"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn lmv_unknot() {
    let dir = tempfile::tempdir().unwrap();
    let o = homfly(
        &["lmv", "-r", "1", "-k", "0", "--caps", "1", "--json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let bps = v["bps"].as_array().unwrap();
    let got: Vec<(String, u64, String, String)> = bps
        .iter()
        .map(|e| {
            (
                e["mu"].as_str().unwrap().to_string(),
                e["g"].as_u64().unwrap(),
                e["Q"].as_str().unwrap().to_string(),
                e["N"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert_eq!(
        got,
        vec![
            ("1".into(), 0, "-1/2".into(), "-1".into()),
            ("1".into(), 0, "1/2".into(), "1".into()),
        ]
    );
    assert_eq!(v["flags"]["all_integer"], true);
    assert!(v["findings"].as_array().unwrap().is_empty());
}

#[test]
fn lmv_trefoil_integral() {
    let dir = tempfile::tempdir().unwrap();
    let o = homfly(
        &["lmv", "-r", "2", "-k", "3", "--caps", "3", "--json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["flags"]["all_integer"], true);
    assert_eq!(v["flags"]["q_parity_uniform"], true);
}

#[test]
fn corrupted_entry_is_a_finding() {
    let dir = tempfile::tempdir().unwrap();
    let o = homfly(
        &[
            "lmv",
            "-r",
            "2",
            "-k",
            "3",
            "--caps",
            "2",
            "--corrupt",
            "--json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    let findings = v["findings"].as_array().unwrap();
    assert_eq!(findings.len(), 1);
    assert_eq!(findings[0]["stage"], "certify");
    assert!(findings[0]["error"]
        .as_str()
        .unwrap()
        .contains("polynomial"));
}

#[test]
fn g_table_trefoil_like() {
    let dir = tempfile::tempdir().unwrap();
    let o = homfly(
        &["g-table", "-r", "2", "-k", "1", "--sizes", "4"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("g[1,1,1,1; 2,2,2,2] = u^3 + 2u + 1 + 2u^-1 + u^-3"));
    assert!(!text.contains("false"));
}

#[test]
fn oracle_and_selftest_pass() {
    let dir = tempfile::tempdir().unwrap();
    let o = homfly(&["oracle", "--max-cells", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
    let o = homfly(&["selftest", "--only", "1,3", "--json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
    assert_eq!(v["passed"], true);
}

#[test]
fn cache_never_changes_results() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "torus", "-r", "3", "-k", "2", "-l", "1", "--colors", "2", "--json",
    ];
    let first = homfly(&args, dir.path());
    let files: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert!(!files.is_empty());
    for f in &files {
        std::fs::write(f, b"{ not a table").unwrap();
    }
    let second = homfly(&args, dir.path());
    let fresh = tempfile::tempdir().unwrap();
    let third = homfly(&args, fresh.path());
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, third.stdout);
}
