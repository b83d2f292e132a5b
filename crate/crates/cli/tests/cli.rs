use std::path::PathBuf;
use std::process::{Command, Output};

fn rumin(args: &[&str]) -> Output {
  Command::new(env!("CARGO_BIN_EXE_rumin")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
  PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String { String::from_utf8_lossy(&o.stdout).into_owned() }
fn stderr(o: &Output) -> String { String::from_utf8_lossy(&o.stderr).into_owned() }

#[test]
fn catalog_lists_engel() {
  let o = rumin(&["catalog"]);
  assert!(o.status.success());
  assert!(stdout(&o).contains("engel        n=4 weights=(1,1,2,3) [t]"), "{}", stdout(&o));
}

#[test]
fn validate_accepts_engel() {
  let o = rumin(&["validate", "--group", "engel"]);
  assert_eq!(o.status.code(), Some(0));
  assert_eq!(stdout(&o), "engel: valid\n");
}

#[test]
fn malformed_group_file_is_an_error() {
  let o = rumin(&["validate", "--group", &fixture("malformed.json")]);
  assert_eq!(o.status.code(), Some(2));
  assert!(stderr(&o).contains("cannot load"), "{}", stderr(&o));
  assert_eq!(rumin(&["validate", "--group", "no_such_group.json"]).status.code(), Some(2));
}

#[test]
fn broken_jacobi_is_reported() {
  let path = fixture("broken_jacobi.json");
  let o = rumin(&["validate", "--group", &path]);
  assert_eq!(o.status.code(), Some(1));
  assert!(stdout(&o).contains("Jacobi identity fails for (X1,X2,X3): X5 coefficient -1"), "{}", stdout(&o));
  let o = rumin(&["validate", "--group", &path, "--format", "json"]);
  let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
  assert_eq!(v["valid"], false);
  assert_eq!(rumin(&["verify", "--group", &path]).status.code(), Some(1));
}

#[test]
fn verify_engel_full() {
  let o = rumin(&["verify", "--group", "engel", "--level", "full"]);
  assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
  assert!(stdout(&o).trim_end().ends_with("0 failed"));
}

#[test]
fn verify_heisenberg_json() {
  let o = rumin(&["verify", "--group", "heisenberg3", "--format", "json"]);
  assert_eq!(o.status.code(), Some(0));
  let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
  assert!(v.as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn compute_latex_for_d() {
  let o = rumin(&["compute", "--group", "engel", "--op", "D", "--format", "latex"]);
  assert!(o.status.success(), "{}", stderr(&o));
  let s = stdout(&o);
  assert!(s.contains("\\begin{align*}"));
  assert!(s.contains("\\Mat(D^{(1)})"));
}

#[test]
fn bind_early_merges_eigenvalues() {
  let o = rumin(&["compute", "--group", "engel", "--bind", "t=1", "--bind-early", "--op", "spectral", "--format", "json"]);
  assert!(o.status.success(), "{}", stderr(&o));
  let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
  let k1 = &v["spectral"][1];
  let eig: Vec<&str> = k1.as_array().unwrap().iter().map(|e| e["eigenvalue"].as_str().unwrap()).collect();
  assert_eq!(eig, ["0", "1"]);
}

#[test]
fn late_binding_keeps_three_eigenvalues() {
  let o = rumin(&["compute", "--group", "engel", "--bind", "t=1", "--op", "spectral", "--format", "json"]);
  assert!(o.status.success(), "{}", stderr(&o));
  let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
  assert_eq!(v["spectral"][1].as_array().unwrap().len(), 3);
}

#[test]
fn abelian_rumin_differential_is_d() {
  let o = rumin(&["compute", "--group", "abelian3", "--op", "dc", "--op", "d", "--format", "json"]);
  assert!(o.status.success(), "{}", stderr(&o));
  let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
  assert_eq!(v["operators"]["dc"], v["operators"]["d"]);
}

#[test]
fn direct_resolvent_route() {
  let o = rumin(&["verify", "--group", "engel1", "--resolvent", "direct", "--level", "fast"]);
  assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn parameterized_group_file() {
  let o = rumin(&["verify", "--group", &fixture("heisenberg_t.json")]);
  assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn unknown_operator_and_parameter_are_errors() {
  let o = rumin(&["compute", "--group", "engel", "--op", "nope"]);
  assert_eq!(o.status.code(), Some(2));
  assert!(stderr(&o).contains("nope"));
  assert_eq!(rumin(&["compute", "--group", "engel", "--bind", "s=2"]).status.code(), Some(2));
}

#[test]
fn writes_to_output_directory() {
  let dir = std::env::temp_dir().join(format!("rumin-cli-test-{}", std::process::id()));
  let o = rumin(&["compute", "--group", "heisenberg3", "--format", "json", "--out", dir.to_str().unwrap()]);
  assert!(o.status.success(), "{}", stderr(&o));
  let body = std::fs::read_to_string(dir.join("heisenberg3.json")).unwrap();
  assert!(body.contains("\"group\""));
  std::fs::remove_dir_all(dir).unwrap();
}
