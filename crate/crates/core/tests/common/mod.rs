#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use rumin_core::{
  catalog, BuildOptions, GradedOperator, Matrix, PbwElement, RationalFunction, RfComplex, RuminComplex,
};

/// One block of a golden file: header tokens after `==`, then rows.
pub struct GoldenBlock {
  pub header: Vec<String>,
  pub rows: Vec<Vec<String>>,
}

pub fn golden_path(name: &str) -> PathBuf {
  PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/engel").join(name)
}

pub fn load_golden(name: &str) -> Vec<GoldenBlock> {
  let text = std::fs::read_to_string(golden_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
  let mut blocks: Vec<GoldenBlock> = Vec::new();
  for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
    if let Some(h) = line.strip_prefix("==") {
      blocks.push(GoldenBlock { header: h.split_whitespace().map(String::from).collect(), rows: Vec::new() });
    } else {
      let block = blocks.last_mut().expect("row before the first header");
      block.rows.push(line.split(';').map(|s| s.trim().to_string()).collect());
    }
  }
  blocks
}

pub fn engel() -> RfComplex { RuminComplex::build(&catalog("engel").unwrap(), BuildOptions::default()).unwrap() }

/// Parses golden rows through the enveloping algebra, which normalizes them.
pub fn golden_matrix(cx: &RfComplex, rows: &[Vec<String>]) -> Matrix<PbwElement<RationalFunction>> {
  let uea = cx.ws.uea();
  Matrix::from_rows(
    rows.iter().map(|r| r.iter().map(|e| uea.parse(e).unwrap_or_else(|err| panic!("`{e}`: {err}"))).collect()).collect(),
  )
}

/// First mismatch between a computed operator and a golden file, if any.
pub fn golden_mismatch(cx: &RfComplex, op: &GradedOperator<RationalFunction>, file: &str) -> Option<String> {
  let blocks = load_golden(file);
  let covered: Vec<usize> = blocks.iter().map(|b| b.header[0].parse().unwrap()).collect();
  let degrees: Vec<usize> = op.degrees().collect();
  if covered != degrees {
    return Some(format!("{file}: golden degrees {covered:?}, computed {degrees:?}"));
  }
  for b in &blocks {
    let k: usize = b.header[0].parse().unwrap();
    let want = golden_matrix(cx, &b.rows);
    let got = op.block(k).unwrap();
    if want.shape() != got.shape() {
      return Some(format!("{file} k={k}: shape {:?} vs computed {:?}", want.shape(), got.shape()));
    }
    if let Some((i, j, e)) = got.entries().find(|(i, j, e)| *e != want.get(*i, *j)) {
      return Some(format!("{file} k={k} ({}, {}): computed {e}, expected {}", i + 1, j + 1, want.get(i, j)));
    }
  }
  None
}
