//! Serializable reports of a built complex: JSON, LaTeX `pmatrix` blocks and
//! aligned plain text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{RuminComplex, ZOperator, OPERATOR_NAMES};
use crate::expr::ParseError;
use crate::field::{Rational, ScalarError, ScalarField};
use crate::matrix::Matrix;
use crate::operator::{GradedOperator, OperatorError};
use crate::pbw::PbwElement;
use crate::univariate::{UniPoly, ZRational};
use crate::verify::CheckResult;

#[derive(Debug, Error)]
pub enum ReportError {
  #[error("unknown operator `{0}`; expected one of {names}", names = OPERATOR_NAMES.join(", "))]
  UnknownOperator(String),
  #[error(transparent)]
  Scalar(#[from] ScalarError),
  #[error("cannot parse matrix entry `{entry}`: {source}")]
  Entry { entry: String, source: ParseError },
  #[error(transparent)]
  Operator(#[from] OperatorError),
  #[error("report has no operator `{0}`")]
  Missing(String),
}

/// Rejects unknown names before any computation.
pub fn check_operator_names(names: &[String]) -> Result<(), ReportError> {
  match names.iter().find(|n| !OPERATOR_NAMES.contains(&n.as_str())) {
    Some(bad) => Err(ReportError::UnknownOperator(bad.clone())),
    None => Ok(()),
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
  /// Source degree.
  pub degree: usize,
  pub target: usize,
  pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorReport {
  pub shift: i32,
  pub blocks: Vec<BlockReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenspaceReport {
  pub eigenvalue: String,
  pub projector: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexReport {
  pub group: String,
  pub parameters: Vec<String>,
  /// Values bound after the build, as rational strings.
  #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
  pub bindings: BTreeMap<String, String>,
  pub n0: usize,
  pub resolvent_route: String,
  /// Ordered basis of each degree, e.g. `theta^{1,3}`.
  pub frames: Vec<Vec<String>>,
  pub operators: BTreeMap<String, OperatorReport>,
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub spectral: Option<Vec<Vec<EigenspaceReport>>>,
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub betti: Option<Vec<usize>>,
  #[serde(default)]
  pub checks: Vec<CheckResult>,
}

fn render_matrix<T: Clone>(m: &Matrix<T>, f: impl Fn(&T) -> String) -> Vec<Vec<String>> {
  (0..m.rows()).map(|i| m.row(i).iter().map(&f).collect()).collect()
}

fn operator_report<G: crate::field::Field>(op: &GradedOperator<G>) -> OperatorReport {
  let blocks = op
    .degrees()
    .map(|k| BlockReport {
      degree: k,
      target: (k as i32 + op.shift()) as usize,
      entries: render_matrix(op.block(k).unwrap(), ToString::to_string),
    })
    .collect();
  OperatorReport { shift: op.shift(), blocks }
}

fn specialize_z<F: ScalarField>(
  z: &ZRational<F>,
  bindings: &BTreeMap<String, Rational>,
) -> Result<ZRational<F>, ScalarError> {
  let poly = |p: &UniPoly<F>| -> Result<UniPoly<F>, ScalarError> {
    Ok(UniPoly::new(p.coeffs().iter().map(|c| c.specialize(bindings)).collect::<Result<_, _>>()?))
  };
  ZRational::new(poly(z.numer())?, poly(z.denom())?).ok_or_else(|| {
    ScalarError::DenominatorVanishes(bindings.keys().cloned().collect::<Vec<_>>().join(", "))
  })
}

fn specialize_resolvent<F: ScalarField>(
  r: &ZOperator<F>,
  bindings: &BTreeMap<String, Rational>,
) -> Result<ZOperator<F>, ScalarError> {
  if bindings.is_empty() {
    return Ok(r.clone());
  }
  r.try_map(|z| specialize_z(z, bindings))
}

impl ComplexReport {
  /// Report of the selected operators; an empty selection means all.
  /// Nonempty `bindings` specialize every emitted matrix.
  pub fn new<F: ScalarField>(
    cx: &RuminComplex<F>,
    ops: &[String],
    bindings: &BTreeMap<String, Rational>,
    checks: Vec<CheckResult>,
  ) -> Result<Self, ReportError> {
    check_operator_names(ops)?;
    let selected: Vec<&str> =
      if ops.is_empty() { OPERATOR_NAMES.to_vec() } else { ops.iter().map(String::as_str).collect() };
    let frame = cx.ws.frame();
    let mut report = Self {
      group: cx.alg.name().to_string(),
      parameters: cx.alg.parameters().to_vec(),
      bindings: bindings.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
      n0: cx.n0(),
      resolvent_route: cx.route.to_string(),
      frames: (0..=frame.n()).map(|k| frame.basis(k).iter().map(ToString::to_string).collect()).collect(),
      operators: BTreeMap::new(),
      spectral: None,
      betti: None,
      checks,
    };
    for name in selected {
      match name {
        "betti" => report.betti = Some(cx.betti.clone()),
        "spectral" => {
          let Some(spec) = &cx.spectral else { continue };
          let mut degrees = Vec::new();
          for spaces in &spec.degrees {
            let mut out = Vec::new();
            for e in spaces {
              let eigenvalue = e.eigenvalue.specialize(bindings)?;
              let projector = e.projector.try_map(|c| c.specialize(bindings))?;
              out.push(EigenspaceReport {
                eigenvalue: eigenvalue.to_string(),
                projector: render_matrix(&projector, ToString::to_string),
              });
            }
            degrees.push(out);
          }
          report.spectral = Some(degrees);
        },
        "resolvent" => {
          let r = specialize_resolvent(&cx.resolvent, bindings)?;
          report.operators.insert(name.into(), operator_report(&r));
        },
        _ => {
          let op = cx.operator(name).expect("name checked");
          let op = if bindings.is_empty() { op.clone() } else { op.specialize(bindings)? };
          report.operators.insert(name.into(), operator_report(&op));
        },
      }
    }
    Ok(report)
  }

  pub fn to_json(&self) -> String { serde_json::to_string_pretty(self).expect("report serializes") }

  pub fn from_json(s: &str) -> serde_json::Result<Self> { serde_json::from_str(s) }

  /// Re-parses an emitted operator into a graded operator over `cx`'s algebra.
  pub fn parse_operator<F: ScalarField>(
    &self,
    name: &str,
    cx: &RuminComplex<F>,
  ) -> Result<GradedOperator<F>, ReportError> {
    let rep = self.operators.get(name).ok_or_else(|| ReportError::Missing(name.into()))?;
    let uea = cx.ws.uea();
    let mut blocks: Vec<Option<Matrix<PbwElement<F>>>> = vec![None; cx.ws.n() + 1];
    for b in &rep.blocks {
      let mut rows = Vec::with_capacity(b.entries.len());
      for row in &b.entries {
        let parsed: Result<Vec<_>, _> = row
          .iter()
          .map(|e| uea.parse(e).map_err(|source| ReportError::Entry { entry: e.clone(), source }))
          .collect();
        rows.push(parsed?);
      }
      let cols = cx.ws.frame().dim(b.degree);
      blocks[b.degree] = Some(if rows.is_empty() { Matrix::zeros(0, cols) } else { Matrix::from_rows(rows) });
    }
    Ok(GradedOperator::from_blocks(cx.ws.frame(), rep.shift, blocks)?)
  }

  /// Aligned plain text for every emitted object.
  pub fn to_text(&self) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group {} (N0 = {}, resolvent {})", self.group, self.n0, self.resolvent_route);
    if !self.bindings.is_empty() {
      let b: Vec<String> = self.bindings.iter().map(|(k, v)| format!("{k}={v}")).collect();
      let _ = writeln!(out, "bindings {}", b.join(", "));
    }
    for (k, basis) in self.frames.iter().enumerate() {
      let _ = writeln!(out, "frame {k}: {}", basis.join(" "));
    }
    for (name, op) in &self.operators {
      for b in &op.blocks {
        let _ = writeln!(out, "\n{name} ({} -> {}):", b.degree, b.target);
        out.push_str(&aligned(&b.entries));
      }
    }
    if let Some(spec) = &self.spectral {
      for (k, spaces) in spec.iter().enumerate() {
        for e in spaces {
          let _ = writeln!(out, "\nspectral {k}, eigenvalue {}:", e.eigenvalue);
          out.push_str(&aligned(&e.projector));
        }
      }
    }
    if let Some(b) = &self.betti {
      let parts: Vec<String> = b.iter().map(ToString::to_string).collect();
      let _ = writeln!(out, "\nbetti ({})", parts.join(","));
    }
    if !self.checks.is_empty() {
      let _ = writeln!(out);
      for c in &self.checks {
        let _ = writeln!(out, "{c}");
      }
    }
    out
  }
}

fn aligned(rows: &[Vec<String>]) -> String {
  let width = rows.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
  let mut out = String::new();
  for row in rows {
    let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
    let _ = writeln!(out, "[ {} ]", cells.join("  "));
  }
  out
}

fn pmatrix<T: Clone>(m: &Matrix<T>, f: impl Fn(&T) -> String) -> String {
  let rows: Vec<String> = (0..m.rows()).map(|i| m.row(i).iter().map(&f).collect::<Vec<_>>().join(" & ")).collect();
  format!("\\begin{{pmatrix}}{}\\end{{pmatrix}}", rows.join(" \\\\ "))
}

fn latex_name(name: &str) -> &str {
  match name {
    "d0" => "d_0",
    "d0inv" => "d_0^{-1}",
    "box0" => "\\Box_0",
    "pi0" => "\\Pi_0",
    "box" => "\\Box",
    "Linv" => "L^{-1}",
    "L1" => "L_1",
    "LdL" => "L^{-1}dL",
    "Pi" => "\\Pi",
    "dc" => "d_c",
    "g" => "\\hat g",
    other => other,
  }
}

/// LaTeX `align*` environment with one `pmatrix` per block, in the order given.
pub fn to_latex<F: ScalarField>(
  cx: &RuminComplex<F>,
  ops: &[String],
  bindings: &BTreeMap<String, Rational>,
) -> Result<String, ReportError> {
  check_operator_names(ops)?;
  let selected: Vec<&str> = if ops.is_empty() { OPERATOR_NAMES.to_vec() } else { ops.iter().map(String::as_str).collect() };
  let mut lines = Vec::new();
  for name in selected {
    match name {
      "betti" => {
        let parts: Vec<String> = cx.betti.iter().map(ToString::to_string).collect();
        lines.push(format!("b &= ({})", parts.join(",")));
      },
      "spectral" => {
        let Some(spec) = &cx.spectral else { continue };
        for (k, spaces) in spec.degrees.iter().enumerate() {
          for e in spaces {
            let ev = e.eigenvalue.specialize(bindings)?;
            let p = e.projector.try_map(|c| c.specialize(bindings))?;
            lines.push(format!(
              "\\Mat(\\Pi^{{({k})}}_{{{}}}) &= {}",
              ev.to_latex(),
              pmatrix(&p, |c: &F| c.to_latex())
            ));
          }
        }
      },
      "resolvent" => {
        let r = specialize_resolvent(&cx.resolvent, bindings)?;
        for k in r.degrees() {
          let body = pmatrix(r.block(k).unwrap(), |e: &PbwElement<ZRational<F>>| e.to_string());
          lines.push(format!("(z-\\Box^{{({k})}})^{{-1}} &= {body}"));
        }
      },
      _ => {
        let op = cx.operator(name).expect("name checked");
        let op = if bindings.is_empty() { op.clone() } else { op.specialize(bindings)? };
        for k in op.degrees() {
          let body = pmatrix(op.block(k).unwrap(), PbwElement::to_latex);
          lines.push(format!("\\Mat({}^{{({k})}}) &= {body}", latex_name(name)));
        }
      },
    }
  }
  Ok(format!("\\begin{{align*}}\n{}\n\\end{{align*}}\n", lines.join(",\\\\\n")))
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::complex::BuildOptions;
  use crate::lie::catalog;

  #[test]
  fn json_round_trip_heisenberg() {
    let cx = RuminComplex::build(&catalog("heisenberg3").unwrap(), BuildOptions::default()).unwrap();
    let rep = ComplexReport::new(&cx, &[], &BTreeMap::new(), Vec::new()).unwrap();
    let back = ComplexReport::from_json(&rep.to_json()).unwrap();
    assert_eq!(back, rep);
    for name in ["d", "P", "L", "D", "C", "dc", "h"] {
      assert_eq!(&back.parse_operator(name, &cx).unwrap(), cx.operator(name).unwrap(), "{name}");
    }
  }

  #[test]
  fn unknown_operator_rejected() {
    let err = check_operator_names(&["D".into(), "Q".into()]).unwrap_err();
    assert!(err.to_string().contains("`Q`"));
  }

  #[test]
  fn latex_layout() {
    let cx = RuminComplex::build(&catalog("heisenberg3").unwrap(), BuildOptions::default()).unwrap();
    let tex = to_latex(&cx, &["d".into()], &BTreeMap::new()).unwrap();
    assert!(tex.starts_with("\\begin{align*}"));
    assert!(tex.contains("\\Mat(d^{(0)}) &= \\begin{pmatrix}X_{1} \\\\ X_{2} \\\\ X_{3}\\end{pmatrix}"));
  }
}
