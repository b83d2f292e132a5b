//! The identity suite: every operator identity of the construction, checked
//! exactly and degree by degree on a built complex.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::RuminComplex;
use crate::field::{Field, ScalarField};
use crate::matrix::Matrix;
use crate::operator::{box_sign, d_sign, GradedOperator, WeightProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
  /// Idempotents, squares to zero and `L·L⁻¹ = I`.
  Fast,
  #[default]
  Full,
}

impl std::str::FromStr for Level {
  type Err = String;

  fn from_str(s: &str) -> Result<Self, String> {
    match s {
      "fast" => Ok(Self::Fast),
      "full" => Ok(Self::Full),
      _ => Err(format!("unknown level `{s}` (expected fast or full)")),
    }
  }
}

/// First offending entry of a failed check; positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
  pub row: usize,
  pub col: usize,
  pub difference: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
  pub name: String,
  /// Source degree of the block checked; `None` for whole-operator checks.
  pub degree: Option<usize>,
  pub passed: bool,
  #[serde(skip_serializing_if = "Option::is_none", default)]
  pub witness: Option<Witness>,
}

impl CheckResult {
  fn pass(name: &str, degree: Option<usize>) -> Self { Self { name: name.into(), degree, passed: true, witness: None } }

  fn fail(name: &str, degree: Option<usize>, witness: Option<Witness>) -> Self {
    Self { name: name.into(), degree, passed: false, witness }
  }

  fn boolean(name: &str, degree: Option<usize>, ok: bool, detail: impl FnOnce() -> String) -> Self {
    if ok {
      Self::pass(name, degree)
    } else {
      Self::fail(name, degree, Some(Witness { row: 0, col: 0, difference: detail() }))
    }
  }
}

impl fmt::Display for CheckResult {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let degree = self.degree.map_or_else(|| "all".to_string(), |k| k.to_string());
    write!(f, "{:<4} {:<40} k={:<3}", if self.passed { "ok" } else { "FAIL" }, self.name, degree)?;
    if let Some(w) = &self.witness {
      if w.row > 0 {
        write!(f, " at ({}, {}): {}", w.row, w.col, w.difference)?;
      } else {
        write!(f, " {}", w.difference)?;
      }
    }
    Ok(())
  }
}

fn matrix_witness<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> Option<Witness> {
  if a.shape() != b.shape() {
    return Some(Witness { row: 0, col: 0, difference: format!("shape {:?} vs {:?}", a.shape(), b.shape()) });
  }
  a.entries().find(|(i, j, x)| *x != b.get(*i, *j)).map(|(i, j, x)| Witness {
    row: i + 1,
    col: j + 1,
    difference: (x.clone() - b.get(i, j).clone()).to_string(),
  })
}

/// One result per source degree of `a`.
fn compare<G: Field>(name: &str, a: &GradedOperator<G>, b: &GradedOperator<G>) -> Vec<CheckResult> {
  if a.shift() != b.shift() || a.n() != b.n() {
    let w = Witness { row: 0, col: 0, difference: format!("shift {} vs {}", a.shift(), b.shift()) };
    return vec![CheckResult::fail(name, None, Some(w))];
  }
  a.degrees()
    .map(|k| {
      let (x, y) = (a.block(k).unwrap(), b.block(k).unwrap());
      let w = if x.shape() != y.shape() {
        Some(Witness { row: 0, col: 0, difference: format!("shape {:?} vs {:?}", x.shape(), y.shape()) })
      } else {
        x.entries().find(|(i, j, e)| *e != y.get(*i, *j)).map(|(i, j, e)| Witness {
          row: i + 1,
          col: j + 1,
          difference: (e.clone() - y.get(i, j).clone()).to_string(),
        })
      };
      match w {
        None => CheckResult::pass(name, Some(k)),
        Some(w) => CheckResult::fail(name, Some(k), Some(w)),
      }
    })
    .collect()
}

fn is_zero<G: Field>(name: &str, a: &GradedOperator<G>) -> Vec<CheckResult> {
  let zero = a.zero_like();
  compare(name, a, &zero)
}

fn profile(name: &str, got: WeightProfile, want: fn(WeightProfile) -> bool) -> CheckResult {
  CheckResult::boolean(name, None, want(got), || format!("weight profile is {got}"))
}

/// Runs the suite. Every check runs; failures never abort.
pub fn run_suite<F: ScalarField>(cx: &RuminComplex<F>, level: Level) -> Vec<CheckResult> {
  let ws = &cx.ws;
  let c = |a: &GradedOperator<F>, b: &GradedOperator<F>| ws.compose(a, b).expect("operators share a workspace");
  let id = ws.identity();
  let q0 = ws.sub(&id, &cx.pi0);
  let mut out = Vec::new();

  out.extend(is_zero("d^2 = 0", &c(&cx.d, &cx.d)));
  out.extend(is_zero("d0^2 = 0", &c(&cx.d0, &cx.d0)));
  out.extend(is_zero("(d0^t)^2 = 0", &c(&cx.d0t, &cx.d0t)));
  out.extend(is_zero("(d0^-1)^2 = 0", &c(&cx.d0inv, &cx.d0inv)));
  out.extend(compare("Pi0^2 = Pi0", &c(&cx.pi0, &cx.pi0), &cx.pi0));
  out.extend(compare("Pi^2 = Pi", &c(&cx.pi, &cx.pi), &cx.pi));
  out.extend(compare("P^2 = P", &c(&cx.p, &cx.p), &cx.p));
  out.extend(compare("L Linv = I", &c(&cx.l, &cx.linv), &id));
  out.extend(compare("Linv L = I", &c(&cx.linv, &cx.l), &id));
  out.extend(is_zero("(Linv d L)^2 = 0", &c(&cx.ldl, &cx.ldl)));
  out.extend(is_zero("D^2 = 0", &c(&cx.dd, &cx.dd)));
  out.extend(is_zero("C^2 = 0", &c(&cx.c, &cx.c)));
  out.extend(is_zero("dc^2 = 0", &c(&cx.dc, &cx.dc)));
  if level == Level::Fast {
    return out;
  }

  // Partial inverse and Π₀.
  out.extend(compare("d0 d0inv d0 = d0", &ws.chain(&[&cx.d0, &cx.d0inv, &cx.d0]), &cx.d0));
  out.extend(compare("d0inv d0 d0inv = d0inv", &ws.chain(&[&cx.d0inv, &cx.d0, &cx.d0inv]), &cx.d0inv));
  let d0d0inv = c(&cx.d0, &cx.d0inv);
  let d0invd0 = c(&cx.d0inv, &cx.d0);
  out.extend(compare("d0 d0inv symmetric", &ws.formal_adjoint(&d0d0inv), &d0d0inv));
  out.extend(compare("d0inv d0 symmetric", &ws.formal_adjoint(&d0invd0), &d0invd0));
  out.extend(compare("Pi0 routes agree", &cx.pi0, &cx.pi0_r0));
  out.extend(compare("Pi0 symmetric", &ws.formal_adjoint(&cx.pi0), &cx.pi0));
  out.extend(is_zero("d0 Pi0 = 0", &c(&cx.d0, &cx.pi0)));
  out.extend(is_zero("Pi0 d0 = 0", &c(&cx.pi0, &cx.d0)));
  out.extend(is_zero("d0^t Pi0 = 0", &c(&cx.d0t, &cx.pi0)));
  out.extend(is_zero("Pi0 d0^t = 0", &c(&cx.pi0, &cx.d0t)));

  // Acyclicity of (F₀, d₀): dim(ker d₀ᵏ ∩ F₀ᵏ) = rank d₀^{k-1}.
  for k in 0..=ws.n() {
    let qk = q0.scalar_block(k).expect("algebraic");
    let kernel_in_f0 = qk.rank() - cx.d0.scalar_block(k).map_or(0, |m| m.mul(&qk).rank());
    let image = if k == 0 { 0 } else { cx.d0.scalar_block(k - 1).expect("algebraic").rank() };
    out.push(CheckResult::boolean("(F0, d0) acyclic", Some(k), kernel_in_f0 == image, || {
      format!("dim ker d0 on F0 = {kernel_in_f0}, rank of incoming d0 = {image}")
    }));
  }

  // Spectral decomposition of Box₀.
  if let Some(spec) = &cx.spectral {
    for (k, spaces) in spec.degrees.iter().enumerate() {
      let dim = ws.frame().dim(k);
      let total = spaces.iter().fold(Matrix::zeros(dim, dim), |acc: Matrix<F>, e| acc.add(&e.projector));
      let recon = spaces.iter().fold(Matrix::zeros(dim, dim), |acc: Matrix<F>, e| {
        acc.add(&e.projector.scale(&e.eigenvalue))
      });
      let box0 = cx.box0.scalar_block(k).expect("algebraic");
      let mut push = |name: &str, w: Option<Witness>| {
        out.push(match w {
          None => CheckResult::pass(name, Some(k)),
          Some(w) => CheckResult::fail(name, Some(k), Some(w)),
        })
      };
      push("sum of spectral projectors = I", matrix_witness(&total, &Matrix::identity(dim)));
      push("sum of lambda Pi_lambda = Box0", matrix_witness(&recon, &box0));
      let mut orth = None;
      for (a, ea) in spaces.iter().enumerate() {
        for (b, eb) in spaces.iter().enumerate() {
          let want = if a == b { ea.projector.clone() } else { Matrix::zeros(dim, dim) };
          orth = orth.or_else(|| matrix_witness(&ea.projector.mul(&eb.projector), &want));
        }
        orth = orth.or_else(|| matrix_witness(&ea.projector.transpose(), &ea.projector));
      }
      push("spectral projectors orthogonal", orth);
    }
  }

  // Resolvent.
  let zws = &cx.zws;
  let zbox = cx.box_.map(|x| crate::ZRational::constant(x.clone()));
  let zid = zws.identity();
  let z_minus_box = zws.sub(&zws.scale(&zid, &crate::ZRational::z()), &zbox);
  out.extend(compare("(z - Box) R = I", &zws.compose(&z_minus_box, &cx.resolvent).expect("same workspace"), &zid));
  out.extend(compare("R (z - Box) = I", &zws.compose(&cx.resolvent, &z_minus_box).expect("same workspace"), &zid));
  if let Some(alt) = &cx.resolvent_alt {
    out.extend(compare("resolvent routes agree", &cx.resolvent, alt));
  }

  // P and its relation to Rumin's projections.
  out.extend(compare("P d = d P", &c(&cx.p, &cx.d), &c(&cx.d, &cx.p)));
  out.extend(compare("P Box = Box P", &c(&cx.p, &cx.box_), &c(&cx.box_, &cx.p)));
  out.extend(compare("Pi0 P Pi0 = Pi0", &ws.chain(&[&cx.pi0, &cx.p, &cx.pi0]), &cx.pi0));
  out.extend(is_zero("Box^N0 P = 0", &c(&ws.power(&cx.box_, cx.n0()), &cx.p)));
  out.extend(is_zero("P (I - Pi0) P = 0", &ws.chain(&[&cx.p, &q0, &cx.p])));
  out.extend(compare("P = I - Pi", &cx.p, &cx.pi_e));

  // L.
  out.extend(compare("Pi0 = Linv P L", &ws.chain(&[&cx.linv, &cx.p, &cx.l]), &cx.pi0));
  out.extend(compare("L1 Pi0 = L^-t Pi0", &c(&cx.l1, &cx.pi0), &c(&ws.formal_adjoint(&cx.linv), &cx.pi0)));
  let conj_box = ws.chain(&[&cx.linv, &cx.box_, &cx.l]);
  out.extend(compare("Pi0 (Linv Box L) = (Linv Box L) Pi0", &c(&cx.pi0, &conj_box), &c(&conj_box, &cx.pi0)));

  // D and C.
  out.extend(compare("Linv d L = D + C", &cx.ldl, &ws.add(&cx.dd, &cx.c)));
  out.extend(compare("D = Pi0 (Linv d L) Pi0", &cx.dd, &ws.chain(&[&cx.pi0, &cx.ldl, &cx.pi0])));
  out.extend(compare("C = (I - Pi0) (Linv d L) (I - Pi0)", &cx.c, &ws.chain(&[&q0, &cx.ldl, &q0])));

  // Rumin's construction.
  out.extend(compare("Pi d0inv = d0inv", &c(&cx.pi, &cx.d0inv), &cx.d0inv));
  out.extend(compare("d0inv Pi = d0inv", &c(&cx.d0inv, &cx.pi), &cx.d0inv));
  let dd0inv = c(&cx.d, &cx.d0inv);
  out.extend(compare("Pi d d0inv = d d0inv", &c(&cx.pi, &dd0inv), &dd0inv));
  let d0invd = c(&cx.d0inv, &cx.d);
  out.extend(compare("d0inv d Pi = d0inv d", &c(&d0invd, &cx.pi), &d0invd));
  out.extend(compare("d Pi_F = Pi_F d", &c(&cx.d, &cx.pi), &c(&cx.pi, &cx.d)));
  out.extend(compare("d Pi_E = Pi_E d", &c(&cx.d, &cx.pi_e), &c(&cx.pi_e, &cx.d)));
  out.extend(is_zero("d0inv Pi_E = 0", &c(&cx.d0inv, &cx.pi_e)));
  out.extend(is_zero("Pi_E d0inv = 0", &c(&cx.pi_e, &cx.d0inv)));
  out.extend(compare("dc = D", &cx.dc, &cx.dd));

  // Hodge star conjugations.
  out.extend(compare("d^t = (-1)^(kn+1) *d*", &ws.formal_adjoint(&cx.d), &ws.star_conjugate(&cx.d, d_sign)));
  out.extend(compare("d0^t = (-1)^(kn+1) *d0*", &cx.d0t, &ws.star_conjugate(&cx.d0, d_sign)));
  out.extend(compare("Box^t = (-1)^(k(n-k)) *Box*", &ws.formal_adjoint(&cx.box_), &ws.star_conjugate(&cx.box_, box_sign)));
  out.extend(compare("P^t = (-1)^(k(n-k)) *P*", &ws.formal_adjoint(&cx.p), &ws.star_conjugate(&cx.p, box_sign)));
  out.extend(compare("L1 = (-1)^(k(n-k)) *L*", &cx.l1, &ws.star_conjugate(&cx.l, box_sign)));
  out.extend(compare("Pi0 = (-1)^(k(n-k)) *Pi0*", &cx.pi0, &ws.star_conjugate(&cx.pi0, box_sign)));
  out.extend(compare("D^t = (-1)^(kn+1) *D*", &ws.formal_adjoint(&cx.dd), &ws.star_conjugate(&cx.dd, d_sign)));
  out.extend(compare("dc^t = (-1)^(kn+1) *dc*", &ws.formal_adjoint(&cx.dc), &ws.star_conjugate(&cx.dc, d_sign)));

  // ĝ and the homotopy.
  out.extend(compare("C g (I - Pi0) = g d0 (I - Pi0)", &ws.chain(&[&cx.c, &cx.g, &q0]), &ws.chain(&[&cx.g, &cx.d0, &q0])));
  out.extend(compare("g ginv = I", &c(&cx.g, &cx.ginv), &id));
  let homotopy = ws.add(&c(&cx.d, &cx.h), &c(&cx.h, &cx.d));
  out.extend(compare("dh + hd = I - L Pi0 Linv", &homotopy, &ws.sub(&id, &ws.chain(&[&cx.l, &cx.pi0, &cx.linv]))));

  // Weight profiles.
  let strict = WeightProfile::strictly_increases;
  let keeps = WeightProfile::preserves;
  out.push(profile("d - d0 strictly increases weight", ws.weight_profile(&ws.sub(&cx.d, &cx.d0)), strict));
  out.push(profile("B strictly increases weight", ws.weight_profile(&cx.b_weight), strict));
  out.push(profile("P - Pi0 strictly increases weight", ws.weight_profile(&ws.sub(&cx.p, &cx.pi0)), strict));
  out.push(profile("L - I strictly increases weight", ws.weight_profile(&ws.sub(&cx.l, &id)), strict));
  out.push(profile("Linv - I strictly increases weight", ws.weight_profile(&ws.sub(&cx.linv, &id)), strict));
  out.push(profile(
    "Linv Box L - Box0 strictly increases weight",
    ws.weight_profile(&ws.sub(&conj_box, &cx.box0)),
    strict,
  ));
  out.push(profile("g - I strictly increases weight", ws.weight_profile(&ws.sub(&cx.g, &id)), strict));
  out.push(profile("d0 preserves weight", ws.weight_profile(&cx.d0), keeps));
  out.push(profile("Box0 preserves weight", ws.weight_profile(&cx.box0), keeps));
  out.push(profile("Pi0 preserves weight", ws.weight_profile(&cx.pi0), keeps));

  // Betti numbers.
  let euler = cx.euler_characteristic();
  out.push(CheckResult::boolean("Betti alternating sum = 0", None, ws.n() == 0 || euler == 0, || {
    format!("alternating sum is {euler}")
  }));
  out
}

/// True iff every check passed.
pub fn all_passed(results: &[CheckResult]) -> bool { results.iter().all(|r| r.passed) }
