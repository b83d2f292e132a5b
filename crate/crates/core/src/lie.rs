//! Graded nilpotent Lie algebras given by structure constants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{self, ParseError};
use crate::field::{parse_rational, Field, Rational, ScalarError, ScalarField};
use crate::RationalFunction;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
  #[error("degree {k} out of range 0..={n}")]
  DegreeOutOfRange { k: usize, n: usize },
  #[error("malformed group file: {0}")]
  Format(String),
  #[error("invalid expression: {0}")]
  Parse(#[from] ParseError),
  #[error(transparent)]
  Scalar(#[from] ScalarError),
  #[error("unknown catalog group `{0}`")]
  UnknownGroup(String),
}

/// One violated invariant, with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
  NonPositiveWeight { index: usize },
  WeightsDecrease { index: usize },
  IndexOutOfRange { i: usize, j: usize, k: usize },
  WeightIncompatible { i: usize, j: usize, k: usize },
  Jacobi { i: usize, j: usize, l: usize, k: usize, residual: String },
  UndeclaredParameter { name: String },
  InvalidParameterName { name: String },
}

impl fmt::Display for Violation {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      Self::NonPositiveWeight { index } => write!(f, "weight of X{index} is not positive"),
      Self::WeightsDecrease { index } => write!(f, "weight of X{index} is smaller than the previous one"),
      Self::IndexOutOfRange { i, j, k } => write!(f, "bracket index out of range at (i,j,k)=({i},{j},{k})"),
      Self::WeightIncompatible { i, j, k } => {
        write!(f, "weight compatibility fails at (i,j,k)=({i},{j},{k}): [X{i},X{j}] has an X{k} component")
      },
      Self::Jacobi { i, j, l, k, residual } => {
        write!(f, "Jacobi identity fails for (X{i},X{j},X{l}): X{k} coefficient {residual}")
      },
      Self::UndeclaredParameter { name } => write!(f, "parameter `{name}` is used but not declared"),
      Self::InvalidParameterName { name } => write!(f, "`{name}` is not a valid parameter name"),
    }
  }
}

/// Outcome of [`GradedLieAlgebra::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
  pub group: String,
  pub valid: bool,
  pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.valid {
      return writeln!(f, "{}: valid", self.group);
    }
    writeln!(f, "{}: invalid ({} violations)", self.group, self.violations.len())?;
    for v in &self.violations {
      writeln!(f, "  - {v}")?;
    }
    Ok(())
  }
}

/// A Lie algebra with a basis `X_1..X_n` of dilation eigenvectors.
///
/// Indices are 0-based internally. Only brackets `[X_i, X_j]` with `i < j`
/// are stored; the rest follow from antisymmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedLieAlgebra<F> {
  name: String,
  parameters: Vec<String>,
  weights: Vec<Rational>,
  brackets: BTreeMap<(usize, usize), BTreeMap<usize, F>>,
}

impl<F: ScalarField> GradedLieAlgebra<F> {
  pub fn new(name: impl Into<String>, weights: Vec<Rational>) -> Self {
    Self { name: name.into(), parameters: Vec::new(), weights, brackets: BTreeMap::new() }
  }

  pub fn with_parameters(mut self, params: &[&str]) -> Self {
    self.parameters = params.iter().map(|s| s.to_string()).collect();
    self
  }

  /// Adds `c · X_k` to `[X_i, X_j]` (0-based, `i < j`).
  pub fn with_bracket(mut self, i: usize, j: usize, k: usize, c: F) -> Self {
    self.add_bracket(i, j, k, c);
    self
  }

  fn add_bracket(&mut self, i: usize, j: usize, k: usize, c: F) {
    let (i, j, c) = if i < j { (i, j, c) } else { (j, i, -c) };
    let entry = self.brackets.entry((i, j)).or_default();
    let v = entry.remove(&k).unwrap_or_else(F::zero) + c;
    if !v.is_zero() {
      entry.insert(k, v);
    }
    if entry.is_empty() {
      self.brackets.remove(&(i, j));
    }
  }

  pub fn name(&self) -> &str { &self.name }

  pub fn dim(&self) -> usize { self.weights.len() }

  pub fn weights(&self) -> &[Rational] { &self.weights }

  pub fn parameters(&self) -> &[String] { &self.parameters }

  /// `[X_i, X_j]` as `(k, c_ij^k)` pairs.
  pub fn bracket(&self, i: usize, j: usize) -> Vec<(usize, F)> {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
      Equal => Vec::new(),
      Less => self.brackets.get(&(i, j)).map(|m| m.iter().map(|(k, c)| (*k, c.clone())).collect()).unwrap_or_default(),
      Greater => {
        self.brackets.get(&(j, i)).map(|m| m.iter().map(|(k, c)| (*k, -c.clone())).collect()).unwrap_or_default()
      },
    }
  }

  /// Structure constant `c_ij^k` for any ordering of `i, j`.
  pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> F {
    self.bracket(i, j).into_iter().find(|(kk, _)| *kk == k).map(|(_, c)| c).unwrap_or_else(F::zero)
  }

  /// Nonzero structure constants `(i, j, k, c)` with `i < j`.
  pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &F)> {
    self.brackets.iter().flat_map(|(&(i, j), m)| m.iter().map(move |(&k, c)| (i, j, k, c)))
  }

  pub fn is_abelian(&self) -> bool { self.brackets.is_empty() }

  /// Bracket of two vectors given by coordinates.
  pub fn bracket_vectors(&self, a: &[F], b: &[F]) -> Vec<F> {
    let n = self.dim();
    let mut out = vec![F::zero(); n];
    for (&(i, j), m) in &self.brackets {
      let coef = a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
      if coef.is_zero() {
        continue;
      }
      for (&k, c) in m {
        out[k] = out[k].clone() + coef.clone() * c.clone();
      }
    }
    out
  }

  pub fn validate(&self) -> ValidationReport {
    let n = self.dim();
    let mut violations = Vec::new();
    for (idx, w) in self.weights.iter().enumerate() {
      if *w <= Rational::zero() {
        violations.push(Violation::NonPositiveWeight { index: idx + 1 });
      }
      if idx > 0 && *w < self.weights[idx - 1] {
        violations.push(Violation::WeightsDecrease { index: idx + 1 });
      }
    }
    for p in &self.parameters {
      if !expr::is_parameter_name(p) {
        violations.push(Violation::InvalidParameterName { name: p.clone() });
      }
    }
    let declared: BTreeSet<&String> = self.parameters.iter().collect();
    let mut undeclared = BTreeSet::new();
    for (i, j, k, c) in self.structure_constants() {
      if i >= n || j >= n || k >= n {
        violations.push(Violation::IndexOutOfRange { i: i + 1, j: j + 1, k: k + 1 });
        continue;
      }
      if self.weights[k] != &self.weights[i] + &self.weights[j] {
        violations.push(Violation::WeightIncompatible { i: i + 1, j: j + 1, k: k + 1 });
      }
      for p in c.parameters() {
        if !declared.contains(&p) {
          undeclared.insert(p);
        }
      }
    }
    violations.extend(undeclared.into_iter().map(|name| Violation::UndeclaredParameter { name }));
    if violations.iter().all(|v| !matches!(v, Violation::IndexOutOfRange { .. })) {
      violations.extend(self.jacobi_violations());
    }
    ValidationReport { group: self.name.clone(), valid: violations.is_empty(), violations }
  }

  fn jacobi_violations(&self) -> Vec<Violation> {
    let n = self.dim();
    let unit = |i: usize| {
      let mut v = vec![F::zero(); n];
      v[i] = F::one();
      v
    };
    let mut out = Vec::new();
    for i in 0..n {
      for j in i + 1..n {
        for l in j + 1..n {
          let (xi, xj, xl) = (unit(i), unit(j), unit(l));
          let a = self.bracket_vectors(&self.bracket_vectors(&xi, &xj), &xl);
          let b = self.bracket_vectors(&self.bracket_vectors(&xj, &xl), &xi);
          let c = self.bracket_vectors(&self.bracket_vectors(&xl, &xi), &xj);
          for k in 0..n {
            let r = a[k].clone() + b[k].clone() + c[k].clone();
            if !r.is_zero() {
              out.push(Violation::Jacobi { i: i + 1, j: j + 1, l: l + 1, k: k + 1, residual: r.to_string() });
            }
          }
        }
      }
    }
    out
  }

  /// The sorted set of weights `[I]` over multi-indices with `|I| = k`.
  pub fn weight_set(&self, k: usize) -> Result<Vec<Rational>, LieError> {
    let n = self.dim();
    if k > n {
      return Err(LieError::DegreeOutOfRange { k, n });
    }
    let mut set = BTreeSet::new();
    for subset in crate::frame::subsets(n, k) {
      set.insert(subset.iter().map(|&i| self.weights[i].clone()).sum::<Rational>());
    }
    Ok(set.into_iter().collect())
  }

  /// `max_k |W^k|`, a nilpotency exponent for degree preserving operators
  /// that strictly increase weights.
  pub fn compute_n0(&self) -> usize {
    (0..=self.dim()).map(|k| self.weight_set(k).map_or(0, |w| w.len())).max().unwrap_or(1)
  }

  pub fn homogeneous_dimension(&self) -> Rational { self.weights.iter().cloned().sum() }

  /// Converts the structure constants into another field.
  pub fn try_map<G: ScalarField, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<GradedLieAlgebra<G>, E> {
    let mut out = GradedLieAlgebra::<G>::new(self.name.clone(), self.weights.clone());
    out.parameters = self.parameters.clone();
    for (i, j, k, c) in self.structure_constants() {
      out.add_bracket(i, j, k, f(c)?);
    }
    Ok(out)
  }

  /// Substitutes rational values for some parameters.
  pub fn specialize(&self, bindings: &BTreeMap<String, Rational>) -> Result<Self, LieError> {
    for name in bindings.keys() {
      if !self.parameters.contains(name) {
        return Err(ScalarError::UnknownParameter(name.clone()).into());
      }
    }
    let mut out = self.try_map(|c| c.specialize(bindings))?;
    out.parameters.retain(|p| !bindings.contains_key(p));
    Ok(out)
  }

  pub fn renamed(mut self, name: impl Into<String>) -> Self {
    self.name = name.into();
    self
  }
}

impl GradedLieAlgebra<RationalFunction> {
  /// The same algebra over ℚ when no structure constant involves a parameter.
  pub fn to_rational(&self) -> Option<GradedLieAlgebra<Rational>> {
    self.try_map(|c| c.as_rational().ok_or(())).ok().map(|mut a| {
      a.parameters.clear();
      a
    })
  }

  /// Parses the JSON group format (1-based indices, `i < j`).
  pub fn from_json_str(s: &str) -> Result<Self, LieError> {
    let file: GroupFile = serde_json::from_str(s).map_err(|e| LieError::Format(e.to_string()))?;
    if file.weights.len() != file.dimension {
      return Err(LieError::Format(format!(
        "dimension is {} but {} weights were given",
        file.dimension,
        file.weights.len()
      )));
    }
    let weights = file
      .weights
      .iter()
      .map(|w| parse_rational(w).ok_or_else(|| LieError::Format(format!("weight `{w}` is not a rational number"))))
      .collect::<Result<Vec<_>, _>>()?;
    let mut alg = Self::new(file.name, weights);
    alg.parameters = file.parameters;
    for b in file.brackets {
      if b.i == 0 || b.j == 0 || b.i > file.dimension || b.j > file.dimension {
        return Err(LieError::Format(format!("bracket indices ({}, {}) out of range", b.i, b.j)));
      }
      if b.i >= b.j {
        return Err(LieError::Format(format!("bracket indices must satisfy i < j, found ({}, {})", b.i, b.j)));
      }
      for t in b.terms {
        if t.k == 0 || t.k > file.dimension {
          return Err(LieError::Format(format!("term index {} out of range", t.k)));
        }
        let c: RationalFunction = t.coeff.parse()?;
        alg.add_bracket(b.i - 1, b.j - 1, t.k - 1, c);
      }
    }
    Ok(alg)
  }

  pub fn to_json(&self) -> String {
    let mut brackets: BTreeMap<(usize, usize), Vec<TermEntry>> = BTreeMap::new();
    for (i, j, k, c) in self.structure_constants() {
      brackets.entry((i + 1, j + 1)).or_default().push(TermEntry { k: k + 1, coeff: c.to_string() });
    }
    let file = GroupFile {
      name: self.name.clone(),
      dimension: self.dim(),
      parameters: self.parameters.clone(),
      weights: self.weights.iter().map(ToString::to_string).collect(),
      brackets: brackets.into_iter().map(|((i, j), terms)| BracketEntry { i, j, terms }).collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
  }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
  name: String,
  dimension: usize,
  #[serde(default)]
  parameters: Vec<String>,
  weights: Vec<String>,
  #[serde(default)]
  brackets: Vec<BracketEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketEntry {
  i: usize,
  j: usize,
  terms: Vec<TermEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermEntry {
  k: usize,
  coeff: String,
}

/// Names of the built-in groups.
pub const CATALOG: [&str; 6] = ["abelian2", "abelian3", "heisenberg3", "heisenberg5", "engel", "engel1"];

fn ints(ws: &[i64]) -> Vec<Rational> { ws.iter().map(|&w| Rational::from_i64(w)).collect() }

/// A built-in group by name.
pub fn catalog(name: &str) -> Result<GradedLieAlgebra<RationalFunction>, LieError> {
  let one = RationalFunction::one;
  Ok(match name {
    "abelian2" => GradedLieAlgebra::new(name, ints(&[1, 1])),
    "abelian3" => GradedLieAlgebra::new(name, ints(&[1, 1, 1])),
    "heisenberg3" => GradedLieAlgebra::new(name, ints(&[1, 1, 2])).with_bracket(0, 1, 2, one()),
    "heisenberg5" => GradedLieAlgebra::new(name, ints(&[1, 1, 1, 1, 2]))
      .with_bracket(0, 1, 4, one())
      .with_bracket(2, 3, 4, one()),
    "engel" => GradedLieAlgebra::new(name, ints(&[1, 1, 2, 3]))
      .with_parameters(&["t"])
      .with_bracket(0, 1, 2, one())
      .with_bracket(0, 2, 3, RationalFunction::param("t")),
    "engel1" => GradedLieAlgebra::new(name, ints(&[1, 1, 2, 3])).with_bracket(0, 1, 2, one()).with_bracket(0, 2, 3, one()),
    _ => return Err(LieError::UnknownGroup(name.to_string())),
  })
}

#[cfg(test)]
mod tests {
  use super::*;

  fn q(v: i64) -> Rational { Rational::from_i64(v) }

  #[test]
  fn catalog_groups_are_valid() {
    for name in CATALOG {
      let alg = catalog(name).unwrap();
      assert!(alg.validate().valid, "{name}: {}", alg.validate());
    }
  }

  #[test]
  fn engel_weight_sets_and_n0() {
    let e = catalog("engel").unwrap();
    assert_eq!(e.weight_set(2).unwrap(), vec![q(2), q(3), q(4), q(5)]);
    assert_eq!(e.weight_set(4).unwrap(), vec![q(7)]);
    assert_eq!(e.weight_set(0).unwrap(), vec![q(0)]);
    assert!(matches!(e.weight_set(5), Err(LieError::DegreeOutOfRange { k: 5, n: 4 })));
    assert_eq!(e.compute_n0(), 4);
    assert_eq!(catalog("heisenberg3").unwrap().compute_n0(), 2);
    assert_eq!(catalog("abelian3").unwrap().compute_n0(), 1);
  }

  #[test]
  fn wrong_weights_flag_the_offending_triple() {
    let mut e = catalog("engel").unwrap();
    e.weights = ints(&[1, 1, 2, 2]);
    let report = e.validate();
    assert!(!report.valid);
    assert_eq!(report.violations, vec![Violation::WeightIncompatible { i: 1, j: 3, k: 4 }]);
  }

  #[test]
  fn jacobi_failure_is_reported() {
    let alg = GradedLieAlgebra::<Rational>::new("bad", ints(&[1, 1, 1, 2, 3]))
      .with_bracket(0, 1, 3, q(1))
      .with_bracket(2, 3, 4, q(-1));
    let report = alg.validate();
    assert!(report.violations.iter().any(|v| matches!(v, Violation::Jacobi { .. })), "{report}");
  }

  #[test]
  fn json_round_trip() {
    let e = catalog("engel").unwrap();
    let back = GradedLieAlgebra::from_json_str(&e.to_json()).unwrap();
    assert_eq!(back, e);
    assert!(GradedLieAlgebra::from_json_str("{").is_err());
    let swapped = r#"{"name":"x","dimension":2,"weights":["1","1"],"brackets":[{"i":2,"j":1,"terms":[]}]}"#;
    assert!(matches!(GradedLieAlgebra::from_json_str(swapped), Err(LieError::Format(_))));
  }

  #[test]
  fn undeclared_parameter_is_a_violation() {
    let s = r#"{"name":"x","dimension":3,"weights":["1","1","2"],"brackets":[{"i":1,"j":2,"terms":[{"k":3,"coeff":"s"}]}]}"#;
    let alg = GradedLieAlgebra::from_json_str(s).unwrap();
    assert_eq!(alg.validate().violations, vec![Violation::UndeclaredParameter { name: "s".into() }]);
  }

  #[test]
  fn specialization_drops_bound_parameters() {
    let mut b = BTreeMap::new();
    b.insert("t".to_string(), q(1));
    let e1 = catalog("engel").unwrap().specialize(&b).unwrap();
    assert!(e1.parameters().is_empty());
    assert_eq!(e1.to_rational().unwrap().structure_constant(0, 2, 3), q(1));
    assert_eq!(e1.structure_constant(2, 0, 3), RationalFunction::from(-1));
  }
}
