//! The universal enveloping algebra U(𝔤) in PBW normal form.
//!
//! An element is a map from exponent vectors `(e_1,…,e_n)` to nonzero
//! coefficients, the monomial meaning `X_1^{e_1} ⋯ X_n^{e_n}`. Products are
//! normalized by right multiplication with one generator at a time, using
//! `X_h X_g = X_g X_h + [X_h, X_g]` whenever `h > g`; the results for
//! `(monomial, generator)` pairs are memoized per algebra.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Mutex;

use num_traits::Zero;
use thiserror::Error;

use crate::expr::{self, Expr, ParseError};
use crate::field::{Field, Rational, ScalarError, ScalarField};
use crate::lie::GradedLieAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbwError {
  #[error("operands belong to algebras of dimension {expected} and {found}")]
  AlgebraMismatch { expected: usize, found: usize },
}

/// Exponent vector of a PBW monomial.
///
/// Ordered by total degree, then by exponent vector in decreasing
/// lexicographic order, so `X1^2 < X1.X2 < X2^2` within degree two.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PbwMonomial(Vec<u32>);

impl PbwMonomial {
  pub fn one(n: usize) -> Self { Self(vec![0; n]) }

  pub fn generator(n: usize, i: usize) -> Self {
    let mut v = vec![0; n];
    v[i] = 1;
    Self(v)
  }

  pub fn from_exponents(e: Vec<u32>) -> Self { Self(e) }

  pub fn exponents(&self) -> &[u32] { &self.0 }

  pub fn degree(&self) -> u32 { self.0.iter().sum() }

  pub fn is_one(&self) -> bool { self.0.iter().all(|e| *e == 0) }

  /// The sorted word of generator indices, e.g. `X1^2.X3 ↦ [0, 0, 2]`.
  pub fn word(&self) -> Vec<usize> {
    self.0.iter().enumerate().flat_map(|(i, e)| std::iter::repeat(i).take(*e as usize)).collect()
  }

  /// Weight `Σ e_i υ_i`.
  pub fn weight(&self, weights: &[Rational]) -> Rational {
    self.0.iter().zip(weights).map(|(e, w)| w * Rational::from_integer((*e).into())).sum()
  }
}

impl Ord for PbwMonomial {
  fn cmp(&self, other: &Self) -> Ordering { self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0)) }
}

impl PartialOrd for PbwMonomial {
  fn partial_cmp(&self, other: &Self) -> Option<Ordering> { Some(self.cmp(other)) }
}

impl PbwMonomial {
  pub fn to_latex(&self) -> String {
    self
      .0
      .iter()
      .enumerate()
      .filter(|(_, e)| **e > 0)
      .map(|(i, e)| if *e == 1 { format!("X_{{{}}}", i + 1) } else { format!("X_{{{}}}^{{{e}}}", i + 1) })
      .collect()
  }
}

/// A `+` or `-` outside every bracket or brace, after the first character.
fn latex_has_sum(s: &str) -> bool {
  let mut depth = 0i32;
  for (i, c) in s.chars().enumerate() {
    match c {
      '(' | '[' | '{' => depth += 1,
      ')' | ']' | '}' => depth -= 1,
      '+' | '-' if depth == 0 && i > 0 => return true,
      _ => {},
    }
  }
  false
}

impl fmt::Display for PbwMonomial {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let parts: Vec<String> = self
      .0
      .iter()
      .enumerate()
      .filter(|(_, e)| **e > 0)
      .map(|(i, e)| if *e == 1 { format!("X{}", i + 1) } else { format!("X{}^{e}", i + 1) })
      .collect();
    if parts.is_empty() {
      write!(f, "1")
    } else {
      write!(f, "{}", parts.join("."))
    }
  }
}

/// An element of U(𝔤) in normal form. Zero is the empty map.
#[derive(Clone, PartialEq, Debug)]
pub struct PbwElement<F> {
  terms: BTreeMap<PbwMonomial, F>,
}

impl<F: Field> PbwElement<F> {
  pub fn scalar(n: usize, c: F) -> Self {
    let mut terms = BTreeMap::new();
    if !c.is_zero() {
      terms.insert(PbwMonomial::one(n), c);
    }
    Self { terms }
  }

  pub fn generator(n: usize, i: usize) -> Self {
    let mut terms = BTreeMap::new();
    terms.insert(PbwMonomial::generator(n, i), F::one());
    Self { terms }
  }

  pub fn from_terms(it: impl IntoIterator<Item = (PbwMonomial, F)>) -> Self {
    let mut out = Self { terms: BTreeMap::new() };
    for (m, c) in it {
      out.add_term(m, c);
    }
    out
  }

  pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &F)> { self.terms.iter() }

  pub fn len(&self) -> usize { self.terms.len() }

  pub fn is_empty(&self) -> bool { self.terms.is_empty() }

  pub fn add_term(&mut self, m: PbwMonomial, c: F) {
    if c.is_zero() {
      return;
    }
    match self.terms.entry(m) {
      std::collections::btree_map::Entry::Vacant(e) => {
        e.insert(c);
      },
      std::collections::btree_map::Entry::Occupied(mut e) => {
        let v = e.get().clone() + c;
        if v.is_zero() {
          e.remove();
        } else {
          *e.get_mut() = v;
        }
      },
    }
  }

  /// Maximum total degree of a term; zero for scalars and for zero.
  pub fn order(&self) -> u32 { self.terms.keys().map(PbwMonomial::degree).max().unwrap_or(0) }

  /// The coefficient if the element is a scalar (including zero).
  pub fn as_scalar(&self) -> Option<F> {
    match self.terms.len() {
      0 => Some(F::zero()),
      1 => {
        let (m, c) = self.terms.iter().next().unwrap();
        m.is_one().then(|| c.clone())
      },
      _ => None,
    }
  }

  pub fn scale(&self, c: &F) -> Self {
    if c.is_zero() {
      return Self::zero();
    }
    Self { terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect() }
  }

  pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<PbwElement<G>, E> {
    let mut out = PbwElement::<G>::zero();
    for (m, c) in &self.terms {
      out.add_term(m.clone(), f(c)?);
    }
    Ok(out)
  }

  pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> PbwElement<G> {
    self.try_map(|c| Ok::<G, ()>(f(c))).expect("infallible")
  }

  /// LaTeX form, e.g. `-X_{4} + \frac{2}{t} X_{1}X_{3}`.
  pub fn to_latex(&self) -> String {
    if self.terms.is_empty() {
      return "0".into();
    }
    let mut out = String::new();
    for (idx, (m, c)) in self.terms.iter().enumerate() {
      let latex = c.to_latex();
      let (neg, body) = match latex.strip_prefix('-') {
        Some(rest) if !latex_has_sum(rest) => (true, rest.to_string()),
        _ => (false, latex),
      };
      out.push_str(match (idx, neg) {
        (0, false) => "",
        (0, true) => "-",
        (_, false) => " + ",
        (_, true) => " - ",
      });
      let wrapped = if latex_has_sum(&body) { format!("\\left({body}\\right)") } else { body };
      if m.is_one() {
        out.push_str(&wrapped);
      } else if wrapped == "1" {
        out.push_str(&m.to_latex());
      } else {
        out.push_str(&format!("{wrapped} {}", m.to_latex()));
      }
    }
    out
  }

  /// Number of generators recorded in the exponent vectors, if any term exists.
  fn arity(&self) -> Option<usize> { self.terms.keys().next().map(|m| m.0.len()) }
}

impl<F: ScalarField> PbwElement<F> {
  pub fn specialize(&self, bindings: &BTreeMap<String, Rational>) -> Result<Self, ScalarError> {
    self.try_map(|c| c.specialize(bindings))
  }
}

impl<F: Field> Zero for PbwElement<F> {
  fn zero() -> Self { Self { terms: BTreeMap::new() } }

  fn is_zero(&self) -> bool { self.terms.is_empty() }
}

impl<F: Field> Add for PbwElement<F> {
  type Output = Self;

  fn add(mut self, rhs: Self) -> Self {
    if self.terms.len() < rhs.terms.len() {
      return rhs + self;
    }
    for (m, c) in rhs.terms {
      self.add_term(m, c);
    }
    self
  }
}

impl<F: Field> Neg for PbwElement<F> {
  type Output = Self;

  fn neg(self) -> Self { Self { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() } }
}

impl<F: Field> Sub for PbwElement<F> {
  type Output = Self;

  fn sub(mut self, rhs: Self) -> Self {
    for (m, c) in rhs.terms {
      self.add_term(m, -c);
    }
    self
  }
}

/// Whether `s` contains one of `ops` outside parentheses.
fn has_top_level(s: &str, ops: &[char]) -> bool {
  let mut depth = 0i32;
  for c in s.chars() {
    match c {
      '(' | '[' => depth += 1,
      ')' | ']' => depth -= 1,
      _ if depth == 0 && ops.contains(&c) => return true,
      _ => {},
    }
  }
  false
}

fn split_sign(s: String) -> (bool, String) {
  match s.strip_prefix('-') {
    Some(rest) if !has_top_level(rest, &['+', '-']) => (true, rest.to_string()),
    _ => (false, s),
  }
}

impl<F: Field> fmt::Display for PbwElement<F> {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.terms.is_empty() {
      return write!(f, "0");
    }
    for (idx, (m, c)) in self.terms.iter().enumerate() {
      let (neg, body) = split_sign(c.to_string());
      let sign = match (idx, neg) {
        (0, false) => "",
        (0, true) => "-",
        (_, false) => " + ",
        (_, true) => " - ",
      };
      write!(f, "{sign}")?;
      if m.is_one() {
        if has_top_level(&body, &['+', '-']) {
          write!(f, "({body})")?;
        } else {
          write!(f, "{body}")?;
        }
      } else if body == "1" {
        write!(f, "{m}")?;
      } else if has_top_level(&body, &['+', '-', '/']) {
        write!(f, "({body})*{m}")?;
      } else {
        write!(f, "{body}*{m}")?;
      }
    }
    Ok(())
  }
}

/// Multiplication context for U(𝔤): structure constants and a product memo.
pub struct Enveloping<F> {
  n: usize,
  /// `commutators[h][g]` is `[X_h, X_g]` for `h > g`.
  commutators: Vec<Vec<Vec<(usize, F)>>>,
  memo: Mutex<HashMap<(PbwMonomial, usize), PbwElement<F>>>,
}

impl<F> fmt::Debug for Enveloping<F> {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { f.debug_struct("Enveloping").field("n", &self.n).finish() }
}

impl<F: Field> Enveloping<F> {
  /// Builds the context from `(i, j, k, c_ij^k)` with `i < j`.
  pub fn from_constants(n: usize, constants: impl IntoIterator<Item = (usize, usize, usize, F)>) -> Self {
    let mut commutators = vec![vec![Vec::new(); n]; n];
    for (i, j, k, c) in constants {
      // [X_j, X_i] = -c_ij^k X_k
      commutators[j][i].push((k, -c));
    }
    Self { n, commutators, memo: Mutex::new(HashMap::new()) }
  }

  pub fn dim(&self) -> usize { self.n }

  pub fn one(&self) -> PbwElement<F> { PbwElement::scalar(self.n, F::one()) }

  pub fn scalar(&self, c: F) -> PbwElement<F> { PbwElement::scalar(self.n, c) }

  pub fn generator(&self, i: usize) -> PbwElement<F> { PbwElement::generator(self.n, i) }

  /// Converts the structure constants into another field.
  pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> Enveloping<G> {
    let mut constants = Vec::new();
    for (h, row) in self.commutators.iter().enumerate() {
      for (g, terms) in row.iter().enumerate() {
        for (k, c) in terms {
          constants.push((g, h, *k, -f(c)));
        }
      }
    }
    Enveloping::from_constants(self.n, constants)
  }

  fn check(&self, a: &PbwElement<F>) -> Result<(), PbwError> {
    match a.arity() {
      Some(found) if found != self.n => Err(PbwError::AlgebraMismatch { expected: self.n, found }),
      _ => Ok(()),
    }
  }

  /// `m · X_g` in normal form.
  fn mono_times_gen(&self, m: &PbwMonomial, g: usize) -> PbwElement<F> {
    let Some(h) = (g + 1..self.n).rev().find(|&h| m.0[h] > 0) else {
      let mut e = m.clone();
      e.0[g] += 1;
      return PbwElement::from_terms([(e, F::one())]);
    };
    let key = (m.clone(), g);
    if let Some(v) = self.memo.lock().expect("memo lock").get(&key) {
      return v.clone();
    }
    // m = m' X_h with h the largest index present, and X_h X_g = X_g X_h + [X_h, X_g].
    let mut prefix = m.clone();
    prefix.0[h] -= 1;
    let mut out = self.times_gen(&self.mono_times_gen(&prefix, g), h);
    for (k, c) in &self.commutators[h][g] {
      out = out + self.mono_times_gen(&prefix, *k).scale(c);
    }
    self.memo.lock().expect("memo lock").insert(key, out.clone());
    out
  }

  fn times_gen(&self, a: &PbwElement<F>, g: usize) -> PbwElement<F> {
    let mut out = PbwElement::zero();
    for (m, c) in &a.terms {
      for (mm, cc) in self.mono_times_gen(m, g).terms {
        out.add_term(mm, cc * c.clone());
      }
    }
    out
  }

  /// Product `a · b` in normal form.
  pub fn mul(&self, a: &PbwElement<F>, b: &PbwElement<F>) -> PbwElement<F> {
    if a.is_zero() || b.is_zero() {
      return PbwElement::zero();
    }
    if let Some(c) = b.as_scalar() {
      return a.scale(&c);
    }
    if let Some(c) = a.as_scalar() {
      return b.scale(&c);
    }
    let mut out = PbwElement::zero();
    for (m, c) in &b.terms {
      let mut acc = a.scale(c);
      for g in m.word() {
        acc = self.times_gen(&acc, g);
      }
      out = out + acc;
    }
    out
  }

  /// Product with a dimension check on both operands.
  pub fn pbw_multiply(&self, a: &PbwElement<F>, b: &PbwElement<F>) -> Result<PbwElement<F>, PbwError> {
    self.check(a)?;
    self.check(b)?;
    Ok(self.mul(a, b))
  }

  /// Image under the antiautomorphism with `X_i ↦ -X_i`.
  pub fn antipode(&self, a: &PbwElement<F>) -> PbwElement<F> {
    let mut out = PbwElement::zero();
    for (m, c) in &a.terms {
      let word = m.word();
      let sign = if word.len() % 2 == 0 { F::one() } else { -F::one() };
      let mut acc = self.scalar(c.clone() * sign);
      for g in word.into_iter().rev() {
        acc = self.times_gen(&acc, g);
      }
      out = out + acc;
    }
    out
  }

  /// Commutator `ab - ba`.
  pub fn commutator(&self, a: &PbwElement<F>, b: &PbwElement<F>) -> PbwElement<F> { self.mul(a, b) - self.mul(b, a) }
}

impl<F: ScalarField> Enveloping<F> {
  pub fn new(alg: &GradedLieAlgebra<F>) -> Self {
    Self::from_constants(alg.dim(), alg.structure_constants().map(|(i, j, k, c)| (i, j, k, c.clone())))
  }

  fn eval(&self, e: &Expr) -> Result<PbwElement<F>, ParseError> {
    Ok(match e {
      Expr::Int(_) => self.scalar(expr::eval_scalar(e)?),
      Expr::Ident(s) => match expr::generator_index(s) {
        Some(i) if i < self.n => self.generator(i),
        Some(_) => return Err(ParseError::UnknownIdentifier(s.clone())),
        None => self.scalar(expr::eval_scalar(e)?),
      },
      Expr::Neg(a) => -self.eval(a)?,
      Expr::Add(a, b) => self.eval(a)? + self.eval(b)?,
      Expr::Sub(a, b) => self.eval(a)? - self.eval(b)?,
      Expr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?),
      Expr::Div(a, b) => {
        let d = self.eval(b)?.as_scalar().and_then(|d| d.inv()).ok_or(ParseError::BadDivisor)?;
        self.eval(a)?.scale(&d)
      },
      Expr::Pow(a, k) => {
        let base = self.eval(a)?;
        if *k < 0 {
          let inv = base.as_scalar().and_then(|d| d.inv()).ok_or(ParseError::BadDivisor)?;
          (0..k.unsigned_abs()).fold(self.one(), |acc, _| acc.scale(&inv))
        } else {
          (0..*k).fold(self.one(), |acc, _| self.mul(&acc, &base))
        }
      },
    })
  }

  /// Parses and normalizes text such as `"(2/t)*X1.X3 - X4"` or `"X2.X1"`.
  pub fn parse(&self, s: &str) -> Result<PbwElement<F>, ParseError> { self.eval(&expr::parse(s)?) }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::lie::catalog;
  use crate::RationalFunction;

  fn engel() -> Enveloping<RationalFunction> { Enveloping::new(&catalog("engel").unwrap()) }

  #[test]
  fn engel_normal_forms() {
    let u = engel();
    let p = |s: &str| u.parse(s).unwrap();
    assert_eq!(p("X2.X1"), p("X1.X2 - X3"));
    assert_eq!(p("X2.X1^2"), p("X1^2.X2 - 2*X1.X3 + t*X4"));
    assert_eq!(p("(X1^2.X2 - X2.X1^2)/t"), p("(2/t)*X1.X3 - X4"));
    assert_eq!(p("X3.X1"), p("X1.X3 - t*X4"));
  }

  #[test]
  fn antipode_examples() {
    let u = engel();
    let p = |s: &str| u.parse(s).unwrap();
    assert_eq!(u.antipode(&p("X1")), p("-X1"));
    assert_eq!(u.antipode(&p("X1.X2")), p("X1.X2 - X3"));
    assert_eq!(u.antipode(&p("5/t")), p("5/t"));
  }

  #[test]
  fn display_round_trip() {
    let u = engel();
    for s in ["(2/t)*X1.X3 - X4", "0", "-X1^2.X2 + 3", "(t^2-1)*X2 - (1/t)*X1", "X1 + t^2 - 1", "-1/t", "X4 - (t+1)/t"] {
      let v = u.parse(s).unwrap();
      assert_eq!(u.parse(&v.to_string()).unwrap(), v, "{s} -> {v}");
    }
    assert_eq!(u.parse("(2/t)*X1.X3 - X4").unwrap().to_string(), "-X4 + (2/t)*X1.X3");
    assert_eq!(u.parse("X3 + X1^2 + X2.X1").unwrap().to_string(), "X1^2 + X1.X2");
  }

  #[test]
  fn mismatch_is_detected() {
    let u = engel();
    let other = PbwElement::<RationalFunction>::generator(3, 0);
    assert_eq!(u.pbw_multiply(&u.generator(0), &other), Err(PbwError::AlgebraMismatch { expected: 4, found: 3 }));
  }

  #[test]
  fn rejects_bad_input() {
    let u = engel();
    assert!(u.parse("X5").is_err());
    assert!(u.parse("X1/X2").is_err());
    assert!(u.parse("s*X1").is_ok());
  }
}
