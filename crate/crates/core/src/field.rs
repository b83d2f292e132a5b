//! Scalar traits shared by every layer of the engine.
//!
//! All arithmetic is exact. [`Field`] is the minimal interface needed by the
//! enveloping algebra and the operator calculus; [`ScalarField`] adds the
//! parsing, specialization and root-finding hooks needed by the spectral
//! machinery and the text formats. The concrete fields are [`Rational`]
//! (ℚ) and [`RationalFunction`](crate::RationalFunction) (ℚ(t₁,…,tₘ));
//! [`ZRational`](crate::ZRational) is a field of univariate functions over
//! either of them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::roots;

/// Arbitrary precision rational numbers.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
  #[error("division by zero")]
  DivisionByZero,
  #[error("denominator vanishes when specializing {0}")]
  DenominatorVanishes(String),
  #[error("parameter `{0}` is not bound")]
  UnboundParameter(String),
  #[error("unknown parameter `{0}`")]
  UnknownParameter(String),
}

/// A commutative field with exact arithmetic.
pub trait Field:
  Clone
  + PartialEq
  + Debug
  + Display
  + Send
  + Sync
  + 'static
  + Zero
  + One
  + Neg<Output = Self>
  + Add<Output = Self>
  + Sub<Output = Self>
  + Mul<Output = Self>
{
  /// Multiplicative inverse, `None` for zero.
  fn inv(&self) -> Option<Self>;

  fn from_rational(q: &Rational) -> Self;

  /// The value as a rational number when it is a constant of ℚ.
  fn as_rational(&self) -> Option<Rational>;

  fn from_i64(v: i64) -> Self { Self::from_rational(&Rational::from_integer(BigInt::from(v))) }

  fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
    rhs.inv().map(|r| self.clone() * r).ok_or(ScalarError::DivisionByZero)
  }

  /// LaTeX rendering; defaults to the plain text form.
  fn to_latex(&self) -> String { self.to_string() }
}

/// Fields that can act as the coefficient field of a Lie algebra: they
/// parse from text, specialize parameters and locate their own roots.
pub trait ScalarField: Field {
  /// The field element named by `name`, if the field has such a parameter.
  fn parameter(name: &str) -> Option<Self>;

  /// Names of the parameters this value depends on.
  fn parameters(&self) -> BTreeSet<String>;

  /// Substitutes rational values for parameters. Unbound parameters are kept.
  fn specialize(&self, bindings: &BTreeMap<String, Rational>) -> Result<Self, ScalarError>;

  /// The distinct roots lying in the field of the polynomial with the given
  /// coefficients (constant term first). The polynomial must be nonzero.
  fn roots(coeffs: &[Self]) -> Vec<Self>;

  /// A deterministic total order used to list eigenvalues.
  fn canonical_cmp(&self, other: &Self) -> Ordering;
}

impl Field for Rational {
  fn inv(&self) -> Option<Self> {
    if self.is_zero() {
      None
    } else {
      Some(self.recip())
    }
  }

  fn from_rational(q: &Rational) -> Self { q.clone() }

  fn as_rational(&self) -> Option<Rational> { Some(self.clone()) }

  fn to_latex(&self) -> String {
    if self.is_integer() {
      self.numer().to_string()
    } else {
      let sign = if self.is_negative() { "-" } else { "" };
      format!("{sign}\\frac{{{}}}{{{}}}", self.numer().abs(), self.denom())
    }
  }
}

impl ScalarField for Rational {
  fn parameter(_name: &str) -> Option<Self> { None }

  fn parameters(&self) -> BTreeSet<String> { BTreeSet::new() }

  fn specialize(&self, _bindings: &BTreeMap<String, Rational>) -> Result<Self, ScalarError> {
    Ok(self.clone())
  }

  fn roots(coeffs: &[Self]) -> Vec<Self> { roots::rational_roots(coeffs) }

  fn canonical_cmp(&self, other: &Self) -> Ordering { self.cmp(other) }
}

/// Parses `"3"`, `"-1/2"` style rationals used for weights and bindings.
pub fn parse_rational(s: &str) -> Option<Rational> {
  let s = s.trim();
  match s.split_once('/') {
    Some((n, d)) => {
      let n: BigInt = n.trim().parse().ok()?;
      let d: BigInt = d.trim().parse().ok()?;
      if d.is_zero() {
        None
      } else {
        Some(Rational::new(n, d))
      }
    },
    None => s.parse::<BigInt>().ok().map(Rational::from_integer),
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn rational_inverse_of_zero_is_none() {
    assert!(Rational::zero().inv().is_none());
    assert_eq!(Rational::from_i64(4).inv(), parse_rational("1/4"));
  }

  #[test]
  fn checked_div_reports_division_by_zero() {
    let x = Rational::from_i64(3);
    assert_eq!(x.checked_div(&Rational::zero()), Err(ScalarError::DivisionByZero));
  }

  #[test]
  fn parse_rational_forms() {
    assert_eq!(parse_rational("3/2"), Some(Rational::new(3.into(), 2.into())));
    assert_eq!(parse_rational(" -7 "), Some(Rational::from_i64(-7)));
    assert_eq!(parse_rational("1/0"), None);
    assert_eq!(parse_rational("x"), None);
  }
}
