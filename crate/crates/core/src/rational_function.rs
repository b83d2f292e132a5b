//! The field ℚ(t₁,…,tₘ) of rational functions in named parameters.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::expr::{self, ParseError};
use crate::field::{Field, Rational, ScalarError, ScalarField};
use crate::poly::MPoly;
use crate::roots;

/// A reduced fraction of integer polynomials whose denominator has a
/// positive leading coefficient, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
  num: MPoly,
  den: MPoly,
}

impl RationalFunction {
  /// Builds `num / den` in canonical form.
  pub fn new(num: MPoly, den: MPoly) -> Result<Self, ScalarError> {
    if den.is_zero() {
      return Err(ScalarError::DivisionByZero);
    }
    Ok(Self::reduce(num, den))
  }

  pub fn from_poly(p: MPoly) -> Self { Self { num: p, den: MPoly::one() } }

  pub fn param(name: &str) -> Self { Self::from_poly(MPoly::var(name)) }

  pub fn numer(&self) -> &MPoly { &self.num }

  pub fn denom(&self) -> &MPoly { &self.den }

  pub fn is_polynomial(&self) -> bool { self.den.is_one() }

  fn reduce(num: MPoly, den: MPoly) -> Self {
    if num.is_zero() {
      return Self::zero();
    }
    let (num, den) = match (num.constant_value(), den.constant_value()) {
      (_, Some(d)) if d.is_one() => (num, den),
      (_, Some(d)) => {
        let g = num.content().gcd(&d);
        (num.div_integer(&g), den.div_integer(&g))
      },
      (Some(n), None) => {
        let g = n.gcd(&den.content());
        (num.div_integer(&g), den.div_integer(&g))
      },
      (None, None) => {
        let g = num.gcd(&den);
        if g.is_one() {
          (num, den)
        } else {
          (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        }
      },
    };
    if den.leading_coeff().is_negative() {
      Self { num: num.neg(), den: den.neg() }
    } else {
      Self { num, den }
    }
  }

  fn from_integer(n: BigInt) -> Self { Self::from_poly(MPoly::constant(n)) }

  pub fn pow(&self, e: i32) -> Result<Self, ScalarError> {
    let base = if e < 0 { self.inv().ok_or(ScalarError::DivisionByZero)? } else { self.clone() };
    let mut acc = Self::one();
    for _ in 0..e.unsigned_abs() {
      acc = acc * base.clone();
    }
    Ok(acc)
  }

  /// A score used to sort eigenvalues: constants first, then by degree.
  fn complexity(&self) -> (u32, u32) { (self.num.total_degree(), self.den.total_degree()) }
}

impl Zero for RationalFunction {
  fn zero() -> Self { Self { num: MPoly::zero(), den: MPoly::one() } }

  fn is_zero(&self) -> bool { self.num.is_zero() }
}

impl One for RationalFunction {
  fn one() -> Self { Self::from_poly(MPoly::one()) }
}

impl Neg for RationalFunction {
  type Output = Self;

  fn neg(self) -> Self { Self { num: self.num.neg(), den: self.den } }
}

impl Add for RationalFunction {
  type Output = Self;

  fn add(self, rhs: Self) -> Self {
    if self.is_zero() {
      return rhs;
    }
    if rhs.is_zero() {
      return self;
    }
    if self.den == rhs.den {
      if self.den.is_one() {
        return Self::from_poly(self.num.add(&rhs.num));
      }
      return Self::reduce(self.num.add(&rhs.num), self.den);
    }
    let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
    Self::reduce(num, self.den.mul(&rhs.den))
  }
}

impl Sub for RationalFunction {
  type Output = Self;

  fn sub(self, rhs: Self) -> Self { self + (-rhs) }
}

impl Mul for RationalFunction {
  type Output = Self;

  fn mul(self, rhs: Self) -> Self {
    if self.is_zero() || rhs.is_zero() {
      return Self::zero();
    }
    if self.den.is_one() && rhs.den.is_one() {
      return Self::from_poly(self.num.mul(&rhs.num));
    }
    Self::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
  }
}

impl Field for RationalFunction {
  fn inv(&self) -> Option<Self> {
    if self.is_zero() {
      None
    } else {
      Some(Self::reduce(self.den.clone(), self.num.clone()))
    }
  }

  fn from_rational(q: &Rational) -> Self {
    Self::reduce(MPoly::constant(q.numer().clone()), MPoly::constant(q.denom().clone()))
  }

  fn as_rational(&self) -> Option<Rational> {
    Some(Rational::new(self.num.constant_value()?, self.den.constant_value()?))
  }

  fn to_latex(&self) -> String {
    if self.den.is_one() {
      return self.num.to_latex();
    }
    let (sign, num) =
      if self.num.leading_coeff().is_negative() && self.num.len() == 1 { ("-", self.num.neg()) } else { ("", self.num.clone()) };
    format!("{sign}\\frac{{{}}}{{{}}}", num.to_latex(), self.den.to_latex())
  }
}

impl ScalarField for RationalFunction {
  fn parameter(name: &str) -> Option<Self> { Some(Self::param(name)) }

  fn parameters(&self) -> BTreeSet<String> {
    let mut v = self.num.variables();
    v.extend(self.den.variables());
    v
  }

  fn specialize(&self, bindings: &BTreeMap<String, Rational>) -> Result<Self, ScalarError> {
    let num = specialize_poly(&self.num, bindings);
    let den = specialize_poly(&self.den, bindings);
    if den.is_zero() {
      let names: Vec<&str> = bindings.keys().map(String::as_str).collect();
      return Err(ScalarError::DenominatorVanishes(names.join(", ")));
    }
    Ok(num * den.inv().expect("nonzero"))
  }

  fn roots(coeffs: &[Self]) -> Vec<Self> { roots::rational_function_roots(coeffs) }

  fn canonical_cmp(&self, other: &Self) -> Ordering {
    match (self.as_rational(), other.as_rational()) {
      (Some(a), Some(b)) => a.cmp(&b),
      (Some(_), None) => Ordering::Less,
      (None, Some(_)) => Ordering::Greater,
      (None, None) => {
        self.complexity().cmp(&other.complexity()).then_with(|| self.to_string().cmp(&other.to_string()))
      },
    }
  }
}

fn specialize_poly(p: &MPoly, bindings: &BTreeMap<String, Rational>) -> RationalFunction {
  let mut acc = RationalFunction::zero();
  for (m, c) in p.terms() {
    let mut term = RationalFunction::from_integer(c.clone());
    for (v, e) in m.factors() {
      let base = match bindings.get(v) {
        Some(q) => RationalFunction::from_rational(q),
        None => RationalFunction::param(v),
      };
      for _ in 0..*e {
        term = term * base.clone();
      }
    }
    acc = acc + term;
  }
  acc
}

impl fmt::Display for RationalFunction {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.den.is_one() {
      return write!(f, "{}", self.num);
    }
    if self.num.len() > 1 {
      write!(f, "({})", self.num)?;
    } else {
      write!(f, "{}", self.num)?;
    }
    let simple_den = self.den.len() == 1 && self.den.terms().all(|(m, c)| m.is_one() || (c.is_one() && m.factors().len() == 1));
    if simple_den {
      write!(f, "/{}", self.den)
    } else {
      write!(f, "/({})", self.den)
    }
  }
}

impl FromStr for RationalFunction {
  type Err = ParseError;

  fn from_str(s: &str) -> Result<Self, Self::Err> { expr::parse_scalar(s) }
}

impl From<i64> for RationalFunction {
  fn from(v: i64) -> Self { Self::from_integer(v.into()) }
}

impl serde::Serialize for RationalFunction {
  fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> { s.collect_str(self) }
}

impl<'de> serde::Deserialize<'de> for RationalFunction {
  fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  fn rf(s: &str) -> RationalFunction { s.parse().unwrap() }

  #[test]
  fn normalizes_common_factors() {
    assert_eq!(rf("(t^2-1)/(t-1)"), rf("t+1"));
    assert_eq!(rf("1/t + 1"), rf("(t+1)/t"));
    assert_eq!(rf("(t+1)/t").to_string(), "(t+1)/t");
    assert_eq!(rf("2/(-4*t)").to_string(), "-1/(2*t)");
  }

  #[test]
  fn division_by_zero() {
    let x = rf("t");
    assert_eq!(x.checked_div(&RationalFunction::zero()), Err(ScalarError::DivisionByZero));
  }

  #[test]
  fn specialization() {
    let mut b = BTreeMap::new();
    b.insert("t".to_string(), Rational::from_i64(2));
    assert_eq!(rf("t^2/t").specialize(&b).unwrap(), rf("2"));
    b.insert("t".to_string(), Rational::zero());
    assert!(matches!(rf("1/t").specialize(&b), Err(ScalarError::DenominatorVanishes(_))));
    b.insert("t".to_string(), Rational::one());
    assert_eq!(rf("t^2").specialize(&b).unwrap(), RationalFunction::one());
  }

  #[test]
  fn display_round_trips() {
    for s in ["0", "-3/4", "t", "-t", "t^2-1", "(t^2-1)/t", "1/(t*s+1)", "-2*t/s^3", "(s-t)/(2*t)"] {
      let v = rf(s);
      assert_eq!(rf(&v.to_string()), v, "{s}");
    }
  }

  #[test]
  fn latex() {
    assert_eq!(rf("-1/t").to_latex(), "-\\frac{1}{t}");
    assert_eq!(rf("t^2").to_latex(), "t^{2}");
  }
}
