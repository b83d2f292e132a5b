//! Univariate polynomials and rational functions in an auxiliary variable `z`
//! over any [`Field`], with residue extraction at `z = 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::field::{Field, Rational};

/// Dense polynomial, coefficient `i` multiplies `z^i`; no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<F> {
  coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
  pub fn new(mut coeffs: Vec<F>) -> Self {
    while coeffs.last().is_some_and(Zero::is_zero) {
      coeffs.pop();
    }
    Self { coeffs }
  }

  pub fn zero() -> Self { Self { coeffs: Vec::new() } }

  pub fn constant(c: F) -> Self { Self::new(vec![c]) }

  /// The monomial `z`.
  pub fn z() -> Self { Self::new(vec![F::zero(), F::one()]) }

  /// `z - a`.
  pub fn linear(a: F) -> Self { Self::new(vec![-a, F::one()]) }

  pub fn coeffs(&self) -> &[F] { &self.coeffs }

  pub fn is_zero(&self) -> bool { self.coeffs.is_empty() }

  pub fn is_one(&self) -> bool { self.coeffs.len() == 1 && self.coeffs[0].is_one() }

  /// Degree, with `None` for the zero polynomial.
  pub fn degree(&self) -> Option<usize> { self.coeffs.len().checked_sub(1) }

  pub fn coeff(&self, i: usize) -> F { self.coeffs.get(i).cloned().unwrap_or_else(F::zero) }

  pub fn lead(&self) -> F { self.coeffs.last().cloned().unwrap_or_else(F::zero) }

  pub fn add(&self, o: &Self) -> Self {
    let n = self.coeffs.len().max(o.coeffs.len());
    Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
  }

  pub fn sub(&self, o: &Self) -> Self {
    let n = self.coeffs.len().max(o.coeffs.len());
    Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
  }

  pub fn neg(&self) -> Self { Self { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() } }

  pub fn scale(&self, c: &F) -> Self { Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect()) }

  pub fn mul(&self, o: &Self) -> Self {
    if self.is_zero() || o.is_zero() {
      return Self::zero();
    }
    let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
    for (i, a) in self.coeffs.iter().enumerate() {
      if a.is_zero() {
        continue;
      }
      for (j, b) in o.coeffs.iter().enumerate() {
        if !b.is_zero() {
          out[i + j] = out[i + j].clone() + a.clone() * b.clone();
        }
      }
    }
    Self::new(out)
  }

  pub fn derivative(&self) -> Self {
    Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.clone() * F::from_i64(i as i64)).collect())
  }

  /// Quotient and remainder; panics on division by zero.
  pub fn div_rem(&self, d: &Self) -> (Self, Self) {
    let dd = d.degree().expect("division by the zero polynomial");
    let inv_lead = d.lead().inv().expect("nonzero leading coefficient");
    let mut rem = self.coeffs.clone();
    if rem.len() <= dd {
      return (Self::zero(), self.clone());
    }
    let mut quot = vec![F::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
      let c = rem[i].clone() * inv_lead.clone();
      if c.is_zero() {
        continue;
      }
      for (j, dc) in d.coeffs.iter().enumerate() {
        rem[i - dd + j] = rem[i - dd + j].clone() - c.clone() * dc.clone();
      }
      quot[i - dd] = c;
    }
    rem.truncate(dd);
    (Self::new(quot), Self::new(rem))
  }

  pub fn monic(&self) -> Self {
    match self.lead().inv() {
      Some(l) if !self.lead().is_one() => self.scale(&l),
      _ => self.clone(),
    }
  }

  /// Monic greatest common divisor.
  pub fn gcd(&self, o: &Self) -> Self {
    let (mut a, mut b) = (self.clone(), o.clone());
    while !b.is_zero() {
      if b.degree() == Some(0) {
        return Self::constant(F::one());
      }
      let r = a.div_rem(&b).1;
      a = b;
      b = r;
    }
    a.monic()
  }

  pub fn eval(&self, x: &F) -> F {
    self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
  }

  /// Number of leading zero coefficients (the order of vanishing at 0).
  pub fn valuation(&self) -> usize { self.coeffs.iter().take_while(|c| c.is_zero()).count() }

  pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UniPoly<G> { UniPoly::new(self.coeffs.iter().map(f).collect()) }

  fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
    if self.is_zero() {
      return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in self.coeffs.iter().enumerate().rev() {
      if c.is_zero() {
        continue;
      }
      if !first {
        write!(f, " + ")?;
      }
      first = false;
      let mono = match i {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{i}"),
      };
      if mono.is_empty() {
        write!(f, "({c})")?;
      } else if c.is_one() {
        write!(f, "{mono}")?;
      } else {
        write!(f, "({c})*{mono}")?;
      }
    }
    Ok(())
  }
}

impl<F: Field> fmt::Display for UniPoly<F> {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { self.fmt_with(f, "z") }
}

/// A reduced fraction of polynomials in `z` with monic denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct ZRational<F> {
  num: UniPoly<F>,
  den: UniPoly<F>,
}

impl<F: Field> ZRational<F> {
  pub fn new(num: UniPoly<F>, den: UniPoly<F>) -> Option<Self> {
    if den.is_zero() {
      return None;
    }
    Some(Self::reduce(num, den))
  }

  pub fn from_poly(p: UniPoly<F>) -> Self { Self { num: p, den: UniPoly::constant(F::one()) } }

  pub fn constant(c: F) -> Self { Self::from_poly(UniPoly::constant(c)) }

  /// `1 / (z - a)`.
  pub fn pole(a: F) -> Self { Self { num: UniPoly::constant(F::one()), den: UniPoly::linear(a) } }

  pub fn z() -> Self { Self::from_poly(UniPoly::z()) }

  pub fn numer(&self) -> &UniPoly<F> { &self.num }

  pub fn denom(&self) -> &UniPoly<F> { &self.den }

  /// The value as an element of `F` if it does not depend on `z`.
  pub fn as_constant(&self) -> Option<F> {
    (self.den.is_one() && self.num.degree().unwrap_or(0) == 0).then(|| self.num.coeff(0))
  }

  fn reduce(num: UniPoly<F>, den: UniPoly<F>) -> Self {
    if num.is_zero() {
      return Self::zero();
    }
    if den.degree() == Some(0) {
      let inv = den.lead().inv().expect("nonzero");
      return Self::from_poly(num.scale(&inv));
    }
    let g = num.gcd(&den);
    let (num, den) = if g.is_one() { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
    let lead = den.lead();
    if lead.is_one() {
      Self { num, den }
    } else {
      let inv = lead.inv().expect("nonzero");
      Self { num: num.scale(&inv), den: den.scale(&inv) }
    }
  }

  /// The coefficient of `z⁻¹` in the Laurent expansion at `z = 0`.
  pub fn residue_at_zero(&self) -> F {
    let m = self.den.valuation();
    if m == 0 || self.num.is_zero() {
      return F::zero();
    }
    // den = z^m q with q(0) != 0; expand num/q to order m-1.
    let q: Vec<F> = self.den.coeffs()[m..].to_vec();
    let q0_inv = q[0].inv().expect("q(0) is nonzero");
    let mut series: Vec<F> = Vec::with_capacity(m);
    for i in 0..m {
      let mut acc = self.num.coeff(i);
      for j in 1..=i.min(q.len() - 1) {
        acc = acc - q[j].clone() * series[i - j].clone();
      }
      series.push(acc * q0_inv.clone());
    }
    series.pop().expect("m > 0")
  }

  pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Option<ZRational<G>> {
    ZRational::new(self.num.map(&f), self.den.map(&f))
  }
}

impl<F: Field> Zero for ZRational<F> {
  fn zero() -> Self { Self::from_poly(UniPoly::zero()) }

  fn is_zero(&self) -> bool { self.num.is_zero() }
}

impl<F: Field> One for ZRational<F> {
  fn one() -> Self { Self::constant(F::one()) }
}

impl<F: Field> Neg for ZRational<F> {
  type Output = Self;

  fn neg(self) -> Self { Self { num: self.num.neg(), den: self.den } }
}

impl<F: Field> Add for ZRational<F> {
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
    let g = self.den.gcd(&rhs.den);
    let (a_co, b_co) = if g.is_one() {
      (rhs.den.clone(), self.den.clone())
    } else {
      (rhs.den.div_rem(&g).0, self.den.div_rem(&g).0)
    };
    let num = self.num.mul(&a_co).add(&rhs.num.mul(&b_co));
    Self::reduce(num, self.den.mul(&a_co))
  }
}

impl<F: Field> Sub for ZRational<F> {
  type Output = Self;

  fn sub(self, rhs: Self) -> Self { self + (-rhs) }
}

impl<F: Field> Mul for ZRational<F> {
  type Output = Self;

  fn mul(self, rhs: Self) -> Self {
    if self.is_zero() || rhs.is_zero() {
      return Self::zero();
    }
    if self.den.is_one() && rhs.den.is_one() {
      return Self::from_poly(self.num.mul(&rhs.num));
    }
    if let Some(c) = self.as_constant() {
      return Self { num: rhs.num.scale(&c), den: rhs.den };
    }
    if let Some(c) = rhs.as_constant() {
      return Self { num: self.num.scale(&c), den: self.den };
    }
    Self::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
  }
}

impl<F: Field> Field for ZRational<F> {
  fn inv(&self) -> Option<Self> {
    if self.is_zero() {
      None
    } else {
      Some(Self::reduce(self.den.clone(), self.num.clone()))
    }
  }

  fn from_rational(q: &Rational) -> Self { Self::constant(F::from_rational(q)) }

  fn as_rational(&self) -> Option<Rational> { self.as_constant()?.as_rational() }
}

impl<F: Field> fmt::Display for ZRational<F> {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.den.is_one() {
      return write!(f, "{}", self.num);
    }
    write!(f, "[{}]/[{}]", self.num, self.den)
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::RationalFunction;

  fn q(v: i64) -> Rational { Rational::from_i64(v) }

  #[test]
  fn residues_of_simple_poles() {
    let one_over_z = ZRational::<Rational>::pole(q(0));
    assert_eq!(one_over_z.residue_at_zero(), q(1));
    let f = ZRational::pole(q(0)) * ZRational::pole(q(1));
    assert_eq!(f.residue_at_zero(), q(-1));
    let g = ZRational::z() * ZRational::pole(q(1));
    assert_eq!(g.residue_at_zero(), q(0));
  }

  #[test]
  fn residue_double_pole_with_parameter() {
    let t: RationalFunction = "t".parse().unwrap();
    let a = t.clone() * t.clone();
    let f = ZRational::pole(RationalFunction::zero()) * ZRational::pole(RationalFunction::zero()) * ZRational::pole(a);
    let expected: RationalFunction = "-1/t^4".parse().unwrap();
    assert_eq!(f.residue_at_zero(), expected);
  }

  #[test]
  fn inverse_of_z_minus_constant() {
    let f = ZRational::<Rational>::z() - ZRational::constant(q(3));
    assert_eq!(f.inv().unwrap(), ZRational::pole(q(3)));
    assert_eq!(f.clone() * f.inv().unwrap(), ZRational::one());
  }

  #[test]
  fn polynomial_gcd_and_division() {
    let p = UniPoly::new(vec![q(-1), q(0), q(1)]);
    let r = UniPoly::linear(q(1));
    assert_eq!(p.gcd(&r), r);
    let (quo, rem) = p.div_rem(&r);
    assert_eq!(quo, UniPoly::linear(q(-1)));
    assert!(rem.is_zero());
  }
}
