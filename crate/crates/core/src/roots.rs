//! Roots of univariate polynomials that lie in ℚ or ℚ(t₁,…,tₘ).
//!
//! Both cases reduce to integer roots of a monic polynomial: after clearing
//! denominators `a_m x^m + … + a_0` becomes monic in `y = a_m x`, and a
//! monic polynomial over ℤ (resp. ℤ[t]) has all its rational (resp.
//! ℚ(t)-) roots in ℤ (resp. ℤ[t]). Integer roots are isolated with a Sturm
//! sequence; polynomial roots are found by Kronecker substitution and then
//! checked exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{Field, Rational};
use crate::poly::{MPoly, Monomial};
use crate::rational_function::RationalFunction;

fn trim_int(mut p: Vec<BigInt>) -> Vec<BigInt> {
  while p.last().is_some_and(Zero::is_zero) {
    p.pop();
  }
  p
}

fn eval_rat(p: &[Rational], x: &Rational) -> Rational {
  p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn rat_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
  let mut r = a.to_vec();
  let db = b.len() - 1;
  let lb = b[db].clone();
  while r.len() > db {
    let c = r.last().unwrap().clone() / &lb;
    let shift = r.len() - 1 - db;
    for (j, bc) in b.iter().enumerate() {
      r[shift + j] = &r[shift + j] - &c * bc;
    }
    r.pop();
    while r.last().is_some_and(Zero::is_zero) {
      r.pop();
    }
  }
  r
}

struct Sturm(Vec<Vec<Rational>>);

impl Sturm {
  fn new(p: &[BigInt]) -> Self {
    let p: Vec<Rational> = p.iter().cloned().map(Rational::from_integer).collect();
    let dp: Vec<Rational> = p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect();
    let mut seq = vec![p, dp];
    loop {
      let n = seq.len();
      if seq[n - 1].is_empty() {
        seq.pop();
        break;
      }
      let r = rat_rem(&seq[n - 2], &seq[n - 1]);
      if r.is_empty() {
        break;
      }
      seq.push(r.into_iter().map(|c| -c).collect());
    }
    Self(seq)
  }

  fn variations(&self, x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in &self.0 {
      let v = eval_rat(p, x);
      let s = if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 };
      if s != 0 {
        if last != 0 && s != last {
          count += 1;
        }
        last = s;
      }
    }
    count
  }
}

fn half_above(k: &BigInt) -> Rational { Rational::new(k * 2 + 1, BigInt::from(2)) }

/// Distinct integer roots of an integer polynomial (constant term first).
pub fn integer_roots(p: &[BigInt]) -> Vec<BigInt> {
  let p = trim_int(p.to_vec());
  let mut roots = Vec::new();
  let v = p.iter().take_while(|c| c.is_zero()).count();
  if v == p.len() {
    return roots;
  }
  if v > 0 {
    roots.push(BigInt::zero());
  }
  let p = p[v..].to_vec();
  if p.len() <= 1 {
    return roots;
  }
  // Every nonzero integer root divides the constant term.
  let bound = p[0].abs();
  let sturm = Sturm::new(&p);
  let mut stack = vec![(-&bound - 1, bound.clone())];
  while let Some((lo, hi)) = stack.pop() {
    // Interval (lo + 1/2, hi + 1/2) contains the integers lo+1..=hi.
    let count = sturm.variations(&half_above(&lo)) - sturm.variations(&half_above(&hi));
    if count == 0 {
      continue;
    }
    if &hi - &lo == BigInt::one() {
      let x = Rational::from_integer(hi.clone());
      let pr: Vec<Rational> = p.iter().cloned().map(Rational::from_integer).collect();
      if eval_rat(&pr, &x).is_zero() {
        roots.push(hi);
      }
      continue;
    }
    let mid = (&lo + &hi).div_floor(&BigInt::from(2));
    stack.push((mid.clone(), hi));
    stack.push((lo, mid));
  }
  roots.sort();
  roots
}

/// Distinct rational roots of a nonzero polynomial with rational coefficients.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
  let mut coeffs = coeffs.to_vec();
  while coeffs.last().is_some_and(Zero::is_zero) {
    coeffs.pop();
  }
  if coeffs.len() <= 1 {
    return Vec::new();
  }
  let lcm = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
  let a: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
  let m = a.len() - 1;
  let lead = a[m].clone();
  let b: Vec<BigInt> = (0..=m)
    .map(|i| if i == m { BigInt::one() } else { &a[i] * num_traits::pow(lead.clone(), m - 1 - i) })
    .collect();
  let mut out: Vec<Rational> = integer_roots(&b).into_iter().map(|y| Rational::new(y, lead.clone())).collect();
  out.sort();
  out
}

fn decode_balanced(mut n: BigInt, base: &BigInt, vars: &[String], radices: &[u32]) -> Option<MPoly> {
  let mut terms = Vec::new();
  let mut pos: u64 = 0;
  let half = base / 2;
  let cells: u64 = radices.iter().map(|r| u64::from(*r)).product();
  while !n.is_zero() {
    if pos >= cells {
      return None;
    }
    let mut d = n.mod_floor(base);
    if d > half {
      d -= base;
    }
    n = (&n - &d) / base;
    if !d.is_zero() {
      let mut rest = pos;
      let mut factors = Vec::new();
      for (v, r) in vars.iter().zip(radices) {
        factors.push((v.clone(), (rest % u64::from(*r)) as u32));
        rest /= u64::from(*r);
      }
      terms.push((Monomial::from_factors(factors), d));
    }
    pos += 1;
  }
  Some(MPoly::from_terms(terms))
}

fn eval_monic(b: &[MPoly], y: &MPoly) -> MPoly {
  b.iter().rev().fold(MPoly::zero(), |acc, c| acc.mul(y).add(c))
}

/// Distinct roots in ℚ(t₁,…,tₘ) of a nonzero polynomial over that field.
///
/// Roots are searched for by Kronecker substitution at increasing bases and
/// each candidate is confirmed exactly; the search stops once the found
/// roots account for the whole polynomial or the attempts run out.
pub fn rational_function_roots(coeffs: &[RationalFunction]) -> Vec<RationalFunction> {
  let mut coeffs = coeffs.to_vec();
  while coeffs.last().is_some_and(Zero::is_zero) {
    coeffs.pop();
  }
  if coeffs.len() <= 1 {
    return Vec::new();
  }
  if let Some(qs) = coeffs.iter().map(Field::as_rational).collect::<Option<Vec<_>>>() {
    return rational_roots(&qs).iter().map(RationalFunction::from_rational).collect();
  }
  let mut lcm = MPoly::one();
  for c in &coeffs {
    let g = lcm.gcd(c.denom());
    lcm = lcm.mul(&c.denom().div_exact(&g).expect("gcd divides"));
  }
  let a: Vec<MPoly> =
    coeffs.iter().map(|c| c.numer().mul(&lcm.div_exact(c.denom()).expect("lcm is a multiple"))).collect();
  let m = a.len() - 1;
  let lead = a[m].clone();
  let b: Vec<MPoly> = (0..=m).map(|i| if i == m { MPoly::one() } else { a[i].mul(&lead.pow((m - 1 - i) as u32)) }).collect();

  let mut vars: Vec<String> = b.iter().flat_map(MPoly::variables).collect();
  vars.sort();
  vars.dedup();
  let radices: Vec<u32> = vars
    .iter()
    .map(|v| (0..m).map(|i| b[i].degree_in(v) / (m - i) as u32).max().unwrap_or(0) + 1)
    .collect();

  let height = b.iter().map(MPoly::one_norm).max().unwrap_or_else(BigInt::one);
  let mut base: BigInt = height * 2 + 3;
  let mut found: Vec<MPoly> = Vec::new();
  let mut remaining = b.clone();
  for _ in 0..4 {
    let mut values = BTreeMap::new();
    let mut w = 1usize;
    for (v, r) in vars.iter().zip(&radices) {
      values.insert(v.clone(), num_traits::pow(base.clone(), w));
      w *= *r as usize;
    }
    let ints: Vec<BigInt> = remaining.iter().map(|c| c.eval_integers(&values)).collect();
    for n in integer_roots(&ints) {
      let Some(y) = decode_balanced(n, &base, &vars, &radices) else { continue };
      if found.contains(&y) || !eval_monic(&remaining, &y).is_zero() {
        continue;
      }
      found.push(y.clone());
      remaining = deflate_all(&remaining, &y);
    }
    if remaining.len() <= 1 {
      break;
    }
    base = &base * &base;
  }
  found
    .into_iter()
    .map(|y| RationalFunction::new(y, lead.clone()).expect("leading coefficient is nonzero"))
    .collect()
}

/// Removes every factor `(y - r)` from a monic polynomial over ℤ[t].
fn deflate_all(p: &[MPoly], r: &MPoly) -> Vec<MPoly> {
  let mut p = p.to_vec();
  while p.len() > 1 && eval_monic(&p, r).is_zero() {
    // Synthetic division by (y - r).
    let n = p.len() - 1;
    let mut q = vec![MPoly::zero(); n];
    let mut carry = MPoly::zero();
    for i in (0..n).rev() {
      carry = p[i + 1].add(&carry.mul(r));
      q[i] = carry.clone();
    }
    p = q;
  }
  p
}

#[cfg(test)]
mod tests {
  use super::*;

  fn ints(v: &[i64]) -> Vec<BigInt> { v.iter().map(|&x| BigInt::from(x)).collect() }

  #[test]
  fn integer_roots_with_multiplicity() {
    // (x-2)^2 (x+3) x = x^4 - x^3 - 8x^2 + 12x
    assert_eq!(integer_roots(&ints(&[0, 12, -8, -1, 1])), ints(&[-3, 0, 2]));
    assert_eq!(integer_roots(&ints(&[-1, -1, 1])), Vec::<BigInt>::new());
  }

  #[test]
  fn rational_roots_of_nonmonic() {
    // 6x^2 - x - 1 = (3x+1)(2x-1)
    let c: Vec<Rational> = [-1, -1, 6].iter().map(|&v| Rational::from_i64(v)).collect();
    let r = rational_roots(&c);
    assert_eq!(r, vec![Rational::new((-1).into(), 3.into()), Rational::new(1.into(), 2.into())]);
  }

  #[test]
  fn parametric_roots() {
    let rf = |s: &str| s.parse::<RationalFunction>().unwrap();
    // x (x - 1) (x - t^2) = x^3 - (1 + t^2) x^2 + t^2 x
    let c = vec![rf("0"), rf("t^2"), rf("-1-t^2"), rf("1")];
    let mut r = rational_function_roots(&c);
    r.sort_by_key(|x| x.to_string());
    assert_eq!(r, vec![rf("0"), rf("1"), rf("t^2")]);
    // (2x - s/t)(x + t - 3)
    let c = vec![rf("-(s/t)*(t-3)"), rf("2*(t-3) - s/t"), rf("2")];
    let mut r = rational_function_roots(&c);
    r.sort_by_key(|x| x.to_string());
    assert_eq!(r, vec![rf("-t+3"), rf("s/(2*t)")]);
    // irreducible x^2 - t
    assert!(rational_function_roots(&[rf("-t"), rf("0"), rf("1")]).is_empty());
  }
}
