//! Sparse multivariate polynomials over ℤ with named variables.
//!
//! Terms are kept in a `BTreeMap` ordered by graded lexicographic order on
//! the exponents, with variables compared by name. The greatest common
//! divisor uses the recursive primitive pseudo-remainder sequence, which is
//! plenty for the small parameter polynomials that appear as structure
//! constants.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A power product of named variables, sorted by name, all exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
  pub fn one() -> Self { Self(Vec::new()) }

  pub fn var(name: &str) -> Self { Self(vec![(name.to_string(), 1)]) }

  /// Builds a monomial from `(variable, exponent)` pairs in any order.
  pub fn from_factors(mut factors: Vec<(String, u32)>) -> Self {
    factors.retain(|(_, e)| *e > 0);
    factors.sort();
    factors.dedup_by(|b, a| {
      if a.0 == b.0 {
        a.1 += b.1;
        true
      } else {
        false
      }
    });
    Self(factors)
  }

  pub fn degree(&self) -> u32 { self.0.iter().map(|(_, e)| e).sum() }

  pub fn is_one(&self) -> bool { self.0.is_empty() }

  pub fn exponent(&self, var: &str) -> u32 {
    self.0.iter().find(|(v, _)| v == var).map_or(0, |(_, e)| *e)
  }

  pub fn factors(&self) -> &[(String, u32)] { &self.0 }

  fn mul(&self, other: &Self) -> Self {
    let mut out = Vec::with_capacity(self.0.len() + other.0.len());
    let (mut i, mut j) = (0, 0);
    while i < self.0.len() && j < other.0.len() {
      match self.0[i].0.cmp(&other.0[j].0) {
        Ordering::Less => {
          out.push(self.0[i].clone());
          i += 1;
        },
        Ordering::Greater => {
          out.push(other.0[j].clone());
          j += 1;
        },
        Ordering::Equal => {
          out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
          i += 1;
          j += 1;
        },
      }
    }
    out.extend_from_slice(&self.0[i..]);
    out.extend_from_slice(&other.0[j..]);
    Self(out)
  }

  /// `self / other` when `other` divides `self`.
  fn div(&self, other: &Self) -> Option<Self> {
    let mut out = Vec::new();
    let mut j = 0;
    for (v, e) in &self.0 {
      let mut e = *e;
      if j < other.0.len() && &other.0[j].0 == v {
        if other.0[j].1 > e {
          return None;
        }
        e -= other.0[j].1;
        j += 1;
      } else if j < other.0.len() && other.0[j].0 < *v {
        return None;
      }
      if e > 0 {
        out.push((v.clone(), e));
      }
    }
    if j < other.0.len() {
      return None;
    }
    Some(Self(out))
  }

  fn without(&self, var: &str) -> (u32, Self) {
    let e = self.exponent(var);
    (e, Self(self.0.iter().filter(|(v, _)| v != var).cloned().collect()))
  }

  fn with_power(&self, var: &str, e: u32) -> Self {
    if e == 0 {
      self.clone()
    } else {
      self.mul(&Self(vec![(var.to_string(), e)]))
    }
  }
}

fn lex_cmp(a: &[(String, u32)], b: &[(String, u32)]) -> Ordering {
  let (mut i, mut j) = (0, 0);
  loop {
    match (a.get(i), b.get(j)) {
      (None, None) => return Ordering::Equal,
      (Some(_), None) => return Ordering::Greater,
      (None, Some(_)) => return Ordering::Less,
      (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
        Ordering::Equal => {
          if ea != eb {
            return ea.cmp(eb);
          }
          i += 1;
          j += 1;
        },
        // `a` carries an earlier variable that `b` lacks.
        Ordering::Less => return Ordering::Greater,
        Ordering::Greater => return Ordering::Less,
      },
    }
  }
}

impl Ord for Monomial {
  fn cmp(&self, other: &Self) -> Ordering {
    self.degree().cmp(&other.degree()).then_with(|| lex_cmp(&self.0, &other.0))
  }
}

impl PartialOrd for Monomial {
  fn partial_cmp(&self, other: &Self) -> Option<Ordering> { Some(self.cmp(other)) }
}

impl fmt::Display for Monomial {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (idx, (v, e)) in self.0.iter().enumerate() {
      if idx > 0 {
        write!(f, "*")?;
      }
      if *e == 1 {
        write!(f, "{v}")?;
      } else {
        write!(f, "{v}^{e}")?;
      }
    }
    Ok(())
  }
}

/// Multivariate polynomial with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
  terms: BTreeMap<Monomial, BigInt>,
}

impl MPoly {
  pub fn zero() -> Self { Self::default() }

  pub fn one() -> Self { Self::constant(BigInt::one()) }

  pub fn constant(c: BigInt) -> Self {
    let mut terms = BTreeMap::new();
    if !c.is_zero() {
      terms.insert(Monomial::one(), c);
    }
    Self { terms }
  }

  pub fn var(name: &str) -> Self {
    let mut terms = BTreeMap::new();
    terms.insert(Monomial::var(name), BigInt::one());
    Self { terms }
  }

  pub fn from_terms(it: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
    let mut p = Self::zero();
    for (m, c) in it {
      p.add_term(m, c);
    }
    p
  }

  pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> { self.terms.iter() }

  pub fn len(&self) -> usize { self.terms.len() }

  pub fn is_empty(&self) -> bool { self.terms.is_empty() }

  pub fn is_zero(&self) -> bool { self.terms.is_empty() }

  pub fn is_one(&self) -> bool { self.constant_value().is_some_and(|c| c.is_one()) }

  /// The value when the polynomial is a constant (including zero).
  pub fn constant_value(&self) -> Option<BigInt> {
    match self.terms.len() {
      0 => Some(BigInt::zero()),
      1 => self.terms.get(&Monomial::one()).cloned(),
      _ => None,
    }
  }

  pub fn leading(&self) -> Option<(&Monomial, &BigInt)> { self.terms.iter().next_back() }

  pub fn leading_coeff(&self) -> BigInt {
    self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigInt::zero)
  }

  pub fn total_degree(&self) -> u32 { self.terms.keys().map(Monomial::degree).max().unwrap_or(0) }

  pub fn variables(&self) -> BTreeSet<String> {
    self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| v.clone())).collect()
  }

  pub fn degree_in(&self, var: &str) -> u32 {
    self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
  }

  fn add_term(&mut self, m: Monomial, c: BigInt) {
    if c.is_zero() {
      return;
    }
    match self.terms.entry(m) {
      std::collections::btree_map::Entry::Vacant(e) => {
        e.insert(c);
      },
      std::collections::btree_map::Entry::Occupied(mut e) => {
        *e.get_mut() += c;
        if e.get().is_zero() {
          e.remove();
        }
      },
    }
  }

  pub fn add(&self, other: &Self) -> Self {
    let mut out = self.clone();
    for (m, c) in &other.terms {
      out.add_term(m.clone(), c.clone());
    }
    out
  }

  pub fn sub(&self, other: &Self) -> Self {
    let mut out = self.clone();
    for (m, c) in &other.terms {
      out.add_term(m.clone(), -c.clone());
    }
    out
  }

  pub fn neg(&self) -> Self { Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() } }

  pub fn mul(&self, other: &Self) -> Self {
    if self.is_zero() || other.is_zero() {
      return Self::zero();
    }
    if let Some(c) = self.constant_value() {
      return other.scale(&c);
    }
    if let Some(c) = other.constant_value() {
      return self.scale(&c);
    }
    let mut out = Self::zero();
    for (ma, ca) in &self.terms {
      for (mb, cb) in &other.terms {
        out.add_term(ma.mul(mb), ca * cb);
      }
    }
    out
  }

  pub fn scale(&self, c: &BigInt) -> Self {
    if c.is_zero() {
      return Self::zero();
    }
    Self { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
  }

  pub fn pow(&self, e: u32) -> Self {
    let mut acc = Self::one();
    for _ in 0..e {
      acc = acc.mul(self);
    }
    acc
  }

  /// Positive gcd of the integer coefficients (zero for the zero polynomial).
  pub fn content(&self) -> BigInt {
    self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
  }

  /// Exact division by an integer.
  pub fn div_integer(&self, c: &BigInt) -> Self {
    Self { terms: self.terms.iter().map(|(m, x)| (m.clone(), x / c)).collect() }
  }

  /// `self / d` if the division is exact in ℤ[vars].
  pub fn div_exact(&self, d: &Self) -> Option<Self> {
    if d.is_zero() {
      return None;
    }
    if let Some(c) = d.constant_value() {
      if self.terms.values().all(|x| x.is_multiple_of(&c)) {
        return Some(self.div_integer(&c));
      }
      return None;
    }
    let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
    let mut rem = self.clone();
    let mut quot = Self::zero();
    while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
      let qm = rm.div(&dm)?;
      if !rc.is_multiple_of(&dc) {
        return None;
      }
      let qc = &rc / &dc;
      let step = Self::from_terms([(qm, qc)]);
      rem = rem.sub(&d.mul(&step));
      quot = quot.add(&step);
    }
    Some(quot)
  }

  /// Coefficients in powers of `var`; entry `i` multiplies `var^i`.
  pub fn to_univariate(&self, var: &str) -> Vec<MPoly> {
    let deg = self.degree_in(var) as usize;
    let mut out = vec![MPoly::zero(); if self.is_zero() { 0 } else { deg + 1 }];
    for (m, c) in &self.terms {
      let (e, rest) = m.without(var);
      out[e as usize].add_term(rest, c.clone());
    }
    out
  }

  pub fn from_univariate(var: &str, coeffs: &[MPoly]) -> Self {
    let mut out = Self::zero();
    for (i, c) in coeffs.iter().enumerate() {
      for (m, x) in &c.terms {
        out.add_term(m.with_power(var, i as u32), x.clone());
      }
    }
    out
  }

  /// Makes the leading coefficient positive.
  pub fn normalize_sign(self) -> Self {
    if self.leading_coeff().is_negative() {
      self.neg()
    } else {
      self
    }
  }

  /// Greatest common divisor with positive leading coefficient.
  pub fn gcd(&self, other: &Self) -> Self {
    if self.is_zero() {
      return other.clone().normalize_sign();
    }
    if other.is_zero() {
      return self.clone().normalize_sign();
    }
    if self.is_one() || other.is_one() {
      return Self::one();
    }
    let mut vars = self.variables();
    vars.extend(other.variables());
    let Some(var) = vars.iter().next_back().cloned() else {
      return Self::constant(self.content().gcd(&other.content()));
    };
    let ua = self.to_univariate(&var);
    let ub = other.to_univariate(&var);
    let ca = univariate_content(&ua);
    let cb = univariate_content(&ub);
    let content = ca.gcd(&cb);
    let mut f = univariate_div(&ua, &ca);
    let mut g = univariate_div(&ub, &cb);
    if f.len() < g.len() {
      std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
      let r = pseudo_remainder(&f, &g);
      f = g;
      g = univariate_primitive(&r);
    }
    let prim = univariate_primitive(&f);
    MPoly::from_univariate(&var, &prim).mul(&content).normalize_sign()
  }

  /// Evaluates at integer values for every variable.
  pub fn eval_integers(&self, values: &BTreeMap<String, BigInt>) -> BigInt {
    let mut acc = BigInt::zero();
    for (m, c) in &self.terms {
      let mut t = c.clone();
      for (v, e) in &m.0 {
        t *= num_traits::pow(values[v].clone(), *e as usize);
      }
      acc += t;
    }
    acc
  }

  /// Maximum absolute value among the coefficients.
  pub fn height(&self) -> BigInt { self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero) }

  /// Sum of the absolute values of the coefficients.
  pub fn one_norm(&self) -> BigInt { self.terms.values().map(|c| c.abs()).sum() }
}

fn trim(v: &mut Vec<MPoly>) {
  while v.last().is_some_and(MPoly::is_zero) {
    v.pop();
  }
}

fn univariate_content(u: &[MPoly]) -> MPoly {
  u.iter().fold(MPoly::zero(), |g, c| g.gcd(c))
}

fn univariate_div(u: &[MPoly], c: &MPoly) -> Vec<MPoly> {
  u.iter().map(|x| x.div_exact(c).expect("content divides every coefficient")).collect()
}

fn univariate_primitive(u: &[MPoly]) -> Vec<MPoly> {
  let mut u = u.to_vec();
  trim(&mut u);
  if u.is_empty() {
    return u;
  }
  let c = univariate_content(&u);
  let mut out = univariate_div(&u, &c);
  if out.last().unwrap().leading_coeff().is_negative() {
    out = out.iter().map(MPoly::neg).collect();
  }
  out
}

fn pseudo_remainder(f: &[MPoly], g: &[MPoly]) -> Vec<MPoly> {
  let mut r = f.to_vec();
  trim(&mut r);
  let dg = g.len() - 1;
  let lg = g[dg].clone();
  while !r.is_empty() && r.len() > dg {
    let dr = r.len() - 1;
    let lr = r[dr].clone();
    let shift = dr - dg;
    let mut next: Vec<MPoly> = r.iter().map(|c| c.mul(&lg)).collect();
    for (i, gc) in g.iter().enumerate() {
      next[i + shift] = next[i + shift].sub(&gc.mul(&lr));
    }
    trim(&mut next);
    r = next;
  }
  r
}

impl fmt::Display for MPoly {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.is_zero() {
      return write!(f, "0");
    }
    for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
      let neg = c.is_negative();
      let a = c.abs();
      if idx == 0 {
        if neg {
          write!(f, "-")?;
        }
      } else {
        write!(f, "{}", if neg { "-" } else { "+" })?;
      }
      if m.is_one() {
        write!(f, "{a}")?;
      } else if a.is_one() {
        write!(f, "{m}")?;
      } else {
        write!(f, "{a}*{m}")?;
      }
    }
    Ok(())
  }
}

impl MPoly {
  /// LaTeX form such as `t^{2}-1`.
  pub fn to_latex(&self) -> String {
    if self.is_zero() {
      return "0".into();
    }
    let mut s = String::new();
    for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
      let neg = c.is_negative();
      let a = c.abs();
      if idx == 0 {
        if neg {
          s.push('-');
        }
      } else {
        s.push(if neg { '-' } else { '+' });
      }
      if m.is_one() || !a.is_one() {
        s.push_str(&a.to_string());
      }
      for (v, e) in m.factors() {
        if *e == 1 {
          s.push_str(v);
        } else {
          s.push_str(&format!("{v}^{{{e}}}"));
        }
      }
    }
    s
  }
}
