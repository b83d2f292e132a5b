//! Graded operators on left-invariant forms, stored as per-degree matrices
//! of PBW elements in the θ^I frame.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::field::{Field, Rational, ScalarField};
use crate::frame::{hodge_star, Frame};
use crate::lie::GradedLieAlgebra;
use crate::matrix::Matrix;
use crate::pbw::{Enveloping, PbwElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
  #[error("shape mismatch: {0}")]
  ShapeMismatch(String),
  #[error("operator is not unipotent: I - T does not strictly increase weights")]
  NotUnipotent,
  #[error("operator has entries of positive differential order")]
  NotAlgebraic,
  #[error("internal check failed: {0}")]
  InternalCheckFailed(String),
}

/// Entry matrix of one degree block.
pub type Block<F> = Matrix<PbwElement<F>>;

/// An operator `Ω^k → Ω^{k+shift}` for every `k`.
///
/// `blocks[k]` is the matrix from degree `k` (columns) to degree
/// `k + shift` (rows), or `None` when the target degree is out of range.
#[derive(Clone, PartialEq, Debug)]
pub struct GradedOperator<F> {
  n: usize,
  shift: i32,
  blocks: Vec<Option<Block<F>>>,
}

/// How an operator moves the weights `[I]` of the forms θ^I.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightProfile {
  /// No nonzero entry; both preserving and strictly increasing.
  Zero,
  Preserves,
  StrictlyIncreases,
  Mixed,
}

impl WeightProfile {
  pub fn preserves(self) -> bool { matches!(self, Self::Zero | Self::Preserves) }

  pub fn strictly_increases(self) -> bool { matches!(self, Self::Zero | Self::StrictlyIncreases) }
}

impl fmt::Display for WeightProfile {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str(match self {
      Self::Zero => "zero",
      Self::Preserves => "preserves",
      Self::StrictlyIncreases => "strictly_increases",
      Self::Mixed => "mixed",
    })
  }
}

/// Position and value of the first entry where two operators differ.
#[derive(Clone, PartialEq, Debug)]
pub struct Difference<F> {
  pub degree: usize,
  pub row: usize,
  pub col: usize,
  pub value: PbwElement<F>,
}

impl<F> GradedOperator<F> {
  pub fn n(&self) -> usize { self.n }

  pub fn shift(&self) -> i32 { self.shift }

  /// Source degrees with a block.
  pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
    self.blocks.iter().enumerate().filter(|(_, b)| b.is_some()).map(|(k, _)| k)
  }

  /// Block from source degree `k`, if the target degree is in range.
  pub fn block(&self, k: usize) -> Option<&Block<F>> { self.blocks.get(k).and_then(Option::as_ref) }

  pub fn blocks(&self) -> &[Option<Block<F>>] { &self.blocks }
}

impl<F: Field> GradedOperator<F> {
  /// Assembles an operator; each present block must match the frame sizes.
  pub fn from_blocks(frame: &Frame, shift: i32, blocks: Vec<Option<Block<F>>>) -> Result<Self, OperatorError> {
    let n = frame.n();
    if blocks.len() != n + 1 {
      return Err(OperatorError::ShapeMismatch(format!("expected {} blocks, found {}", n + 1, blocks.len())));
    }
    for (k, b) in blocks.iter().enumerate() {
      let target = k as i32 + shift;
      let in_range = (0..=n as i32).contains(&target);
      match b {
        Some(m) if in_range => {
          if m.shape() != (frame.dim(target as usize), frame.dim(k)) {
            return Err(OperatorError::ShapeMismatch(format!(
              "block {k} has shape {:?}, expected {:?}",
              m.shape(),
              (frame.dim(target as usize), frame.dim(k))
            )));
          }
        },
        Some(_) => return Err(OperatorError::ShapeMismatch(format!("block {k} targets degree {target}"))),
        None if in_range => return Err(OperatorError::ShapeMismatch(format!("block {k} is missing"))),
        None => {},
      }
    }
    Ok(Self { n, shift, blocks })
  }

  /// The zero operator with the same shift and block shapes.
  pub fn zero_like(&self) -> Self {
    let blocks = self.blocks.iter().map(|b| b.as_ref().map(|m| Matrix::zeros(m.rows(), m.cols()))).collect();
    Self { n: self.n, shift: self.shift, blocks }
  }

  pub fn is_zero(&self) -> bool { self.blocks.iter().flatten().all(Matrix::is_zero) }

  /// Whether every entry has differential order zero.
  pub fn is_algebraic(&self) -> bool { self.blocks.iter().flatten().all(|m| m.entries().all(|(_, _, e)| e.order() == 0)) }

  /// Maximum differential order over all entries.
  pub fn order(&self) -> u32 {
    self.blocks.iter().flatten().flat_map(|m| m.entries().map(|(_, _, e)| e.order())).max().unwrap_or(0)
  }

  /// The scalar matrix of block `k`, if it is algebraic.
  pub fn scalar_block(&self, k: usize) -> Option<Matrix<F>> { self.block(k)?.try_map(|e| e.as_scalar().ok_or(())).ok() }

  pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<GradedOperator<G>, E> {
    let blocks = self
      .blocks
      .iter()
      .map(|b| b.as_ref().map(|m| m.try_map(|e| e.try_map(&f))).transpose())
      .collect::<Result<Vec<_>, E>>()?;
    Ok(GradedOperator { n: self.n, shift: self.shift, blocks })
  }

  pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> GradedOperator<G> {
    self.try_map(|c| Ok::<G, ()>(f(c))).expect("infallible")
  }

  /// The first entry at which `self - other` is nonzero.
  pub fn first_difference(&self, other: &Self) -> Option<Difference<F>> {
    if self.shift != other.shift {
      return Some(Difference { degree: 0, row: 0, col: 0, value: PbwElement::zero() });
    }
    for (k, (a, b)) in self.blocks.iter().zip(&other.blocks).enumerate() {
      if let (Some(a), Some(b)) = (a, b) {
        for (i, j, x) in a.entries() {
          let d = x.clone() - b.get(i, j).clone();
          if !d.is_zero() {
            return Some(Difference { degree: k, row: i, col: j, value: d });
          }
        }
      }
    }
    None
  }

  /// The first nonzero entry.
  pub fn first_nonzero(&self) -> Option<Difference<F>> {
    for (k, b) in self.blocks.iter().enumerate() {
      if let Some(b) = b {
        if let Some((i, j, x)) = b.entries().find(|(_, _, x)| !x.is_zero()) {
          return Some(Difference { degree: k, row: i, col: j, value: x.clone() });
        }
      }
    }
    None
  }
}

impl<F: ScalarField> GradedOperator<F> {
  pub fn specialize(
    &self,
    bindings: &std::collections::BTreeMap<String, Rational>,
  ) -> Result<Self, crate::field::ScalarError> {
    self.try_map(|c| c.specialize(bindings))
  }
}

/// The frame, enveloping algebra and nilpotency bound that operators share.
#[derive(Clone, Debug)]
pub struct Workspace<F> {
  frame: Frame,
  uea: Arc<Enveloping<F>>,
  n0: usize,
}

/// Sign rule `(k, n) ↦ ±1` used by [`Workspace::star_conjugate`].
pub type SignRule = fn(usize, usize) -> i32;

/// `(-1)^{kn+1}`, the sign relating `d`-type operators to their adjoints.
pub fn d_sign(k: usize, n: usize) -> i32 { if (k * n + 1) % 2 == 0 { 1 } else { -1 } }

/// `(-1)^{k(n-k)}`, the sign for degree preserving operators such as Box.
pub fn box_sign(k: usize, n: usize) -> i32 { if (k * (n - k)) % 2 == 0 { 1 } else { -1 } }

impl<F: ScalarField> Workspace<F> {
  pub fn new(alg: &GradedLieAlgebra<F>) -> Self {
    Self { frame: Frame::new(alg.weights()), uea: Arc::new(Enveloping::new(alg)), n0: alg.compute_n0() }
  }
}

impl<F: Field> Workspace<F> {
  pub fn from_parts(frame: Frame, uea: Arc<Enveloping<F>>, n0: usize) -> Self { Self { frame, uea, n0 } }

  /// The same frame over another coefficient field.
  pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> Workspace<G> {
    Workspace { frame: self.frame.clone(), uea: Arc::new(self.uea.map_field(f)), n0: self.n0 }
  }

  pub fn frame(&self) -> &Frame { &self.frame }

  pub fn uea(&self) -> &Enveloping<F> { &self.uea }

  pub fn n(&self) -> usize { self.frame.n() }

  pub fn n0(&self) -> usize { self.n0 }

  fn target(&self, k: usize, shift: i32) -> Option<usize> {
    let t = k as i32 + shift;
    (0..=self.n() as i32).contains(&t).then_some(t as usize)
  }

  /// Builds an operator from a function producing each block.
  pub fn build(&self, shift: i32, mut f: impl FnMut(usize, usize) -> Block<F>) -> GradedOperator<F> {
    let blocks = (0..=self.n()).map(|k| self.target(k, shift).map(|t| f(k, t))).collect();
    GradedOperator { n: self.n(), shift, blocks }
  }

  /// Operator whose block from degree `k` is `f(k, target)` as a scalar matrix.
  pub fn from_scalar_blocks(&self, shift: i32, mut f: impl FnMut(usize, usize) -> Matrix<F>) -> GradedOperator<F> {
    let n = self.n();
    self.build(shift, |k, t| f(k, t).map(|c| PbwElement::scalar(n, c.clone())))
  }

  pub fn zero(&self, shift: i32) -> GradedOperator<F> {
    self.build(shift, |k, t| Matrix::zeros(self.frame.dim(t), self.frame.dim(k)))
  }

  pub fn identity(&self) -> GradedOperator<F> { self.from_scalar_blocks(0, |k, _| Matrix::identity(self.frame.dim(k))) }

  fn block_mul(&self, a: &Block<F>, b: &Block<F>) -> Block<F> {
    let mut out: Block<F> = Matrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
      for l in 0..a.cols() {
        let x = a.get(i, l);
        if x.is_zero() {
          continue;
        }
        for j in 0..b.cols() {
          let y = b.get(l, j);
          if !y.is_zero() {
            let v = out.get(i, j).clone() + self.uea.mul(x, y);
            out.set(i, j, v);
          }
        }
      }
    }
    out
  }

  /// `S ∘ T`: the product of blocks with `S` on the left.
  pub fn compose(&self, s: &GradedOperator<F>, t: &GradedOperator<F>) -> Result<GradedOperator<F>, OperatorError> {
    if s.n != self.n() || t.n != self.n() {
      return Err(OperatorError::ShapeMismatch("operators belong to different dimensions".into()));
    }
    Ok(self.build(s.shift + t.shift, |k, tgt| match self.target(k, t.shift) {
      Some(mid) => self.block_mul(s.block(mid).expect("middle degree in range"), t.block(k).expect("source in range")),
      None => Matrix::zeros(self.frame.dim(tgt), self.frame.dim(k)),
    }))
  }

  /// Composes a chain of operators, leftmost acting last.
  pub fn chain(&self, ops: &[&GradedOperator<F>]) -> GradedOperator<F> {
    let (last, rest) = ops.split_last().expect("at least one operator");
    rest.iter().rev().fold((*last).clone(), |acc, op| self.compose(op, &acc).expect("same workspace"))
  }

  fn zip(
    &self,
    a: &GradedOperator<F>,
    b: &GradedOperator<F>,
    f: impl Fn(&PbwElement<F>, &PbwElement<F>) -> PbwElement<F>,
  ) -> GradedOperator<F> {
    assert_eq!(a.shift, b.shift, "operands must have the same shift");
    self.build(a.shift, |k, _| {
      let (x, y) = (a.block(k).unwrap(), b.block(k).unwrap());
      Matrix::from_fn(x.rows(), x.cols(), |i, j| f(x.get(i, j), y.get(i, j)))
    })
  }

  pub fn add(&self, a: &GradedOperator<F>, b: &GradedOperator<F>) -> GradedOperator<F> {
    self.zip(a, b, |x, y| x.clone() + y.clone())
  }

  pub fn sub(&self, a: &GradedOperator<F>, b: &GradedOperator<F>) -> GradedOperator<F> {
    self.zip(a, b, |x, y| x.clone() - y.clone())
  }

  pub fn scale(&self, a: &GradedOperator<F>, c: &F) -> GradedOperator<F> {
    self.build(a.shift, |k, _| a.block(k).unwrap().map(|e| e.scale(c)))
  }

  /// Multiplies block `k` by `f(k)`.
  pub fn scale_by_degree(&self, a: &GradedOperator<F>, f: impl Fn(usize) -> F) -> GradedOperator<F> {
    self.build(a.shift, |k, _| a.block(k).unwrap().map(|e| e.scale(&f(k))))
  }

  /// Formal adjoint: transposed blocks with the antipode applied entrywise.
  pub fn formal_adjoint(&self, t: &GradedOperator<F>) -> GradedOperator<F> {
    self.build(-t.shift, |_k, target| {
      let src = t.block(target).expect("adjoint source in range");
      Matrix::from_fn(src.cols(), src.rows(), |i, j| self.uea.antipode(src.get(j, i)))
    })
  }

  /// `sign(target, n) · ⋆ T ⋆`, an operator with shift `-shift(T)`.
  pub fn star_conjugate(&self, t: &GradedOperator<F>, sign_rule: SignRule) -> GradedOperator<F> {
    let n = self.n();
    let frame = &self.frame;
    self.build(-t.shift, |k, target| {
      // ⋆ maps degree k to n-k, T to n-k+shift = n-target, ⋆ back to target.
      let inner = t.block(n - k).expect("conjugated block in range");
      let sign = sign_rule(target, n);
      Matrix::from_fn(frame.dim(target), frame.dim(k), |r, c| {
        let (s_in, bar_in) = hodge_star(&frame.basis(k)[c], n);
        let row_form = &frame.basis(target)[r];
        let j_form = row_form.complement(n);
        let (s_out, _) = hodge_star(&j_form, n);
        let e = inner.get(frame.position(&j_form), frame.position(&bar_in));
        let s = sign * s_in * s_out;
        if s > 0 {
          e.clone()
        } else {
          -e.clone()
        }
      })
    })
  }

  pub fn weight_profile(&self, t: &GradedOperator<F>) -> WeightProfile {
    let (mut any, mut all_eq, mut all_gt) = (false, true, true);
    for k in t.degrees() {
      let target = self.target(k, t.shift).unwrap();
      for (i, j, e) in t.block(k).unwrap().entries() {
        if e.is_zero() {
          continue;
        }
        any = true;
        let (wi, wj) = (self.frame.weight_at(target, i), self.frame.weight_at(k, j));
        all_eq &= wi == wj;
        all_gt &= wi > wj;
      }
    }
    match (any, all_eq, all_gt) {
      (false, _, _) => WeightProfile::Zero,
      (true, true, _) => WeightProfile::Preserves,
      (true, _, true) => WeightProfile::StrictlyIncreases,
      _ => WeightProfile::Mixed,
    }
  }

  /// `Σ_{j<N₀} (I - T)^j`, checked to be a two-sided inverse.
  pub fn invert_unipotent(&self, t: &GradedOperator<F>) -> Result<GradedOperator<F>, OperatorError> {
    if t.shift != 0 {
      return Err(OperatorError::NotUnipotent);
    }
    let id = self.identity();
    let nil = self.sub(&id, t);
    if !self.weight_profile(&nil).strictly_increases() {
      return Err(OperatorError::NotUnipotent);
    }
    let inv = self.neumann_sum(&nil);
    if self.compose(t, &inv)? != id || self.compose(&inv, t)? != id {
      return Err(OperatorError::InternalCheckFailed("Neumann series does not invert the operator".into()));
    }
    Ok(inv)
  }

  /// `Σ_{j<N₀} N^j` without checks.
  pub fn neumann_sum(&self, nil: &GradedOperator<F>) -> GradedOperator<F> {
    let mut sum = self.identity();
    let mut power = self.identity();
    for _ in 1..self.n0.max(1) {
      power = self.compose(nil, &power).expect("same workspace");
      if power.is_zero() {
        break;
      }
      sum = self.add(&sum, &power);
    }
    sum
  }

  /// `T^e` for a degree preserving operator.
  pub fn power(&self, t: &GradedOperator<F>, e: usize) -> GradedOperator<F> {
    (0..e).fold(self.identity(), |acc, _| self.compose(t, &acc).expect("same workspace"))
  }

  /// Exact pseudoinverse of each block of an algebraic operator.
  pub fn pseudoinverse(&self, t: &GradedOperator<F>) -> Result<GradedOperator<F>, OperatorError> {
    let mut blocks = Vec::with_capacity(self.n() + 1);
    for k in 0..=self.n() {
      // Block from degree k of T⁺ is the pseudoinverse of T's block into degree k.
      let src = (k as i32 - t.shift) as usize;
      let b = if self.target(k, -t.shift).is_some() && src <= self.n() {
        Some(t.scalar_block(src).ok_or(OperatorError::NotAlgebraic)?.pseudoinverse())
      } else {
        None
      };
      blocks.push(b);
    }
    Ok(self.from_scalar_blocks(-t.shift, |k, _| blocks[k].clone().expect("block in range")))
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::lie::catalog;
  use crate::RationalFunction;

  type Rf = RationalFunction;

  #[test]
  fn identity_and_zero_shapes() {
    let ws = Workspace::new(&catalog("engel").unwrap());
    let id = ws.identity();
    assert_eq!(id.block(2).unwrap().shape(), (6, 6));
    assert_eq!(ws.weight_profile(&id), WeightProfile::Preserves);
    let z = ws.zero(1);
    assert!(z.block(4).is_none());
    assert_eq!(ws.weight_profile(&z), WeightProfile::Zero);
    assert_eq!(ws.compose(&id, &z).unwrap(), z);
  }

  #[test]
  fn signs() {
    assert_eq!(d_sign(0, 4), -1);
    assert_eq!(d_sign(1, 3), 1);
    assert_eq!(box_sign(1, 4), -1);
    assert_eq!(box_sign(2, 4), 1);
  }

  #[test]
  fn unipotent_inverse_of_identity() {
    let ws = Workspace::new(&catalog("heisenberg3").unwrap());
    let id = ws.identity();
    assert_eq!(ws.invert_unipotent(&id).unwrap(), id);
    let twice = ws.scale(&id, &Rf::from(2));
    assert_eq!(ws.invert_unipotent(&twice), Err(OperatorError::NotUnipotent));
  }
}
