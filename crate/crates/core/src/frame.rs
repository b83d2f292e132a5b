//! Multi-indices, wedge signs, the Hodge star and the ordered θ^I frames.

use std::collections::HashMap;
use std::fmt;

use crate::field::Rational;

/// A strictly increasing list of 0-based indices naming the form θ^I.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
  /// Builds a multi-index, rejecting unsorted or repeated entries.
  pub fn new(indices: Vec<usize>) -> Option<Self> {
    indices.windows(2).all(|w| w[0] < w[1]).then_some(Self(indices))
  }

  pub fn empty() -> Self { Self(Vec::new()) }

  pub fn full(n: usize) -> Self { Self((0..n).collect()) }

  pub fn degree(&self) -> usize { self.0.len() }

  pub fn indices(&self) -> &[usize] { &self.0 }

  pub fn contains(&self, j: usize) -> bool { self.0.binary_search(&j).is_ok() }

  /// Indices of `0..n` not in `self`, increasing.
  pub fn complement(&self, n: usize) -> Self { Self((0..n).filter(|i| !self.contains(*i)).collect()) }

  /// `Σ υ_i` over the indices.
  pub fn weight(&self, weights: &[Rational]) -> Rational { self.0.iter().map(|&i| weights[i].clone()).sum() }
}

impl fmt::Display for MultiIndex {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.0.is_empty() {
      return write!(f, "1");
    }
    let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
    write!(f, "theta^{{{}}}", parts.join(","))
  }
}

/// `θ^j ∧ θ^I = sign · θ^{I ∪ {j}}`; `None` when `j ∈ I`.
pub fn wedge_insert(j: usize, mi: &MultiIndex) -> Option<(i32, MultiIndex)> {
  match mi.0.binary_search(&j) {
    Ok(_) => None,
    Err(pos) => {
      let mut v = mi.0.clone();
      v.insert(pos, j);
      Some((if pos % 2 == 0 { 1 } else { -1 }, MultiIndex(v)))
    },
  }
}

/// `⋆θ^I = sign · θ^{Ī}` with the sign of the permutation `I Ī`.
pub fn hodge_star(mi: &MultiIndex, n: usize) -> (i32, MultiIndex) {
  let comp = mi.complement(n);
  // Inversions of the concatenation I Ī: pairs i ∈ I, c ∈ Ī with i > c.
  let inversions: usize = mi.0.iter().map(|&i| comp.0.iter().filter(|&&c| c < i).count()).sum();
  (if inversions % 2 == 0 { 1 } else { -1 }, comp)
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
  if k > n {
    return Vec::new();
  }
  let mut out = Vec::new();
  let mut cur: Vec<usize> = (0..k).collect();
  loop {
    out.push(cur.clone());
    let mut i = k;
    loop {
      if i == 0 {
        return out;
      }
      i -= 1;
      if cur[i] < n - k + i {
        cur[i] += 1;
        for j in i + 1..k {
          cur[j] = cur[j - 1] + 1;
        }
        break;
      }
    }
  }
}

/// The ordered bases of `Λ^k 𝔤*` for every degree, sorted by weight and
/// then lexicographically.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
  n: usize,
  weights: Vec<Rational>,
  bases: Vec<Vec<MultiIndex>>,
  positions: Vec<HashMap<MultiIndex, usize>>,
}

impl Frame {
  pub fn new(weights: &[Rational]) -> Self {
    let n = weights.len();
    let mut bases = Vec::with_capacity(n + 1);
    let mut positions = Vec::with_capacity(n + 1);
    for k in 0..=n {
      let mut basis: Vec<(Rational, MultiIndex)> =
        subsets(n, k).into_iter().map(MultiIndex).map(|m| (m.weight(weights), m)).collect();
      basis.sort();
      let basis: Vec<MultiIndex> = basis.into_iter().map(|(_, m)| m).collect();
      positions.push(basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect());
      bases.push(basis);
    }
    Self { n, weights: weights.to_vec(), bases, positions }
  }

  pub fn n(&self) -> usize { self.n }

  pub fn weights(&self) -> &[Rational] { &self.weights }

  /// Basis of degree `k`; empty outside `0..=n`.
  pub fn basis(&self, k: usize) -> &[MultiIndex] { self.bases.get(k).map_or(&[], Vec::as_slice) }

  pub fn dim(&self, k: usize) -> usize { self.basis(k).len() }

  pub fn position(&self, mi: &MultiIndex) -> usize { self.positions[mi.degree()][mi] }

  pub fn weight(&self, mi: &MultiIndex) -> Rational { mi.weight(&self.weights) }

  /// Weight of the `i`-th basis form of degree `k`.
  pub fn weight_at(&self, k: usize, i: usize) -> Rational { self.weight(&self.bases[k][i]) }

  pub fn homogeneous_dimension(&self) -> Rational { self.weights.iter().cloned().sum() }
}
