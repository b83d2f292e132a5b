//! Brute-force normal ordering on words, independent of the library's
//! multiplication routine. Only the structure constants are shared.

use std::collections::BTreeMap;

use rumin_core::{GradedLieAlgebra, PbwElement, PbwMonomial, ScalarField};

pub type Words<F> = BTreeMap<Vec<usize>, F>;

fn add<F: ScalarField>(acc: &mut Words<F>, w: Vec<usize>, c: F) {
  let e = acc.entry(w.clone()).or_insert_with(F::zero);
  *e = e.clone() + c;
  if e.is_zero() {
    acc.remove(&w);
  }
}

/// Rewrites `X_i X_j -> X_j X_i + [X_i, X_j]` at the first descent until every word is sorted.
pub fn normalize<F: ScalarField>(alg: &GradedLieAlgebra<F>, input: Words<F>) -> Words<F> {
  let mut todo: Vec<(Vec<usize>, F)> = input.into_iter().collect();
  let mut done = Words::new();
  while let Some((w, c)) = todo.pop() {
    match (1..w.len()).find(|&p| w[p - 1] > w[p]) {
      None => add(&mut done, w, c),
      Some(p) => {
        let (i, j) = (w[p - 1], w[p]);
        let mut swapped = w.clone();
        swapped.swap(p - 1, p);
        todo.push((swapped, c.clone()));
        for (k, ck) in alg.bracket(i, j) {
          let mut shorter = w[..p - 1].to_vec();
          shorter.push(k);
          shorter.extend_from_slice(&w[p + 1..]);
          todo.push((shorter, c.clone() * ck));
        }
      },
    }
  }
  done
}

pub fn word_product<F: ScalarField>(alg: &GradedLieAlgebra<F>, a: &Words<F>, b: &Words<F>) -> Words<F> {
  let mut out = Words::new();
  for (wa, ca) in a {
    for (wb, cb) in b {
      let mut w = wa.clone();
      w.extend_from_slice(wb);
      add(&mut out, w, ca.clone() * cb.clone());
    }
  }
  normalize(alg, out)
}

pub fn to_words<F: ScalarField>(e: &PbwElement<F>) -> Words<F> {
  e.terms().map(|(m, c)| (m.word(), c.clone())).collect()
}

pub fn from_words<F: ScalarField>(n: usize, w: &Words<F>) -> PbwElement<F> {
  PbwElement::from_terms(w.iter().map(|(word, c)| {
    let mut e = vec![0u32; n];
    for &g in word {
      e[g] += 1;
    }
    (PbwMonomial::from_exponents(e), c.clone())
  }))
}
