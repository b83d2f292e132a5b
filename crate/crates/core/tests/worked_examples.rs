mod common;

use std::collections::BTreeMap;

use common::engel;
use common::oracle::{from_words, normalize, to_words, word_product, Words};
use num_traits::{One, Zero};
use rumin_core::field::parse_rational;
use rumin_core::{
  box_sign, catalog, d_sign, BuildOptions, Matrix, MatrixError, Rational, RationalFunction, RuminComplex,
  ScalarError, ScalarField, UniPoly, ZRational,
};

fn rf(s: &str) -> RationalFunction { s.parse().unwrap() }
fn q(v: i64) -> Rational { parse_rational(&v.to_string()).unwrap() }

#[test]
fn reordering_x2_past_x1_squared() {
  let alg = catalog("engel").unwrap();
  let cx = engel();
  let uea = cx.ws.uea();
  let got = uea.mul(&uea.generator(1), &uea.mul(&uea.generator(0), &uea.generator(0)));
  let mut w = Words::new();
  w.insert(vec![1, 0, 0], RationalFunction::one());
  let oracle = from_words(4, &normalize(&alg, w));
  assert_eq!(got, oracle);
  assert_eq!(got, uea.parse("X1^2.X2 - 2*X1.X3 + t*X4").unwrap());
}

#[test]
fn antiautomorphism_on_a_product() {
  let cx = engel();
  let uea = cx.ws.uea();
  let x1x2 = uea.parse("X1.X2").unwrap();
  assert_eq!(uea.antipode(&x1x2), uea.parse("X1.X2 - X3").unwrap());
  assert_eq!(uea.antipode(&uea.generator(0)), -uea.generator(0));
  let s = uea.scalar(rf("5/t"));
  assert_eq!(uea.antipode(&s), s);
}

#[test]
fn residue_of_double_pole() {
  let t2 = rf("t^2");
  let z = UniPoly::<RationalFunction>::z();
  let den = z.mul(&z).mul(&UniPoly::linear(t2.clone()));
  let f = ZRational::new(UniPoly::constant(RationalFunction::one()), den).unwrap();
  // Partial fractions of 1/(z²(z-a)): the z⁻¹ coefficient is -1/a².
  assert_eq!(f.residue_at_zero(), rf("-1/t^4"));
  let simple = ZRational::<RationalFunction>::pole(RationalFunction::zero());
  assert_eq!(simple.residue_at_zero(), RationalFunction::one());
  assert_eq!(ZRational::<RationalFunction>::pole(t2).residue_at_zero(), RationalFunction::zero());
}

#[test]
fn heisenberg_nilpotency_bound() {
  assert_eq!(catalog("heisenberg3").unwrap().compute_n0(), 2);
  assert_eq!(catalog("engel").unwrap().compute_n0(), 4);
  assert_eq!(catalog("abelian3").unwrap().compute_n0(), 1);
}

#[test]
fn d_squares_to_zero_on_engel() {
  let cx = engel();
  assert!(cx.ws.compose(&cx.d, &cx.d).unwrap().is_zero());
}

#[test]
fn adjoint_of_d_two_ways() {
  let cx = engel();
  let adj = cx.ws.formal_adjoint(&cx.d);
  let star = cx.ws.star_conjugate(&cx.d, d_sign);
  assert_eq!(adj.block(1), star.block(1));
  assert_eq!(adj, star);
  assert_eq!(cx.ws.formal_adjoint(&cx.box_), cx.ws.star_conjugate(&cx.box_, box_sign));
}

#[test]
fn pseudoinverse_of_d0_on_one_forms() {
  let cx = engel();
  let d1 = cx.d0.scalar_block(1).unwrap();
  let p = d1.pseudoinverse();
  assert_eq!(p.get(2, 0), &rf("-1"));
  assert_eq!(p.get(3, 1), &rf("-1/t"));
  assert_eq!(p.entries().filter(|(_, _, e)| !e.is_zero()).count(), 2);
  assert_eq!(d1.mul(&p).mul(&d1), d1);
  assert_eq!(p.mul(&d1).mul(&p), p);
}

#[test]
fn abelian_plane_differential() {
  let cx = RuminComplex::build(&catalog("abelian2").unwrap(), BuildOptions::default()).unwrap();
  let uea = cx.ws.uea();
  assert_eq!(cx.d.block(1).unwrap(), &Matrix::from_rows(vec![vec![-uea.generator(1), uea.generator(0)]]));
}

#[test]
fn irrational_spectrum_is_rejected() {
  let m = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(1)]]);
  assert!(matches!(m.spectral_decomposition(), Err(MatrixError::EigenvaluesNotInField(2))));
}

#[test]
fn heisenberg_rumin_differential_has_order_two() {
  let cx = RuminComplex::build(&catalog("heisenberg3").unwrap(), BuildOptions::default()).unwrap();
  let dc1 = cx.dc.block(1).unwrap();
  let orders: Vec<u32> = dc1.entries().filter(|(_, _, e)| !e.is_zero()).map(|(_, _, e)| e.order()).collect();
  assert!(!orders.is_empty());
  assert!(orders.iter().all(|&o| o == 2), "{orders:?}");
  assert_eq!(cx.dc.block(0).unwrap().entries().map(|(_, _, e)| e.order()).max(), Some(1));
}

#[test]
fn homotopy_relation_on_engel() {
  let cx = engel();
  let ws = &cx.ws;
  let lhs = ws.add(&ws.compose(&cx.d, &cx.h).unwrap(), &ws.compose(&cx.h, &cx.d).unwrap());
  let rhs = ws.sub(&ws.identity(), &ws.chain(&[&cx.l, &cx.pi0, &cx.linv]));
  for k in 0..=4 {
    assert_eq!(lhs.block(k), rhs.block(k), "degree {k}");
  }
}

#[test]
fn specializing_at_a_pole_fails() {
  let cx = engel();
  let mut b = BTreeMap::new();
  b.insert("t".to_string(), q(0));
  assert!(matches!(cx.p.specialize(&b), Err(ScalarError::DenominatorVanishes(_))));
  b.insert("t".to_string(), q(2));
  let p2 = cx.p.specialize(&b).unwrap();
  assert!(p2.blocks().iter().flatten().all(|m| m.entries().all(|(_, _, e)| e.terms().all(|(_, c)| c.parameters().is_empty()))));
}

#[test]
fn late_and_early_binding_agree_generically() {
  let mut b = BTreeMap::new();
  b.insert("t".to_string(), q(3));
  let late = engel().dd.specialize(&b).unwrap();
  let alg = catalog("engel").unwrap().specialize(&b).unwrap();
  let early = RuminComplex::build(&alg, BuildOptions::default()).unwrap();
  assert_eq!(late, early.dd);
}

#[test]
fn oracle_agrees_with_library_on_words() {
  let alg = catalog("heisenberg5").unwrap();
  let cx = RuminComplex::build(&alg, BuildOptions::default()).unwrap();
  let uea = cx.ws.uea();
  let a = uea.parse("X3.X1 + 2*X5").unwrap();
  let b = uea.parse("X4.X2.X1").unwrap();
  let oracle = from_words(5, &word_product(&alg, &to_words(&a), &to_words(&b)));
  assert_eq!(uea.mul(&a, &b), oracle);
}
