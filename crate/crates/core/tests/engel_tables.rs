mod common;

use common::{engel, golden_matrix, golden_mismatch, load_golden};
use rumin_core::{
  catalog, BuildOptions, Matrix, PbwElement, Rational, RationalFunction, ResolventRoute, RuminComplex,
  WeightProfile, ZRational,
};
use rumin_core::field::parse_rational;
use num_traits::Zero;

fn q(v: i64) -> Rational { parse_rational(&v.to_string()).unwrap() }

fn rf(s: &str) -> RationalFunction { s.parse().unwrap() }

#[test]
fn differentials_match() {
  let cx = engel();
  assert_eq!(golden_mismatch(&cx, &cx.d, "d.txt"), None);
  assert_eq!(golden_mismatch(&cx, &cx.d0, "d0.txt"), None);
}

#[test]
fn d0_block_forms() {
  let cx = engel();
  let d1 = cx.d0.scalar_block(1).unwrap();
  assert_eq!(d1.select(&[0, 1], &[2, 3]), Matrix::diag(&[rf("-1"), rf("-t")]));
  assert!(d1.select(&[0, 1], &[0, 1]).is_zero());
  assert!(d1.select(&[2, 3, 4, 5], &[0, 1, 2, 3]).is_zero());
  let d2 = cx.d0.scalar_block(2).unwrap();
  assert_eq!(d2.select(&[0, 1], &[4, 5]), Matrix::diag(&[rf("-t"), rf("-1")]));
  assert!(d2.select(&[0, 1], &[0, 1, 2, 3]).is_zero());
  assert!(d2.select(&[2, 3], &[0, 1, 2, 3, 4, 5]).is_zero());
  assert_eq!(cx.d0.scalar_block(0).unwrap().shape(), (4, 1));
  assert!(cx.d0.scalar_block(0).unwrap().is_zero());
  assert_eq!(cx.d0.scalar_block(3).unwrap().shape(), (1, 4));
  assert!(cx.d0.scalar_block(3).unwrap().is_zero());
}

#[test]
fn partial_inverse_of_d0() {
  let cx = engel();
  let inv = cx.d0inv.scalar_block(2).unwrap();
  // d₀⁻¹θ^{12} = -θ³ and d₀⁻¹θ^{13} = -θ⁴/t.
  assert_eq!(inv.get(2, 0), &rf("-1"));
  assert_eq!(inv.get(3, 1), &rf("-1/t"));
  assert_eq!(inv.entries().filter(|(_, _, e)| !e.is_zero()).count(), 2);
}

#[test]
fn box0_and_spectrum() {
  let cx = engel();
  assert_eq!(golden_mismatch(&cx, &cx.box0, "box0.txt"), None);
  let spec = cx.spectral.as_ref().unwrap();
  let golden = load_golden("spectral.txt");
  let mut count = 0;
  for b in &golden {
    let k: usize = b.header[0].parse().unwrap();
    let lambda = rf(&b.header[1]);
    let space = spec.degrees[k].iter().find(|e| e.eigenvalue == lambda).unwrap_or_else(|| panic!("k={k} λ={lambda}"));
    let want = golden_matrix(&cx, &b.rows).map(|e| e.as_scalar().unwrap());
    assert_eq!(space.projector, want, "k={k} λ={lambda}");
    count += 1;
  }
  let total: usize = spec.degrees.iter().map(Vec::len).sum();
  assert_eq!(total, count);
  for k in 1..=3 {
    let eig: Vec<String> = spec.degrees[k].iter().map(|e| e.eigenvalue.to_string()).collect();
    assert_eq!(eig, ["0", "1", "t^2"]);
  }
}

#[test]
fn spectrum_merges_at_t_equal_one_when_bound_early() {
  let mut b = std::collections::BTreeMap::new();
  b.insert("t".to_string(), q(1));
  let alg = catalog("engel").unwrap().specialize(&b).unwrap().to_rational().unwrap();
  let cx = RuminComplex::build(&alg, BuildOptions::default()).unwrap();
  let spec = cx.spectral.as_ref().unwrap();
  let merged = spec.degrees[1].iter().find(|e| e.eigenvalue == q(1)).unwrap();
  assert_eq!(merged.projector, Matrix::diag(&[q(0), q(0), q(1), q(1)]));
  assert_eq!(spec.degrees[1].len(), 2);
  for blk in load_golden("spectral_t1.txt") {
    let k: usize = blk.header[0].parse().unwrap();
    let lambda = q(blk.header[1].parse().unwrap());
    let want: Vec<Vec<Rational>> =
      blk.rows.iter().map(|r| r.iter().map(|e| q(e.parse().unwrap())).collect()).collect();
    let got = &spec.degrees[k].iter().find(|e| e.eigenvalue == lambda).unwrap().projector;
    assert_eq!(got, &Matrix::from_rows(want));
  }
}

#[test]
fn box_and_b_match() {
  let cx = engel();
  assert_eq!(golden_mismatch(&cx, &cx.box_, "box.txt"), None);
  assert_eq!(golden_mismatch(&cx, &cx.b_weight, "B.txt"), None);
  assert_eq!(cx.ws.weight_profile(&cx.b_weight), WeightProfile::StrictlyIncreases);
}

#[test]
fn resolvent_routes_agree_and_invert() {
  let cx = engel();
  let direct = RuminComplex::build(&catalog("engel").unwrap(), BuildOptions { resolvent: ResolventRoute::Direct }).unwrap();
  assert_eq!(cx.resolvent, direct.resolvent);
  let zws = &cx.zws;
  let zbox = cx.box_.map(|c| ZRational::constant(c.clone()));
  let lhs = zws.sub(&zws.scale(&zws.identity(), &ZRational::z()), &zbox);
  assert_eq!(zws.compose(&lhs, &cx.resolvent).unwrap(), zws.identity());
  let inv_z = PbwElement::scalar(4, ZRational::pole(RationalFunction::zero()));
  for k in [0, 4] {
    assert_eq!(cx.resolvent.block(k).unwrap(), &Matrix::from_rows(vec![vec![inv_z.clone()]]));
  }
}

#[test]
fn p_l_linv_match() {
  let cx = engel();
  assert_eq!(golden_mismatch(&cx, &cx.p, "P.txt"), None);
  assert_eq!(golden_mismatch(&cx, &cx.l, "L.txt"), None);
  assert_eq!(golden_mismatch(&cx, &cx.linv, "Linv.txt"), None);
}

#[test]
fn commutator_entry_normal_form() {
  // (X₁²X₂ − X₂X₁²)/t = (2/t)X₁X₃ − X₄, derived by hand through X₂X₁ = X₁X₂ − X₃
  // and X₃X₁ = X₁X₃ − tX₄.
  let cx = engel();
  let uea = cx.ws.uea();
  let e = uea.parse("(X1^2.X2-X2.X1^2)/t").unwrap();
  assert_eq!(e.to_string(), "-X4 + (2/t)*X1.X3");
  assert_eq!(cx.p.block(2).unwrap().get(5, 0), &e);
}

#[test]
fn conjugated_chain_d_and_c_match() {
  let cx = engel();
  assert_eq!(golden_mismatch(&cx, &cx.ldl, "LdL.txt"), None);
  assert_eq!(golden_mismatch(&cx, &cx.dd, "D.txt"), None);
  assert_eq!(golden_mismatch(&cx, &cx.c, "C.txt"), None);
  assert_eq!(cx.c.block(0).unwrap().shape(), (4, 1));
  assert_eq!(cx.c.block(3).unwrap().shape(), (1, 4));
}
