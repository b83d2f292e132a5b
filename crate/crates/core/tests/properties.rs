mod common;

use common::oracle::{from_words, to_words, word_product};
use num_traits::Zero;
use proptest::prelude::*;
use rumin_core::field::parse_rational;
use rumin_core::frame::hodge_star;
use rumin_core::{
  catalog, Enveloping, Frame, Matrix, MultiIndex, PbwElement, PbwMonomial, Rational, RationalFunction, RfAlgebra,
  UniPoly, ZRational,
};

fn q(v: i64) -> Rational { parse_rational(&v.to_string()).unwrap() }

fn setup(name: &str) -> (RfAlgebra, Enveloping<RationalFunction>) {
  let alg = catalog(name).unwrap();
  let uea = Enveloping::new(&alg);
  (alg, uea)
}

/// Elements with up to three monomials, each exponent at most two.
fn element(n: usize) -> impl Strategy<Value = PbwElement<RationalFunction>> {
  let mono = prop::collection::vec(0u32..=2, n).prop_map(PbwMonomial::from_exponents);
  let coeff = (-3i64..=3, 0u32..=1).prop_map(|(c, p)| {
    if p == 0 {
      RationalFunction::from(c)
    } else {
      RationalFunction::from(c) * "t".parse::<RationalFunction>().unwrap()
    }
  });
  prop::collection::vec((mono, coeff), 0..=3).prop_map(PbwElement::from_terms)
}

fn rational_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Rational>> {
  prop::collection::vec(-2i64..=2, rows * cols).prop_map(move |v| Matrix::from_vec(rows, cols, v.into_iter().map(q).collect()))
}

fn rf_strategy() -> impl Strategy<Value = RationalFunction> {
  (prop::collection::vec(-3i64..=3, 1..=3), prop::collection::vec(-3i64..=3, 1..=3)).prop_filter_map(
    "zero denominator",
    |(num, den)| {
      let poly = |c: &[i64]| -> String {
        c.iter().enumerate().map(|(i, a)| format!("({a})*t^{i}")).collect::<Vec<_>>().join(" + ")
      };
      let d: RationalFunction = poly(&den).parse().ok()?;
      if d.is_zero() {
        return None;
      }
      let n: RationalFunction = poly(&num).parse().ok()?;
      Some(n * rumin_core::Field::inv(&d)?)
    },
  )
}

proptest! {
  #![proptest_config(ProptestConfig::with_cases(48))]

  #[test]
  fn multiplication_is_associative(a in element(4), b in element(4), c in element(4)) {
    let (_, u) = setup("engel");
    prop_assert_eq!(u.mul(&u.mul(&a, &b), &c), u.mul(&a, &u.mul(&b, &c)));
  }

  #[test]
  fn multiplication_matches_rewriting_oracle(a in element(4), b in element(4)) {
    let (alg, u) = setup("engel");
    prop_assert_eq!(u.mul(&a, &b), from_words(4, &word_product(&alg, &to_words(&a), &to_words(&b))));
  }

  #[test]
  fn antiautomorphism_is_an_involution(a in element(5)) {
    let (_, u) = setup("heisenberg5");
    prop_assert_eq!(u.antipode(&u.antipode(&a)), a);
  }

  #[test]
  fn antiautomorphism_reverses_products(a in element(4), b in element(4)) {
    let (_, u) = setup("engel");
    prop_assert_eq!(u.antipode(&u.mul(&a, &b)), u.mul(&u.antipode(&b), &u.antipode(&a)));
  }

  #[test]
  fn order_is_additive(a in element(4), b in element(4)) {
    let (_, u) = setup("engel");
    prop_assume!(!a.is_zero() && !b.is_zero());
    prop_assert_eq!(u.mul(&a, &b).order(), a.order() + b.order());
  }

  #[test]
  fn residue_is_linear(
    a in -4i64..=4, b in -4i64..=4,
    p in prop::collection::vec(-3i64..=3, 1..=3), m in 0usize..=3, r in 1i64..=3,
  ) {
    let z = UniPoly::<Rational>::z();
    let mut zm = UniPoly::constant(q(1));
    for _ in 0..m {
      zm = zm.mul(&z);
    }
    let f = ZRational::new(UniPoly::new(p.into_iter().map(q).collect()), zm.mul(&UniPoly::linear(q(r)))).unwrap();
    let g = ZRational::pole(q(0));
    let combo = ZRational::constant(q(a)) * f.clone() + ZRational::constant(q(b)) * g.clone();
    prop_assert_eq!(combo.residue_at_zero(), q(a) * f.residue_at_zero() + q(b) * g.residue_at_zero());
  }

  #[test]
  fn rational_functions_are_canonical(x in rf_strategy(), y in rf_strategy()) {
    prop_assert_eq!(x.to_string().parse::<RationalFunction>().unwrap(), x.clone());
    prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
    if let Some(yi) = rumin_core::Field::inv(&y) {
      prop_assert_eq!((x.clone() * y.clone() * yi).to_string(), x.to_string());
    }
  }

  #[test]
  fn penrose_identities(a in rational_matrix(3, 4)) {
    let p = a.pseudoinverse();
    prop_assert_eq!(a.mul(&p).mul(&a), a.clone());
    prop_assert_eq!(p.mul(&a).mul(&p), p.clone());
    prop_assert!(a.mul(&p).is_symmetric());
    prop_assert!(p.mul(&a).is_symmetric());
  }

  #[test]
  fn star_pairs_weights(subset in prop::collection::btree_set(0usize..4, 0..=4)) {
    let weights: Vec<Rational> = [1, 1, 2, 3].into_iter().map(q).collect();
    let frame = Frame::new(&weights);
    let mi = MultiIndex::new(subset.into_iter().collect()).unwrap();
    let (s, bar) = hodge_star(&mi, 4);
    prop_assert_eq!(frame.weight(&mi) + frame.weight(&bar), frame.homogeneous_dimension());
    let (s2, back) = hodge_star(&bar, 4);
    let k = mi.degree();
    prop_assert_eq!(back, mi);
    prop_assert_eq!(s * s2, if (k * (4 - k)) % 2 == 0 { 1 } else { -1 });
  }
}

#[test]
fn generators_satisfy_bracket_relations() {
  for name in rumin_core::CATALOG {
    let (alg, u) = setup(name);
    let n = alg.dim();
    for i in 0..n {
      for j in i + 1..n {
        let lhs = u.commutator(&u.generator(i), &u.generator(j));
        let rhs = alg.bracket(i, j).into_iter().fold(PbwElement::zero(), |acc, (k, c)| acc + u.generator(k).scale(&c));
        assert_eq!(lhs, rhs, "{name}: [X{}, X{}]", i + 1, j + 1);
      }
    }
  }
}
