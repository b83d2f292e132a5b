//! Builders for every operator of the Rumin complex, by Rumin's route
//! (`d₀⁻¹`, `Π`, `d_c`) and by the resolvent route (`Box`, `P`, `L`, `D`, `C`).

use std::fmt;

use thiserror::Error;

use crate::field::ScalarField;
use crate::frame::wedge_insert;
use crate::lie::GradedLieAlgebra;
use crate::matrix::{Eigenspace, Matrix, MatrixError};
use crate::operator::{GradedOperator, OperatorError, WeightProfile, Workspace};
use crate::pbw::PbwElement;
use crate::univariate::ZRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
  #[error(
    "eigenvalues of Box0 in degree {degree} do not lie in the scalar field; rerun with `--resolvent direct` to invert z - Box0 directly"
  )]
  EigenvaluesNotInField { degree: usize },
  #[error("Box0 in degree {degree} is not diagonalizable over the scalar field")]
  NotDiagonalizable { degree: usize },
  #[error("weight check failed: {0}")]
  WeightCheckFailed(String),
  #[error("the two routes for {0} disagree")]
  RouteDisagreement(String),
  #[error("verification failed: {0}")]
  VerificationFailed(String),
  #[error(transparent)]
  Operator(#[from] OperatorError),
}

/// How `(z - Box₀)⁻¹` is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ResolventRoute {
  /// `Σ_λ Π_λ / (z - λ)` from the spectral decomposition.
  #[default]
  Spectral,
  /// Gauss–Jordan inversion of `zI - Box₀` over rational functions in `z`.
  Direct,
}

impl fmt::Display for ResolventRoute {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str(match self {
      Self::Spectral => "spectral",
      Self::Direct => "direct",
    })
  }
}

/// Eigenvalues and projectors of `Box₀` in each degree.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition<F> {
  pub degrees: Vec<Vec<Eigenspace<F>>>,
}

/// Operators with coefficients in rational functions of the resolvent variable.
pub type ZOperator<F> = GradedOperator<ZRational<F>>;

/// `d₀`: `d₀θ^ℓ = -Σ_{i<j} c_ij^ℓ θ^i∧θ^j`, extended by the Leibniz rule.
pub fn build_d0<F: ScalarField>(ws: &Workspace<F>, alg: &GradedLieAlgebra<F>) -> GradedOperator<F> {
  let frame = ws.frame();
  ws.from_scalar_blocks(1, |k, t| {
    let mut m = Matrix::<F>::zeros(frame.dim(t), frame.dim(k));
    for (col, mi) in frame.basis(k).iter().enumerate() {
      // d₀(θ^{i_1}∧…∧θ^{i_k}) = Σ_p (-1)^p θ^{i_1}∧…∧d₀θ^{i_p}∧…
      for (p, &l) in mi.indices().iter().enumerate() {
        let rest: Vec<usize> = mi.indices().iter().copied().filter(|&x| x != l).collect();
        for (i, j, kk, c) in alg.structure_constants() {
          if kk != l {
            continue;
          }
          // θ^i∧θ^j moved into position p among the remaining factors:
          // (-1)^p θ^i∧θ^j∧(rest), then sort.
          let Some((s1, with_j)) = wedge_insert(j, &crate::MultiIndex::new(rest.clone()).unwrap()) else { continue };
          let Some((s2, full)) = wedge_insert(i, &with_j) else { continue };
          let sign = if p % 2 == 0 { 1 } else { -1 } * s1 * s2;
          let row = frame.position(&full);
          let v = m.get(row, col).clone() - if sign > 0 { c.clone() } else { -c.clone() };
          m.set(row, col, v);
        }
      }
    }
    m
  })
}

/// `d`: the first order part `Σ_j X_j θ^j∧·` plus `d₀`.
pub fn build_d<F: ScalarField>(ws: &Workspace<F>, d0: &GradedOperator<F>) -> GradedOperator<F> {
  let frame = ws.frame();
  let n = ws.n();
  ws.build(1, |k, t| {
    let mut m = d0.block(k).expect("d0 block").clone();
    for (col, mi) in frame.basis(k).iter().enumerate() {
      for j in 0..n {
        if let Some((s, full)) = wedge_insert(j, mi) {
          let row = frame.position(&full);
          let x = PbwElement::generator(n, j);
          let v = m.get(row, col).clone() + if s > 0 { x } else { -x };
          m.set(row, col, v);
        }
      }
    }
    debug_assert_eq!(m.rows(), frame.dim(t));
    m
  })
}

/// Box₀ spectral decomposition, degree by degree.
pub fn spectral_decompose<F: ScalarField>(
  ws: &Workspace<F>,
  box0: &GradedOperator<F>,
) -> Result<SpectralDecomposition<F>, ComplexError> {
  let mut degrees = Vec::with_capacity(ws.n() + 1);
  for k in 0..=ws.n() {
    let m = box0.scalar_block(k).ok_or(OperatorError::NotAlgebraic)?;
    match m.spectral_decomposition() {
      Ok(s) => degrees.push(s),
      Err(MatrixError::NotDiagonalizable) => return Err(ComplexError::NotDiagonalizable { degree: k }),
      Err(_) => return Err(ComplexError::EigenvaluesNotInField { degree: k }),
    }
  }
  Ok(SpectralDecomposition { degrees })
}

/// `(z - Box₀)⁻¹` per degree as a scalar-in-`z` operator.
fn box0_resolvent<F: ScalarField>(
  ws: &Workspace<F>,
  zws: &Workspace<ZRational<F>>,
  box0: &GradedOperator<F>,
  spectral: Option<&SpectralDecomposition<F>>,
) -> ZOperator<F> {
  zws.from_scalar_blocks(0, |k, _| {
    let dim = ws.frame().dim(k);
    match spectral {
      Some(s) => s.degrees[k].iter().fold(Matrix::zeros(dim, dim), |acc: Matrix<ZRational<F>>, e| {
        let pole = ZRational::pole(e.eigenvalue.clone());
        acc.add(&e.projector.map(|c| ZRational::constant(c.clone()) * pole.clone()))
      }),
      None => {
        let m = box0.scalar_block(k).expect("Box0 is algebraic");
        let zi = Matrix::<ZRational<F>>::identity(dim).scale(&ZRational::z());
        zi.sub(&m.map(|c| ZRational::constant(c.clone()))).inverse().expect("z - Box0 is invertible over F(z)")
      },
    }
  })
}

/// Options for [`RuminComplex::build`].
#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
  pub resolvent: ResolventRoute,
}

/// Every operator of the construction, computed once in pipeline order.
#[derive(Clone, Debug)]
pub struct RuminComplex<F: ScalarField> {
  pub alg: GradedLieAlgebra<F>,
  pub ws: Workspace<F>,
  pub zws: Workspace<ZRational<F>>,
  pub d0: GradedOperator<F>,
  pub d0t: GradedOperator<F>,
  pub d: GradedOperator<F>,
  pub dt: GradedOperator<F>,
  pub d0inv: GradedOperator<F>,
  pub box0: GradedOperator<F>,
  pub box0_pinv: GradedOperator<F>,
  pub pi0: GradedOperator<F>,
  pub pi0_r0: GradedOperator<F>,
  pub spectral: Option<SpectralDecomposition<F>>,
  pub box_: GradedOperator<F>,
  pub b_weight: GradedOperator<F>,
  pub route: ResolventRoute,
  pub resolvent: ZOperator<F>,
  /// The resolvent by the route not chosen, when that route is available.
  pub resolvent_alt: Option<ZOperator<F>>,
  pub p: GradedOperator<F>,
  pub l: GradedOperator<F>,
  pub linv: GradedOperator<F>,
  pub l1: GradedOperator<F>,
  pub ldl: GradedOperator<F>,
  pub dd: GradedOperator<F>,
  pub c: GradedOperator<F>,
  pub b: GradedOperator<F>,
  pub pi: GradedOperator<F>,
  pub pi_e: GradedOperator<F>,
  pub dc: GradedOperator<F>,
  pub g: GradedOperator<F>,
  pub ginv: GradedOperator<F>,
  pub h: GradedOperator<F>,
  pub betti: Vec<usize>,
}

impl<F: ScalarField> RuminComplex<F> {
  /// Runs the whole pipeline:
  /// d₀ → d → d₀⁻¹ → Box₀ → Π₀ → spectral → Box → B → resolvent → P →
  /// L, L⁻¹, L₁ → L⁻¹dL → D, C → b, Π, d_c → ĝ, h.
  pub fn build(alg: &GradedLieAlgebra<F>, opts: BuildOptions) -> Result<Self, ComplexError> {
    let ws = Workspace::new(alg);
    let id = ws.identity();

    let d0 = build_d0(&ws, alg);
    let d0t = ws.formal_adjoint(&d0);
    let d = build_d(&ws, &d0);
    let dt = ws.formal_adjoint(&d);
    let d0inv = ws.pseudoinverse(&d0)?;

    let box0 = ws.add(&ws.compose(&d0, &d0t)?, &ws.compose(&d0t, &d0)?);
    let box0_pinv = ws.pseudoinverse(&box0)?;

    let pi0 = ws.from_scalar_blocks(0, |k, _| {
      box0.scalar_block(k).expect("algebraic").kernel_projector().expect("Box0 is symmetric")
    });
    let pi0_r0 = ws.sub(&ws.sub(&id, &ws.compose(&d0inv, &d0)?), &ws.compose(&d0, &d0inv)?);
    if pi0 != pi0_r0 {
      return Err(ComplexError::RouteDisagreement("Pi0".into()));
    }

    let spectral = match spectral_decompose(&ws, &box0) {
      Ok(s) => Some(s),
      Err(e) if opts.resolvent == ResolventRoute::Spectral => return Err(e),
      Err(_) => None,
    };

    let box_ = ws.add(&ws.compose(&d, &d0t)?, &ws.compose(&d0t, &d)?);
    let b_weight = ws.sub(&box_, &box0);
    if !ws.weight_profile(&b_weight).strictly_increases() {
      return Err(ComplexError::WeightCheckFailed("Box - Box0 must strictly increase weights".into()));
    }

    let zws = ws.map_field(|c| ZRational::constant(c.clone()));
    let zb = b_weight.map(|c| ZRational::constant(c.clone()));
    let resolvent_by = |route: ResolventRoute| -> ZOperator<F> {
      let r0 = match route {
        ResolventRoute::Spectral => box0_resolvent(&ws, &zws, &box0, spectral.as_ref()),
        ResolventRoute::Direct => box0_resolvent(&ws, &zws, &box0, None),
      };
      let br0 = zws.compose(&zb, &r0).expect("same workspace");
      zws.compose(&r0, &zws.neumann_sum(&br0)).expect("same workspace")
    };
    let route = opts.resolvent;
    let resolvent = resolvent_by(route);
    let zbox = box_.map(|c| ZRational::constant(c.clone()));
    let z_minus_box = zws.sub(&zws.scale(&zws.identity(), &ZRational::z()), &zbox);
    if zws.compose(&z_minus_box, &resolvent)? != zws.identity() {
      return Err(ComplexError::VerificationFailed("(z - Box) (z - Box)^-1 = I".into()));
    }
    let resolvent_alt = match route {
      ResolventRoute::Spectral => Some(resolvent_by(ResolventRoute::Direct)),
      ResolventRoute::Direct if spectral.is_some() => Some(resolvent_by(ResolventRoute::Spectral)),
      ResolventRoute::Direct => None,
    };
    if resolvent_alt.as_ref().is_some_and(|r| *r != resolvent) {
      return Err(ComplexError::RouteDisagreement("resolvent".into()));
    }

    let p = resolvent.map(ZRational::residue_at_zero);

    let q0 = ws.sub(&id, &pi0);
    let l = ws.add(&ws.compose(&p, &pi0)?, &ws.chain(&[&ws.sub(&id, &p), &q0]));
    let linv = ws.invert_unipotent(&l)?;
    let pt = ws.formal_adjoint(&p);
    let l1 = ws.add(&ws.compose(&pt, &pi0)?, &ws.chain(&[&ws.sub(&id, &pt), &q0]));

    let ldl = ws.chain(&[&linv, &d, &l]);
    let dd = ws.compose(&ldl, &pi0)?;
    let c = ws.compose(&ldl, &q0)?;

    let b = ws.scale(&ws.compose(&d0inv, &ws.sub(&d, &d0))?, &-F::one());
    let ib_inv = ws.invert_unipotent(&ws.sub(&id, &b))?;
    let pi = ws.add(&ws.chain(&[&ib_inv, &d0inv, &d]), &ws.chain(&[&d, &ib_inv, &d0inv]));
    let pi_e = ws.sub(&id, &pi);
    let dc = ws.chain(&[&pi0, &d, &pi_e, &pi0]);

    let corr = ws.add(&ws.chain(&[&c, &q0, &d0t, &box0_pinv]), &ws.chain(&[&q0, &d0t, &box0_pinv, &d0]));
    let g = ws.add(&pi0, &ws.compose(&corr, &q0)?);
    if !ws.weight_profile(&ws.sub(&g, &id)).strictly_increases() {
      return Err(ComplexError::WeightCheckFailed("g - I must strictly increase weights".into()));
    }
    let ginv = ws.invert_unipotent(&g)?;
    let h = ws.chain(&[&l, &g, &q0, &d0t, &box0_pinv, &ginv, &q0, &linv]);

    let betti = (0..=ws.n())
      .map(|k| {
        let tr = pi0.scalar_block(k).expect("algebraic").trace();
        tr.as_rational().and_then(|q| q.to_integer().try_into().ok()).expect("trace of a projector is an integer")
      })
      .collect();

    Ok(Self {
      alg: alg.clone(),
      ws,
      zws,
      d0,
      d0t,
      d,
      dt,
      d0inv,
      box0,
      box0_pinv,
      pi0,
      pi0_r0,
      spectral,
      box_,
      b_weight,
      route,
      resolvent,
      resolvent_alt,
      p,
      l,
      linv,
      l1,
      ldl,
      dd,
      c,
      b,
      pi,
      pi_e,
      dc,
      g,
      ginv,
      h,
      betti,
    })
  }

  pub fn n0(&self) -> usize { self.ws.n0() }

  /// A named operator; see [`OPERATOR_NAMES`].
  pub fn operator(&self, name: &str) -> Option<&GradedOperator<F>> {
    Some(match name {
      "d" => &self.d,
      "d0" => &self.d0,
      "d0t" => &self.d0t,
      "d0inv" => &self.d0inv,
      "box0" => &self.box0,
      "pi0" => &self.pi0,
      "box" => &self.box_,
      "B" => &self.b_weight,
      "P" => &self.p,
      "L" => &self.l,
      "Linv" => &self.linv,
      "L1" => &self.l1,
      "LdL" => &self.ldl,
      "D" => &self.dd,
      "C" => &self.c,
      "b" => &self.b,
      "Pi" => &self.pi,
      "PiE" => &self.pi_e,
      "dc" => &self.dc,
      "g" => &self.g,
      "h" => &self.h,
      _ => return None,
    })
  }

  /// Weight profile of an operator in this complex.
  pub fn profile(&self, op: &GradedOperator<F>) -> WeightProfile { self.ws.weight_profile(op) }

  /// Alternating sum of the Betti numbers.
  pub fn euler_characteristic(&self) -> i64 {
    self.betti.iter().enumerate().map(|(k, b)| if k % 2 == 0 { *b as i64 } else { -(*b as i64) }).sum()
  }

  pub fn workspace(&self) -> &Workspace<F> { &self.ws }
}

/// Operator names accepted by the report layer, in pipeline order.
pub const OPERATOR_NAMES: [&str; 22] = [
  "d", "d0", "d0inv", "box0", "pi0", "spectral", "box", "B", "resolvent", "P", "L", "Linv", "L1", "LdL", "D", "C", "b",
  "Pi", "dc", "g", "h", "betti",
];
