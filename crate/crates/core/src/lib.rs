pub mod expr;
pub mod complex;
pub mod field;
pub mod frame;
pub mod lie;
pub mod matrix;
pub mod operator;
pub mod pbw;
pub mod poly;
pub mod rational_function;
pub mod report;
pub mod roots;
pub mod univariate;
pub mod verify;

pub use field::{Field, Rational, ScalarError, ScalarField};
pub use rational_function::RationalFunction;
pub use univariate::{UniPoly, ZRational};
pub use frame::{Frame, MultiIndex};
pub use lie::{catalog, GradedLieAlgebra, LieError, ValidationReport, Violation, CATALOG};
pub use pbw::{Enveloping, PbwElement, PbwError, PbwMonomial};
pub use matrix::{Eigenspace, Matrix, MatrixError};
pub use operator::{box_sign, d_sign, Block, Difference, GradedOperator, OperatorError, WeightProfile, Workspace};
pub use complex::{BuildOptions, ComplexError, ResolventRoute, RuminComplex, SpectralDecomposition, OPERATOR_NAMES};
pub use verify::{run_suite, CheckResult, Level, Witness};
pub use report::{ComplexReport, ReportError};
pub use complex::ZOperator;

/// Lie algebras, operators and complexes over ℚ.
pub type QAlgebra = GradedLieAlgebra<Rational>;
pub type QOperator = GradedOperator<Rational>;
pub type QComplex = RuminComplex<Rational>;

/// The same over rational functions in the structure-constant parameters.
pub type RfAlgebra = GradedLieAlgebra<RationalFunction>;
pub type RfOperator = GradedOperator<RationalFunction>;
pub type RfComplex = RuminComplex<RationalFunction>;
