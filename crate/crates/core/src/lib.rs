//! Exact computations around locally nilpotent derivations on a rigid
//! affine surface: Laurent-chart algebras, weight gradings, semigroup
//! obstructions, derivation transforms, boundary divisor graphs and Picard
//! classes relative to a fibration.

pub mod algebra;
pub mod derivation;
pub mod divisor;
pub mod fixtures;
pub mod io;
pub mod picard;
pub mod rational;
pub mod semigroup;
pub mod weights;

pub use algebra::{AlgebraError, ChartPresentation, Expr, LaurentPoly, Monomial};
pub use derivation::{Derivation, DerivationError};
pub use divisor::{CurveGraph, Divisor, DivisorError};
pub use fixtures::{load_fixture, Fixture, FixtureError};
pub use picard::{FibrationPresentation, PicardElement, PicardError};
pub use rational::Rational;
pub use semigroup::{LatticePoint, SemigroupError, SemigroupPresentation};
pub use weights::{Weight, WeightAssignment, WeightError};
