//! Exact multivariate Laurent-polynomial arithmetic over the rationals.

mod chart;
pub mod expr;
mod monomial;
mod poly;

pub use chart::ChartPresentation;
pub use expr::{evaluate, evaluate_str, Expr, Scope};
pub use monomial::Monomial;
pub use poly::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("negative power of non-invertible `{variable}`")]
    NonInvertible { variable: String },
    #[error("`{variable}` must be a single invertible term to take a negative power")]
    NotAUnit { variable: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("`{variable}` appears with exponent {exponent} but is not invertible in the chart")]
    NotRegular { variable: String, exponent: i64 },
}
