//! Exact scalars, univariate polynomials and rational functions over `Q(i)`,
//! and dense linear algebra over either.

mod field;
mod gaussian;
mod matrix;
mod poly;
mod ratfunc;
mod roots;

pub use field::Field;
pub use gaussian::GaussianRational;
pub use matrix::Matrix;
pub use poly::Polynomial;
pub use ratfunc::{Point, RationalFunction};
pub use roots::{roots, Roots};

pub(crate) use gaussian::{format_rational, parse_rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("cannot parse exact number from {0:?}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by zero")]
    DivisionByZero,
}
