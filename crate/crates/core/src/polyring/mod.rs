//! Exact sparse Laurent-polynomial arithmetic over arbitrary-precision
//! integers.

mod div;
mod monomial;
mod polynomial;
mod text;
mod variable;

pub use div::{div_exact, div_exact_int, divides};
pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use variable::{Family, Variable};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible; remainder {remainder}")]
    NotDivisible { remainder: Box<Polynomial> },
    #[error("negative power of {variable} bound to a non-unit")]
    NonInvertibleSubstitution { variable: Variable },
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}
