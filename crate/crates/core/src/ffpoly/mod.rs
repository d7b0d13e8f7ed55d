//! Exact arithmetic kernels: prime fields, residue rings, extension fields,
//! univariate polynomials, factorization, interpolation, CRT and rational
//! reconstruction.

mod factor;
mod fields;
mod linalg;
mod poly;
mod quotient;
mod reconstruct;

use thiserror::Error;

pub use factor::{factor_squarefree, is_irreducible};
pub use fields::{bit_height, BigPrimeField, IntegerRing, PrimeField, RationalField, ResidueRing, SeriesRing};
pub use linalg::{determinant, solve_linear};
pub use poly::{render, Poly, PolyRing};
pub use quotient::{ExtField, QuotientRing};
pub use reconstruct::{default_bound, rational_reconstruct};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("characteristic does not exceed the polynomial degree")]
    CharacteristicTooSmall,
    #[error("interpolation nodes are not pairwise distinct")]
    DuplicateNode,
    #[error("CRT moduli are not pairwise coprime")]
    ModuliNotCoprime,
    #[error("no rational number within the bound matches the residue")]
    NoReconstruction,
    #[error("linear system has no unit pivot in column {0}")]
    SingularMatrix(usize),
}
