//! Smooth representations of finite groups with a chosen subgroup `U`: induction,
//! the involutions on `Hom_U(V1, ind V2)` and `Hom_U(ind V2, V1)`, the refined pairing,
//! Shapiro and Frobenius maps, and the Hecke algebra `H(G, U)`.

pub mod group;
pub mod hecke;
pub mod maps;
pub mod rep;

use thiserror::Error;

use crate::exactla::LinAlgError;

pub use group::{Coset, FinGroupDatum};
pub use hecke::HeckeAlgebra;
pub use rep::{HomSpace, InducedRep, Rep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmoothRepError {
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("vector is not fixed: {0}")]
    NotFixed(String),
    #[error("map is not supported on the requested double coset: {0}")]
    WrongSupport(String),
    #[error(transparent)]
    Shape(#[from] LinAlgError),
}
