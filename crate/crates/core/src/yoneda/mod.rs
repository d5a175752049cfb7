//! Graded algebras and modules, the crossed-product model `E* = Λ(d) ⋊ C` of the Yoneda algebra,
//! its anti-involutions, the graded duality `Δ_gr` and the bimodules `E*(n)`.

pub mod duality;
pub mod graded;
pub mod model;

use thiserror::Error;

use crate::exactla::LinAlgError;
use crate::smoothrep::SmoothRepError;

pub use duality::{delta_gr, delta_gr_map, Bimodule, ExtN, IsoSearch, MaindualReport};
pub use graded::{GradedAlgebra, GradedAntiInvolution, GradedMap, GradedModule, Side};
pub use model::{CrossedModel, Normalization};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum YonedaError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("structure constants fail: {0}")]
    NotAModule(String),
    #[error("window [{lo}, {hi}] cannot hold degrees [{need_lo}, {need_hi}]")]
    WindowTooSmall { lo: i64, hi: i64, need_lo: i64, need_hi: i64 },
    #[error("no normalization of the anti-involution satisfies the axioms: {0}")]
    NoNormalization(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("size {size} exceeds the limit {limit}")]
    SizeOverflow { size: usize, limit: usize },
    #[error(transparent)]
    Shape(#[from] LinAlgError),
    #[error(transparent)]
    Group(#[from] SmoothRepError),
}
