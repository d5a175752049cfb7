//! Eilenberg–Moore spectral sequences over formal algebras: graded Tor and Ext from graded
//! projective resolutions, the column-filtered complex `P ⊗_A F_•` and its pages, and the
//! collapse of the Ext sequence against the injective `Δ_gr(E*)`.

pub mod collapse;
pub mod instances;
pub mod pages;
pub mod resolution;

use thiserror::Error;

use crate::dgcore::DgError;
use crate::exactla::LinAlgError;
use crate::yoneda::YonedaError;

pub use collapse::{collapse_check_cohdelta, CollapseReport};
pub use instances::{bundled_instances, exterior_instances, model_instances, EmssInstance};
pub use pages::{em_tor_ss, Page, SpectralSequence};
pub use resolution::{graded_ext, graded_tor, GradedGenerator, GradedResolution};

/// Largest resolution length attempted while searching for a certifying column bound.
pub const MAX_COLUMNS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmssError {
    #[error("the algebra must be formal with weights equal to degrees")]
    NotFormal,
    #[error("columns do not leave the weight window after {columns} steps")]
    NotConverged { columns: usize },
    #[error("side mismatch: {0}")]
    SideMismatch(String),
    #[error(transparent)]
    Dg(#[from] DgError),
    #[error(transparent)]
    Yoneda(#[from] YonedaError),
    #[error(transparent)]
    Shape(#[from] LinAlgError),
}
