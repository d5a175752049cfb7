//! Finite dg algebras and dg modules with an auxiliary weight grading, semifree resolutions,
//! derived tensor and Hom, the two-variable product `⊠` and its adjoint.
//!
//! Every object carries a weight grading preserved by differentials and actions. Algebras live
//! in non-negative weights, so a resolution built through weight `w` is exact in weights `≤ w`
//! and every infinite construction can be truncated honestly.

pub mod algebra;
pub mod derived;
pub mod module;
pub mod semifree;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exactla::LinAlgError;
use crate::yoneda::YonedaError;

pub use algebra::DgAlgebra;
pub use derived::{
    adjunction_check, boxtimes, derived_hom, derived_hom_with_residual, derived_tensor, derived_tensor_resolving_first, hom_boxtimes,
    koszul_swap, swap_descent, AdjunctionReport, BoxProduct, DescentReport, DgBimodule, KoszulSwap, ResidualAction,
};
pub use module::{DgModule, ValidWeights};
pub use semifree::{semifree_resolve, Generator, SemifreeModule, SemifreeResolution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DgError {
    #[error("not a dg object: {0}")]
    NotDg(String),
    #[error("weights [{lo}, {hi}] are not covered; exact weights are {valid}")]
    WindowTooSmall { lo: i64, hi: i64, valid: ValidWeights },
    #[error("resolution did not settle in weight {weight} after {generators} generators")]
    NotConverged { weight: i64, generators: usize },
    #[error("side mismatch: {0}")]
    SideMismatch(String),
    #[error("structure mismatch: {0}")]
    StructureMismatch(String),
    #[error("swap fails to intertwine at basis {x} with ({a}, {b})")]
    Intertwining { x: String, a: String, b: String },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Yoneda(#[from] YonedaError),
    #[error(transparent)]
    Shape(#[from] LinAlgError),
}

/// Default number of extra weights built beyond a requested window.
pub const DEFAULT_MARGIN: i64 = 2;

/// The weights `lo..=hi` whose values are reported, plus the extra weights built past them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightWindow {
    pub lo: i64,
    pub hi: i64,
    pub margin: i64,
}

impl WeightWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self, DgError> {
        Self::with_margin(lo, hi, DEFAULT_MARGIN)
    }

    pub fn with_margin(lo: i64, hi: i64, margin: i64) -> Result<Self, DgError> {
        if lo > hi || margin < 0 {
            return Err(DgError::WindowTooSmall { lo, hi, valid: ValidWeights::default() });
        }
        Ok(WeightWindow { lo, hi, margin })
    }

    pub fn contains(&self, w: i64) -> bool {
        self.lo <= w && w <= self.hi
    }
}

/// Dimensions indexed by `(degree, weight)`; zero entries are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bigraded {
    entries: BTreeMap<(i64, i64), usize>,
}

impl Bigraded {
    pub fn add(&mut self, degree: i64, weight: i64, dim: usize) {
        if dim > 0 {
            *self.entries.entry((degree, weight)).or_default() += dim;
        }
    }

    pub fn at(&self, degree: i64, weight: i64) -> usize {
        self.entries.get(&(degree, weight)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Entries whose weight lies in `lo..=hi`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Bigraded {
        Bigraded { entries: self.entries.iter().filter(|((_, w), _)| lo <= *w && *w <= hi).map(|(&k, &v)| (k, v)).collect() }
    }

    /// Total dimension per degree.
    pub fn by_degree(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&(d, _), &v) in &self.entries {
            *out.entry(d).or_default() += v;
        }
        out
    }

    /// Total dimension per weight.
    pub fn by_weight(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&(_, w), &v) in &self.entries {
            *out.entry(w).or_default() += v;
        }
        out
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for Bigraded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|((d, w), v)| format!("({d},{w}):{v}")).collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}
