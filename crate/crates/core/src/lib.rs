//! Exact finite-field computations around the duality on `H(G, U)`-modules: degree-zero
//! involutions for smooth representations, the crossed-product Yoneda model, dg-modules and
//! the Eilenberg–Moore spectral sequence.

pub mod exactla;
pub mod field;
pub mod smoothrep;
pub mod yoneda;
pub mod dgcore;
pub mod emss;
pub mod cli;

pub use exactla::{LinAlgError, Matrix, Subspace};
pub use field::{Field, Fp, F11, F13, F2, F3, F5, F7};
