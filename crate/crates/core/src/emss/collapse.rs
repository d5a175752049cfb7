//! Collapse of `Ext_E(M, Δ_gr E) ⇒ h*(RHom_E(M, Δ_gr E))` onto its `s = 0` row.

use crate::dgcore::derived::{derived_hom_with_residual, ResidualAction};
use crate::dgcore::{Bigraded, DgAlgebra, DgModule, WeightWindow};
use crate::yoneda::duality::check_maindual;
use crate::yoneda::{delta_gr, Bimodule, MaindualReport};
use crate::yoneda::model::CrossedModel;
use crate::yoneda::{GradedModule, Side};
use crate::field::Field;

use super::resolution::graded_ext;
use super::EmssError;

#[derive(Clone, Debug)]
pub struct CollapseReport<F: Field> {
    /// `Ext^{s,t}_E(M, Δ_gr E)` for `s ≤ s_max`, taken along the action that is dual to left
    /// multiplication.
    pub ext: Bigraded,
    pub higher_ext_vanishes: bool,
    /// `Ext^{0,t}` against `dim Δ_gr(M)^t`.
    pub row_zero_matches: bool,
    /// `h*(RHom_E(M, Δ_gr E))` with its residual right action, compared with `Δ_gr(M)`.
    pub maindual: MaindualReport<F>,
}

impl<F: Field> CollapseReport<F> {
    pub fn collapses(&self) -> bool {
        self.higher_ext_vanishes && self.row_zero_matches && matches!(self.maindual, MaindualReport::Iso { .. })
    }
}

/// `M` a finite right `E*`-module concentrated in nonnegative degrees.
pub fn collapse_check_cohdelta<F: Field>(
    model: &CrossedModel<F>,
    m: &GradedModule<F>,
    s_max: usize,
    seed: u64,
) -> Result<CollapseReport<F>, EmssError> {
    if m.side() != Side::Right {
        return Err(EmssError::SideMismatch("the source is a right module".into()));
    }
    let e = model.e_algebra();
    let alg = DgAlgebra::from_model(model);
    let sigma = model.twisted_anti_involution()?;
    let d = model.d() as i64;
    let b = Bimodule::new(&e, &sigma, d)?;
    let ext = graded_ext(&alg, m, &b.second, s_max)?;
    let higher_ext_vanishes = ext.iter().all(|((s, _), c)| s == 0 || c == 0);
    let target = delta_gr(&e, &sigma, d, m, None)?;
    let mut row_zero: Vec<i64> = target.degrees().collect();
    row_zero.extend(ext.iter().filter(|((s, _), _)| *s == 0).map(|((_, t), _)| t));
    let row_zero_matches = row_zero.iter().all(|&t| ext.at(0, t) == target.dim(t));
    let op = alg.opposite();
    let source = DgModule::formal(m.opposite_side());
    let dual = DgModule::formal(b.second.opposite_side());
    let residual_module = b.first.opposite_side();
    let window = WeightWindow::new(d - m.hi(), d - m.lo())?;
    let hom = derived_hom_with_residual(&op, &source, &dual, Some(ResidualAction { alg: &op, action: &residual_module }), window)?;
    let h = hom.cohomology_module(&op, window.lo)?.opposite_side();
    let maindual = check_maindual(&e, &sigma, d, m, &h, seed)?;
    Ok(CollapseReport { ext, higher_ext_vanishes, row_zero_matches, maindual })
}
