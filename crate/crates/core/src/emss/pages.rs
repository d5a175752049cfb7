//! Pages of the spectral sequence of the column filtration of `P ⊗_A F_•`.

use std::collections::BTreeMap;

use crate::dgcore::derived::{derived_tensor, tensor_layout, tensor_semifree_with_layout, ResidualAction};
use crate::dgcore::{Bigraded, DgAlgebra, DgModule, ValidWeights, WeightWindow};
use crate::exactla::{Matrix, Subspace};
use crate::field::Field;
use crate::yoneda::Side;

use super::resolution::{graded_tor, is_degree_weighted, GradedResolution};
use super::{EmssError, MAX_COLUMNS};

/// `E_r` keyed by `(s, t, weight)` with `s = -column` and `t` the internal degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Page {
    pub r: usize,
    pub dims: BTreeMap<(i64, i64, i64), usize>,
    /// Rank of `d_r` leaving each position.
    pub differential_ranks: BTreeMap<(i64, i64, i64), usize>,
}

impl Page {
    /// Dimensions summed over weights, keyed by `(s, t)`.
    pub fn collapsed(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for (&(s, t, _), &c) in &self.dims {
            *out.entry((s, t)).or_insert(0) += c;
        }
        out
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn has_nonzero_differential(&self) -> bool {
        self.differential_ranks.values().any(|&r| r > 0)
    }
}

#[derive(Clone, Debug)]
pub struct SpectralSequence {
    pub window: (i64, i64),
    /// Columns `0..=columns` of the resolution were used.
    pub columns: usize,
    /// `E_2, E_3, …, E_∞` in order; the last page is `E_∞`.
    pub pages: Vec<Page>,
    /// `h^{n,w}(P ⊗^L M)` from an independent resolution, restricted to the window.
    pub abutment: Bigraded,
    pub rank_identity: bool,
    /// `Σ E_∞` over columns equals the abutment for every `(n, w)` in the window.
    pub converges: bool,
    /// `E_2` against graded Tor of `h*(P)`, on columns lying inside the window.
    pub e2_matches_graded_tor: bool,
    /// Whether every nonzero `E_2` entry has `s ≤ 0`.
    pub tor_variant_vanishing: bool,
    /// With a residual action: whether it commutes with `d` and preserves the filtration.
    pub equivariant: Option<bool>,
}

impl SpectralSequence {
    pub fn e2(&self) -> &Page {
        &self.pages[0]
    }

    pub fn e_infinity(&self) -> &Page {
        self.pages.last().expect("at least one page")
    }

    /// `E_2 = E_∞`.
    pub fn degenerates_at_e2(&self) -> bool {
        self.pages.iter().all(|p| !p.has_nonzero_differential())
    }
}

struct Filtered<F: Field> {
    complex: DgModule<F>,
    /// Column of every coordinate, per degree.
    columns: BTreeMap<i64, Vec<usize>>,
}

impl<F: Field> Filtered<F> {
    fn coords(&self, n: i64, w: i64, max_col: Option<usize>) -> Vec<usize> {
        let cols = self.columns.get(&n).map_or(&[][..], |v| v.as_slice());
        self.complex
            .weights_at(n)
            .iter()
            .enumerate()
            .filter(|&(i, &x)| x == w && max_col.is_none_or(|c| cols[i] <= c))
            .map(|(i, _)| i)
            .collect()
    }

    /// `Z^r_c = {x ∈ F_c : dx ∈ F_{c-r}}` in bidegree `(n, w)`; `c < 0` gives zero.
    fn z(&self, n: i64, w: i64, c: i64, r: i64) -> Vec<Vec<F>> {
        if c < 0 {
            return Vec::new();
        }
        let src = self.coords(n, w, Some(c as usize));
        let d = self.complex.diff_at(n);
        let next_cols = self.columns.get(&(n + 1)).map_or(&[][..], |v| v.as_slice());
        let bad_rows: Vec<usize> = (0..d.rows()).filter(|&row| (next_cols[row] as i64) > c - r).collect();
        let restricted = Matrix::from_fn(bad_rows.len(), src.len(), |i, j| d[(bad_rows[i], src[j])]);
        let dim = self.complex.dim(n);
        restricted
            .kernel_basis()
            .into_iter()
            .map(|k| {
                let mut v = vec![F::zero(); dim];
                for (j, x) in src.iter().zip(&k) {
                    v[*j] = *x;
                }
                v
            })
            .collect()
    }

    fn dz(&self, n: i64, w: i64, c: i64, r: i64) -> Vec<Vec<F>> {
        let d = self.complex.diff_at(n - 1);
        self.z(n - 1, w, c, r).iter().map(|x| d.apply(x)).collect()
    }

    /// Denominator `Z^{r-1}_{c-1} + d Z^{r-1}_{c+r-1}` of `E^r_c` at `(n, w)`.
    fn denominator(&self, n: i64, w: i64, c: i64, r: i64) -> Subspace<F> {
        let mut v = self.z(n, w, c - 1, r - 1);
        v.extend(self.dz(n, w, c + r - 1, r - 1));
        Subspace::spanned_by(self.complex.dim(n), &v)
    }

    fn page_dim(&self, n: i64, w: i64, c: i64, r: i64) -> usize {
        let z = Subspace::spanned_by(self.complex.dim(n), &self.z(n, w, c, r)).dim();
        z - self.denominator(n, w, c, r).dim()
    }

    /// Rank of `d_r: E^r_c(n) → E^r_{c-r}(n+1)`.
    fn d_rank(&self, n: i64, w: i64, c: i64, r: i64) -> usize {
        if c - r < 0 {
            return 0;
        }
        let q = self.denominator(n + 1, w, c - r, r);
        let mut sum = q.clone();
        let d = self.complex.diff_at(n);
        for x in self.z(n, w, c, r) {
            sum.insert(&d.apply(&x));
        }
        sum.dim() - q.dim()
    }
}

/// The spectral sequence `Tor_{h*A}(h*P, M) ⇒ h*(P ⊗^L_A M)` for formal `A` and `M`, exact on
/// the weights of `window`.
pub fn em_tor_ss<F: Field>(
    alg: &DgAlgebra<F>,
    p: &DgModule<F>,
    m: &DgModule<F>,
    residual: Option<ResidualAction<'_, F>>,
    window: WeightWindow,
) -> Result<SpectralSequence, EmssError> {
    if !is_degree_weighted(alg) {
        return Err(EmssError::NotFormal);
    }
    if p.side() != Side::Right || m.side() != Side::Left {
        return Err(EmssError::SideMismatch("expected a right module and a left module".into()));
    }
    let m_formal = m.degrees().all(|d| m.diff_at(d).is_zero() && m.weights_at(d).iter().all(|&w| w == d));
    if !m_formal || p.valid() != ValidWeights::ALL {
        return Err(EmssError::NotFormal);
    }
    let (lo, hi) = (window.lo, window.hi);
    let pmin = p.weight_range().map_or(0, |r| r.0);
    // first column whose generators all lie above the window
    let mut length = 1;
    let res = loop {
        let res = GradedResolution::new(alg, m.module(), length)?;
        match res.min_degree(length) {
            Some(t) if t + pmin <= hi => {}
            _ => break res,
        }
        if length >= MAX_COLUMNS {
            return Err(EmssError::NotConverged { columns: length });
        }
        length += 1;
    };
    let last = length - 1;
    let (q, gen_columns) = res.total_complex(alg, last);
    let layout = tensor_layout(alg, p, &q);
    let complex = tensor_semifree_with_layout(alg, p, residual, &q, &layout);
    let columns: BTreeMap<i64, Vec<usize>> = layout
        .total_degrees()
        .map(|n| (n, layout.blocks(n).iter().flat_map(|b| std::iter::repeat_n(gen_columns[b.gen], b.piece.len())).collect()))
        .collect();
    let filtered = Filtered { complex, columns };
    let degrees: Vec<i64> = filtered.complex.degrees().collect();
    let r_inf = last + 2;
    let mut pages = Vec::new();
    let mut rank_identity = true;
    let mut previous: Option<Page> = None;
    for r in 1..=r_inf {
        let mut page = Page { r, ..Page::default() };
        for w in lo..=hi {
            for &n in &degrees {
                for c in 0..=last as i64 {
                    let dim = filtered.page_dim(n, w, c, r as i64);
                    let rank = filtered.d_rank(n, w, c, r as i64);
                    let key = (-c, n + c, w);
                    if dim > 0 {
                        page.dims.insert(key, dim);
                    }
                    if rank > 0 {
                        page.differential_ranks.insert(key, rank);
                    }
                }
            }
        }
        if let Some(prev) = &previous {
            // E_{r} = H(E_{r-1}, d_{r-1})
            for w in lo..=hi {
                for &n in &degrees {
                    for c in 0..=last as i64 {
                        let key = (-c, n + c, w);
                        let rp = (prev.r) as i64;
                        let out = prev.differential_ranks.get(&key).copied().unwrap_or(0);
                        let into = prev.differential_ranks.get(&(-(c + rp), n - 1 + c + rp, w)).copied().unwrap_or(0);
                        let before = prev.dims.get(&key).copied().unwrap_or(0);
                        let after = page.dims.get(&key).copied().unwrap_or(0);
                        if before < out + into || before - out - into != after {
                            rank_identity = false;
                        }
                    }
                }
            }
        }
        previous = Some(page.clone());
        if r >= 2 {
            pages.push(page);
        }
    }
    let abutment = derived_tensor(alg, p, m, window)?.cohomology().restrict(lo, hi);
    let e_inf = pages.last().expect("r_inf ≥ 2");
    let mut totals = Bigraded::default();
    for (&(s, t, w), &c) in &e_inf.dims {
        totals.add(t + s, w, c);
    }
    let converges = totals == abutment;
    let tor_variant_vanishing = pages[0].dims.keys().all(|&(s, _, _)| s <= 0);
    let e2_matches_graded_tor = compare_with_graded_tor(alg, p, m, &res, &pages[0], last, lo, hi)?;
    let equivariant = residual.map(|r| residual_preserves_columns(&filtered, r));
    Ok(SpectralSequence { window: (lo, hi), columns: last, pages, abutment, rank_identity, converges, e2_matches_graded_tor, tor_variant_vanishing, equivariant })
}

#[allow(clippy::too_many_arguments)]
fn compare_with_graded_tor<F: Field>(
    alg: &DgAlgebra<F>,
    p: &DgModule<F>,
    m: &DgModule<F>,
    res: &GradedResolution<F>,
    e2: &Page,
    last: usize,
    lo: i64,
    hi: i64,
) -> Result<bool, EmssError> {
    let Some((pmin, pmax)) = p.weight_range() else {
        return Ok(e2.dims.is_empty());
    };
    let hp = p.cohomology_module(alg, pmin)?;
    let tor = graded_tor(alg, &hp, m.module(), last)?;
    let e2c = e2.collapsed();
    for c in 0..=last {
        let term = res.term(c);
        let inside = term.iter().all(|g| g.degree + pmin >= lo && g.degree + pmax <= hi);
        if !inside {
            continue;
        }
        let s = -(c as i64);
        let mut ts: Vec<i64> = tor.iter().filter(|((ss, _), _)| *ss == s).map(|((_, t), _)| t).collect();
        ts.extend(e2c.keys().filter(|(ss, _)| *ss == s).map(|(_, t)| *t));
        for t in ts {
            if tor.at(s, t) != e2c.get(&(s, t)).copied().unwrap_or(0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn residual_preserves_columns<F: Field>(f: &Filtered<F>, r: ResidualAction<'_, F>) -> bool {
    let cx = &f.complex;
    let units = r.alg.dims()[0];
    cx.degrees().all(|n| {
        (0..units).all(|b| {
            let a = cx.module().action_basis(n, 0, b);
            let a_next = cx.module().action_basis(n + 1, 0, b);
            let commutes = &a_next * &cx.diff_at(n) == &cx.diff_at(n) * &a;
            let cols = f.columns.get(&n).map_or(&[][..], |v| v.as_slice());
            let filtered = (0..a.rows()).all(|i| (0..a.cols()).all(|j| a[(i, j)].is_zero() || cols[i] <= cols[j]));
            commutes && filtered
        })
    })
}
