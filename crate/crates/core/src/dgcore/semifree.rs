//! Semifree modules on idempotent generators and the killing-cycles resolution.
//!
//! A generator `g` with idempotent `ε` spans `A ε g ≅ A ε`, a summand of a free module, so the
//! resulting modules are homotopically projective. Generators are listed in construction order
//! and `d(g)` only involves earlier generators, which exhibits the semifree filtration.

use std::collections::BTreeMap;
use std::rc::Rc;

use super::algebra::{add_into, DgAlgebra};
use super::module::{DgModule, ValidWeights};
use super::{DgError, WeightWindow};
use crate::exactla::{is_zero_vec, Matrix, Subspace};
use crate::field::Field;
use crate::yoneda::{GradedModule, Side};

/// Upper bound on killing rounds spent in a single weight.
pub const ROUND_LIMIT: usize = 24;
/// Upper bound on the number of generators of one resolution.
pub const GENERATOR_LIMIT: usize = 4096;

/// `d g = Σ a_j g_j` as pairs `(j, a_j)`.
pub type Boundary<F> = Vec<(usize, Vec<F>)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub degree: i64,
    pub weight: i64,
    pub idempotent: usize,
}

/// The image of a weight-zero projector on a space, with weight-homogeneous echelon basis.
#[derive(Clone, Debug)]
pub(crate) struct Piece<F: Field> {
    pub space: Subspace<F>,
    pub weights: Vec<i64>,
}

impl<F: Field> Piece<F> {
    pub fn image(projector: &Matrix<F>, ambient_weights: &[i64]) -> Self {
        let space = Subspace::spanned_by(projector.rows(), &projector.columns());
        let weights = space
            .basis()
            .iter()
            .map(|v| ambient_weights[v.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero")])
            .collect();
        Piece { space, weights }
    }

    pub fn len(&self) -> usize {
        self.space.dim()
    }

    pub fn vector(&self, k: usize) -> &[F] {
        &self.space.basis()[k]
    }

    pub fn coords(&self, v: &[F]) -> Vec<F> {
        self.space.coordinates(v).expect("vector lies in the projective piece")
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Block<F: Field> {
    pub gen: usize,
    pub inner: i64,
    pub offset: usize,
    pub piece: Rc<Piece<F>>,
}

/// Coordinates of a direct sum of pieces indexed by generator, per total degree.
#[derive(Clone, Debug)]
pub(crate) struct Layout<F: Field> {
    pub lo: i64,
    pub degrees: Vec<Vec<Block<F>>>,
    index: BTreeMap<(i64, usize), usize>,
}

impl<F: Field> Layout<F> {
    /// `entries` are `(total degree, generator, inner degree, piece)`.
    pub fn new(mut entries: Vec<(i64, usize, i64, Rc<Piece<F>>)>) -> Self {
        entries.retain(|e| e.3.len() > 0);
        entries.sort_by_key(|e| (e.0, e.1));
        let Some(lo) = entries.first().map(|e| e.0) else {
            return Layout { lo: 0, degrees: Vec::new(), index: BTreeMap::new() };
        };
        let hi = entries.last().map(|e| e.0).expect("nonempty");
        let mut degrees: Vec<Vec<Block<F>>> = vec![Vec::new(); (hi - lo + 1) as usize];
        let mut index = BTreeMap::new();
        for (total, gen, inner, piece) in entries {
            let list = &mut degrees[(total - lo) as usize];
            let offset = list.last().map_or(0, |b: &Block<F>| b.offset + b.piece.len());
            index.insert((total, gen), list.len());
            list.push(Block { gen, inner, offset, piece });
        }
        Layout { lo, degrees, index }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|l| l.last().map_or(0, |b| b.offset + b.piece.len())).collect()
    }

    pub fn dim(&self, total: i64) -> usize {
        let k = total - self.lo;
        if k < 0 || k as usize >= self.degrees.len() {
            0
        } else {
            self.degrees[k as usize].last().map_or(0, |b| b.offset + b.piece.len())
        }
    }

    pub fn block(&self, total: i64, gen: usize) -> Option<&Block<F>> {
        self.index.get(&(total, gen)).map(|&i| &self.degrees[(total - self.lo) as usize][i])
    }

    pub fn blocks(&self, total: i64) -> &[Block<F>] {
        let k = total - self.lo;
        if k < 0 || k as usize >= self.degrees.len() {
            &[]
        } else {
            &self.degrees[k as usize]
        }
    }

    /// The block and position within it of coordinate `idx` in degree `total`.
    pub fn locate(&self, total: i64, idx: usize) -> (&Block<F>, usize) {
        let list = &self.degrees[(total - self.lo) as usize];
        let at = list.partition_point(|b| b.offset + b.piece.len() <= idx);
        let b = &list[at];
        (b, idx - b.offset)
    }

    /// `out += s · ι_gen(v)` where `v` is an ambient vector of the generator's piece.
    pub fn add_embedded(&self, out: &mut [F], total: i64, gen: usize, s: F, v: &[F]) {
        if is_zero_vec(v) {
            return;
        }
        let b = self.block(total, gen).expect("nonzero vector in an empty block");
        for (k, c) in b.piece.coords(v).into_iter().enumerate() {
            out[b.offset + k] += s * c;
        }
    }

    /// The ambient vector of the component of `x` at `gen`.
    pub fn component(&self, total: i64, gen: usize, x: &[F], ambient: usize) -> Vec<F> {
        let mut out = vec![F::zero(); ambient];
        if let Some(b) = self.block(total, gen) {
            for k in 0..b.piece.len() {
                let c = x[b.offset + k];
                if !c.is_zero() {
                    add_into(&mut out, c, b.piece.vector(k));
                }
            }
        }
        out
    }

    pub fn total_degrees(&self) -> std::ops::Range<i64> {
        self.lo..self.lo + self.degrees.len() as i64
    }
}

/// Generators with boundaries `d(g) = Σ β_h h`, `β_h ∈ A^{|g|+1-|h|}`, for left modules.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SemifreeModule<F: Field> {
    generators: Vec<Generator>,
    boundaries: Vec<Boundary<F>>,
    stages: Vec<usize>,
}

impl<F: Field> SemifreeModule<F> {
    pub fn new() -> Self {
        SemifreeModule { generators: Vec::new(), boundaries: Vec::new(), stages: Vec::new() }
    }

    pub(crate) fn from_parts(generators: Vec<Generator>, boundaries: Vec<Boundary<F>>, stages: Vec<usize>) -> Self {
        SemifreeModule { generators, boundaries, stages }
    }

    /// Generators with zero differential, all in the first stage.
    pub fn free(generators: Vec<Generator>) -> Self {
        let n = generators.len();
        SemifreeModule { boundaries: vec![Vec::new(); n], generators, stages: vec![n] }
    }

    /// Adds a stage; each boundary may only mention generators of earlier stages.
    pub fn push_stage(&mut self, alg: &DgAlgebra<F>, stage: Vec<(Generator, Boundary<F>)>) -> Result<(), DgError> {
        let before = self.generators.len();
        for (g, bd) in stage {
            if g.idempotent >= alg.idempotents().len() {
                return Err(DgError::StructureMismatch(format!("generator refers to idempotent {}", g.idempotent)));
            }
            for (h, beta) in &bd {
                let Some(hg) = self.generators.get(*h).filter(|_| *h < before) else {
                    return Err(DgError::StructureMismatch("boundary mentions a generator of the same or a later stage".into()));
                };
                let e = g.degree + 1 - hg.degree;
                if e < 0 || beta.len() != alg.dim(e) {
                    return Err(DgError::StructureMismatch("boundary coefficient has the wrong degree".into()));
                }
            }
            self.generators.push(g);
            self.boundaries.push(bd);
        }
        self.stages.push(self.generators.len());
        Ok(())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn boundary(&self, g: usize) -> &[(usize, Vec<F>)] {
        &self.boundaries[g]
    }

    /// Cumulative generator counts after each stage.
    pub fn stages(&self) -> &[usize] {
        &self.stages
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn min_weight(&self) -> Option<i64> {
        self.generators.iter().map(|g| g.weight).min()
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.generators.iter().map(|g| g.weight).max()
    }

    pub(crate) fn layout(&self, alg: &DgAlgebra<F>) -> Layout<F> {
        let mut cache: BTreeMap<(usize, usize), Rc<Piece<F>>> = BTreeMap::new();
        let mut entries = Vec::new();
        for (gi, g) in self.generators.iter().enumerate() {
            for j in 0..alg.dims().len() {
                let piece = cache
                    .entry((g.idempotent, j))
                    .or_insert_with(|| Rc::new(Piece::image(&alg.graded().right_matrix(0, &alg.idempotents()[g.idempotent], j), alg.weights(j))))
                    .clone();
                entries.push((g.degree + j as i64, gi, j as i64, piece));
            }
        }
        Layout::new(entries)
    }

    /// The explicit left dg module `⊕ A ε_g g`.
    pub fn materialize(&self, alg: &DgAlgebra<F>) -> DgModule<F> {
        let layout = self.layout(alg);
        self.materialize_with(alg, &layout)
    }

    pub(crate) fn materialize_with(&self, alg: &DgAlgebra<F>, layout: &Layout<F>) -> DgModule<F> {
        let graded = alg.graded();
        let top = alg.top() as i64;
        let module = GradedModule::from_action(Side::Left, layout.lo, layout.dims(), graded, |n, s, b, idx| {
            let (blk, k) = layout.locate(n, idx);
            let j = blk.inner as usize;
            let mut out = vec![F::zero(); layout.dim(n + s as i64)];
            if blk.inner + s as i64 <= top {
                let bu = graded.left_basis(s, b, j).apply(blk.piece.vector(k));
                layout.add_embedded(&mut out, n + s as i64, blk.gen, F::one(), &bu);
            }
            out
        });
        let weights = layout
            .total_degrees()
            .map(|n| {
                layout.blocks(n).iter().flat_map(|b| b.piece.weights.iter().map(|w| w + self.generators[b.gen].weight).collect::<Vec<_>>()).collect()
            })
            .collect();
        let diff = layout
            .total_degrees()
            .map(|n| {
                let rows = layout.dim(n + 1);
                let cols: Vec<Vec<F>> = (0..layout.dim(n))
                    .map(|idx| {
                        let (blk, k) = layout.locate(n, idx);
                        let j = blk.inner;
                        let u = blk.piece.vector(k);
                        let mut out = vec![F::zero(); rows];
                        if j < top {
                            let du = alg.diff(j as usize).apply(u);
                            layout.add_embedded(&mut out, n + 1, blk.gen, F::one(), &du);
                        }
                        let g = self.generators[blk.gen];
                        for (h, beta) in &self.boundaries[blk.gen] {
                            let e = g.degree + 1 - self.generators[*h].degree;
                            if j + e <= top {
                                let ub = graded.mul(j as usize, u, e as usize, beta);
                                layout.add_embedded(&mut out, n + 1, *h, F::sign(j), &ub);
                            }
                        }
                        out
                    })
                    .collect();
                Matrix::from_columns(rows, &cols).expect("column length")
            })
            .collect();
        DgModule::new(module, weights, diff).expect("semifree modules are well formed")
    }
}

/// A semifree module with a comparison map to its target, exact through `built_through`.
#[derive(Clone, Debug)]
pub struct SemifreeResolution<F: Field> {
    pub target: DgModule<F>,
    pub semifree: SemifreeModule<F>,
    pub resolution: DgModule<F>,
    /// `φ(g) ∈ M^{|g|}` for each generator.
    pub images: Vec<Vec<F>>,
    /// Generators of every weight `≤ built_through` are present.
    pub built_through: i64,
    /// Weights in which the comparison map was verified to be a quasi-isomorphism.
    pub certified: (i64, i64),
}

impl<F: Field> SemifreeResolution<F> {
    /// The comparison map from degree `n` of the resolution to `M^n`.
    pub fn comparison(&self, alg: &DgAlgebra<F>, n: i64) -> Matrix<F> {
        comparison_matrix(alg, &self.semifree, &self.semifree.layout(alg), &self.target, &self.images, n)
    }

    /// Whether `φ` induces isomorphisms `h^{n,w}` for all `w` in `lo..=hi`.
    pub fn is_quasi_iso(&self, alg: &DgAlgebra<F>, lo: i64, hi: i64) -> bool {
        let layout = self.semifree.layout(alg);
        let p = &self.resolution;
        let m = &self.target;
        let degs = p.lo().min(m.lo()) - 1..=p.hi().max(m.hi()) + 1;
        degs.into_iter().all(|n| {
            let phi = comparison_matrix(alg, &self.semifree, &layout, m, &self.images, n);
            (lo..=hi).all(|w| quasi_iso_at(p, m, &phi, n, w))
        })
    }
}

fn comparison_matrix<F: Field>(
    alg: &DgAlgebra<F>,
    semifree: &SemifreeModule<F>,
    layout: &Layout<F>,
    target: &DgModule<F>,
    images: &[Vec<F>],
    n: i64,
) -> Matrix<F> {
    let cols: Vec<Vec<F>> = (0..layout.dim(n))
        .map(|idx| {
            let (blk, k) = layout.locate(n, idx);
            let g = semifree.generators()[blk.gen];
            target.module().action_by(g.degree, blk.inner as usize, blk.piece.vector(k)).apply(&images[blk.gen])
        })
        .collect();
    let _ = alg;
    Matrix::from_columns(target.dim(n), &cols).expect("column length")
}

fn quasi_iso_at<F: Field>(p: &DgModule<F>, m: &DgModule<F>, phi: &Matrix<F>, n: i64, w: i64) -> bool {
    let (zp, bp) = p.cycles_and_boundaries(n, w);
    let (zm, bm) = m.cycles_and_boundaries(n, w);
    let bm_space = Subspace::spanned_by(m.dim(n), &bm);
    let mut image = bm_space.clone();
    for z in &zp {
        image.insert(&phi.apply(z));
    }
    if image.dim() != Subspace::spanned_by(m.dim(n), &zm).dim() {
        return false;
    }
    kernel_mod_boundaries(&zp, phi, &bm_space, m.dim(n)).len() == Subspace::spanned_by(p.dim(n), &bp).dim()
}

/// A basis of `{x ∈ span(zp) : φ(x) ∈ B}`.
fn kernel_mod_boundaries<F: Field>(zp: &[Vec<F>], phi: &Matrix<F>, bm: &Subspace<F>, m_dim: usize) -> Vec<Vec<F>> {
    if zp.is_empty() {
        return Vec::new();
    }
    let mut cols: Vec<Vec<F>> = zp.iter().map(|z| phi.apply(z)).collect();
    cols.extend(bm.basis().iter().cloned());
    let system = Matrix::from_columns(m_dim, &cols).expect("column length");
    system
        .kernel_basis()
        .into_iter()
        .map(|c| {
            let mut x = vec![F::zero(); zp[0].len()];
            for (k, z) in zp.iter().enumerate() {
                add_into(&mut x, c[k], z);
            }
            x
        })
        .filter(|x| !is_zero_vec(x))
        .collect()
}

/// Resolves a left dg module through `window.hi + window.margin` and certifies `window`.
pub fn semifree_resolve<F: Field>(alg: &DgAlgebra<F>, m: &DgModule<F>, window: WeightWindow) -> Result<SemifreeResolution<F>, DgError> {
    if !m.valid().covers(window.lo, window.hi) || m.valid().min.is_some() {
        return Err(DgError::WindowTooSmall { lo: window.lo, hi: window.hi, valid: m.valid() });
    }
    let mut res = resolve_through(alg, m, window.hi + window.margin)?;
    if !res.is_quasi_iso(alg, window.lo, window.hi) {
        return Err(DgError::NotDg("resolution is not a quasi-isomorphism on the window".into()));
    }
    res.certified = (window.lo, window.hi);
    Ok(res)
}

/// Killing cycles weight by weight, through generators of weight `max_weight`.
pub(crate) fn resolve_through<F: Field>(alg: &DgAlgebra<F>, m: &DgModule<F>, max_weight: i64) -> Result<SemifreeResolution<F>, DgError> {
    if m.side() != Side::Left {
        return Err(DgError::SideMismatch("semifree resolutions are built for left modules".into()));
    }
    let mut semifree = SemifreeModule::new();
    let mut images: Vec<Vec<F>> = Vec::new();
    let units = alg.weight_zero_units();
    let min_weight = m.weight_range().map(|r| r.0);
    if let Some(w0) = min_weight {
        for w in w0..=max_weight {
            let mut settled = false;
            for _ in 0..ROUND_LIMIT {
                let added_cycles = surject(alg, m, &mut semifree, &mut images, &units, w)?;
                let added_kills = kill(alg, m, &mut semifree, &mut images, &units, w)?;
                if semifree.len() > GENERATOR_LIMIT {
                    return Err(DgError::NotConverged { weight: w, generators: semifree.len() });
                }
                if added_cycles + added_kills == 0 {
                    settled = true;
                    break;
                }
            }
            if !settled {
                return Err(DgError::NotConverged { weight: w, generators: semifree.len() });
            }
        }
    }
    let resolution = semifree.materialize(alg).with_valid(ValidWeights { min: None, max: Some(max_weight.min(m.valid().max.unwrap_or(i64::MAX))) });
    let hi = max_weight;
    Ok(SemifreeResolution { target: m.clone(), semifree, resolution, images, built_through: max_weight, certified: (min_weight.unwrap_or(hi), hi) })
}

fn degrees_to_scan<F: Field>(p: &DgModule<F>, m: &DgModule<F>) -> std::ops::RangeInclusive<i64> {
    let lo = if p.total_dim() == 0 { m.lo() } else { p.lo().min(m.lo()) };
    let hi = if p.total_dim() == 0 { m.hi() } else { p.hi().max(m.hi()) };
    lo - 1..=hi + 1
}

fn surject<F: Field>(
    alg: &DgAlgebra<F>,
    m: &DgModule<F>,
    semifree: &mut SemifreeModule<F>,
    images: &mut Vec<Vec<F>>,
    units: &[Vec<F>],
    w: i64,
) -> Result<usize, DgError> {
    let layout = semifree.layout(alg);
    let p = semifree.materialize_with(alg, &layout);
    let mut stage = Vec::new();
    let mut new_images = Vec::new();
    for n in degrees_to_scan(&p, m) {
        if m.dim(n) == 0 {
            continue;
        }
        let (zm, bm) = m.cycles_and_boundaries(n, w);
        let (zp, _) = p.cycles_and_boundaries(n, w);
        let phi = comparison_matrix(alg, semifree, &layout, m, images, n);
        let mut span = Subspace::spanned_by(m.dim(n), &bm);
        for z in &zp {
            span.insert(&phi.apply(z));
        }
        for z in &zm {
            for (i, e) in alg.idempotents().iter().enumerate() {
                let ez = m.module().action_by(n, 0, e).apply(z);
                if is_zero_vec(&ez) || span.contains(&ez) {
                    continue;
                }
                for a in units {
                    span.insert(&m.module().action_by(n, 0, a).apply(&ez));
                }
                stage.push((Generator { degree: n, weight: w, idempotent: i }, Vec::new()));
                new_images.push(ez);
            }
        }
    }
    let added = stage.len();
    if added > 0 {
        semifree.push_stage(alg, stage)?;
        images.extend(new_images);
    }
    Ok(added)
}

fn kill<F: Field>(
    alg: &DgAlgebra<F>,
    m: &DgModule<F>,
    semifree: &mut SemifreeModule<F>,
    images: &mut Vec<Vec<F>>,
    units: &[Vec<F>],
    w: i64,
) -> Result<usize, DgError> {
    let layout = semifree.layout(alg);
    let p = semifree.materialize_with(alg, &layout);
    let mut stage = Vec::new();
    let mut new_images = Vec::new();
    if p.total_dim() == 0 {
        return Ok(0);
    }
    for n in p.degrees() {
        let (zp, bp) = p.cycles_and_boundaries(n, w);
        if zp.is_empty() {
            continue;
        }
        let phi = comparison_matrix(alg, semifree, &layout, m, images, n);
        let (_, bm) = m.cycles_and_boundaries(n, w);
        let bm_space = Subspace::spanned_by(m.dim(n), &bm);
        let mut span = Subspace::spanned_by(p.dim(n), &bp);
        let weight_idx: Vec<usize> = m.weights_at(n - 1).iter().enumerate().filter(|(_, &x)| x == w).map(|(i, _)| i).collect();
        let d_prev = super::module::select_columns(&m.diff_at(n - 1), &weight_idx);
        for x in kernel_mod_boundaries(&zp, &phi, &bm_space, m.dim(n)) {
            for (i, e) in alg.idempotents().iter().enumerate() {
                let ex = p.module().action_by(n, 0, e).apply(&x);
                if is_zero_vec(&ex) || span.contains(&ex) {
                    continue;
                }
                for a in units {
                    span.insert(&p.module().action_by(n, 0, a).apply(&ex));
                }
                let target = phi.apply(&ex);
                let pre = d_prev.solve(&target)?.expect("image of a kernel class is a boundary");
                let pre = super::module::scatter(m.dim(n - 1), &weight_idx, &pre);
                // normalize the preimage into ε M so that φ(g) = φ(εg)
                let pre = m.module().action_by(n - 1, 0, e).apply(&pre);
                let boundary: Vec<(usize, Vec<F>)> = (0..semifree.len())
                    .filter_map(|h| {
                        let hd = semifree.generators()[h].degree;
                        let inner = n - hd;
                        if inner < 0 || inner > alg.top() as i64 {
                            return None;
                        }
                        let beta = layout.component(n, h, &ex, alg.dim(inner));
                        (!is_zero_vec(&beta)).then_some((h, beta))
                    })
                    .collect();
                stage.push((Generator { degree: n - 1, weight: w, idempotent: i }, boundary));
                new_images.push(pre);
            }
        }
    }
    let added = stage.len();
    if added > 0 {
        semifree.push_stage(alg, stage)?;
        images.extend(new_images);
    }
    Ok(added)
}
