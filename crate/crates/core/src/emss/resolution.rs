//! Graded projective resolutions on idempotent generators, and the graded Tor and Ext they compute.

use crate::dgcore::algebra::DgAlgebra;
use crate::dgcore::derived::{hom_semifree, tensor_semifree};
use crate::dgcore::{Bigraded, DgModule, Generator, SemifreeModule};
use crate::exactla::{is_zero_vec, Matrix, Subspace};
use crate::field::Field;
use crate::yoneda::{GradedModule, Side};

use super::EmssError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradedGenerator {
    pub degree: i64,
    pub idempotent: usize,
}

/// `F_s = ⊕ A ε g` with `∂: F_s → F_{s-1}` and `F_0 → N`, built by greedy generation of kernels.
#[derive(Clone, Debug)]
pub struct GradedResolution<F: Field> {
    terms: Vec<Vec<GradedGenerator>>,
    /// `images[s][g]`: the image of a generator of `F_s` in `F_{s-1}` (in `N` for `s = 0`).
    images: Vec<Vec<Vec<F>>>,
}

pub(crate) fn is_degree_weighted<F: Field>(alg: &DgAlgebra<F>) -> bool {
    alg.is_formal() && (0..alg.dims().len()).all(|i| alg.weights(i).iter().all(|&w| w == i as i64))
}

fn free_module<F: Field>(alg: &DgAlgebra<F>, gens: &[GradedGenerator]) -> (SemifreeModule<F>, GradedModule<F>) {
    let s = SemifreeModule::free(gens.iter().map(|g| Generator { degree: g.degree, weight: g.degree, idempotent: g.idempotent }).collect());
    let m = s.materialize(alg).module().clone();
    (s, m)
}

/// The matrix of `a g ↦ a φ(g)` from degree `n` of the free module into `x`.
fn map_matrix<F: Field>(alg: &DgAlgebra<F>, free: &SemifreeModule<F>, x: &GradedModule<F>, images: &[Vec<F>], n: i64) -> Matrix<F> {
    let layout = free.layout(alg);
    let cols: Vec<Vec<F>> = (0..layout.dim(n))
        .map(|idx| {
            let (blk, k) = layout.locate(n, idx);
            x.action_by(free.generators()[blk.gen].degree, blk.inner as usize, blk.piece.vector(k)).apply(&images[blk.gen])
        })
        .collect();
    Matrix::from_columns(x.dim(n), &cols).expect("column length")
}

/// Generators, in ascending degree, of the graded submodule `k ⊂ x`.
fn generators_of<F: Field>(alg: &DgAlgebra<F>, x: &GradedModule<F>, k: &[Subspace<F>]) -> (Vec<GradedGenerator>, Vec<Vec<F>>) {
    let mut gens = Vec::new();
    let mut images: Vec<Vec<F>> = Vec::new();
    let mut listed: Vec<(i64, Vec<F>)> = Vec::new();
    for (off, space) in k.iter().enumerate() {
        let deg = x.lo() + off as i64;
        for v in space.basis() {
            for (i, e) in alg.idempotents().iter().enumerate() {
                let ev = x.action_by(deg, 0, e).apply(v);
                if is_zero_vec(&ev) || x.generated_subspaces(&listed)[off].contains(&ev) {
                    continue;
                }
                gens.push(GradedGenerator { degree: deg, idempotent: i });
                listed.push((deg, ev.clone()));
                images.push(ev);
            }
        }
    }
    (gens, images)
}

impl<F: Field> GradedResolution<F> {
    /// Resolves the left module `n` through `F_length`.
    pub fn new(alg: &DgAlgebra<F>, n: &GradedModule<F>, length: usize) -> Result<Self, EmssError> {
        if !is_degree_weighted(alg) {
            return Err(EmssError::NotFormal);
        }
        if n.side() != Side::Left {
            return Err(EmssError::SideMismatch("graded resolutions are built for left modules".into()));
        }
        let everything: Vec<Subspace<F>> = n.dims().iter().map(|&d| Subspace::spanned_by(d, &Matrix::<F>::identity(d).columns())).collect();
        let (g0, i0) = generators_of(alg, n, &everything);
        let mut res = GradedResolution { terms: vec![g0], images: vec![i0] };
        let mut target = n.clone();
        for _ in 0..length {
            let last = res.terms.last().expect("nonempty");
            let (free, module) = free_module(alg, last);
            let images = res.images.last().expect("nonempty");
            let kernel: Vec<Subspace<F>> = module
                .degrees()
                .map(|deg| Subspace::spanned_by(module.dim(deg), &map_matrix(alg, &free, &target, images, deg).kernel_basis()))
                .collect();
            let (g, i) = generators_of(alg, &module, &kernel);
            res.terms.push(g);
            res.images.push(i);
            target = module;
        }
        Ok(res)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.iter().all(Vec::is_empty)
    }

    pub fn term(&self, s: usize) -> &[GradedGenerator] {
        &self.terms[s]
    }

    /// Lowest generator degree of `F_s`, if any.
    pub fn min_degree(&self, s: usize) -> Option<i64> {
        self.terms[s].iter().map(|g| g.degree).min()
    }

    /// The total complex as a semifree dg module through column `last`: `g ∈ F_s` sits in
    /// degree `t - s` and weight `t`, with `d g = Σ (-1)^{t_h} β h` for `∂ g = Σ β h`.
    pub fn total_complex(&self, alg: &DgAlgebra<F>, last: usize) -> (SemifreeModule<F>, Vec<usize>) {
        let mut out = SemifreeModule::new();
        let mut columns = Vec::new();
        let mut offsets = Vec::new();
        for s in 0..=last.min(self.terms.len() - 1) {
            offsets.push(out.len());
            let prev = if s == 0 { Vec::new() } else { self.terms[s - 1].clone() };
            let layout = if s == 0 { None } else { Some(free_module(alg, &prev).0.layout(alg)) };
            let stage = self.terms[s]
                .iter()
                .zip(&self.images[s])
                .map(|(g, img)| {
                    let gen = Generator { degree: g.degree - s as i64, weight: g.degree, idempotent: g.idempotent };
                    let boundary = match &layout {
                        None => Vec::new(),
                        Some(layout) => prev
                            .iter()
                            .enumerate()
                            .filter_map(|(h, hg)| {
                                let inner = g.degree - hg.degree;
                                if inner < 0 || inner > alg.top() as i64 {
                                    return None;
                                }
                                let mut beta = layout.component(g.degree, h, img, alg.dim(inner));
                                if is_zero_vec(&beta) {
                                    return None;
                                }
                                let sign = F::sign(hg.degree);
                                beta.iter_mut().for_each(|x| *x *= sign);
                                Some((offsets[s - 1] + h, beta))
                            })
                            .collect(),
                    };
                    (gen, boundary)
                })
                .collect();
            columns.extend(std::iter::repeat_n(s, self.terms[s].len()));
            out.push_stage(alg, stage).expect("boundaries point to the previous column");
        }
        (out, columns)
    }
}

fn formal_degree_weighted<F: Field>(m: &GradedModule<F>) -> DgModule<F> {
    DgModule::formal(m.clone())
}

/// `Tor^{-s,t}_A(M, N)` for `0 ≤ s ≤ s_max`, keyed by `(-s, t)`.
pub fn graded_tor<F: Field>(alg: &DgAlgebra<F>, m: &GradedModule<F>, n: &GradedModule<F>, s_max: usize) -> Result<Bigraded, EmssError> {
    if m.side() != Side::Right {
        return Err(EmssError::SideMismatch("the first Tor argument is a right module".into()));
    }
    let res = GradedResolution::new(alg, n, s_max + 1)?;
    let (q, _) = res.total_complex(alg, s_max + 1);
    let cx = tensor_semifree(alg, &formal_degree_weighted(m), None, &q);
    let mut out = Bigraded::default();
    for ((deg, w), c) in cx.cohomology().iter() {
        let s = w - deg;
        if (0..=s_max as i64).contains(&s) {
            out.add(-s, w, c);
        }
    }
    Ok(out)
}

/// `Ext^{s,t}_A(M, N)` of right modules for `0 ≤ s ≤ s_max`, keyed by `(s, t)` with `t` the
/// degree of the maps.
pub fn graded_ext<F: Field>(alg: &DgAlgebra<F>, m: &GradedModule<F>, n: &GradedModule<F>, s_max: usize) -> Result<Bigraded, EmssError> {
    if m.side() != Side::Right || n.side() != Side::Right {
        return Err(EmssError::SideMismatch("Ext is taken between right modules".into()));
    }
    let op = alg.opposite();
    let (m_op, n_op) = (m.opposite_side(), n.opposite_side());
    let res = GradedResolution::new(&op, &m_op, s_max + 1)?;
    let (q, _) = res.total_complex(&op, s_max + 1);
    let cx = hom_semifree(&op, &q, &formal_degree_weighted(&n_op), None);
    let mut out = Bigraded::default();
    for ((deg, w), c) in cx.cohomology().iter() {
        let s = deg - w;
        if (0..=s_max as i64).contains(&s) {
            out.add(s, w, c);
        }
    }
    Ok(out)
}
