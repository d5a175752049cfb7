//! Derived tensor and Hom against semifree resolutions, the product `⊠` over `A ⊗ A` with
//! kernel `E*(2)`, its right adjoint, and the Koszul swap.

use std::collections::BTreeMap;
use std::rc::Rc;

use super::algebra::DgAlgebra;
use super::module::{DgModule, ValidWeights};
use super::semifree::{resolve_through, Block, Generator, Layout, Piece, SemifreeModule};
use super::{Bigraded, DgError, WeightWindow};
use crate::exactla::{unit_vector, Matrix};
use crate::field::Field;
use crate::yoneda::graded::{tensor_element, tensor_split};
use crate::yoneda::{CrossedModel, ExtN, GradedMap, GradedModule, Side};

/// A left action on the spaces of a module, commuting with its main structure.
#[derive(Clone, Copy)]
pub struct ResidualAction<'a, F: Field> {
    pub alg: &'a DgAlgebra<F>,
    pub action: &'a GradedModule<F>,
}

fn apply_residual<F: Field>(residual: Option<ResidualAction<'_, F>>, deg: i64, s: usize, b: usize, v: &[F]) -> Vec<F> {
    match residual {
        Some(r) => r.action.action_basis(deg, s, b).apply(v),
        None => v.to_vec(),
    }
}

fn assemble<F: Field>(
    residual: Option<ResidualAction<'_, F>>,
    layout: &Layout<F>,
    weights: impl Fn(&Block<F>, usize) -> i64,
    act: impl Fn(i64, usize, usize, &Block<F>, usize) -> Vec<F>,
    diff: impl Fn(i64, &Block<F>, usize) -> Vec<F>,
) -> DgModule<F> {
    let ground = DgAlgebra::ground();
    let ralg = residual.map_or(&ground, |r| r.alg);
    let module = GradedModule::from_action(Side::Left, layout.lo, layout.dims(), ralg.graded(), |n, s, b, idx| {
        let (blk, k) = layout.locate(n, idx);
        act(n, s, b, blk, k)
    });
    let weights = layout
        .total_degrees()
        .map(|n| layout.blocks(n).iter().flat_map(|b| (0..b.piece.len()).map(|k| weights(b, k)).collect::<Vec<_>>()).collect())
        .collect();
    let diff = layout
        .total_degrees()
        .map(|n| {
            let cols: Vec<Vec<F>> = (0..layout.dim(n))
                .map(|idx| {
                    let (blk, k) = layout.locate(n, idx);
                    diff(n, blk, k)
                })
                .collect();
            Matrix::from_columns(layout.dim(n + 1), &cols).expect("column length")
        })
        .collect();
    DgModule::new(module, weights, diff).expect("assembled complexes are well formed")
}

fn projector_piece<F: Field>(m: &DgModule<F>, deg: i64, idempotents: &[Vec<F>], i: usize, cache: &mut BTreeMap<(i64, usize), Rc<Piece<F>>>) -> Rc<Piece<F>> {
    cache.entry((deg, i)).or_insert_with(|| Rc::new(Piece::image(&m.module().action_by(deg, 0, &idempotents[i]), m.weights_at(deg)))).clone()
}

/// `P ⊗_B Q` for a right module `P` and a semifree `Q`, with `p ⊗ u g = p u ⊗ g`.
pub(crate) fn tensor_semifree<F: Field>(
    alg: &DgAlgebra<F>,
    p: &DgModule<F>,
    residual: Option<ResidualAction<'_, F>>,
    q: &SemifreeModule<F>,
) -> DgModule<F> {
    tensor_semifree_with_layout(alg, p, residual, q, &tensor_layout(alg, p, q))
}

/// Blocks `P^j ε_g ⊗ g` in total degree `j + |g|`.
pub(crate) fn tensor_layout<F: Field>(alg: &DgAlgebra<F>, p: &DgModule<F>, q: &SemifreeModule<F>) -> Layout<F> {
    let mut cache = BTreeMap::new();
    let mut entries = Vec::new();
    for (gi, g) in q.generators().iter().enumerate() {
        for j in p.degrees() {
            let piece = projector_piece(p, j, alg.idempotents(), g.idempotent, &mut cache);
            entries.push((j + g.degree, gi, j, piece));
        }
    }
    Layout::new(entries)
}

pub(crate) fn tensor_semifree_with_layout<F: Field>(
    alg: &DgAlgebra<F>,
    p: &DgModule<F>,
    residual: Option<ResidualAction<'_, F>>,
    q: &SemifreeModule<F>,
    layout: &Layout<F>,
) -> DgModule<F> {
    let gens = q.generators();
    let top = alg.top() as i64;
    assemble(
        residual,
        layout,
        |b, k| b.piece.weights[k] + gens[b.gen].weight,
        |n, s, b, blk, k| {
            let mut out = vec![F::zero(); layout.dim(n + s as i64)];
            let rv = apply_residual(residual, blk.inner, s, b, blk.piece.vector(k));
            layout.add_embedded(&mut out, n + s as i64, blk.gen, F::one(), &rv);
            out
        },
        |n, blk, k| {
            let mut out = vec![F::zero(); layout.dim(n + 1)];
            let v = blk.piece.vector(k);
            let j = blk.inner;
            layout.add_embedded(&mut out, n + 1, blk.gen, F::one(), &p.diff_at(j).apply(v));
            for (h, beta) in q.boundary(blk.gen) {
                let e = gens[blk.gen].degree + 1 - gens[*h].degree;
                if e <= top {
                    let pb = p.module().action_by(j, e as usize, beta).apply(v);
                    layout.add_embedded(&mut out, n + 1, *h, F::sign(j), &pb);
                }
            }
            out
        },
    )
}

/// `Hom_B(Q, N)` for semifree `Q`; `f` is stored as the tuple `f(g) ∈ ε_g N^{|g|+n}` and
/// `(df)(g) = d f(g) - (-1)^n Σ (-1)^{n|β|} β f(h)`.
pub(crate) fn hom_semifree<F: Field>(
    alg: &DgAlgebra<F>,
    q: &SemifreeModule<F>,
    n_mod: &DgModule<F>,
    residual: Option<ResidualAction<'_, F>>,
) -> DgModule<F> {
    let mut cache = BTreeMap::new();
    let mut entries = Vec::new();
    for (gi, g) in q.generators().iter().enumerate() {
        for j in n_mod.degrees() {
            let piece = projector_piece(n_mod, j, alg.idempotents(), g.idempotent, &mut cache);
            entries.push((j - g.degree, gi, j, piece));
        }
    }
    let layout = Layout::new(entries);
    let gens = q.generators();
    // users[h] = generators whose boundary involves h
    let mut users: Vec<Vec<(usize, &Vec<F>)>> = vec![Vec::new(); gens.len()];
    for g in 0..gens.len() {
        for (h, beta) in q.boundary(g) {
            users[*h].push((g, beta));
        }
    }
    let top = alg.top() as i64;
    assemble(
        residual,
        &layout,
        |b, k| b.piece.weights[k] - gens[b.gen].weight,
        |t, s, b, blk, k| {
            let mut out = vec![F::zero(); layout.dim(t + s as i64)];
            let rv = apply_residual(residual, blk.inner, s, b, blk.piece.vector(k));
            layout.add_embedded(&mut out, t + s as i64, blk.gen, F::one(), &rv);
            out
        },
        |t, blk, k| {
            let mut out = vec![F::zero(); layout.dim(t + 1)];
            let v = blk.piece.vector(k);
            let j = blk.inner;
            layout.add_embedded(&mut out, t + 1, blk.gen, F::one(), &n_mod.diff_at(j).apply(v));
            for (g, beta) in &users[blk.gen] {
                let e = gens[*g].degree + 1 - gens[blk.gen].degree;
                if e <= top {
                    let bv = n_mod.module().action_by(j, e as usize, beta).apply(v);
                    layout.add_embedded(&mut out, t + 1, *g, -F::sign(t) * F::sign(t * e), &bv);
                }
            }
            out
        },
    )
}

fn tensor_valid(p: &DgModule<impl Field>, q_min: Option<i64>, exact_through: i64) -> ValidWeights {
    let (Some(pmin), Some(qmin)) = (p.weight_range().map(|r| r.0), q_min) else {
        return ValidWeights::ALL;
    };
    let mut max = exact_through + pmin;
    if let Some(pv) = p.valid().max {
        max = max.min(pv + qmin);
    }
    ValidWeights { min: None, max: Some(max) }
}

fn hom_valid(n: &DgModule<impl Field>, q_min: Option<i64>, exact_through: i64) -> ValidWeights {
    let (Some((_, nmax)), Some(qmin)) = (n.weight_range(), q_min) else {
        return ValidWeights::ALL;
    };
    let mut min = nmax - exact_through;
    if let Some(nv) = n.valid().min {
        min = min.max(nv - qmin);
    }
    ValidWeights { min: Some(min), max: None }
}

fn require_untruncated_below<F: Field>(m: &DgModule<F>, what: &str) -> Result<(), DgError> {
    if m.valid().min.is_some() {
        return Err(DgError::StructureMismatch(format!("{what} must be exact in all low weights")));
    }
    Ok(())
}

fn require_side<F: Field>(m: &DgModule<F>, side: Side, what: &str) -> Result<(), DgError> {
    if m.side() != side {
        return Err(DgError::SideMismatch(format!("{what} must be a {side:?} module")));
    }
    Ok(())
}

fn check_window<F: Field>(result: DgModule<F>, window: WeightWindow) -> Result<DgModule<F>, DgError> {
    if !result.valid().covers(window.lo, window.hi) {
        return Err(DgError::WindowTooSmall { lo: window.lo, hi: window.hi, valid: result.valid() });
    }
    Ok(result)
}

fn exactness<F: Field>(m: &DgModule<F>, built: i64) -> i64 {
    m.valid().max.map_or(built, |v| v.min(built))
}

/// `P ⊗^L_A M` for right `P` and left `M`, resolving `M`; exact on `window`.
pub fn derived_tensor<F: Field>(alg: &DgAlgebra<F>, p: &DgModule<F>, m: &DgModule<F>, window: WeightWindow) -> Result<DgModule<F>, DgError> {
    derived_tensor_with_residual(alg, p, None, m, window)
}

pub fn derived_tensor_with_residual<F: Field>(
    alg: &DgAlgebra<F>,
    p: &DgModule<F>,
    residual: Option<ResidualAction<'_, F>>,
    m: &DgModule<F>,
    window: WeightWindow,
) -> Result<DgModule<F>, DgError> {
    require_side(p, Side::Right, "the first tensor factor")?;
    require_side(m, Side::Left, "the second tensor factor")?;
    require_untruncated_below(p, "the first tensor factor")?;
    require_untruncated_below(m, "the second tensor factor")?;
    let pmin = p.weight_range().map_or(0, |r| r.0);
    let res = resolve_through(alg, m, window.hi + window.margin - pmin)?;
    let out = tensor_semifree(alg, p, residual, &res.semifree);
    let valid = tensor_valid(p, res.semifree.min_weight(), exactness(m, res.built_through));
    check_window(out.with_valid(valid), window)
}

/// `P ⊗^L_A M` computed as `M ⊗^L_{A^op} P`, resolving `P`; the two agree up to the Koszul sign.
pub fn derived_tensor_resolving_first<F: Field>(
    alg: &DgAlgebra<F>,
    p: &DgModule<F>,
    m: &DgModule<F>,
    window: WeightWindow,
) -> Result<DgModule<F>, DgError> {
    require_side(p, Side::Right, "the first tensor factor")?;
    require_side(m, Side::Left, "the second tensor factor")?;
    derived_tensor(&alg.opposite(), &m.opposite_side(), &p.opposite_side(), window)
}

/// `RHom_A(M, N)` for left modules, resolving `M`; exact on `window`.
pub fn derived_hom<F: Field>(alg: &DgAlgebra<F>, m: &DgModule<F>, n: &DgModule<F>, window: WeightWindow) -> Result<DgModule<F>, DgError> {
    derived_hom_with_residual(alg, m, n, None, window)
}

/// As [`derived_hom`], keeping a left action on `N` that Koszul-commutes with the `A` action.
pub fn derived_hom_with_residual<F: Field>(
    alg: &DgAlgebra<F>,
    m: &DgModule<F>,
    n: &DgModule<F>,
    residual: Option<ResidualAction<'_, F>>,
    window: WeightWindow,
) -> Result<DgModule<F>, DgError> {
    require_side(m, Side::Left, "the source")?;
    require_side(n, Side::Left, "the target")?;
    require_untruncated_below(m, "the source")?;
    if n.valid().max.is_some() {
        return Err(DgError::StructureMismatch("the target must be exact in all high weights".into()));
    }
    let nmax = n.weight_range().map_or(0, |r| r.1);
    let res = resolve_through(alg, m, nmax - window.lo + window.margin)?;
    let out = hom_semifree(alg, &res.semifree, n, residual);
    let valid = hom_valid(n, res.semifree.min_weight(), exactness(m, res.built_through));
    check_window(out.with_valid(valid), window)
}

/// A right dg module over `A ⊗ A` with a commuting left `A` action on the same spaces.
#[derive(Clone, Debug)]
pub struct DgBimodule<F: Field> {
    pub main: DgModule<F>,
    pub residual: GradedModule<F>,
    /// An involution exchanging the two right actions, when one is known.
    pub swap: Option<GradedMap<F>>,
}

impl<F: Field> DgBimodule<F> {
    /// `E*(2)` with `x · (a ⊗ b) = (x ·₁ a) ·₂ b` and the diagonal left action.
    pub fn from_ext2(model: &CrossedModel<F>) -> Result<Self, DgError> {
        let ext = ExtN::new(model, 2)?;
        let alg = DgAlgebra::from_model(model);
        let aa = alg.tensor(&alg);
        let ad = alg.dims().to_vec();
        let dims = ext.dims().to_vec();
        let module = GradedModule::from_action(Side::Right, 0, dims.clone(), aa.graded(), |deg, s, b, x| {
            let (i, a, j, bb) = tensor_split(&ad, &ad, s, b);
            let y = ext.rights[0].action_basis(deg, i, a).column(x);
            ext.rights[1].action_basis(deg + i as i64, j, bb).apply(&y)
        });
        let weights = dims.iter().enumerate().map(|(deg, &n)| vec![deg as i64; n]).collect();
        let diff = (0..dims.len()).map(|deg| Matrix::zeros(dims.get(deg + 1).copied().unwrap_or(0), dims[deg])).collect();
        let main = DgModule::new(module, weights, diff)?;
        Ok(DgBimodule { main, residual: ext.left.clone(), swap: Some(ext.slot_swap()?) })
    }

    /// `A` with `x · (a ⊗ b) = x a ε(b)` for an augmentation `ε: A^0 → k`: the unit of `⊠`.
    pub fn unit_kernel(alg: &DgAlgebra<F>, augmentation: &[F]) -> Result<Self, DgError> {
        if augmentation.len() != alg.dims()[0] {
            return Err(DgError::StructureMismatch("augmentation has the wrong length".into()));
        }
        let aa = alg.tensor(alg);
        let ad = alg.dims().to_vec();
        let graded = alg.graded();
        let module = GradedModule::from_action(Side::Right, 0, ad.clone(), aa.graded(), |deg, s, b, x| {
            let (i, a, j, bb) = tensor_split(&ad, &ad, s, b);
            let rows = graded.dim(deg + s as i64);
            if j > 0 || (deg as usize) + i > alg.top() {
                return vec![F::zero(); rows];
            }
            let mut out = graded.mul(deg as usize, &graded.basis(deg as usize, x), i, &graded.basis(i, a));
            let c = augmentation[bb];
            out.iter_mut().for_each(|v| *v *= c);
            out
        });
        let weights = (0..ad.len()).map(|i| alg.weights(i).to_vec()).collect();
        let diff = (0..ad.len()).map(|i| alg.diff(i).clone()).collect();
        let main = DgModule::new(module, weights, diff)?;
        Ok(DgBimodule { main, residual: GradedModule::regular_left(graded), swap: None })
    }
}

/// `M ⊠ N = K ⊗_{A⊗A} (P_M ⊗ P_N)` with the left action of `K`.
#[derive(Clone, Debug)]
pub struct BoxProduct<F: Field> {
    pub module: DgModule<F>,
    pub product: SemifreeModule<F>,
    /// `(g, h)` for each generator of `product`.
    pub pairs: Vec<(usize, usize)>,
    pub left: SemifreeModule<F>,
    pub right: SemifreeModule<F>,
}

/// The left semifree `A ⊗ A`-module `P ⊗ Q` on generators `g ⊗ h`.
pub fn product_semifree<F: Field>(alg: &DgAlgebra<F>, p: &SemifreeModule<F>, q: &SemifreeModule<F>) -> (SemifreeModule<F>, Vec<(usize, usize)>) {
    let stage_of = |s: &SemifreeModule<F>, g: usize| s.stages().partition_point(|&c| c <= g);
    let mut pairs: Vec<(usize, usize)> = (0..p.len()).flat_map(|g| (0..q.len()).map(move |h| (g, h))).collect();
    pairs.sort_by_key(|&(g, h)| (stage_of(p, g) + stage_of(q, h), g, h));
    let position: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let ad = alg.dims();
    let ni = alg.idempotents().len();
    let mut generators = Vec::with_capacity(pairs.len());
    let mut boundaries = Vec::with_capacity(pairs.len());
    let mut stages = Vec::new();
    for (idx, &(g, h)) in pairs.iter().enumerate() {
        let (gg, hh) = (p.generators()[g], q.generators()[h]);
        generators.push(Generator { degree: gg.degree + hh.degree, weight: gg.weight + hh.weight, idempotent: gg.idempotent * ni + hh.idempotent });
        let mut bd = Vec::new();
        for (g2, beta) in p.boundary(g) {
            let e = (gg.degree + 1 - p.generators()[*g2].degree) as usize;
            bd.push((position[&(*g2, h)], tensor_element(ad, ad, e, beta, 0, alg.unit())));
        }
        for (h2, gamma) in q.boundary(h) {
            let e = (hh.degree + 1 - q.generators()[*h2].degree) as usize;
            let s = F::sign(gg.degree) * F::sign(gg.degree * e as i64);
            let mut v = tensor_element(ad, ad, 0, alg.unit(), e, gamma);
            v.iter_mut().for_each(|x| *x *= s);
            bd.push((position[&(g, *h2)], v));
        }
        boundaries.push(bd);
        let st = stage_of(p, g) + stage_of(q, h);
        if idx + 1 == pairs.len() || {
            let (g3, h3) = pairs[idx + 1];
            stage_of(p, g3) + stage_of(q, h3) != st
        } {
            stages.push(idx + 1);
        }
    }
    (SemifreeModule::from_parts(generators, boundaries, stages), pairs)
}

/// `M ⊠ N` exact in weights `≤ window.hi`.
pub fn boxtimes<F: Field>(
    alg: &DgAlgebra<F>,
    kernel: &DgBimodule<F>,
    m: &DgModule<F>,
    n: &DgModule<F>,
    window: WeightWindow,
) -> Result<BoxProduct<F>, DgError> {
    require_side(m, Side::Left, "the first factor")?;
    require_side(n, Side::Left, "the second factor")?;
    require_untruncated_below(m, "the first factor")?;
    require_untruncated_below(n, "the second factor")?;
    let kmin = kernel.main.weight_range().map_or(0, |r| r.0);
    let mmin = m.weight_range().map_or(0, |r| r.0);
    let nmin = n.weight_range().map_or(0, |r| r.0);
    let reach = window.hi + window.margin - kmin;
    let rm = resolve_through(alg, m, reach - nmin)?;
    let rn = resolve_through(alg, n, reach - mmin)?;
    let (product, pairs) = product_semifree(alg, &rm.semifree, &rn.semifree);
    let aa = alg.tensor(alg);
    let residual = ResidualAction { alg, action: &kernel.residual };
    let module = tensor_semifree(&aa, &kernel.main, Some(residual), &product);
    let exact = (exactness(m, rm.built_through) + nmin).min(exactness(n, rn.built_through) + mmin);
    let valid = tensor_valid(&kernel.main, product.min_weight(), exact);
    let module = check_window(module.with_valid(valid), window)?;
    Ok(BoxProduct { module, product, pairs, left: rm.semifree, right: rn.semifree })
}

/// `Hom_A(K, R)` as a left `A ⊗ A`-module, `(u f)(x) = (-1)^{|u|(|f|+|x|)} f(x u)`.
fn strict_dual<F: Field>(alg: &DgAlgebra<F>, kernel: &DgBimodule<F>, r: &DgModule<F>) -> Result<DgModule<F>, DgError> {
    let k = &kernel.main;
    let aa = alg.tensor(alg);
    let (kmin, kmax) = k.weight_range().unwrap_or((0, -1));
    let (rmin, rmax) = r.weight_range().unwrap_or((0, -1));
    let t_lo = r.lo() - k.hi();
    let t_hi = r.hi() - k.lo();
    // coordinates of the ambient space of degree-t maps: (x in K^i, v in R^{i+t})
    let ambient = |t: i64| -> Vec<(i64, usize, usize)> {
        k.degrees().flat_map(|i| (0..k.dim(i)).flat_map(move |x| (0..r.dim(i + t)).map(move |v| (i, x, v)))).collect()
    };
    let mut spaces: Vec<Vec<(i64, Vec<F>)>> = Vec::new(); // per degree: (weight, map in ambient coords)
    let mut ambients = Vec::new();
    for t in t_lo..=t_hi {
        let amb = ambient(t);
        let mut list = Vec::new();
        for w in (rmin - kmax)..=(rmax - kmin) {
            let cols: Vec<usize> = amb.iter().enumerate().filter(|(_, &(i, x, v))| r.weights_at(i + t)[v] - k.weights_at(i)[x] == w).map(|(c, _)| c).collect();
            if cols.is_empty() {
                continue;
            }
            // f(a x) - (-1)^{t|a|} a f(x) = 0
            let mut rows: Vec<Vec<F>> = Vec::new();
            for i in k.degrees() {
                for s in 0..alg.dims().len() {
                    for b in 0..alg.dims()[s] {
                        let ka = kernel.residual.action_basis(i, s, b);
                        let ra = r.module().action_basis(i + t, s, b);
                        for x in 0..k.dim(i) {
                            let ax = ka.column(x);
                            for out in 0..r.dim(i + s as i64 + t) {
                                let mut row = vec![F::zero(); cols.len()];
                                let mut any = false;
                                for (ci, &c) in cols.iter().enumerate() {
                                    let (ii, xx, vv) = amb[c];
                                    let mut val = F::zero();
                                    if ii == i + s as i64 && !ax[xx].is_zero() && vv == out {
                                        val += ax[xx];
                                    }
                                    if ii == i && xx == x {
                                        val -= F::sign(t * s as i64) * ra[(out, vv)];
                                    }
                                    if !val.is_zero() {
                                        any = true;
                                    }
                                    row[ci] = val;
                                }
                                if any {
                                    rows.push(row);
                                }
                            }
                        }
                    }
                }
            }
            let system = if rows.is_empty() { Matrix::zeros(0, cols.len()) } else { Matrix::from_rows(rows)? };
            for sol in system.kernel_basis() {
                let mut f = vec![F::zero(); amb.len()];
                for (ci, &c) in cols.iter().enumerate() {
                    f[c] = sol[ci];
                }
                list.push((w, f));
            }
        }
        spaces.push(list);
        ambients.push(amb);
    }
    let lo = t_lo;
    let dims: Vec<usize> = spaces.iter().map(Vec::len).collect();
    let at = |t: i64| -> Option<usize> { (t >= t_lo && t <= t_hi).then(|| (t - t_lo) as usize) };
    let coords = |t: i64, f: &[F]| -> Vec<F> {
        let Some(ti) = at(t) else { return Vec::new() };
        let basis: Vec<Vec<F>> = spaces[ti].iter().map(|x| x.1.clone()).collect();
        let m = Matrix::from_columns(ambients[ti].len(), &basis).expect("column length");
        m.solve(f).expect("shape").expect("image lies in the A-linear maps")
    };
    // evaluate f (degree t, ambient coords) on x ∈ K^i, giving R^{i+t}
    let eval = |t: i64, f: &[F], i: i64, x: &[F]| -> Vec<F> {
        let ti = at(t).expect("degree in range");
        let mut out = vec![F::zero(); r.dim(i + t)];
        for (c, &(ii, xx, vv)) in ambients[ti].iter().enumerate() {
            if ii == i && !f[c].is_zero() && !x[xx].is_zero() {
                out[vv] += f[c] * x[xx];
            }
        }
        out
    };
    let embed = |t: i64, g: &dyn Fn(i64, usize) -> Vec<F>| -> Vec<F> {
        let Some(ti) = at(t) else { return Vec::new() };
        let mut f = vec![F::zero(); ambients[ti].len()];
        for (c, &(ii, xx, vv)) in ambients[ti].iter().enumerate() {
            f[c] = g(ii, xx)[vv];
        }
        f
    };
    let module = GradedModule::from_action(Side::Left, lo, dims.clone(), aa.graded(), |t, s, b, idx| {
        let f = &spaces[(t - lo) as usize][idx].1;
        let g = embed(t + s as i64, &|i, x| {
            let xu = k.module().action_basis(i, s, b).column(x);
            let v = eval(t, f, i + s as i64, &xu);
            let sgn = F::sign(s as i64 * (t + i));
            v.into_iter().map(|y| y * sgn).collect()
        });
        if g.is_empty() { g } else { coords(t + s as i64, &g) }
    });
    let weights = spaces.iter().map(|l| l.iter().map(|x| x.0).collect()).collect();
    let diff = (t_lo..=t_hi)
        .map(|t| {
            let rows = dims.get((t + 1 - lo) as usize).copied().unwrap_or(0);
            let cols: Vec<Vec<F>> = spaces[(t - lo) as usize]
                .iter()
                .map(|(_, f)| {
                    if rows == 0 {
                        return Vec::new();
                    }
                    let g = embed(t + 1, &|i, x| r.diff_at(i + t).apply(&eval(t, f, i, &unit_vector(k.dim(i), x))));
                    coords(t + 1, &g)
                })
                .collect();
            Matrix::from_columns(rows, &cols).expect("column length")
        })
        .collect();
    DgModule::new(module, weights, diff)
}

/// The left adjoint pieces of `Y` over `A ⊗ A`: slot two as the main action, slot one residual.
fn split_slots<F: Field>(alg: &DgAlgebra<F>, y: &DgModule<F>) -> (DgModule<F>, GradedModule<F>) {
    let ad = alg.dims();
    let graded = alg.graded();
    let slot = |first: bool| {
        GradedModule::from_action(Side::Left, y.lo(), y.module().dims().to_vec(), graded, |deg, s, b, x| {
            let e = graded.basis(s, b);
            let u = if first { tensor_element(ad, ad, s, &e, 0, alg.unit()) } else { tensor_element(ad, ad, 0, alg.unit(), s, &e) };
            y.module().action_by(deg, s, &u).column(x)
        })
    };
    let main = DgModule::new(slot(false), y.degrees().map(|d| y.weights_at(d).to_vec()).collect(), y.degrees().map(|d| y.diff_at(d)).collect())
        .expect("restriction keeps the shape");
    (main, slot(true))
}

/// `Hom^⊠(N, R) = Hom_A(P_N, Hom_A(K, R))`, exact in weights `≥ window.lo`.
pub fn hom_boxtimes<F: Field>(
    alg: &DgAlgebra<F>,
    kernel: &DgBimodule<F>,
    n: &DgModule<F>,
    r: &DgModule<F>,
    window: WeightWindow,
) -> Result<DgModule<F>, DgError> {
    require_side(n, Side::Left, "the source")?;
    require_side(r, Side::Left, "the target")?;
    require_untruncated_below(n, "the source")?;
    if r.valid() != ValidWeights::ALL {
        return Err(DgError::StructureMismatch("the target must be exact in every weight".into()));
    }
    let y = strict_dual(alg, kernel, r)?;
    let (main, residual) = split_slots(alg, &y);
    derived_hom_with_residual(alg, n, &main, Some(ResidualAction { alg, action: &residual }), window)
}

/// Both sides of `Hom(M ⊠ N, R) ≅ Hom(M, Hom^⊠(N, R))` on a weight window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub window: (i64, i64),
    pub lhs: Bigraded,
    pub rhs: Bigraded,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn adjunction_check<F: Field>(
    alg: &DgAlgebra<F>,
    kernel: &DgBimodule<F>,
    m: &DgModule<F>,
    n: &DgModule<F>,
    r: &DgModule<F>,
    window: WeightWindow,
) -> Result<AdjunctionReport, DgError> {
    let margin = window.margin;
    let rmax = r.weight_range().map_or(0, |w| w.1);
    let mmin = m.weight_range().map_or(0, |w| w.0);
    let nmin = n.weight_range().map_or(0, |w| w.0);
    let box_hi = rmax - window.lo + 2 * margin;
    let bx = boxtimes(alg, kernel, m, n, WeightWindow::with_margin(mmin + nmin, box_hi.max(mmin + nmin), margin)?)?;
    let lhs = derived_hom(alg, &bx.module, r, window)?;
    let inner = hom_boxtimes(alg, kernel, n, r, WeightWindow::with_margin(window.lo + mmin - margin, window.hi + mmin, margin)?)?;
    let rhs = derived_hom(alg, m, &inner, window)?;
    Ok(AdjunctionReport { window: (window.lo, window.hi), lhs: lhs.cohomology().restrict(window.lo, window.hi), rhs: rhs.cohomology().restrict(window.lo, window.hi) })
}

/// The swap `x ⊗ y ↦ (-1)^{|x||y|} y ⊗ x` between `M ⊗_k N` and `N ⊗_k M`.
#[derive(Clone, Debug)]
pub struct KoszulSwap<F: Field> {
    pub lo: i64,
    pub blocks: Vec<Matrix<F>>,
    pub chain_map: bool,
    pub involution: bool,
}

struct KTensor {
    lo: i64,
    // per total degree: (deg of first, offset)
    parts: Vec<Vec<(i64, usize)>>,
    dims: Vec<usize>,
}

impl KTensor {
    fn new<F: Field>(m: &DgModule<F>, n: &DgModule<F>) -> Self {
        let lo = m.lo() + n.lo();
        let hi = m.hi() + n.hi();
        let mut parts = Vec::new();
        let mut dims = Vec::new();
        for t in lo..=hi {
            let mut off = 0;
            let mut list = Vec::new();
            for i in m.degrees() {
                list.push((i, off));
                off += m.dim(i) * n.dim(t - i);
            }
            parts.push(list);
            dims.push(off);
        }
        KTensor { lo, parts, dims }
    }

    fn index<F: Field>(&self, n: &DgModule<F>, t: i64, i: i64, x: usize, y: usize) -> usize {
        let (_, off) = self.parts[(t - self.lo) as usize].iter().find(|p| p.0 == i).copied().expect("degree present");
        off + x * n.dim(t - i) + y
    }

    fn dim(&self, t: i64) -> usize {
        if t < self.lo || t >= self.lo + self.dims.len() as i64 { 0 } else { self.dims[(t - self.lo) as usize] }
    }

    fn diff<F: Field>(&self, m: &DgModule<F>, n: &DgModule<F>, t: i64) -> Matrix<F> {
        let mut out = Matrix::zeros(self.dim(t + 1), self.dim(t));
        for i in m.degrees() {
            let j = t - i;
            let (dm, dn) = (m.diff_at(i), n.diff_at(j));
            for x in 0..m.dim(i) {
                for y in 0..n.dim(j) {
                    let col = self.index(n, t, i, x, y);
                    for x2 in 0..m.dim(i + 1) {
                        let c = dm[(x2, x)];
                        if !c.is_zero() {
                            out[(self.index(n, t + 1, i + 1, x2, y), col)] += c;
                        }
                    }
                    for y2 in 0..n.dim(j + 1) {
                        let c = dn[(y2, y)];
                        if !c.is_zero() {
                            out[(self.index(n, t + 1, i, x, y2), col)] += F::sign(i) * c;
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn koszul_swap<F: Field>(m: &DgModule<F>, n: &DgModule<F>) -> KoszulSwap<F> {
    let mn = KTensor::new(m, n);
    let nm = KTensor::new(n, m);
    let swap = |a: &DgModule<F>, b: &DgModule<F>, ab: &KTensor, ba: &KTensor, t: i64| {
        let mut out = Matrix::zeros(ba.dim(t), ab.dim(t));
        for i in a.degrees() {
            for x in 0..a.dim(i) {
                for y in 0..b.dim(t - i) {
                    out[(ba.index(a, t, t - i, y, x), ab.index(b, t, i, x, y))] = F::sign(i * (t - i));
                }
            }
        }
        out
    };
    let degrees: Vec<i64> = (mn.lo..mn.lo + mn.dims.len() as i64).collect();
    let blocks: Vec<Matrix<F>> = degrees.iter().map(|&t| swap(m, n, &mn, &nm, t)).collect();
    let chain_map = degrees.iter().all(|&t| {
        let next = if t + 1 < mn.lo + mn.dims.len() as i64 { swap(m, n, &mn, &nm, t + 1) } else { Matrix::zeros(nm.dim(t + 1), mn.dim(t + 1)) };
        &next * &mn.diff(m, n, t) == &nm.diff(n, m, t) * &blocks[(t - mn.lo) as usize]
    });
    let involution = degrees.iter().all(|&t| (&swap(n, m, &nm, &mn, t) * &blocks[(t - mn.lo) as usize]) == Matrix::identity(mn.dim(t)));
    KoszulSwap { lo: mn.lo, blocks, chain_map, involution }
}

/// Outcome of descending the kernel swap to `M ⊠ M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReport {
    pub commutes_with_left: bool,
    pub chain_map: bool,
    pub involution: bool,
    pub intertwines_residual: bool,
}

impl DescentReport {
    pub fn descends(&self) -> bool {
        self.commutes_with_left && self.chain_map && self.involution && self.intertwines_residual
    }
}

/// Checks `ς(x (a ⊗ b)) = (-1)^{|a||b|} ς(x) (b ⊗ a)` on basis elements, then that
/// `x ⊗ (g, h) ↦ (-1)^{|g||h|} ς(x) ⊗ (h, g)` is an involutive chain map on `M ⊠ M`.
pub fn swap_descent<F: Field>(
    alg: &DgAlgebra<F>,
    kernel: &DgBimodule<F>,
    swap: &GradedMap<F>,
    m: &DgModule<F>,
    window: WeightWindow,
) -> Result<DescentReport, DgError> {
    let k = &kernel.main;
    let ad = alg.dims().to_vec();
    let graded = alg.graded();
    let sw = |deg: i64| swap.block(deg, k.module(), k.module());
    for deg in k.degrees() {
        for i in 0..ad.len() {
            for j in 0..ad.len() {
                for a in 0..ad[i] {
                    for b in 0..ad[j] {
                        if i + j > 2 * alg.top() {
                            continue;
                        }
                        let ab = tensor_element(&ad, &ad, i, &graded.basis(i, a), j, &graded.basis(j, b));
                        let ba = tensor_element(&ad, &ad, j, &graded.basis(j, b), i, &graded.basis(i, a));
                        let act_ab = k.module().action_by(deg, i + j, &ab);
                        let act_ba = k.module().action_by(deg, i + j, &ba);
                        let lhs = &sw(deg + (i + j) as i64) * &act_ab;
                        let rhs = (&act_ba * &sw(deg)).scale(F::sign((i * j) as i64));
                        if lhs != rhs {
                            let x = (0..k.dim(deg)).find(|&x| lhs.column(x) != rhs.column(x)).unwrap_or(0);
                            return Err(DgError::Intertwining {
                                x: format!("basis {x} in degree {deg}"),
                                a: graded.label(i, a).to_string(),
                                b: graded.label(j, b).to_string(),
                            });
                        }
                    }
                }
            }
        }
    }
    let commutes_with_left = k.degrees().all(|deg| {
        (0..ad.len()).all(|s| {
            (0..ad[s]).all(|b| {
                let l = kernel.residual.action_basis(deg, s, b);
                &sw(deg + s as i64) * &l == &l * &sw(deg)
            })
        })
    });
    let bx = boxtimes(alg, kernel, m, m, window)?;
    let position: BTreeMap<(usize, usize), usize> = bx.pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let left_gens = bx.left.generators();
    let module = &bx.module;
    let aa = alg.tensor(alg);
    let layout = tensor_layout(&aa, k, &bx.product);
    let map_at = |t: i64| -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..layout.dim(t))
            .map(|idx| {
                let (blk, kk) = layout.locate(t, idx);
                let (g, h) = bx.pairs[blk.gen];
                let target = position[&(h, g)];
                let sgn = F::sign(left_gens[g].degree * left_gens[h].degree);
                let sx = sw(blk.inner).apply(blk.piece.vector(kk));
                let mut out = vec![F::zero(); layout.dim(t)];
                layout.add_embedded(&mut out, t, target, sgn, &sx);
                out
            })
            .collect();
        Matrix::from_columns(layout.dim(t), &cols).expect("column length")
    };
    let degrees: Vec<i64> = module.degrees().collect();
    let chain_map = degrees.iter().all(|&t| &map_at(t + 1) * &module.diff_at(t) == &module.diff_at(t) * &map_at(t));
    let involution = degrees.iter().all(|&t| &map_at(t) * &map_at(t) == Matrix::identity(module.dim(t)));
    let intertwines_residual = degrees.iter().all(|&t| {
        (0..ad.len()).all(|s| (0..ad[s]).all(|b| &map_at(t + s as i64) * &module.module().action_basis(t, s, b) == &module.module().action_basis(t, s, b) * &map_at(t)))
    });
    Ok(DescentReport { commutes_with_left, chain_map, involution, intertwines_residual })
}
