//! The graded duality `Δ_gr`, the bimodule `B* = Δ_gr(E*)` with its two right actions, the
//! swap `ς*`, the bimodules `E*(n)` and the isomorphism search behind the main duality.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graded::{combine, hom_space, GradedAlgebra, GradedAntiInvolution, GradedMap, GradedModule, Side};
use super::model::CrossedModel;
use super::YonedaError;
use crate::exactla::{dot, unit_vector, Matrix};
use crate::field::Field;

/// `Δ_gr(M)`: `(Δ M)^i = (M^{d-i})*` with `(f τ)(e) = (-1)^{|τ||e|} f(e · σ(τ))`.
///
/// `window`, if given, must contain every degree of the result.
pub fn delta_gr<F: Field>(
    alg: &GradedAlgebra<F>,
    sigma: &GradedAntiInvolution<F>,
    d: i64,
    m: &GradedModule<F>,
    window: Option<(i64, i64)>,
) -> Result<GradedModule<F>, YonedaError> {
    if m.side() != Side::Right {
        return Err(YonedaError::NotAModule("the graded dual takes right modules".into()));
    }
    let (lo, hi) = (d - m.hi(), d - m.lo());
    if let Some((wlo, whi)) = window {
        if lo < wlo || hi > whi {
            return Err(YonedaError::WindowTooSmall { lo: wlo, hi: whi, need_lo: lo, need_hi: hi });
        }
    }
    let dims: Vec<usize> = (lo..=hi).map(|i| m.dim(d - i)).collect();
    Ok(GradedModule::from_action(Side::Right, lo, dims, alg, |i, s, b, f| {
        let e_deg = d - i - s as i64;
        let st = sigma.apply(s, &alg.basis(s, b));
        let r = m.action_by(e_deg, s, &st);
        let sign = F::sign(s as i64 * e_deg);
        // (f τ)_k = sign Σ_j f_j r[j, k]
        (0..m.dim(e_deg)).map(|k| sign * r[(f, k)]).collect()
    }))
}

/// `Δ_gr(f): Δ N → Δ M` for a degree-zero map `f: M → N`, blockwise transpose.
pub fn delta_gr_map<F: Field>(f: &GradedMap<F>, m: &GradedModule<F>, n: &GradedModule<F>, d: i64) -> Result<GradedMap<F>, YonedaError> {
    if f.degree != 0 {
        return Err(YonedaError::DegreeMismatch("the dual of a map is taken for degree-zero maps".into()));
    }
    let (lo, hi) = (d - n.hi(), d - n.lo());
    let blocks = (lo..=hi).map(|i| f.block(d - i, m, n).transpose()).collect();
    Ok(GradedMap { degree: 0, src_lo: lo, blocks })
}

/// Whether `0 → A → B → C → 0` is exact in every degree.
pub fn is_short_exact<F: Field>(
    f: &GradedMap<F>,
    g: &GradedMap<F>,
    a: &GradedModule<F>,
    b: &GradedModule<F>,
    c: &GradedModule<F>,
) -> bool {
    let lo = a.lo().min(b.lo()).min(c.lo());
    let hi = a.hi().max(b.hi()).max(c.hi());
    (lo..=hi).all(|deg| {
        let (fm, gm) = (f.block(deg, a, b), g.block(deg, b, c));
        let composite_zero = (&gm * &fm).is_zero();
        fm.rank() == a.dim(deg) && gm.rank() == c.dim(deg) && composite_zero && fm.rank() + gm.rank() == b.dim(deg)
    })
}

/// `B* = Δ_gr(E*)` with action #1 (the dual action) and action #2, `(f ·₂ τ)(e) = f(τ e)`.
#[derive(Clone, Debug)]
pub struct Bimodule<F: Field> {
    pub d: i64,
    pub first: GradedModule<F>,
    pub second: GradedModule<F>,
    pub sigma: GradedAntiInvolution<F>,
}

impl<F: Field> Bimodule<F> {
    pub fn new(alg: &GradedAlgebra<F>, sigma: &GradedAntiInvolution<F>, d: i64) -> Result<Self, YonedaError> {
        let e = GradedModule::regular_right(alg);
        let first = delta_gr(alg, sigma, d, &e, None)?;
        let second = GradedModule::from_action(Side::Right, first.lo(), first.dims().to_vec(), alg, |i, s, b, f| {
            let e_deg = (d - i - s as i64) as usize;
            let l = alg.left_basis(s, b, e_deg);
            (0..alg.dims()[e_deg]).map(|k| l[(f, k)]).collect()
        });
        Ok(Bimodule { d, first, second, sigma: sigma.clone() })
    }

    pub fn from_model(model: &CrossedModel<F>) -> Result<Self, YonedaError> {
        Self::new(&model.e_algebra(), &model.twisted_anti_involution()?, model.d() as i64)
    }

    /// `⟨f, e⟩` for `f ∈ B^i`, `e ∈ E^{d-i}`; evaluation in the dual basis, so the dual of the
    /// top monomial pairs to 1 with it.
    pub fn pairing(&self, i: i64, f: &[F], e_deg: i64, e: &[F]) -> Result<F, YonedaError> {
        if i + e_deg != self.d {
            return Err(YonedaError::DegreeMismatch(format!("pairing B^{i} with E^{e_deg}")));
        }
        if f.len() != e.len() {
            return Err(crate::exactla::LinAlgError::DimensionMismatch { expected: f.len(), found: e.len() }.into());
        }
        Ok(dot(f, e))
    }

    /// Gram matrix of the pairing `B^i × E^{d-i}` in the standard bases.
    pub fn gram(&self, i: i64) -> Matrix<F> {
        let n = self.first.dim(i);
        Matrix::from_fn(n, n, |r, c| self.pairing(i, &unit_vector(n, r), self.d - i, &unit_vector(n, c)).expect("complementary degrees"))
    }

    /// `ς* f = f ∘ σ`, the pairing adjoint of `σ`.
    pub fn swap(&self) -> GradedMap<F> {
        let blocks = self.first.degrees().map(|i| self.sigma.blocks[(self.d - i) as usize].transpose()).collect();
        GradedMap { degree: 0, src_lo: self.first.lo(), blocks }
    }
}

/// Largest `dim E*(n)` accepted.
pub const EXT_N_LIMIT: usize = 4096;

/// `E*(n) = Λ ⊗ k[C^n]` with the diagonal left action and one right action per slot.
#[derive(Clone, Debug)]
pub struct ExtN<F: Field> {
    pub n: usize,
    pub left: GradedModule<F>,
    pub rights: Vec<GradedModule<F>>,
    c_order: usize,
}

impl<F: Field> ExtN<F> {
    pub fn new(model: &CrossedModel<F>, n: usize) -> Result<Self, YonedaError> {
        let c = model.c_group();
        let k = c.order();
        let tuples = k.checked_pow(n as u32).ok_or(YonedaError::SizeOverflow { size: usize::MAX, limit: EXT_N_LIMIT })?;
        let ld = model.lambda_dims();
        let size = tuples.saturating_mul(1 << model.d());
        if size > EXT_N_LIMIT {
            return Err(YonedaError::SizeOverflow { size, limit: EXT_N_LIMIT });
        }
        let alg = model.e_algebra();
        let dims: Vec<usize> = ld.iter().map(|&x| x * tuples).collect();
        let decode = |t: usize| -> Vec<usize> { (0..n).map(|j| (t / k.pow(j as u32)) % k).collect() };
        let encode = |v: &[usize]| -> usize { v.iter().enumerate().map(|(j, &x)| x * k.pow(j as u32)).sum() };
        let place = |deg: usize, lam: &[F], tuple: usize| -> Vec<F> {
            let mut out = vec![F::zero(); ld[deg] * tuples];
            for (m, &x) in lam.iter().enumerate() {
                out[m * tuples + tuple] += x;
            }
            out
        };
        // (μ ⊗ c)(λ ⊗ (c_i)) = (μ ∧ cλ) ⊗ (c c_i)
        let left = GradedModule::from_action(Side::Left, 0, dims.clone(), &alg, |deg, s, b, x| {
            let deg = deg as usize;
            let (mu, cc) = model.e_split(b);
            let (lam, t) = (x / tuples, x % tuples);
            let moved = model.lambda_action(cc, deg).column(lam);
            let w = model.wedge(s, &unit_vector(ld[s], mu), deg, &moved);
            let new: Vec<usize> = decode(t).iter().map(|&ci| c.mul(cc, ci)).collect();
            place(deg + s, &w, encode(&new))
        });
        // (λ ⊗ (c_i)) ·_j (μ ⊗ c) = (λ ∧ c_j μ) ⊗ (…, c_j c, …)
        let rights = (0..n)
            .map(|j| {
                GradedModule::from_action(Side::Right, 0, dims.clone(), &alg, |deg, s, b, x| {
                    let deg = deg as usize;
                    let (mu, cc) = model.e_split(b);
                    let (lam, t) = (x / tuples, x % tuples);
                    let mut tuple = decode(t);
                    let moved = model.lambda_action(tuple[j], s).column(mu);
                    let w = model.wedge(deg, &unit_vector(ld[deg], lam), s, &moved);
                    tuple[j] = c.mul(tuple[j], cc);
                    place(deg + s, &w, encode(&tuple))
                })
            })
            .collect();
        Ok(ExtN { n, left, rights, c_order: k })
    }

    pub fn dims(&self) -> &[usize] {
        self.left.dims()
    }

    /// The slot swap `ς_*` on `E*(2)`.
    pub fn slot_swap(&self) -> Result<GradedMap<F>, YonedaError> {
        if self.n != 2 {
            return Err(YonedaError::DegreeMismatch(format!("slot swap needs n = 2, got {}", self.n)));
        }
        let k = self.c_order;
        let tuples = k * k;
        let blocks = self
            .left
            .degrees()
            .map(|deg| {
                let n = self.left.dim(deg);
                Matrix::from_fn(n, n, |r, c| {
                    let (lam, t) = (c / tuples, c % tuples);
                    let swapped = (t % k) * k + t / k;
                    if r == lam * tuples + swapped { F::one() } else { F::zero() }
                })
            })
            .collect();
        Ok(GradedMap { degree: 0, src_lo: 0, blocks })
    }
}

/// How an isomorphism was searched for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoSearch {
    /// Every element of the solution space was examined.
    Exhaustive { candidates: u64 },
    /// Uniform samples from a seeded generator.
    Sampled { samples: usize, seed: u64 },
}

/// Result of the main-duality check.
#[derive(Clone, Debug)]
pub enum MaindualReport<F: Field> {
    Iso { map: GradedMap<F>, search: IsoSearch, solution_dim: usize },
    /// Certified: the graded dimensions disagree.
    DimensionMismatch { degree: i64, dual: usize, expected: usize },
    /// Certified when the search was exhaustive, inconclusive when sampled.
    NotFound { search: IsoSearch, solution_dim: usize },
}

impl<F: Field> MaindualReport<F> {
    pub fn is_iso(&self) -> bool {
        matches!(self, MaindualReport::Iso { .. })
    }
}

/// Exhaustive search bound on the size of the solution space.
pub const EXHAUSTIVE_LIMIT: u64 = 531_441;
/// Number of samples drawn beyond that bound.
pub const SAMPLES: usize = 10_000;

fn is_iso<F: Field>(f: &GradedMap<F>) -> bool {
    f.blocks.iter().all(|b| b.is_square() && b.is_invertible())
}

/// Searches for a degree-zero `E*`-linear isomorphism `mdual → Δ_gr(m)`.
pub fn check_maindual<F: Field>(
    alg: &GradedAlgebra<F>,
    sigma: &GradedAntiInvolution<F>,
    d: i64,
    m: &GradedModule<F>,
    mdual: &GradedModule<F>,
    seed: u64,
) -> Result<MaindualReport<F>, YonedaError> {
    let target = delta_gr(alg, sigma, d, m, None)?;
    let lo = target.lo().min(mdual.lo());
    let hi = target.hi().max(mdual.hi());
    for deg in lo..=hi {
        if target.dim(deg) != mdual.dim(deg) {
            return Ok(MaindualReport::DimensionMismatch { degree: deg, dual: mdual.dim(deg), expected: target.dim(deg) });
        }
    }
    let basis = hom_space(mdual, &target, 0);
    let k = basis.len();
    let p = F::ORDER as u64;
    let space = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(p));
    match space {
        Some(total) if total <= EXHAUSTIVE_LIMIT => {
            let elements = F::elements();
            let mut digits = vec![0usize; k];
            for _ in 0..total {
                let coeffs: Vec<F> = digits.iter().map(|&x| elements[x]).collect();
                let candidate = combine(&basis, &coeffs).unwrap_or_else(|| GradedMap::zero(mdual, &target, 0));
                if is_iso(&candidate) {
                    return Ok(MaindualReport::Iso { map: candidate, search: IsoSearch::Exhaustive { candidates: total }, solution_dim: k });
                }
                for x in digits.iter_mut() {
                    *x += 1;
                    if *x < elements.len() {
                        break;
                    }
                    *x = 0;
                }
            }
            Ok(MaindualReport::NotFound { search: IsoSearch::Exhaustive { candidates: total }, solution_dim: k })
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLES {
                let coeffs: Vec<F> = (0..k).map(|_| F::from_i64(rng.gen_range(0..p) as i64)).collect();
                let candidate = combine(&basis, &coeffs).expect("nonempty basis");
                if is_iso(&candidate) {
                    return Ok(MaindualReport::Iso { map: candidate, search: IsoSearch::Sampled { samples: SAMPLES, seed }, solution_dim: k });
                }
            }
            Ok(MaindualReport::NotFound { search: IsoSearch::Sampled { samples: SAMPLES, seed }, solution_dim: k })
        }
    }
}

/// Whether every degree-`t` map `A → N` extends along the monomorphism `iota: A → B`.
pub fn extends_along<F: Field>(iota: &GradedMap<F>, a: &GradedModule<F>, b: &GradedModule<F>, n: &GradedModule<F>, t: i64) -> bool {
    let from_b = hom_space(b, n, t);
    let from_a = hom_space(a, n, t);
    let restricted: Vec<Vec<F>> = from_b.iter().map(|f| super::graded::flatten(&iota.then(f, a, b, n).blocks)).collect();
    let rank = if restricted.is_empty() || restricted[0].is_empty() {
        0
    } else {
        Matrix::from_rows(restricted).expect("same width").rank()
    };
    rank == from_a.len()
}
