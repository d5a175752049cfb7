//! The crossed-product model: `U = Z_p^d`, `G = U ⋊ C`, `H*(U, k) = Λ(y_1, …, y_d)` and
//! `E* = Λ(d) ⋊ C`.

use std::fmt;

use super::graded::{GradedAlgebra, GradedAntiInvolution, GradedModule, Side};
use super::YonedaError;
use crate::exactla::Matrix;
use crate::field::Field;
use crate::smoothrep::group::semidirect;
use crate::smoothrep::{FinGroupDatum, HeckeAlgebra};

/// Sign of `y_S ∧ y_T` as a monomial, or `None` when they share a generator.
pub fn monomial_wedge_sign(s: u32, t: u32) -> Option<i64> {
    if s & t != 0 {
        return None;
    }
    let mut inversions = 0;
    for a in 0..32 {
        if s & (1 << a) != 0 {
            inversions += (t & ((1u32 << a) - 1)).count_ones() as i64;
        }
    }
    Some(inversions)
}

/// Degree signs tried when normalizing the anti-involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignPattern {
    Plus,
    /// `(-1)^{i(i-1)/2}`
    TriangularBelow,
    /// `(-1)^i`
    Alternating,
    /// `(-1)^{i(i+1)/2}`
    TriangularAbove,
}

impl SignPattern {
    pub const ALL: [SignPattern; 4] = [SignPattern::Plus, SignPattern::TriangularBelow, SignPattern::Alternating, SignPattern::TriangularAbove];

    pub fn exponent(self, i: usize) -> i64 {
        let i = i as i64;
        match self {
            SignPattern::Plus => 0,
            SignPattern::TriangularBelow => i * (i - 1) / 2,
            SignPattern::Alternating => i,
            SignPattern::TriangularAbove => i * (i + 1) / 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            SignPattern::Plus => "+1",
            SignPattern::TriangularBelow => "(-1)^(i(i-1)/2)",
            SignPattern::Alternating => "(-1)^i",
            SignPattern::TriangularAbove => "(-1)^(i(i+1)/2)",
        }
    }
}

/// The chosen form `J(λ ⊗ c) = ε(i) (c^e · λ) ⊗ c^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub exponent: i8,
    pub pattern: SignPattern,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let acting = if self.exponent > 0 { "c" } else { "c^-1" };
        write!(f, "J(l*c) = eps(i) ({acting} . l) * c^-1, eps = {}", self.pattern.name())
    }
}

/// Outcome of the degree-zero comparison with the Hecke algebra of `(Z/p)^d ⋊ C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeckeComparison {
    pub products_match: bool,
    pub involution_match: bool,
}

/// `(p, d, C, B_c)`: `c` acts on `U = Z_p^d` by `B_c` and on `H^1(U, k)` by the contragredient.
#[derive(Clone, Debug)]
pub struct CrossedModel<F: Field> {
    d: usize,
    c: FinGroupDatum,
    config: Vec<Matrix<F>>,
    on_h1: Vec<Matrix<F>>,
    // subsets[i]: bitmasks of the degree-i monomials in increasing order
    subsets: Vec<Vec<u32>>,
    // on_lambda[c][i]: action of c on Λ^i
    on_lambda: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> CrossedModel<F> {
    pub fn new(d: usize, c: FinGroupDatum, config: Vec<Matrix<F>>) -> Result<Self, YonedaError> {
        if d == 0 || d > 8 {
            return Err(YonedaError::InvalidModel(format!("dimension {d} outside 1..=8")));
        }
        if config.len() != c.order() {
            return Err(YonedaError::InvalidModel("one action matrix per element of C is required".into()));
        }
        let mut on_h1 = Vec::with_capacity(config.len());
        for (x, m) in config.iter().enumerate() {
            if m.rows() != d || m.cols() != d {
                return Err(YonedaError::InvalidModel(format!("action matrix of {x} is not {d} x {d}")));
            }
            let inv = m.inverse().ok_or_else(|| YonedaError::InvalidModel(format!("action matrix of {x} is singular")))?;
            on_h1.push(inv.transpose());
        }
        for a in c.elements() {
            for b in c.elements() {
                if &config[a] * &config[b] != config[c.mul(a, b)] {
                    return Err(YonedaError::InvalidModel(format!("action is not multiplicative at ({a}, {b})")));
                }
            }
        }
        let mut subsets = vec![Vec::new(); d + 1];
        for mask in 0u32..(1 << d) {
            subsets[mask.count_ones() as usize].push(mask);
        }
        for s in &mut subsets {
            s.sort_by_key(|&m| (0..d).filter(|&i| m & (1 << i) != 0).collect::<Vec<_>>());
        }
        let mut model = CrossedModel { d, c, config, on_h1, subsets, on_lambda: Vec::new() };
        model.on_lambda = model.c.elements().map(|x| (0..=d).map(|i| model.exterior_power(&model.on_h1[x], i)).collect()).collect();
        Ok(model)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> u32 {
        F::ORDER
    }

    pub fn c_group(&self) -> &FinGroupDatum {
        &self.c
    }

    pub fn config(&self) -> &[Matrix<F>] {
        &self.config
    }

    /// Action of `c` on `H^1(U, k)`.
    pub fn h1_action(&self, c: usize) -> &Matrix<F> {
        &self.on_h1[c]
    }

    /// Action of `c` on `Λ^i`.
    pub fn lambda_action(&self, c: usize, i: usize) -> &Matrix<F> {
        &self.on_lambda[c][i]
    }

    pub fn lambda_dims(&self) -> Vec<usize> {
        self.subsets.iter().map(Vec::len).collect()
    }

    pub fn monomial(&self, i: usize, k: usize) -> u32 {
        self.subsets[i][k]
    }

    pub fn monomial_index(&self, mask: u32) -> usize {
        let i = mask.count_ones() as usize;
        self.subsets[i].iter().position(|&m| m == mask).expect("mask of a monomial")
    }

    pub fn monomial_label(&self, mask: u32) -> String {
        if mask == 0 {
            return "1".into();
        }
        (0..self.d).filter(|&i| mask & (1 << i) != 0).map(|i| format!("y{}", i + 1)).collect::<String>()
    }

    /// `x ∧ y` for `x ∈ Λ^i`, `y ∈ Λ^j`.
    pub fn wedge(&self, i: usize, x: &[F], j: usize, y: &[F]) -> Vec<F> {
        if i + j > self.d {
            return Vec::new();
        }
        let mut out = vec![F::zero(); self.subsets[i + j].len()];
        for (a, &xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let (s, t) = (self.subsets[i][a], self.subsets[j][b]);
                if let Some(e) = monomial_wedge_sign(s, t) {
                    out[self.monomial_index(s | t)] += F::sign(e) * xa * yb;
                }
            }
        }
        out
    }

    fn exterior_power(&self, m: &Matrix<F>, i: usize) -> Matrix<F> {
        let cols: Vec<Vec<F>> = self.subsets[i]
            .iter()
            .map(|&mask| {
                let mut acc = vec![F::one()];
                for (deg, s) in (0..self.d).filter(|&s| mask & (1 << s) != 0).enumerate() {
                    acc = self.wedge(deg, &acc, 1, &m.column(s));
                }
                acc
            })
            .collect();
        Matrix::from_columns(self.subsets[i].len(), &cols).expect("exterior power shape")
    }

    /// `Λ(y_1, …, y_d)`.
    pub fn exterior_algebra(&self) -> GradedAlgebra<F> {
        let dims = self.lambda_dims();
        let labels = self.subsets.iter().map(|s| s.iter().map(|&m| self.monomial_label(m)).collect()).collect();
        GradedAlgebra::from_product(dims.clone(), labels, vec![F::one()], |i, a, j, b| {
            self.wedge(i, &crate::exactla::unit_vector(dims[i], a), j, &crate::exactla::unit_vector(dims[j], b))
        })
    }

    /// Index of `y_S ⊗ c` inside `E^{|S|}`.
    pub fn e_index(&self, monomial: usize, c: usize) -> usize {
        monomial * self.c.order() + c
    }

    /// Inverse of [`Self::e_index`].
    pub fn e_split(&self, idx: usize) -> (usize, usize) {
        (idx / self.c.order(), idx % self.c.order())
    }

    pub fn e_dims(&self) -> Vec<usize> {
        self.lambda_dims().iter().map(|&n| n * self.c.order()).collect()
    }

    /// `E* = Λ ⋊ C` with `(λ ⊗ c)(μ ⊗ c') = (λ ∧ c·μ) ⊗ cc'`.
    pub fn e_algebra(&self) -> GradedAlgebra<F> {
        let dims = self.e_dims();
        let labels = (0..=self.d)
            .map(|i| (0..dims[i]).map(|x| {
                let (m, c) = self.e_split(x);
                format!("{}.c{}", self.monomial_label(self.subsets[i][m]), c)
            }).collect())
            .collect();
        let mut unit = vec![F::zero(); dims[0]];
        unit[self.e_index(0, self.c.id())] = F::one();
        let ld = self.lambda_dims();
        GradedAlgebra::from_product(dims.clone(), labels, unit, |i, a, j, b| {
            let (m1, c1) = self.e_split(a);
            let (m2, c2) = self.e_split(b);
            let moved = self.on_lambda[c1][j].column(m2);
            let w = self.wedge(i, &crate::exactla::unit_vector(ld[i], m1), j, &moved);
            let mut out = vec![F::zero(); dims[i + j]];
            let cc = self.c.mul(c1, c2);
            for (k, &x) in w.iter().enumerate() {
                out[self.e_index(k, cc)] += x;
            }
            out
        })
    }

    /// `χ(c)`, the scalar by which `c` acts on `Λ^d`.
    pub fn duality_character(&self) -> Vec<F> {
        self.c.elements().map(|x| self.on_lambda[x][self.d][(0, 0)]).collect()
    }

    /// The candidate `λ ⊗ c ↦ ε(i) (c^e λ) ⊗ c^-1`, optionally scaled by `χ(c^-1)`.
    pub fn involution_candidate(&self, norm: Normalization, twisted: bool) -> GradedAntiInvolution<F> {
        let chi = self.duality_character();
        let dims = self.e_dims();
        let blocks = (0..=self.d)
            .map(|i| {
                let eps = F::sign(norm.pattern.exponent(i));
                let cols: Vec<Vec<F>> = (0..dims[i])
                    .map(|x| {
                        let (m, c) = self.e_split(x);
                        let ci = self.c.inv(c);
                        let acting = if norm.exponent > 0 { c } else { ci };
                        let scale = if twisted { eps * chi[ci] } else { eps };
                        let moved = self.on_lambda[acting][i].column(m);
                        let mut out = vec![F::zero(); dims[i]];
                        for (k, &v) in moved.iter().enumerate() {
                            out[self.e_index(k, ci)] += scale * v;
                        }
                        out
                    })
                    .collect();
                Matrix::from_columns(dims[i], &cols).expect("block shape")
            })
            .collect();
        GradedAntiInvolution { blocks }
    }

    /// First candidate, in a fixed order, that is an involution, reverses products with the
    /// Koszul sign, is `c ↦ c^-1` in degree 0 and the identity on `Λ ⊗ 1`.
    pub fn anti_involution(&self) -> Result<(GradedAntiInvolution<F>, Normalization), YonedaError> {
        let alg = self.e_algebra();
        let mut rejected = Vec::new();
        for exponent in [1i8, -1] {
            for pattern in SignPattern::ALL {
                let norm = Normalization { exponent, pattern };
                let j = self.involution_candidate(norm, false);
                let ok_inv = j.is_involution();
                let ok_anti = ok_inv && j.reverses_products(&alg, true);
                let ok_deg0 = ok_anti && self.c.elements().all(|c| {
                    let e = alg.basis(0, self.e_index(0, c));
                    j.apply(0, &e) == alg.basis(0, self.e_index(0, self.c.inv(c)))
                });
                let ok_lambda = ok_deg0 && (0..=self.d).all(|i| {
                    (0..self.subsets[i].len()).all(|m| {
                        let e = alg.basis(i, self.e_index(m, self.c.id()));
                        j.apply(i, &e) == e
                    })
                });
                if ok_lambda {
                    return Ok((j, norm));
                }
                rejected.push(format!("{norm}"));
            }
        }
        Err(YonedaError::NoNormalization(rejected.join("; ")))
    }

    /// `J ⊗ χ`: `J` multiplied by `χ(c^-1)` on the `c`-component.
    pub fn twisted_anti_involution(&self) -> Result<GradedAntiInvolution<F>, YonedaError> {
        let (_, norm) = self.anti_involution()?;
        Ok(self.involution_candidate(norm, true))
    }

    /// `H*(U, k) = Λ` as a right `E*`-module, `λ · (μ ⊗ c) = c^-1 (λ ∧ μ)`.
    pub fn cohomology_module(&self) -> GradedModule<F> {
        let alg = self.e_algebra();
        let ld = self.lambda_dims();
        GradedModule::from_action(Side::Right, 0, ld.clone(), &alg, |deg, s, b, m| {
            let (mu, c) = self.e_split(b);
            let i = deg as usize;
            let w = self.wedge(i, &crate::exactla::unit_vector(ld[i], m), s, &crate::exactla::unit_vector(ld[s], mu));
            self.on_lambda[self.c.inv(c)][i + s].apply(&w)
        })
    }

    /// The trivial module `k` in degree 0: `c` acts by 1, positive degrees by 0.
    pub fn trivial_module(&self) -> GradedModule<F> {
        let alg = self.e_algebra();
        let aug = vec![F::one(); self.c.order()];
        GradedModule::one_dimensional(Side::Right, 0, &alg, &aug)
    }

    /// Compares `E^0` and its involution with `H((Z/p)^d ⋊ C, (Z/p)^d)` and `J0`.
    pub fn compare_with_hecke(&self, j: &GradedAntiInvolution<F>) -> Result<HeckeComparison, YonedaError> {
        let g = semidirect(self.d, &self.c, &self.config)?;
        let hecke = HeckeAlgebra::<F>::new(&g);
        let vol = g.order() / self.c.order();
        let slot = |c: usize| hecke.index_of(c * vol);
        let alg = self.e_algebra();
        let to_hecke = |x: &[F]| -> Vec<F> {
            let mut out = vec![F::zero(); hecke.dim()];
            for c in self.c.elements() {
                out[slot(c)] += x[self.e_index(0, c)];
            }
            out
        };
        let mut products_match = hecke.dim() == self.c.order();
        let mut involution_match = products_match;
        for a in self.c.elements() {
            let ea = alg.basis(0, self.e_index(0, a));
            for b in self.c.elements() {
                let eb = alg.basis(0, self.e_index(0, b));
                let lhs = to_hecke(&alg.mul(0, &ea, 0, &eb));
                let rhs = hecke.mul(&hecke.basis(slot(a)), &hecke.basis(slot(b)));
                products_match &= lhs == rhs;
            }
            involution_match &= to_hecke(&j.apply(0, &ea)) == hecke.j0(&hecke.basis(slot(a)));
        }
        Ok(HeckeComparison { products_match, involution_match })
    }
}

/// The model with `C = Z/order` whose generator acts on `U` by `generator`.
pub fn cyclic_model<F: Field>(d: usize, order: usize, generator: &Matrix<F>) -> Result<CrossedModel<F>, YonedaError> {
    let mut powers = vec![Matrix::identity(d)];
    for k in 1..order {
        powers.push(&powers[k - 1] * generator);
    }
    if &powers[order - 1] * generator != Matrix::identity(d) {
        return Err(YonedaError::InvalidModel(format!("generator does not have order dividing {order}")));
    }
    CrossedModel::new(d, crate::smoothrep::group::cyclic(order, 0), powers)
}
