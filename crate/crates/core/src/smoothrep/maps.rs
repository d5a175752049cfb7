//! Degree-zero maps: the involutions `J` and `J'`, reciprocity, the refined pairing, the trace,
//! Shapiro and Frobenius maps, and the swap description of `J'` on `Hom_U(X_U, V)`.
//!
//! Maps are matrices of shape `target x source`. Elements of `ind V` use the coordinates of
//! [`InducedRep`].

use super::group::{left_cosets_in, FinGroupDatum};
use super::rep::{HomSpace, InducedRep, Rep};
use super::SmoothRepError;
use crate::exactla::{axpy, unit_vector, Matrix};
use crate::field::Field;

fn check_shape<F: Field>(m: &Matrix<F>, rows: usize, cols: usize) -> Result<(), SmoothRepError> {
    if m.rows() != rows {
        return Err(crate::exactla::LinAlgError::DimensionMismatch { expected: rows, found: m.rows() }.into());
    }
    if m.cols() != cols {
        return Err(crate::exactla::LinAlgError::DimensionMismatch { expected: cols, found: m.cols() }.into());
    }
    Ok(())
}

fn require_u_equivariant<F: Field>(
    m: &Matrix<F>,
    src: impl Fn(usize) -> Matrix<F>,
    tgt: impl Fn(usize) -> Matrix<F>,
    elements: &[usize],
    what: &str,
) -> Result<(), SmoothRepError> {
    for &u in elements {
        if &tgt(u) * m != m * &src(u) {
            return Err(SmoothRepError::NotEquivariant(format!("{what} fails at element {u}")));
        }
    }
    Ok(())
}

fn assemble<F: Field>(rows: usize, cols: Vec<Vec<F>>) -> Matrix<F> {
    Matrix::from_columns(rows, &cols).expect("columns have the declared length")
}

/// `J(α)(x)(g) = g^-1 α(g^-1 x)(g^-1)` on `Hom_U(src, ind W)`.
pub fn involution_j<F: Field>(src: &Rep<F>, ind: &InducedRep<F>, alpha: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
    check_shape(alpha, ind.dim(), src.dim())?;
    let group = ind.group();
    require_u_equivariant(alpha, |u| src.action(u).clone(), |u| ind.action(u).clone(), group.subgroup(), "J input")?;
    let n = ind.base_dim();
    let cols = (0..src.dim())
        .map(|j| {
            let mut out = vec![F::zero(); ind.dim()];
            for (i, &r) in ind.coset_reps().iter().enumerate() {
                let g_inv = group.inv(r);
                let x = src.action(g_inv).apply(&unit_vector(src.dim(), j));
                let value = ind.eval(&alpha.apply(&x), g_inv);
                out[i * n..(i + 1) * n].copy_from_slice(&ind.base().action(g_inv).apply(&value));
            }
            out
        })
        .collect();
    Ok(assemble(ind.dim(), cols))
}

/// `rec(α)(φ) = Σ_{g ∈ G/U} α(φ(g))(g^-1)`, from `Hom_U(V2, Ind V1)` to `Hom_U(ind V2, V1)`.
pub fn rec<F: Field>(ind1: &InducedRep<F>, ind2: &InducedRep<F>, alpha: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
    check_shape(alpha, ind1.dim(), ind2.base_dim())?;
    let group = ind2.group();
    let n2 = ind2.base_dim();
    let cols = (0..ind2.dim())
        .map(|b| {
            let (i, j) = (b / n2, b % n2);
            let r = ind2.coset_reps()[i];
            ind1.eval(&alpha.column(j), group.inv(r))
        })
        .collect();
    Ok(assemble(ind1.base_dim(), cols))
}

/// `rec^-1(β)(v)(g) = β(char_{g^-1,U}^v)`.
pub fn rec_inv<F: Field>(ind1: &InducedRep<F>, ind2: &InducedRep<F>, beta: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
    check_shape(beta, ind1.base_dim(), ind2.dim())?;
    let group = ind1.group();
    let n1 = ind1.base_dim();
    let cols = (0..ind2.base_dim())
        .map(|j| {
            let v = unit_vector(ind2.base_dim(), j);
            let mut out = vec![F::zero(); ind1.dim()];
            for (i, &r) in ind1.coset_reps().iter().enumerate() {
                let value = beta.apply(&ind2.char_fn(group.inv(r), &v));
                out[i * n1..(i + 1) * n1].copy_from_slice(&value);
            }
            out
        })
        .collect();
    Ok(assemble(ind1.dim(), cols))
}

/// `J'(λ)(φ) = Σ_{g ∈ G/U} g λ(char_{g^-1,U}^{g φ(g)})` on `Hom_U(ind W, tgt)`.
pub fn involution_jprime<F: Field>(tgt: &Rep<F>, ind: &InducedRep<F>, lambda: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
    check_shape(lambda, tgt.dim(), ind.dim())?;
    let group = ind.group();
    require_u_equivariant(lambda, |u| ind.action(u).clone(), |u| tgt.action(u).clone(), group.subgroup(), "J' input")?;
    let n = ind.base_dim();
    let cols = (0..ind.dim())
        .map(|b| {
            let (i, j) = (b / n, b % n);
            let r = ind.coset_reps()[i];
            let w = ind.base().action(r).apply(&unit_vector(n, j));
            tgt.action(r).apply(&lambda.apply(&ind.char_fn(group.inv(r), &w)))
        })
        .collect();
    Ok(assemble(tgt.dim(), cols))
}

/// The `U`-map `φ ↦ ⟨φ, D⟩`, `⟨φ, D⟩(g) = D(g φ(g))(g)`, from `ind V1` to `ind V2`.
pub fn pairing_operator<F: Field>(ind1: &InducedRep<F>, ind2: &InducedRep<F>, d: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
    check_shape(d, ind2.dim(), ind1.base_dim())?;
    let (n1, n2) = (ind1.base_dim(), ind2.base_dim());
    let cols = (0..ind1.dim())
        .map(|b| {
            let (k, j) = (b / n1, b % n1);
            let r = ind1.coset_reps()[k];
            let x = ind1.base().action(r).apply(&unit_vector(n1, j));
            let value = ind2.eval(&d.apply(&x), r);
            let mut out = vec![F::zero(); ind2.dim()];
            out[k * n2..(k + 1) * n2].copy_from_slice(&value);
            out
        })
        .collect();
    Ok(assemble(ind2.dim(), cols))
}

/// `⟨C, D⟩ = C ∘ ⟨·, D⟩ ∈ Hom_U(ind V1, V3)`.
pub fn refined_pairing<F: Field>(
    ind1: &InducedRep<F>,
    ind2: &InducedRep<F>,
    c: &Matrix<F>,
    d: &Matrix<F>,
) -> Result<Matrix<F>, SmoothRepError> {
    let op = pairing_operator(ind1, ind2, d)?;
    Ok(c.checked_mul(&op)?)
}

/// `Tr(F)(v) = Σ_{g ∈ G/U} F(char_{g,U}^{g^-1 v})`. Every map is finitely supported here.
pub fn trace<F: Field>(ind1: &InducedRep<F>, f: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
    check_shape(f, f.rows(), ind1.dim())?;
    let group = ind1.group();
    let n1 = ind1.base_dim();
    let cols = (0..n1)
        .map(|j| {
            let v = unit_vector(n1, j);
            let mut out = vec![F::zero(); f.rows()];
            for &r in ind1.coset_reps() {
                let w = ind1.base().action(group.inv(r)).apply(&v);
                axpy(&mut out, F::one(), &f.apply(&ind1.char_fn(r, &w)));
            }
            out
        })
        .collect();
    Ok(assemble(f.rows(), cols))
}

/// The component of `α: V1 → ind V2` with values in `ind^{UhU} V2`.
pub fn project_to_double_coset<F: Field>(ind: &InducedRep<F>, h: usize, alpha: &Matrix<F>) -> Matrix<F> {
    let slots = ind.double_coset_slots(h);
    Matrix::from_fn(alpha.rows(), alpha.cols(), |r, c| if slots.contains(&r) { alpha[(r, c)] } else { F::zero() })
}

/// The restriction of `λ: ind V2 → V1` to `ind^{UhU} V2`, extended by zero.
pub fn restrict_to_double_coset<F: Field>(ind: &InducedRep<F>, h: usize, lambda: &Matrix<F>) -> Matrix<F> {
    let slots = ind.double_coset_slots(h);
    Matrix::from_fn(lambda.rows(), lambda.cols(), |r, c| if slots.contains(&c) { lambda[(r, c)] } else { F::zero() })
}

/// `Sh_h(α)(x) = α(x)(h)` for `α` with values in `ind^{UhU} V2`.
pub fn shapiro<F: Field>(src: &Rep<F>, ind: &InducedRep<F>, h: usize, alpha: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
    check_shape(alpha, ind.dim(), src.dim())?;
    if (0..alpha.cols()).any(|c| !ind.supported_on(&alpha.column(c), h)) {
        return Err(SmoothRepError::WrongSupport(format!("values leave the double coset of {h}")));
    }
    let cols = (0..src.dim()).map(|j| ind.eval(&alpha.column(j), h)).collect();
    Ok(assemble(ind.base_dim(), cols))
}

/// `Hom_{U_h}(V1, V2^h)` where `U_h = U ∩ hUh^-1` and `V2^h(w) = ρ2(h^-1 w h)`.
pub fn shapiro_target_space<F: Field>(group: &FinGroupDatum, v1: &Rep<F>, v2: &Rep<F>, h: usize) -> Result<HomSpace<F>, SmoothRepError> {
    let u_h = group.conjugate_intersection(h);
    let twisted = v2.conjugate(group, h, &u_h)?;
    Ok(HomSpace::between(v1, &twisted, &u_h))
}

/// Inverse of [`shapiro`]: `α(x)(u h u') = u'^-1 β(u^-1 x)`, zero off `UhU`.
pub fn shapiro_inv<F: Field>(src: &Rep<F>, ind: &InducedRep<F>, h: usize, beta: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
    let group = ind.group();
    check_shape(beta, ind.base_dim(), src.dim())?;
    shapiro_target_space(group, src, ind.base(), h)?.require(beta, "Shapiro inverse input")?;
    let n = ind.base_dim();
    let cols = (0..src.dim())
        .map(|j| {
            let mut out = vec![F::zero(); ind.dim()];
            for (i, &r) in ind.coset_reps().iter().enumerate() {
                if let Some((u, u2)) = group.double_coset_factor(h, r) {
                    let x = src.action(group.inv(u)).apply(&unit_vector(src.dim(), j));
                    let value = ind.base().action(group.inv(u2)).apply(&beta.apply(&x));
                    out[i * n..(i + 1) * n].copy_from_slice(&value);
                }
            }
            out
        })
        .collect();
    Ok(assemble(ind.dim(), cols))
}

/// `(h_* β)(x) = h β(h x)`, from `Hom_{U_h}(V1, V2^h)` to `Hom_{U_{h^-1}}(V1, V2^{h^-1})`.
pub fn conjugation_pushforward<F: Field>(v1: &Rep<F>, v2: &Rep<F>, h: usize, beta: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
    check_shape(beta, v2.dim(), v1.dim())?;
    Ok(&(v2.action(h) * beta) * v1.action(h))
}

/// `Fr_h(v)(φ) = Σ_{u ∈ U/U_h} φ(uh) u v` in `Hom_U(X_U, V)`, for `v` fixed by `U_h`.
pub fn frobenius<F: Field>(x: &InducedRep<F>, target: &Rep<F>, h: usize, v: &[F]) -> Result<Matrix<F>, SmoothRepError> {
    let group = x.group();
    if x.base_dim() != 1 {
        return Err(SmoothRepError::NotARepresentation("Frobenius maps start from X_U".into()));
    }
    let u_h = group.conjugate_intersection(h);
    for &w in &u_h {
        if target.action(w).apply(v) != v {
            return Err(SmoothRepError::NotFixed(format!("vector not fixed by element {w} of U_h")));
        }
    }
    let mut cols = vec![vec![F::zero(); target.dim()]; x.dim()];
    for coset in left_cosets_in(group, group.subgroup(), &u_h) {
        let u = coset.rep;
        let i = x.coset_of(group.mul(u, h));
        // φ = char_{r_i U} takes the value 1 at uh
        axpy(&mut cols[i], F::one(), &target.action(u).apply(v));
    }
    Ok(assemble(target.dim(), cols))
}

/// The representation `X_U ⊗ X_U` with basis `char_{r_a U} ⊗ char_{r_b U}` at index `a m + b`.
pub fn tensor_square<F: Field>(x: &InducedRep<F>) -> Rep<F> {
    let group = x.group();
    let action = group.elements().map(|g| x.action(g).kronecker(x.action(g))).collect();
    Rep::of_group(group, action).expect("tensor square of a representation")
}

/// The swap `ς` on `X_U ⊗ X_U`.
pub fn swap_matrix<F: Field>(m: usize) -> Matrix<F> {
    Matrix::from_fn(m * m, m * m, |r, c| if r == (c % m) * m + c / m { F::one() } else { F::zero() })
}

/// `Λ ↦ [char_{gU} ↦ Λ(char_U ⊗ char_{gU})]`, from `Hom_G(X_U ⊗ X_U, V)` to `Hom_U(X_U, V)`.
pub fn swap_identification<F: Field>(x: &InducedRep<F>, lambda: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
    let m = x.dim();
    check_shape(lambda, lambda.rows(), m * m)?;
    let base = x.coset_of(x.group().id());
    let cols = (0..m).map(|g| lambda.column(base * m + g)).collect();
    Ok(assemble(lambda.rows(), cols))
}

/// The bundle `(G, U, V1, V2, V3)` with the induced representations in use.
#[derive(Clone, Debug)]
pub struct DegreeZero<F: Field> {
    pub group: FinGroupDatum,
    pub v1: Rep<F>,
    pub v2: Rep<F>,
    pub v3: Rep<F>,
    pub ind1: InducedRep<F>,
    pub ind2: InducedRep<F>,
}

impl<F: Field> DegreeZero<F> {
    pub fn new(group: &FinGroupDatum, v1: Rep<F>, v2: Rep<F>, v3: Rep<F>) -> Result<Self, SmoothRepError> {
        for v in [&v1, &v2, &v3] {
            if let Some(g) = group.elements().find(|&g| !v.defined_at(g)) {
                return Err(SmoothRepError::NotARepresentation(format!("representation undefined at {g}")));
            }
        }
        let ind1 = InducedRep::new(group, &v1)?;
        let ind2 = InducedRep::new(group, &v2)?;
        Ok(DegreeZero { group: group.clone(), v1, v2, v3, ind1, ind2 })
    }

    fn u_hom(&self, src: &Rep<F>, tgt: &Rep<F>) -> HomSpace<F> {
        HomSpace::between(src, tgt, self.group.subgroup())
    }

    /// `Hom_U(V1, ind V2)`, the domain of `J`.
    pub fn hom_v1_ind2(&self) -> HomSpace<F> {
        self.u_hom(&self.v1, &self.ind2.as_rep())
    }

    /// `Hom_U(V2, Ind V1)`, the domain of `rec`.
    pub fn hom_v2_ind1(&self) -> HomSpace<F> {
        self.u_hom(&self.v2, &self.ind1.as_rep())
    }

    /// `Hom_U(ind V2, V1)`, the domain of `J'`.
    pub fn hom_ind2_v1(&self) -> HomSpace<F> {
        self.u_hom(&self.ind2.as_rep(), &self.v1)
    }

    /// `Hom_U(ind V2, V3)`.
    pub fn hom_ind2_v3(&self) -> HomSpace<F> {
        self.u_hom(&self.ind2.as_rep(), &self.v3)
    }

    /// `Hom_U(ind V1, V3)`.
    pub fn hom_ind1_v3(&self) -> HomSpace<F> {
        self.u_hom(&self.ind1.as_rep(), &self.v3)
    }

    pub fn j(&self, alpha: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
        involution_j(&self.v1, &self.ind2, alpha)
    }

    /// `J` on `Hom_U(V2, Ind V1)`.
    pub fn j_swapped(&self, alpha: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
        involution_j(&self.v2, &self.ind1, alpha)
    }

    pub fn jprime(&self, lambda: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
        involution_jprime(&self.v1, &self.ind2, lambda)
    }

    /// `J'` on `Hom_U(ind V2, V3)`.
    pub fn jprime_v3(&self, c: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
        involution_jprime(&self.v3, &self.ind2, c)
    }

    /// `J'` on `Hom_U(ind V1, V3)`.
    pub fn jprime_outer(&self, f: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
        involution_jprime(&self.v3, &self.ind1, f)
    }

    pub fn rec(&self, alpha: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
        rec(&self.ind1, &self.ind2, alpha)
    }

    pub fn rec_inv(&self, beta: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
        rec_inv(&self.ind1, &self.ind2, beta)
    }

    pub fn pairing(&self, c: &Matrix<F>, d: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
        refined_pairing(&self.ind1, &self.ind2, c, d)
    }

    pub fn trace(&self, f: &Matrix<F>) -> Result<Matrix<F>, SmoothRepError> {
        trace(&self.ind1, f)
    }

    /// Representatives of the double cosets `UhU`.
    pub fn double_coset_reps(&self) -> Vec<usize> {
        self.group.double_cosets().into_iter().map(|c| c.rep).collect()
    }
}

