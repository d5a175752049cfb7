//! Representations, induced representations and spaces of equivariant maps.

use super::group::FinGroupDatum;
use super::SmoothRepError;
use crate::exactla::{is_zero_vec, unit_vector, Matrix, Subspace};
use crate::field::Field;

/// A representation defined on a subset of group elements (all of `G`, or a subgroup).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep<F: Field> {
    dim: usize,
    action: Vec<Option<Matrix<F>>>,
}

impl<F: Field> Rep<F> {
    /// Checks `ρ(g)ρ(h) = ρ(gh)` on the domain, which must be closed and contain the identity.
    pub fn new(group: &FinGroupDatum, dim: usize, action: Vec<Option<Matrix<F>>>) -> Result<Self, SmoothRepError> {
        if action.len() != group.order() {
            return Err(SmoothRepError::NotARepresentation("one slot per group element is required".into()));
        }
        let domain: Vec<usize> = (0..action.len()).filter(|&g| action[g].is_some()).collect();
        for &g in &domain {
            let m = action[g].as_ref().expect("in domain");
            if m.rows() != dim || m.cols() != dim {
                return Err(SmoothRepError::NotARepresentation(format!("matrix of element {g} is not {dim} x {dim}")));
            }
        }
        match &action[group.id()] {
            Some(m) if *m == Matrix::identity(dim) => {}
            _ => return Err(SmoothRepError::NotARepresentation("identity must act trivially".into())),
        }
        for &g in &domain {
            for &h in &domain {
                let gh = group.mul(g, h);
                let Some(target) = &action[gh] else {
                    return Err(SmoothRepError::NotARepresentation(format!("domain not closed at {g}*{h}")));
                };
                let lhs = action[g].as_ref().expect("in domain") * action[h].as_ref().expect("in domain");
                if lhs != *target {
                    return Err(SmoothRepError::NotARepresentation(format!("rho({g})rho({h}) != rho({gh})")));
                }
            }
        }
        Ok(Rep { dim, action })
    }

    /// A representation of the whole group.
    pub fn of_group(group: &FinGroupDatum, action: Vec<Matrix<F>>) -> Result<Self, SmoothRepError> {
        let dim = action.first().map_or(0, Matrix::rows);
        Self::new(group, dim, action.into_iter().map(Some).collect())
    }

    pub fn trivial(group: &FinGroupDatum) -> Self {
        Rep { dim: 1, action: vec![Some(Matrix::identity(1)); group.order()] }
    }

    /// The permutation representation on `G/U`, i.e. `X_U` with basis `char_{gU}`.
    pub fn coset_permutation(group: &FinGroupDatum) -> Self {
        let reps = group.coset_reps();
        let idx = group.coset_index();
        let m = reps.len();
        let action = group
            .elements()
            .map(|g| {
                let mut a = Matrix::zeros(m, m);
                for (i, &r) in reps.iter().enumerate() {
                    a[(idx[group.mul(g, r)], i)] = F::one();
                }
                Some(a)
            })
            .collect();
        Rep { dim: m, action }
    }

    /// The left regular representation.
    pub fn regular(group: &FinGroupDatum) -> Self {
        let n = group.order();
        let action = group
            .elements()
            .map(|g| {
                let mut a = Matrix::zeros(n, n);
                for x in group.elements() {
                    a[(group.mul(g, x), x)] = F::one();
                }
                Some(a)
            })
            .collect();
        Rep { dim: n, action }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn defined_at(&self, g: usize) -> bool {
        self.action[g].is_some()
    }

    /// Matrix of `g`; panics outside the domain.
    pub fn action(&self, g: usize) -> &Matrix<F> {
        self.action[g].as_ref().expect("element outside the representation's domain")
    }

    /// Restriction to the listed elements.
    pub fn restrict(&self, elements: &[usize]) -> Self {
        let mut action = vec![None; self.action.len()];
        for &g in elements {
            action[g] = Some(self.action(g).clone());
        }
        Rep { dim: self.dim, action }
    }

    /// `V^h` on the elements of `domain`: `w` acts by `ρ(h^-1 w h)`.
    pub fn conjugate(&self, group: &FinGroupDatum, h: usize, domain: &[usize]) -> Result<Self, SmoothRepError> {
        let mut action = vec![None; self.action.len()];
        for &w in domain {
            let x = group.mul3(group.inv(h), w, h);
            let m = self.action[x].as_ref().ok_or_else(|| SmoothRepError::NotARepresentation(format!("{x} outside the domain")))?;
            action[w] = Some(m.clone());
        }
        Rep::new(group, self.dim, action)
    }

    /// Vectors fixed by every listed element.
    pub fn fixed_vectors(&self, elements: &[usize]) -> Vec<Vec<F>> {
        let mut stacked = Matrix::zeros(0, self.dim);
        for &g in elements {
            let diff = self.action(g).checked_sub(&Matrix::identity(self.dim)).expect("square");
            stacked = stacked.vstack(&diff).expect("same width");
        }
        stacked.kernel_basis()
    }
}

/// `Ind_U^G(V)`: functions `φ: G → V` with `φ(gu) = u^-1 φ(g)`, stored by their values on the
/// least coset representatives. Basis vector `(i, j)` is `char_{r_i,U}^{e_j}`.
#[derive(Clone, Debug)]
pub struct InducedRep<F: Field> {
    group: FinGroupDatum,
    base: Rep<F>,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
    action: Vec<Matrix<F>>,
}

impl<F: Field> InducedRep<F> {
    pub fn new(group: &FinGroupDatum, base: &Rep<F>) -> Result<Self, SmoothRepError> {
        if let Some(&u) = group.subgroup().iter().find(|&&u| !base.defined_at(u)) {
            return Err(SmoothRepError::NotARepresentation(format!("base representation undefined at subgroup element {u}")));
        }
        let reps = group.coset_reps();
        let coset_of = group.coset_index();
        let mut ind = InducedRep { group: group.clone(), base: base.clone(), reps, coset_of, action: Vec::new() };
        let dim = ind.dim();
        ind.action = group
            .elements()
            .map(|g| {
                let cols: Vec<Vec<F>> = (0..dim)
                    .map(|b| {
                        let (i, j) = (b / ind.base_dim(), b % ind.base_dim());
                        ind.char_fn(group.mul(g, ind.reps[i]), &unit_vector(ind.base_dim(), j))
                    })
                    .collect();
                Matrix::from_columns(dim, &cols).expect("column lengths agree")
            })
            .collect();
        Ok(ind)
    }

    pub fn group(&self) -> &FinGroupDatum {
        &self.group
    }

    pub fn base(&self) -> &Rep<F> {
        &self.base
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn coset_reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    pub fn dim(&self) -> usize {
        self.reps.len() * self.base.dim()
    }

    pub fn action(&self, g: usize) -> &Matrix<F> {
        &self.action[g]
    }

    /// The full action as a representation of `G`.
    pub fn as_rep(&self) -> Rep<F> {
        Rep { dim: self.dim(), action: self.action.iter().cloned().map(Some).collect() }
    }

    /// `char_{h,U}^v`: supported on `hU` with value `v` at `h`.
    pub fn char_fn(&self, h: usize, v: &[F]) -> Vec<F> {
        let i = self.coset_of[h];
        let r = self.reps[i];
        let u = self.group.mul(self.group.inv(r), h);
        // φ(r) = φ(h u^-1) = u φ(h)
        let value = self.base.action(u).apply(v);
        let mut out = vec![F::zero(); self.dim()];
        let n = self.base_dim();
        out[i * n..(i + 1) * n].copy_from_slice(&value);
        out
    }

    /// `φ(g)`.
    pub fn eval(&self, phi: &[F], g: usize) -> Vec<F> {
        let i = self.coset_of[g];
        let r = self.reps[i];
        let n = self.base_dim();
        // g = r u with u = r^-1 g, so φ(g) = u^-1 φ(r) = (g^-1 r) φ(r)
        let u_inv = self.group.mul(self.group.inv(g), r);
        self.base.action(u_inv).apply(&phi[i * n..(i + 1) * n])
    }

    /// Indices of the coordinates belonging to cosets inside the double coset `UhU`.
    pub fn double_coset_slots(&self, h: usize) -> Vec<usize> {
        let d = self.group.double_coset_index();
        let n = self.base_dim();
        (0..self.reps.len()).filter(|&i| d[self.reps[i]] == d[h]).flat_map(|i| i * n..(i + 1) * n).collect()
    }

    /// Whether `φ` vanishes outside `UhU`.
    pub fn supported_on(&self, phi: &[F], h: usize) -> bool {
        let slots = self.double_coset_slots(h);
        phi.iter().enumerate().all(|(k, x)| x.is_zero() || slots.contains(&k))
    }
}

/// A space of linear maps `X: F^src → F^tgt` with `X A_k = B_k X` for given pairs.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    src_dim: usize,
    tgt_dim: usize,
    constraints: Matrix<F>,
    basis: Vec<Matrix<F>>,
    span: Subspace<F>,
}

impl<F: Field> HomSpace<F> {
    /// Solves the intertwining equations for all `(A_k, B_k)`.
    pub fn intertwiners(src_dim: usize, tgt_dim: usize, pairs: &[(&Matrix<F>, &Matrix<F>)]) -> Self {
        let unknowns = src_dim * tgt_dim;
        let var = |r: usize, c: usize| r * src_dim + c;
        let mut rows: Vec<Vec<F>> = Vec::new();
        for (a, b) in pairs {
            for r in 0..tgt_dim {
                for c in 0..src_dim {
                    let mut eq = vec![F::zero(); unknowns];
                    for m in 0..src_dim {
                        eq[var(r, m)] += a[(m, c)];
                    }
                    for m in 0..tgt_dim {
                        eq[var(m, c)] -= b[(r, m)];
                    }
                    if !is_zero_vec(&eq) {
                        rows.push(eq);
                    }
                }
            }
        }
        let constraints = if rows.is_empty() { Matrix::zeros(0, unknowns) } else { Matrix::from_rows(rows).expect("rows share a width") };
        let kernel = constraints.kernel_basis();
        let span = Subspace::spanned_by(unknowns, &kernel);
        let basis = kernel.iter().map(|v| Matrix::from_fn(tgt_dim, src_dim, |r, c| v[var(r, c)])).collect();
        HomSpace { src_dim, tgt_dim, constraints, basis, span }
    }

    /// `Hom` over the listed elements between two representations.
    pub fn between(src: &Rep<F>, tgt: &Rep<F>, elements: &[usize]) -> Self {
        let pairs: Vec<_> = elements.iter().map(|&g| (src.action(g), tgt.action(g))).collect();
        Self::intertwiners(src.dim(), tgt.dim(), &pairs)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn src_dim(&self) -> usize {
        self.src_dim
    }

    pub fn tgt_dim(&self) -> usize {
        self.tgt_dim
    }

    pub fn basis(&self) -> &[Matrix<F>] {
        &self.basis
    }

    fn flatten(m: &Matrix<F>) -> Vec<F> {
        (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
    }

    pub fn contains(&self, m: &Matrix<F>) -> bool {
        m.rows() == self.tgt_dim && m.cols() == self.src_dim && is_zero_vec(&self.constraints.apply(&Self::flatten(m)))
    }

    /// Coordinates in the echelon basis of the space (not in [`Self::basis`]).
    pub fn coordinates(&self, m: &Matrix<F>) -> Option<Vec<F>> {
        if m.rows() != self.tgt_dim || m.cols() != self.src_dim {
            return None;
        }
        self.span.coordinates(&Self::flatten(m))
    }

    /// Rejects maps outside the space.
    pub fn require(&self, m: &Matrix<F>, what: &str) -> Result<(), SmoothRepError> {
        if self.contains(m) {
            Ok(())
        } else {
            Err(SmoothRepError::NotEquivariant(what.to_string()))
        }
    }
}
