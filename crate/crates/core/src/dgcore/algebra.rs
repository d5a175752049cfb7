//! Dg algebras: a [`GradedAlgebra`] with a weight per basis element, a differential and a
//! complete set of orthogonal idempotents in degree zero.

use super::module::Classes;
use super::DgError;
use crate::exactla::{is_zero_vec, Matrix};
use crate::field::Field;
use crate::smoothrep::group::FinGroupDatum;
use crate::yoneda::graded::{tensor_dim, tensor_element, tensor_split};
use crate::yoneda::{CrossedModel, GradedAlgebra};

#[derive(Clone, Debug)]
pub struct DgAlgebra<F: Field> {
    graded: GradedAlgebra<F>,
    weights: Vec<Vec<i64>>,
    // diff[i]: A^i -> A^{i+1}
    diff: Vec<Matrix<F>>,
    idempotents: Vec<Vec<F>>,
}

impl<F: Field> DgAlgebra<F> {
    pub fn new(graded: GradedAlgebra<F>, weights: Vec<Vec<i64>>, diff: Vec<Matrix<F>>, idempotents: Vec<Vec<F>>) -> Result<Self, DgError> {
        let a = DgAlgebra { graded, weights, diff, idempotents };
        a.check()?;
        Ok(a)
    }

    /// Zero differential, weight equal to degree, the unit as the only idempotent.
    pub fn formal(graded: GradedAlgebra<F>) -> Self {
        let dims = graded.dims().to_vec();
        let weights = dims.iter().enumerate().map(|(i, &n)| vec![i as i64; n]).collect();
        let diff = (0..dims.len()).map(|i| Matrix::zeros(dims.get(i + 1).copied().unwrap_or(0), dims[i])).collect();
        let idempotents = vec![graded.unit().to_vec()];
        DgAlgebra { graded, weights, diff, idempotents }
    }

    pub fn with_idempotents(mut self, idempotents: Vec<Vec<F>>) -> Result<Self, DgError> {
        self.idempotents = idempotents;
        self.check()?;
        Ok(self)
    }

    /// The ground field in degree 0.
    pub fn ground() -> Self {
        Self::formal(GradedAlgebra::from_product(vec![1], vec![vec!["1".into()]], vec![F::one()], |_, _, _, _| vec![F::one()]))
    }

    /// `Λ(y)` with `y` in degree 1 and weight 1.
    pub fn exterior_one() -> Self {
        let graded = GradedAlgebra::from_product(vec![1, 1], vec![vec!["1".into()], vec!["y".into()]], vec![F::one()], |_, _, _, _| vec![F::one()]);
        Self::formal(graded)
    }

    /// The formal algebra `E*` of a crossed model with the character idempotents of `k[C]`.
    pub fn from_model(model: &CrossedModel<F>) -> Self {
        let graded = model.e_algebra();
        let c = model.c_group();
        let idempotents = group_idempotents::<F>(c).into_iter().map(|e| {
            let mut v = vec![F::zero(); graded.dims()[0]];
            for g in c.elements() {
                v[model.e_index(0, g)] = e[g];
            }
            v
        });
        let idempotents = idempotents.collect();
        DgAlgebra { idempotents, ..Self::formal(graded) }
    }

    pub fn graded(&self) -> &GradedAlgebra<F> {
        &self.graded
    }

    pub fn top(&self) -> usize {
        self.graded.top()
    }

    pub fn dims(&self) -> &[usize] {
        self.graded.dims()
    }

    pub fn dim(&self, i: i64) -> usize {
        self.graded.dim(i)
    }

    pub fn unit(&self) -> &[F] {
        self.graded.unit()
    }

    pub fn weights(&self, i: usize) -> &[i64] {
        &self.weights[i]
    }

    pub fn weight(&self, i: usize, a: usize) -> i64 {
        self.weights[i][a]
    }

    /// `d: A^i → A^{i+1}`.
    pub fn diff(&self, i: usize) -> &Matrix<F> {
        &self.diff[i]
    }

    pub fn is_formal(&self) -> bool {
        self.diff.iter().all(Matrix::is_zero)
    }

    pub fn idempotents(&self) -> &[Vec<F>] {
        &self.idempotents
    }

    /// Basis elements of degree 0 and weight 0, which act within a fixed weight.
    pub fn weight_zero_units(&self) -> Vec<Vec<F>> {
        (0..self.dims()[0]).filter(|&a| self.weights[0][a] == 0).map(|a| self.graded.basis(0, a)).collect()
    }

    /// `A^op` with `a ∘ b = (-1)^{|a||b|} b a`; same differential.
    pub fn opposite(&self) -> Self {
        DgAlgebra { graded: self.graded.opposite(), ..self.clone() }
    }

    /// `A ⊗ B` with `d(a ⊗ b) = da ⊗ b + (-1)^{|a|} a ⊗ db`; idempotent `i·n_B + j` is `ε_i ⊗ ε_j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let graded = self.graded.tensor(&other.graded);
        let (ad, bd) = (self.dims(), other.dims());
        let dims = graded.dims().to_vec();
        let weights = (0..dims.len())
            .map(|n| {
                (0..dims[n])
                    .map(|idx| {
                        let (i, a, j, b) = tensor_split(ad, bd, n, idx);
                        self.weights[i][a] + other.weights[j][b]
                    })
                    .collect()
            })
            .collect();
        let diff = (0..dims.len())
            .map(|n| {
                let rows = dims.get(n + 1).copied().unwrap_or(0);
                let cols: Vec<Vec<F>> = (0..dims[n])
                    .map(|idx| {
                        let mut out = vec![F::zero(); rows];
                        if rows == 0 {
                            return out;
                        }
                        let (i, a, j, b) = tensor_split(ad, bd, n, idx);
                        let (ea, eb) = (self.graded.basis(i, a), other.graded.basis(j, b));
                        if i < self.top() {
                            let da = self.diff[i].apply(&ea);
                            add_into(&mut out, F::one(), &tensor_element(ad, bd, i + 1, &da, j, &eb));
                        }
                        if j < other.top() {
                            let db = other.diff[j].apply(&eb);
                            add_into(&mut out, F::sign(i as i64), &tensor_element(ad, bd, i, &ea, j + 1, &db));
                        }
                        out
                    })
                    .collect();
                Matrix::from_columns(rows, &cols).expect("column length")
            })
            .collect();
        let mut idempotents = Vec::new();
        for e in &self.idempotents {
            for f in &other.idempotents {
                idempotents.push(tensor_element(ad, bd, 0, e, 0, f));
            }
        }
        debug_assert_eq!(tensor_dim(ad, bd, 0), dims[0]);
        DgAlgebra { graded, weights, diff, idempotents }
    }

    /// `d² = 0`, the graded Leibniz rule, weight homogeneity and the idempotent axioms.
    pub fn check(&self) -> Result<(), DgError> {
        let alg = &self.graded;
        let n = alg.dims().len();
        alg.check_associative_unital()?;
        if self.weights.len() != n || self.weights.iter().zip(alg.dims()).any(|(w, &d)| w.len() != d) {
            return Err(DgError::NotDg("weights do not match the basis".into()));
        }
        if self.weights.iter().flatten().any(|&w| w < 0) {
            return Err(DgError::NotDg("negative algebra weights".into()));
        }
        if self.diff.len() != n {
            return Err(DgError::NotDg("missing differential blocks".into()));
        }
        for i in 0..n {
            let rows = alg.dims().get(i + 1).copied().unwrap_or(0);
            if self.diff[i].rows() != rows || self.diff[i].cols() != alg.dims()[i] {
                return Err(DgError::NotDg(format!("differential block {i} has the wrong shape")));
            }
            if i + 1 < n && !(&self.diff[i + 1] * &self.diff[i]).is_zero() {
                return Err(DgError::NotDg(format!("d² ≠ 0 on degree {i}")));
            }
            for a in 0..alg.dims()[i] {
                let da = self.diff[i].column(a);
                if !self.homogeneous(i + 1, &da, self.weights[i][a]) {
                    return Err(DgError::NotDg(format!("d does not preserve the weight of {}", alg.label(i, a))));
                }
            }
        }
        if !is_zero_vec(&self.diff[0].apply(alg.unit())) {
            return Err(DgError::NotDg("d(1) ≠ 0".into()));
        }
        for i in 0..n {
            for j in 0..n - i {
                for a in 0..alg.dims()[i] {
                    for b in 0..alg.dims()[j] {
                        let (ea, eb) = (alg.basis(i, a), alg.basis(j, b));
                        let ab = alg.mul(i, &ea, j, &eb);
                        if !self.homogeneous(i + j, &ab, self.weights[i][a] + self.weights[j][b]) {
                            return Err(DgError::NotDg(format!("product {}·{} is not weight homogeneous", alg.label(i, a), alg.label(j, b))));
                        }
                        if i + j + 1 < n {
                            let lhs = self.diff[i + j].apply(&ab);
                            let mut rhs = vec![F::zero(); alg.dims()[i + j + 1]];
                            if i + 1 < n {
                                add_into(&mut rhs, F::one(), &alg.mul(i + 1, &self.diff[i].apply(&ea), j, &eb));
                            }
                            if j + 1 < n {
                                add_into(&mut rhs, F::sign(i as i64), &alg.mul(i, &ea, j + 1, &self.diff[j].apply(&eb)));
                            }
                            if lhs != rhs {
                                return Err(DgError::NotDg(format!("Leibniz rule fails on ({}, {})", alg.label(i, a), alg.label(j, b))));
                            }
                        }
                    }
                }
            }
        }
        let mut sum = vec![F::zero(); alg.dims()[0]];
        for (k, e) in self.idempotents.iter().enumerate() {
            if e.len() != alg.dims()[0] || !self.homogeneous(0, e, 0) || !is_zero_vec(&self.diff[0].apply(e)) {
                return Err(DgError::NotDg(format!("idempotent {k} is not a weight-zero cycle of degree 0")));
            }
            for (l, f) in self.idempotents.iter().enumerate() {
                let ef = alg.mul(0, e, 0, f);
                let expected = if k == l { e.clone() } else { vec![F::zero(); e.len()] };
                if ef != expected {
                    return Err(DgError::NotDg(format!("idempotents {k} and {l} are not orthogonal idempotents")));
                }
            }
            add_into(&mut sum, F::one(), e);
        }
        if sum != alg.unit() {
            return Err(DgError::NotDg("idempotents do not sum to 1".into()));
        }
        Ok(())
    }

    fn homogeneous(&self, i: usize, v: &[F], w: i64) -> bool {
        v.iter().enumerate().all(|(b, x)| x.is_zero() || self.weights[i][b] == w)
    }

    /// `h*(A)` as a graded algebra on chosen cycle representatives.
    pub fn cohomology_algebra(&self) -> GradedAlgebra<F> {
        let n = self.dims().len();
        let classes: Vec<Classes<F>> = (0..n)
            .map(|i| {
                let cycles = self.diff[i].kernel_basis();
                let boundaries = if i == 0 { Vec::new() } else { self.diff[i - 1].columns() };
                Classes::new(self.dims()[i], &boundaries, &cycles)
            })
            .collect();
        let mut dims: Vec<usize> = classes.iter().map(|c| c.reps.len()).collect();
        while dims.len() > 1 && dims.last() == Some(&0) {
            dims.pop();
        }
        let labels = dims.iter().enumerate().map(|(i, &k)| (0..k).map(|a| format!("[{i}.{a}]")).collect()).collect();
        let unit = classes[0].coords(self.unit());
        GradedAlgebra::from_product(dims, labels, unit, |i, a, j, b| {
            let prod = self.graded.mul(i, &classes[i].reps[a], j, &classes[j].reps[b]);
            classes[i + j].coords(&prod)
        })
    }
}

/// `y += s x`, componentwise.
pub(crate) fn add_into<F: Field>(y: &mut [F], s: F, x: &[F]) {
    for (a, &b) in y.iter_mut().zip(x) {
        *a += s * b;
    }
}

/// Orthogonal idempotents of `k[C]` summing to 1: one per `k`-valued character when `|C|` is
/// invertible, plus the complement of their sum if it is nonzero. Indexed by group element.
pub fn group_idempotents<F: Field>(c: &FinGroupDatum) -> Vec<Vec<F>> {
    let n = c.order();
    let unit: Vec<F> = (0..n).map(|g| if g == c.id() { F::one() } else { F::zero() }).collect();
    let Some(n_inv) = F::from_i64(n as i64).inv() else {
        return vec![unit];
    };
    let mut out: Vec<Vec<F>> = characters::<F>(c)
        .into_iter()
        .map(|chi| (0..n).map(|g| n_inv * chi[g].inv().expect("character values are units")).collect())
        .collect();
    let mut rest = unit.clone();
    for e in &out {
        add_into(&mut rest, -F::one(), e);
    }
    if !is_zero_vec(&rest) {
        out.push(rest);
    }
    out
}

/// All homomorphisms `C → k^×`, by backtracking over elements in index order.
fn characters<F: Field>(c: &FinGroupDatum) -> Vec<Vec<F>> {
    fn extend<F: Field>(c: &FinGroupDatum, units: &[F], chi: &mut Vec<Option<F>>, g: usize, out: &mut Vec<Vec<F>>) {
        let n = c.order();
        if g == n {
            out.push(chi.iter().map(|x| x.expect("assigned")).collect());
            return;
        }
        if chi[g].is_some() {
            extend(c, units, chi, g + 1, out);
            return;
        }
        for &u in units {
            let saved = chi.clone();
            chi[g] = Some(u);
            if close(c, chi) {
                extend(c, units, chi, g + 1, out);
            }
            *chi = saved;
        }
    }
    // propagate products of assigned values; false on a contradiction
    fn close<F: Field>(c: &FinGroupDatum, chi: &mut [Option<F>]) -> bool {
        loop {
            let mut changed = false;
            for a in 0..c.order() {
                for b in 0..c.order() {
                    if let (Some(x), Some(y)) = (chi[a], chi[b]) {
                        let ab = c.mul(a, b);
                        match chi[ab] {
                            None => {
                                chi[ab] = Some(x * y);
                                changed = true;
                            }
                            Some(z) if z != x * y => return false,
                            Some(_) => {}
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }
    let units: Vec<F> = F::elements().into_iter().filter(|x| !x.is_zero()).collect();
    let mut chi = vec![None; c.order()];
    chi[c.id()] = Some(F::one());
    let mut out = Vec::new();
    extend(c, &units, &mut chi, 0, &mut out);
    out
}
