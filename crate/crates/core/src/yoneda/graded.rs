//! Finite-dimensional graded algebras and modules given by structure constants.

use super::YonedaError;
use crate::exactla::{unit_vector, Matrix, Subspace};
use crate::field::Field;

/// A non-negatively graded algebra `A^0 ⊕ … ⊕ A^top`.
#[derive(Clone, Debug)]
pub struct GradedAlgebra<F: Field> {
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    // left[i][a][j]: left multiplication by basis element a of A^i, from A^j to A^{i+j}
    left: Vec<Vec<Vec<Matrix<F>>>>,
    unit: Vec<F>,
}

impl<F: Field> GradedAlgebra<F> {
    /// `product(i, a, j, b)` is the product of basis elements `a ∈ A^i`, `b ∈ A^j` as a vector
    /// in `A^{i+j}` (ignored when `i + j` exceeds the top degree).
    pub fn from_product(
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        unit: Vec<F>,
        product: impl Fn(usize, usize, usize, usize) -> Vec<F>,
    ) -> Self {
        let top = dims.len().saturating_sub(1);
        let left = (0..dims.len())
            .map(|i| {
                (0..dims[i])
                    .map(|a| {
                        (0..dims.len())
                            .map(|j| {
                                let rows = if i + j <= top { dims[i + j] } else { 0 };
                                let cols: Vec<Vec<F>> = (0..dims[j]).map(|b| if rows == 0 { Vec::new() } else { product(i, a, j, b) }).collect();
                                Matrix::from_columns(rows, &cols).expect("product vectors have the target dimension")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        GradedAlgebra { dims, labels, left, unit }
    }

    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `dim A^i`, zero outside `[0, top]`.
    pub fn dim(&self, i: i64) -> usize {
        if i < 0 {
            0
        } else {
            self.dims.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn label(&self, i: usize, a: usize) -> &str {
        &self.labels[i][a]
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn basis(&self, i: usize, a: usize) -> Vec<F> {
        unit_vector(self.dims[i], a)
    }

    /// Left multiplication by the basis element `a ∈ A^i` on `A^j`.
    pub fn left_basis(&self, i: usize, a: usize, j: usize) -> &Matrix<F> {
        &self.left[i][a][j]
    }

    /// Left multiplication by `x ∈ A^i` on `A^j`.
    pub fn left_matrix(&self, i: usize, x: &[F], j: usize) -> Matrix<F> {
        let rows = if i + j <= self.top() { self.dims[i + j] } else { 0 };
        let mut out = Matrix::zeros(rows, self.dims[j]);
        for (a, &xa) in x.iter().enumerate() {
            if !xa.is_zero() {
                out = out.checked_add(&self.left[i][a][j].scale(xa)).expect("same shape");
            }
        }
        out
    }

    /// Right multiplication `z ↦ z y` by `y ∈ A^j` on `A^i`.
    pub fn right_matrix(&self, j: usize, y: &[F], i: usize) -> Matrix<F> {
        let rows = if i + j <= self.top() { self.dims[i + j] } else { 0 };
        let cols: Vec<Vec<F>> = (0..self.dims[i]).map(|a| self.left[i][a][j].apply(y)).collect();
        Matrix::from_columns(rows, &cols).expect("same length")
    }

    /// The product of `x ∈ A^i` and `y ∈ A^j`; an empty vector above the top degree.
    pub fn mul(&self, i: usize, x: &[F], j: usize, y: &[F]) -> Vec<F> {
        self.left_matrix(i, x, j).apply(y)
    }

    /// Associativity and unitality on all basis triples.
    pub fn check_associative_unital(&self) -> Result<(), YonedaError> {
        let d0 = self.dims.first().copied().unwrap_or(0);
        if self.unit.len() != d0 {
            return Err(YonedaError::NotAModule("unit does not lie in degree 0".into()));
        }
        for i in 0..self.dims.len() {
            for a in 0..self.dims[i] {
                let e = self.basis(i, a);
                if self.mul(0, &self.unit, i, &e) != e || self.mul(i, &e, 0, &self.unit) != e {
                    return Err(YonedaError::NotAModule(format!("unit fails on {}", self.labels[i][a])));
                }
            }
        }
        for i in 0..self.dims.len() {
            for j in 0..self.dims.len() - i {
                for k in 0..self.dims.len() - i - j {
                    for a in 0..self.dims[i] {
                        for b in 0..self.dims[j] {
                            let ab = self.mul(i, &self.basis(i, a), j, &self.basis(j, b));
                            for c in 0..self.dims[k] {
                                let ec = self.basis(k, c);
                                let lhs = self.mul(i + j, &ab, k, &ec);
                                let rhs = self.mul(i, &self.basis(i, a), j + k, &self.mul(j, &self.basis(j, b), k, &ec));
                                if lhs != rhs {
                                    return Err(YonedaError::NotAModule(format!(
                                        "associativity fails on ({}, {}, {})",
                                        self.labels[i][a], self.labels[j][b], self.labels[k][c]
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `A^op` with `a ∘ b = (-1)^{|a||b|} b a`.
    pub fn opposite(&self) -> Self {
        let labels = self.labels.clone();
        GradedAlgebra::from_product(self.dims.clone(), labels, self.unit.clone(), |i, a, j, b| {
            let v = self.left[j][b][i].apply(&self.basis(i, a));
            let s = F::sign((i * j) as i64);
            v.into_iter().map(|x| s * x).collect()
        })
    }

    /// `A ⊗ B` with `(a ⊗ b)(a' ⊗ b') = (-1)^{|b||a'|} aa' ⊗ bb'`; see [`tensor_index`].
    pub fn tensor(&self, other: &Self) -> Self {
        let top = self.top() + other.top();
        let dims: Vec<usize> = (0..=top).map(|n| tensor_dim(&self.dims, &other.dims, n)).collect();
        let split = |n: usize, idx: usize| tensor_split(&self.dims, &other.dims, n, idx);
        let labels = (0..=top)
            .map(|n| {
                (0..dims[n])
                    .map(|idx| {
                        let (i, a, j, b) = split(n, idx);
                        format!("{}|{}", self.labels[i][a], other.labels[j][b])
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![F::zero(); dims[0]];
        for (a, &x) in self.unit.iter().enumerate() {
            for (b, &y) in other.unit.iter().enumerate() {
                unit[tensor_index(&self.dims, &other.dims, 0, a, 0, b)] += x * y;
            }
        }
        GradedAlgebra::from_product(dims.clone(), labels, unit, |n, x, m, y| {
            let (i, a, j, b) = split(n, x);
            let (i2, a2, j2, b2) = split(m, y);
            let mut out = vec![F::zero(); dims[n + m]];
            if i + i2 > self.top() || j + j2 > other.top() {
                return out;
            }
            let p = self.mul(i, &self.basis(i, a), i2, &self.basis(i2, a2));
            let q = other.mul(j, &other.basis(j, b), j2, &other.basis(j2, b2));
            let s = F::sign((j * i2) as i64);
            for (u, &pu) in p.iter().enumerate() {
                for (v, &qv) in q.iter().enumerate() {
                    out[tensor_index(&self.dims, &other.dims, i + i2, u, j + j2, v)] += s * pu * qv;
                }
            }
            out
        })
    }
}

/// `dim (A ⊗ B)^n`.
pub fn tensor_dim(a: &[usize], b: &[usize], n: usize) -> usize {
    (0..=n).map(|i| a.get(i).copied().unwrap_or(0) * b.get(n - i).copied().unwrap_or(0)).sum()
}

/// Position of `e_a ⊗ e_b` (`a ∈ A^i`, `b ∈ B^j`) in `(A ⊗ B)^{i+j}`: blocks by increasing `i`.
pub fn tensor_index(a: &[usize], b: &[usize], i: usize, x: usize, j: usize, y: usize) -> usize {
    let n = i + j;
    let offset: usize = (0..i).map(|k| a.get(k).copied().unwrap_or(0) * b.get(n - k).copied().unwrap_or(0)).sum();
    offset + x * b[j] + y
}

/// `x ⊗ y` for `x ∈ A^i`, `y ∈ B^j`, as a vector in `(A ⊗ B)^{i+j}`.
pub fn tensor_element<F: Field>(a: &[usize], b: &[usize], i: usize, x: &[F], j: usize, y: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); tensor_dim(a, b, i + j)];
    for (u, &xu) in x.iter().enumerate() {
        if xu.is_zero() {
            continue;
        }
        for (v, &yv) in y.iter().enumerate() {
            out[tensor_index(a, b, i, u, j, v)] += xu * yv;
        }
    }
    out
}

/// Inverse of [`tensor_index`].
pub fn tensor_split(a: &[usize], b: &[usize], n: usize, mut idx: usize) -> (usize, usize, usize, usize) {
    for i in 0..=n {
        let block = a.get(i).copied().unwrap_or(0) * b.get(n - i).copied().unwrap_or(0);
        if idx < block {
            let bj = b[n - i];
            return (i, idx / bj, n - i, idx % bj);
        }
        idx -= block;
    }
    panic!("index outside (A ⊗ B)^{n}")
}

/// A degree-preserving linear automorphism of a graded algebra, given per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAntiInvolution<F: Field> {
    pub blocks: Vec<Matrix<F>>,
}

impl<F: Field> GradedAntiInvolution<F> {
    pub fn apply(&self, i: usize, x: &[F]) -> Vec<F> {
        self.blocks[i].apply(x)
    }

    pub fn is_involution(&self) -> bool {
        self.blocks.iter().all(|b| (b * b) == Matrix::identity(b.rows()))
    }

    /// `σ(ab) = ε(i, j) σ(b) σ(a)` on basis pairs, with `ε = (-1)^{ij}` when `graded`.
    pub fn reverses_products(&self, alg: &GradedAlgebra<F>, graded: bool) -> bool {
        for i in 0..alg.dims().len() {
            for j in 0..alg.dims().len() - i {
                let s = if graded { F::sign((i * j) as i64) } else { F::one() };
                for a in 0..alg.dims()[i] {
                    for b in 0..alg.dims()[j] {
                        let ab = alg.mul(i, &alg.basis(i, a), j, &alg.basis(j, b));
                        let lhs = self.apply(i + j, &ab);
                        let rhs: Vec<F> =
                            alg.mul(j, &self.apply(j, &alg.basis(j, b)), i, &self.apply(i, &alg.basis(i, a))).into_iter().map(|x| s * x).collect();
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A graded module in degrees `lo..=hi` over a [`GradedAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule<F: Field> {
    side: Side,
    lo: i64,
    dims: Vec<usize>,
    alg_dims: Vec<usize>,
    // act[k][s][b]: basis element b of A^s acting on degree lo+k, landing in lo+k+s
    act: Vec<Vec<Vec<Matrix<F>>>>,
}

impl<F: Field> GradedModule<F> {
    /// `action(deg, s, b, m)` is `e_m · e_b` (or `e_b · e_m`) in degree `deg + s`.
    pub fn from_action(
        side: Side,
        lo: i64,
        dims: Vec<usize>,
        alg: &GradedAlgebra<F>,
        action: impl Fn(i64, usize, usize, usize) -> Vec<F>,
    ) -> Self {
        let dim_at = |deg: i64| if deg < lo || deg >= lo + dims.len() as i64 { 0 } else { dims[(deg - lo) as usize] };
        let act = (0..dims.len())
            .map(|k| {
                let deg = lo + k as i64;
                (0..alg.dims().len())
                    .map(|s| {
                        (0..alg.dims()[s])
                            .map(|b| {
                                let rows = dim_at(deg + s as i64);
                                let cols: Vec<Vec<F>> = (0..dims[k]).map(|m| if rows == 0 { Vec::new() } else { action(deg, s, b, m) }).collect();
                                Matrix::from_columns(rows, &cols).expect("action vectors have the target dimension")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        GradedModule { side, lo, dims, alg_dims: alg.dims().to_vec(), act }
    }

    /// `A` acting on itself by right multiplication.
    pub fn regular_right(alg: &GradedAlgebra<F>) -> Self {
        Self::from_action(Side::Right, 0, alg.dims().to_vec(), alg, |deg, s, b, m| {
            alg.left_basis(deg as usize, m, s).apply(&alg.basis(s, b))
        })
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular_left(alg: &GradedAlgebra<F>) -> Self {
        Self::from_action(Side::Left, 0, alg.dims().to_vec(), alg, |deg, s, b, m| {
            alg.left_basis(s, b, deg as usize).apply(&alg.basis(deg as usize, m))
        })
    }

    /// The one-dimensional module `k` in degree `deg`, on which `A^{>0}` acts by zero and `A^0` by `aug`.
    pub fn one_dimensional(side: Side, deg: i64, alg: &GradedAlgebra<F>, aug: &[F]) -> Self {
        Self::from_action(side, deg, vec![1], alg, |_, s, b, _| if s == 0 { vec![aug[b]] } else { Vec::new() })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn dim(&self, deg: i64) -> usize {
        if deg < self.lo || deg > self.hi() {
            0
        } else {
            self.dims[(deg - self.lo) as usize]
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn alg_dims(&self) -> &[usize] {
        &self.alg_dims
    }

    /// Action of the basis element `b ∈ A^s` from degree `deg`.
    pub fn action_basis(&self, deg: i64, s: usize, b: usize) -> Matrix<F> {
        if deg < self.lo || deg > self.hi() {
            return Matrix::zeros(self.dim(deg + s as i64), 0);
        }
        self.act[(deg - self.lo) as usize][s][b].clone()
    }

    /// Action of `a ∈ A^s` from degree `deg`.
    pub fn action_by(&self, deg: i64, s: usize, a: &[F]) -> Matrix<F> {
        let mut out = Matrix::zeros(self.dim(deg + s as i64), self.dim(deg));
        for (b, &x) in a.iter().enumerate() {
            if !x.is_zero() {
                out = out.checked_add(&self.action_basis(deg, s, b).scale(x)).expect("same shape");
            }
        }
        out
    }

    pub fn act(&self, deg: i64, m: &[F], s: usize, a: &[F]) -> Vec<F> {
        self.action_by(deg, s, a).apply(m)
    }

    /// Associativity against the algebra product and unitality.
    pub fn check(&self, alg: &GradedAlgebra<F>) -> Result<(), YonedaError> {
        for deg in self.degrees() {
            if self.action_by(deg, 0, alg.unit()) != Matrix::identity(self.dim(deg)) {
                return Err(YonedaError::NotAModule(format!("unit does not act as identity in degree {deg}")));
            }
            for s in 0..alg.dims().len() {
                for t in 0..alg.dims().len() - s {
                    for a in 0..alg.dims()[s] {
                        for b in 0..alg.dims()[t] {
                            let (ea, eb) = (alg.basis(s, a), alg.basis(t, b));
                            let ab = alg.mul(s, &ea, t, &eb);
                            let (lhs, rhs) = match self.side {
                                // (m a) b = m (ab)
                                Side::Right => (
                                    &self.action_by(deg + s as i64, t, &eb) * &self.action_by(deg, s, &ea),
                                    self.action_by(deg, s + t, &ab),
                                ),
                                // a (b m) = (ab) m
                                Side::Left => (
                                    &self.action_by(deg + t as i64, s, &ea) * &self.action_by(deg, t, &eb),
                                    self.action_by(deg, s + t, &ab),
                                ),
                            };
                            if lhs != rhs {
                                return Err(YonedaError::NotAModule(format!(
                                    "associativity fails in degree {deg} for ({}, {})",
                                    alg.label(s, a),
                                    alg.label(t, b)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The same space over `A^op` on the other side, with `a ∗ m = (-1)^{|a||m|} m · a`
    /// (and symmetrically from left to right).
    pub fn opposite_side(&self) -> Self {
        let act = self
            .act
            .iter()
            .enumerate()
            .map(|(k, per_s)| {
                let deg = self.lo + k as i64;
                per_s.iter().enumerate().map(|(s, mats)| mats.iter().map(|m| m.scale(F::sign(deg * s as i64))).collect()).collect()
            })
            .collect();
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        GradedModule { side, lo: self.lo, dims: self.dims.clone(), alg_dims: self.alg_dims.clone(), act }
    }

    /// The same action with every degree moved up by `t`.
    pub fn shifted(&self, t: i64) -> Self {
        GradedModule { lo: self.lo + t, ..self.clone() }
    }

    /// The submodule spanned by `m · a` (or `a · m`) for the given homogeneous generators.
    pub fn generated_subspaces(&self, gens: &[(i64, Vec<F>)]) -> Vec<Subspace<F>> {
        let mut spaces: Vec<Subspace<F>> = self.dims.iter().map(|&n| Subspace::zero(n)).collect();
        for (deg, g) in gens {
            for s in 0..self.alg_dims.len() {
                let target = deg + s as i64;
                if target > self.hi() {
                    break;
                }
                for b in 0..self.alg_dims[s] {
                    spaces[(target - self.lo) as usize].insert(&self.action_basis(*deg, s, b).apply(g));
                }
            }
        }
        spaces
    }

    /// Checks that the subspaces are stable under the action.
    pub fn is_submodule(&self, spaces: &[Subspace<F>]) -> bool {
        self.degrees().all(|deg| {
            let k = (deg - self.lo) as usize;
            spaces[k].basis().iter().all(|v| {
                (0..self.alg_dims.len()).all(|s| {
                    let t = deg + s as i64;
                    t > self.hi() || (0..self.alg_dims[s]).all(|b| spaces[(t - self.lo) as usize].contains(&self.action_basis(deg, s, b).apply(v)))
                })
            })
        })
    }

    /// The submodule on the given stable subspaces, with its inclusion.
    pub fn submodule(&self, spaces: &[Subspace<F>]) -> (Self, GradedMap<F>) {
        let dims: Vec<usize> = spaces.iter().map(Subspace::dim).collect();
        let at = |deg: i64| &spaces[(deg - self.lo) as usize];
        let act = self
            .degrees()
            .map(|deg| {
                (0..self.alg_dims.len())
                    .map(|s| {
                        (0..self.alg_dims[s])
                            .map(|b| {
                                let t = deg + s as i64;
                                let rows = if t > self.hi() { 0 } else { at(t).dim() };
                                let cols: Vec<Vec<F>> = at(deg)
                                    .basis()
                                    .iter()
                                    .map(|v| {
                                        if rows == 0 {
                                            Vec::new()
                                        } else {
                                            at(t).coordinates(&self.action_basis(deg, s, b).apply(v)).expect("subspaces are stable")
                                        }
                                    })
                                    .collect();
                                Matrix::from_columns(rows, &cols).expect("coordinate lengths agree")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let sub = GradedModule { side: self.side, lo: self.lo, dims, alg_dims: self.alg_dims.clone(), act };
        let blocks = self.degrees().map(|deg| Matrix::from_columns(self.dim(deg), at(deg).basis()).expect("ambient length")).collect();
        (sub, GradedMap { degree: 0, src_lo: self.lo, blocks })
    }

    /// The quotient by stable subspaces, with its projection.
    pub fn quotient(&self, spaces: &[Subspace<F>]) -> (Self, GradedMap<F>) {
        let at = |deg: i64| &spaces[(deg - self.lo) as usize];
        let free_cols = |deg: i64| -> Vec<usize> {
            let s = at(deg);
            let pivots: Vec<usize> = s.basis().iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect();
            (0..self.dim(deg)).filter(|c| !pivots.contains(c)).collect()
        };
        let project = |deg: i64| -> Matrix<F> {
            let free = free_cols(deg);
            let cols: Vec<Vec<F>> = (0..self.dim(deg))
                .map(|c| {
                    let r = at(deg).reduce(&unit_vector(self.dim(deg), c));
                    free.iter().map(|&f| r[f]).collect()
                })
                .collect();
            Matrix::from_columns(free.len(), &cols).expect("projection shape")
        };
        let dims: Vec<usize> = self.degrees().map(|deg| free_cols(deg).len()).collect();
        let act = self
            .degrees()
            .map(|deg| {
                let free = free_cols(deg);
                (0..self.alg_dims.len())
                    .map(|s| {
                        (0..self.alg_dims[s])
                            .map(|b| {
                                let t = deg + s as i64;
                                if t > self.hi() {
                                    return Matrix::zeros(0, free.len());
                                }
                                let p = project(t);
                                let cols: Vec<Vec<F>> =
                                    free.iter().map(|&f| p.apply(&self.action_basis(deg, s, b).apply(&unit_vector(self.dim(deg), f)))).collect();
                                Matrix::from_columns(p.rows(), &cols).expect("projection shape")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let quot = GradedModule { side: self.side, lo: self.lo, dims, alg_dims: self.alg_dims.clone(), act };
        let blocks = self.degrees().map(project).collect();
        (quot, GradedMap { degree: 0, src_lo: self.lo, blocks })
    }

    /// Direct sum, with blocks `self` then `other` in each degree.
    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.side, other.side, "modules on different sides");
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let dims: Vec<usize> = (lo..=hi).map(|d| self.dim(d) + other.dim(d)).collect();
        let act = (lo..=hi)
            .map(|deg| {
                (0..self.alg_dims.len())
                    .map(|s| {
                        (0..self.alg_dims[s])
                            .map(|b| {
                                let t = deg + s as i64;
                                let (x, y) = (self.action_basis(deg, s, b), other.action_basis(deg, s, b));
                                let rows = if t > hi { 0 } else { self.dim(t) + other.dim(t) };
                                Matrix::from_fn(rows, self.dim(deg) + other.dim(deg), |r, c| {
                                    let (r1, c1) = (self.dim(t), self.dim(deg));
                                    match (r < r1, c < c1) {
                                        (true, true) => x[(r, c)],
                                        (false, false) => y[(r - r1, c - c1)],
                                        _ => F::zero(),
                                    }
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        GradedModule { side: self.side, lo, dims, alg_dims: self.alg_dims.clone(), act }
    }
}

/// A linear map of graded modules raising degrees by `degree`; `blocks[k]` starts in `src_lo + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap<F: Field> {
    pub degree: i64,
    pub src_lo: i64,
    pub blocks: Vec<Matrix<F>>,
}

impl<F: Field> GradedMap<F> {
    pub fn identity(m: &GradedModule<F>) -> Self {
        GradedMap { degree: 0, src_lo: m.lo(), blocks: m.degrees().map(|d| Matrix::identity(m.dim(d))).collect() }
    }

    pub fn zero(src: &GradedModule<F>, tgt: &GradedModule<F>, degree: i64) -> Self {
        GradedMap { degree, src_lo: src.lo(), blocks: src.degrees().map(|d| Matrix::zeros(tgt.dim(d + degree), src.dim(d))).collect() }
    }

    /// The block starting in degree `deg` (an empty matrix outside the source).
    pub fn block(&self, deg: i64, src: &GradedModule<F>, tgt: &GradedModule<F>) -> Matrix<F> {
        let k = deg - self.src_lo;
        if k < 0 || k as usize >= self.blocks.len() {
            Matrix::zeros(tgt.dim(deg + self.degree), src.dim(deg))
        } else {
            self.blocks[k as usize].clone()
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Self, src: &GradedModule<F>, mid: &GradedModule<F>, tgt: &GradedModule<F>) -> Self {
        let blocks = src
            .degrees()
            .map(|d| &other.block(d + self.degree, mid, tgt) * &self.block(d, src, mid))
            .collect();
        GradedMap { degree: self.degree + other.degree, src_lo: src.lo(), blocks }
    }

    /// `f(m a) = f(m) a` for right modules, `f(a m) = (-1)^{t|a|} a f(m)` for left modules.
    pub fn is_linear(&self, src: &GradedModule<F>, tgt: &GradedModule<F>) -> bool {
        let t = self.degree;
        src.degrees().all(|deg| {
            (0..src.alg_dims().len()).all(|s| {
                let sign = if src.side() == Side::Left { F::sign(t * s as i64) } else { F::one() };
                (0..src.alg_dims()[s]).all(|b| {
                    let lhs = &self.block(deg + s as i64, src, tgt) * &src.action_basis(deg, s, b);
                    let rhs = (&tgt.action_basis(deg + t, s, b) * &self.block(deg, src, tgt)).scale(sign);
                    lhs == rhs
                })
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }
}

/// A basis of the module maps `src → tgt` of degree `t`.
pub fn hom_space<F: Field>(src: &GradedModule<F>, tgt: &GradedModule<F>, t: i64) -> Vec<GradedMap<F>> {
    let degs: Vec<i64> = src.degrees().collect();
    let mut offsets = Vec::with_capacity(degs.len());
    let mut total = 0;
    for &d in &degs {
        offsets.push(total);
        total += tgt.dim(d + t) * src.dim(d);
    }
    let var = |k: usize, r: usize, c: usize| offsets[k] + r * src.dim(degs[k]) + c;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for (k, &deg) in degs.iter().enumerate() {
        for s in 0..src.alg_dims().len() {
            let sign = if src.side() == Side::Left { F::sign(t * s as i64) } else { F::one() };
            let k2 = k + s;
            for b in 0..src.alg_dims()[s] {
                let a_src = src.action_basis(deg, s, b);
                let a_tgt = tgt.action_basis(deg + t, s, b);
                // X^{deg+s} a_src - sign a_tgt X^{deg} = 0, an equation per entry
                for r in 0..tgt.dim(deg + s as i64 + t) {
                    for c in 0..src.dim(deg) {
                        let mut eq = vec![F::zero(); total];
                        if k2 < degs.len() {
                            for m in 0..src.dim(deg + s as i64) {
                                eq[var(k2, r, m)] += a_src[(m, c)];
                            }
                        }
                        for m in 0..tgt.dim(deg + t) {
                            eq[var(k, m, c)] -= sign * a_tgt[(r, m)];
                        }
                        if eq.iter().any(|x| !x.is_zero()) {
                            rows.push(eq);
                        }
                    }
                }
            }
        }
    }
    let system = if rows.is_empty() { Matrix::zeros(0, total) } else { Matrix::from_rows(rows).expect("equal widths") };
    system
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let blocks = degs
                .iter()
                .enumerate()
                .map(|(k, &d)| Matrix::from_fn(tgt.dim(d + t), src.dim(d), |r, c| v[var(k, r, c)]))
                .collect();
            GradedMap { degree: t, src_lo: src.lo(), blocks }
        })
        .collect()
}

/// `Σ coeffs[i] maps[i]`.
pub fn combine<F: Field>(maps: &[GradedMap<F>], coeffs: &[F]) -> Option<GradedMap<F>> {
    let first = maps.first()?;
    let mut blocks: Vec<Matrix<F>> = first.blocks.iter().map(|b| Matrix::zeros(b.rows(), b.cols())).collect();
    for (m, &c) in maps.iter().zip(coeffs) {
        for (acc, b) in blocks.iter_mut().zip(&m.blocks) {
            *acc = acc.checked_add(&b.scale(c)).expect("same shape");
        }
    }
    Some(GradedMap { degree: first.degree, src_lo: first.src_lo, blocks })
}

/// Flattens a homogeneous module element list into a vector of coordinates.
pub fn flatten<F: Field>(blocks: &[Matrix<F>]) -> Vec<F> {
    let mut out = Vec::new();
    for b in blocks {
        for r in 0..b.rows() {
            out.extend_from_slice(b.row(r));
        }
    }
    out
}

