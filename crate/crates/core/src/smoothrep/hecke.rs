//! The Hecke algebra `H(G, U)` of `U`-bi-invariant functions under convolution.

use super::group::{Coset, FinGroupDatum};
use crate::exactla::{axpy, Matrix};
use crate::field::Field;

/// `H(G, U)` in the basis `T_D = char_D` of double cosets, with
/// `(f1 * f2)(x) = Σ_{y ∈ G/U} f1(y) f2(y^-1 x)`.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra<F: Field> {
    group: FinGroupDatum,
    double_cosets: Vec<Coset>,
    dc_index: Vec<usize>,
    coset_reps: Vec<usize>,
    coset_index: Vec<usize>,
    // structure[a][b] = T_a * T_b in the double coset basis
    structure: Vec<Vec<Vec<F>>>,
    inverse_coset: Vec<usize>,
}

impl<F: Field> HeckeAlgebra<F> {
    pub fn new(group: &FinGroupDatum) -> Self {
        let double_cosets = group.double_cosets();
        let dc_index = group.double_coset_index();
        let coset_reps = group.coset_reps();
        let coset_index = group.coset_index();
        let n = double_cosets.len();
        let inverse_coset = double_cosets.iter().map(|d| dc_index[group.inv(d.rep)]).collect();
        let mut h = HeckeAlgebra { group: group.clone(), double_cosets, dc_index, coset_reps, coset_index, structure: Vec::new(), inverse_coset };
        h.structure = (0..n)
            .map(|a| (0..n).map(|b| h.from_function(&h.convolve_functions(&h.as_function(&h.basis(a)), &h.as_function(&h.basis(b))))).collect())
            .collect();
        h
    }

    pub fn dim(&self) -> usize {
        self.double_cosets.len()
    }

    pub fn group(&self) -> &FinGroupDatum {
        &self.group
    }

    pub fn double_cosets(&self) -> &[Coset] {
        &self.double_cosets
    }

    /// Index of the double coset containing `g`.
    pub fn index_of(&self, g: usize) -> usize {
        self.dc_index[g]
    }

    pub fn basis(&self, a: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[a] = F::one();
        v
    }

    /// `T_U`.
    pub fn unit(&self) -> Vec<F> {
        self.basis(self.dc_index[self.group.id()])
    }

    pub fn structure_constants(&self, a: usize, b: usize) -> &[F] {
        &self.structure[a][b]
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (a, &xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if !yb.is_zero() {
                    axpy(&mut out, xa * yb, &self.structure[a][b]);
                }
            }
        }
        out
    }

    /// `J0(T_D) = T_{D^-1}`, i.e. `J0(f)(x) = f(x^-1)`.
    pub fn j0(&self, x: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (a, &xa) in x.iter().enumerate() {
            out[self.inverse_coset[a]] += xa;
        }
        out
    }

    /// The double coset of `D^-1`.
    pub fn inverse_of(&self, a: usize) -> usize {
        self.inverse_coset[a]
    }

    /// As a function on `G/U` in the coset order of the group.
    pub fn as_function(&self, x: &[F]) -> Vec<F> {
        self.coset_reps.iter().map(|&r| x[self.dc_index[r]]).collect()
    }

    /// Back from a bi-invariant function on `G/U`; panics otherwise.
    pub fn from_function(&self, f: &[F]) -> Vec<F> {
        self.try_from_function(f).expect("function is U-bi-invariant")
    }

    /// `None` unless `f` is constant on double cosets.
    pub fn try_from_function(&self, f: &[F]) -> Option<Vec<F>> {
        let mut out: Vec<Option<F>> = vec![None; self.dim()];
        for (i, &r) in self.coset_reps.iter().enumerate() {
            let slot = &mut out[self.dc_index[r]];
            match slot {
                None => *slot = Some(f[i]),
                Some(v) if *v != f[i] => return None,
                Some(_) => {}
            }
        }
        Some(out.into_iter().map(|v| v.unwrap_or_else(F::zero)).collect())
    }

    /// Convolution of right `U`-invariant functions on `G/U`; `f2` must be left invariant too.
    pub fn convolve_functions(&self, f1: &[F], f2: &[F]) -> Vec<F> {
        let g = &self.group;
        self.coset_reps
            .iter()
            .map(|&x| {
                self.coset_reps.iter().enumerate().fold(F::zero(), |acc, (i, &y)| acc + f1[i] * f2[self.coset_index[g.mul(g.inv(y), x)]])
            })
            .collect()
    }

    /// The `G`-endomorphism `char_{gU} ↦ g f` of `X_U`; composition reverses convolution.
    pub fn endomorphism(&self, x: &[F]) -> Matrix<F> {
        let f = self.as_function(x);
        let g = &self.group;
        let m = self.coset_reps.len();
        let mut out = Matrix::zeros(m, m);
        for (col, &gr) in self.coset_reps.iter().enumerate() {
            // (g f)(z) = f(g^-1 z)
            for (row, &z) in self.coset_reps.iter().enumerate() {
                out[(row, col)] = f[self.coset_index[g.mul(g.inv(gr), z)]];
            }
        }
        out
    }
}
