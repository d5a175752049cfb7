//! Dg modules: a [`GradedModule`] with per-basis weights and a degree +1 differential.

use std::collections::BTreeMap;
use std::fmt;

use super::algebra::DgAlgebra;
use super::{Bigraded, DgError};
use crate::exactla::{Matrix, Subspace};
use crate::field::Field;
use crate::yoneda::{GradedModule, Side};

/// Weights in which a finite object agrees with the (possibly infinite) object it stands for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ValidWeights {
    pub min: Option<i64>,
    pub max: Option<i64>,
}

impl ValidWeights {
    pub const ALL: ValidWeights = ValidWeights { min: None, max: None };

    pub fn contains(&self, w: i64) -> bool {
        self.min.is_none_or(|m| m <= w) && self.max.is_none_or(|m| w <= m)
    }

    pub fn covers(&self, lo: i64, hi: i64) -> bool {
        self.contains(lo) && self.contains(hi)
    }
}

impl fmt::Display for ValidWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.min.map_or("-inf".to_string(), |m| m.to_string());
        let hi = self.max.map_or("inf".to_string(), |m| m.to_string());
        write!(f, "[{lo}, {hi}]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgModule<F: Field> {
    module: GradedModule<F>,
    weights: Vec<Vec<i64>>,
    // diff[k]: degree lo+k -> lo+k+1
    diff: Vec<Matrix<F>>,
    valid: ValidWeights,
}

impl<F: Field> DgModule<F> {
    /// Checks shapes and weight homogeneity of `d`; the algebra axioms are checked by [`Self::check`].
    pub fn new(module: GradedModule<F>, weights: Vec<Vec<i64>>, diff: Vec<Matrix<F>>) -> Result<Self, DgError> {
        let m = DgModule { module, weights, diff, valid: ValidWeights::ALL };
        let n = m.module.dims().len();
        if m.weights.len() != n || m.diff.len() != n {
            return Err(DgError::NotDg("weights or differential missing for some degree".into()));
        }
        for deg in m.degrees() {
            let k = (deg - m.lo()) as usize;
            if m.weights[k].len() != m.dim(deg) {
                return Err(DgError::NotDg(format!("weights in degree {deg} do not match the dimension")));
            }
            let d = &m.diff[k];
            if d.rows() != m.dim(deg + 1) || d.cols() != m.dim(deg) {
                return Err(DgError::NotDg(format!("differential from degree {deg} has the wrong shape")));
            }
            for c in 0..d.cols() {
                for r in 0..d.rows() {
                    if !d[(r, c)].is_zero() && m.weights_at(deg + 1)[r] != m.weights[k][c] {
                        return Err(DgError::NotDg(format!("d does not preserve weights in degree {deg}")));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Zero differential and weight equal to degree.
    pub fn formal(module: GradedModule<F>) -> Self {
        let weights = module.degrees().map(|d| vec![d; module.dim(d)]).collect();
        let diff = module.degrees().map(|d| Matrix::zeros(module.dim(d + 1), module.dim(d))).collect();
        DgModule { module, weights, diff, valid: ValidWeights::ALL }
    }

    pub fn zero(side: Side, alg: &DgAlgebra<F>) -> Self {
        Self::formal(GradedModule::from_action(side, 0, Vec::new(), alg.graded(), |_, _, _, _| Vec::new()))
    }

    pub fn with_valid(mut self, valid: ValidWeights) -> Self {
        self.valid = valid;
        self
    }

    pub fn valid(&self) -> ValidWeights {
        self.valid
    }

    pub fn module(&self) -> &GradedModule<F> {
        &self.module
    }

    pub fn side(&self) -> Side {
        self.module.side()
    }

    pub fn lo(&self) -> i64 {
        self.module.lo()
    }

    pub fn hi(&self) -> i64 {
        self.module.hi()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.module.degrees()
    }

    pub fn dim(&self, deg: i64) -> usize {
        self.module.dim(deg)
    }

    pub fn total_dim(&self) -> usize {
        self.module.total_dim()
    }

    pub fn weights_at(&self, deg: i64) -> &[i64] {
        if deg < self.lo() || deg > self.hi() {
            &[]
        } else {
            &self.weights[(deg - self.lo()) as usize]
        }
    }

    /// Smallest and largest weight present.
    pub fn weight_range(&self) -> Option<(i64, i64)> {
        let all = self.weights.iter().flatten();
        Some((*all.clone().min()?, *all.max()?))
    }

    /// `d` from degree `deg`, shape `dim(deg+1) × dim(deg)`.
    pub fn diff_at(&self, deg: i64) -> Matrix<F> {
        if deg < self.lo() || deg > self.hi() {
            Matrix::zeros(self.dim(deg + 1), self.dim(deg))
        } else {
            self.diff[(deg - self.lo()) as usize].clone()
        }
    }

    /// The same complex over `A^op` on the other side (see [`GradedModule::opposite_side`]).
    pub fn opposite_side(&self) -> Self {
        DgModule { module: self.module.opposite_side(), ..self.clone() }
    }

    /// `M ⊕ N`, exact where both summands are.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let module = self.module.direct_sum(&other.module);
        let weights = module.degrees().map(|d| [self.weights_at(d), other.weights_at(d)].concat()).collect();
        let diff = module
            .degrees()
            .map(|d| {
                let (x, y) = (self.diff_at(d), other.diff_at(d));
                Matrix::from_fn(x.rows() + y.rows(), x.cols() + y.cols(), |r, c| match (r < x.rows(), c < x.cols()) {
                    (true, true) => x[(r, c)],
                    (false, false) => y[(r - x.rows(), c - x.cols())],
                    _ => F::zero(),
                })
            })
            .collect();
        let valid = ValidWeights {
            min: self.valid.min.max(other.valid.min),
            max: match (self.valid.max, other.valid.max) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
        };
        DgModule { module, weights, diff, valid }
    }

    /// `cone(id) = M[1] ⊕ M` with `d(x, y) = (-dx, x + dy)`.
    pub fn cone_of_identity(&self, alg: &DgAlgebra<F>) -> Self {
        let lo = self.lo() - 1;
        let degs: Vec<i64> = (lo..=self.hi()).collect();
        let dims: Vec<usize> = degs.iter().map(|&n| self.dim(n + 1) + self.dim(n)).collect();
        let split = |n: i64| self.dim(n + 1);
        let side = self.side();
        let module = GradedModule::from_action(side, lo, dims, alg.graded(), |n, s, b, idx| {
            let (x_dim, tgt) = (split(n), n + s as i64);
            let mut out = vec![F::zero(); self.dim(tgt + 1) + self.dim(tgt)];
            if idx < x_dim {
                let sign = if side == Side::Left { F::sign(s as i64) } else { F::one() };
                let v = self.module.action_basis(n + 1, s, b).column(idx);
                for (r, x) in v.into_iter().enumerate() {
                    out[r] = sign * x;
                }
            } else {
                let v = self.module.action_basis(n, s, b).column(idx - x_dim);
                let off = self.dim(tgt + 1);
                for (r, x) in v.into_iter().enumerate() {
                    out[off + r] = x;
                }
            }
            out
        });
        let weights = degs.iter().map(|&n| [self.weights_at(n + 1), self.weights_at(n)].concat()).collect();
        let diff = degs
            .iter()
            .map(|&n| {
                let (xd, yd) = (self.dim(n + 1), self.dim(n));
                let (xd2, yd2) = (self.dim(n + 2), self.dim(n + 1));
                let dx = self.diff_at(n + 1);
                let dy = self.diff_at(n);
                Matrix::from_fn(xd2 + yd2, xd + yd, |r, c| match (r < xd2, c < xd) {
                    (true, true) => -dx[(r, c)],
                    (false, true) => {
                        if r - xd2 == c {
                            F::one()
                        } else {
                            F::zero()
                        }
                    }
                    (false, false) => dy[(r - xd2, c - xd)],
                    (true, false) => F::zero(),
                })
            })
            .collect();
        DgModule { module, weights, diff, valid: self.valid }
    }

    /// Module axioms, `d² = 0`, weight homogeneity of the action and the Leibniz rule.
    pub fn check(&self, alg: &DgAlgebra<F>) -> Result<(), DgError> {
        self.module.check(alg.graded())?;
        for deg in self.degrees() {
            if !(&self.diff_at(deg + 1) * &self.diff_at(deg)).is_zero() {
                return Err(DgError::NotDg(format!("d² ≠ 0 from degree {deg}")));
            }
            for s in 0..alg.dims().len() {
                let tgt = deg + s as i64;
                for b in 0..alg.dims()[s] {
                    let act = self.module.action_basis(deg, s, b);
                    let wa = alg.weight(s, b);
                    for c in 0..act.cols() {
                        for r in 0..act.rows() {
                            if !act[(r, c)].is_zero() && self.weights_at(tgt)[r] != self.weights_at(deg)[c] + wa {
                                return Err(DgError::NotDg(format!("action is not weight homogeneous in degree {deg}")));
                            }
                        }
                    }
                    let da: Vec<F> = if s < alg.top() { alg.diff(s).column(b) } else { Vec::new() };
                    let lhs = &self.diff_at(tgt) * &act;
                    let with_da = if da.is_empty() { Matrix::zeros(self.dim(tgt + 1), self.dim(deg)) } else { self.module.action_by(deg, s + 1, &da) };
                    let rhs = match self.side() {
                        Side::Left => with_da.checked_add(&(&self.module.action_basis(deg + 1, s, b) * &self.diff_at(deg)).scale(F::sign(s as i64)))?,
                        Side::Right => (&self.module.action_basis(deg + 1, s, b) * &self.diff_at(deg)).checked_add(&with_da.scale(F::sign(deg)))?,
                    };
                    if lhs != rhs {
                        return Err(DgError::NotDg(format!("Leibniz rule fails in degree {deg} for {}", alg.graded().label(s, b))));
                    }
                }
            }
        }
        Ok(())
    }

    fn indices_of_weight(&self, deg: i64, w: i64) -> Vec<usize> {
        self.weights_at(deg).iter().enumerate().filter(|(_, &x)| x == w).map(|(i, _)| i).collect()
    }

    /// Cycles and boundaries of `d` in bidegree `(deg, w)`, as full coordinate vectors.
    pub(crate) fn cycles_and_boundaries(&self, deg: i64, w: i64) -> (Vec<Vec<F>>, Vec<Vec<F>>) {
        let idx = self.indices_of_weight(deg, w);
        let n = self.dim(deg);
        let d = select_columns(&self.diff_at(deg), &idx);
        let cycles = d.kernel_basis().into_iter().map(|c| scatter(n, &idx, &c)).collect();
        let prev = self.indices_of_weight(deg - 1, w);
        let dp = self.diff_at(deg - 1);
        let boundaries = prev.iter().map(|&c| dp.column(c)).collect();
        (cycles, boundaries)
    }

    /// `dim h^{deg, w}` for every bidegree.
    pub fn cohomology(&self) -> Bigraded {
        let mut out = Bigraded::default();
        for deg in self.degrees() {
            let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
            for (i, &w) in self.weights_at(deg).iter().enumerate() {
                by_weight.entry(w).or_default().push(i);
            }
            for (w, idx) in by_weight {
                let out_rank = select_columns(&self.diff_at(deg), &idx).rank();
                let prev = self.indices_of_weight(deg - 1, w);
                let in_rank = select_columns(&self.diff_at(deg - 1), &prev).rank();
                out.add(deg, w, idx.len() - out_rank - in_rank);
            }
        }
        out
    }

    /// `h*(M)` in weights `≥ min_weight`, summed over weights, as a module over `h*(A) = A`.
    /// Requires a formal algebra; the action is computed on cycle representatives.
    pub fn cohomology_module(&self, alg: &DgAlgebra<F>, min_weight: i64) -> Result<GradedModule<F>, DgError> {
        if !alg.is_formal() {
            return Err(DgError::StructureMismatch("cohomology modules need a formal algebra".into()));
        }
        if self.valid.max.is_some() || self.valid.min.is_some_and(|m| m > min_weight) {
            return Err(DgError::WindowTooSmall { lo: min_weight, hi: min_weight, valid: self.valid });
        }
        let degs: Vec<i64> = self.degrees().collect();
        // per degree: classes of each weight, concatenated
        let mut per_degree: Vec<Vec<(i64, Classes<F>)>> = Vec::new();
        for &deg in &degs {
            let mut ws: Vec<i64> = self.weights_at(deg).iter().copied().filter(|&w| w >= min_weight).collect();
            ws.sort_unstable();
            ws.dedup();
            let mut list = Vec::new();
            for w in ws {
                let (z, b) = self.cycles_and_boundaries(deg, w);
                let c = Classes::new(self.dim(deg), &b, &z);
                if !c.reps.is_empty() {
                    list.push((w, c));
                }
            }
            per_degree.push(list);
        }
        let mut first = 0;
        while first < degs.len() && per_degree[first].is_empty() {
            first += 1;
        }
        let mut last = degs.len();
        while last > first && per_degree[last - 1].is_empty() {
            last -= 1;
        }
        if first == last {
            return Ok(GradedModule::from_action(self.side(), 0, Vec::new(), alg.graded(), |_, _, _, _| Vec::new()));
        }
        let lo = degs[first];
        let dims: Vec<usize> = (first..last).map(|k| per_degree[k].iter().map(|(_, c)| c.reps.len()).sum()).collect();
        let locate = |k: usize, mut idx: usize| {
            for (w, c) in &per_degree[k] {
                if idx < c.reps.len() {
                    return (*w, &c.reps[idx]);
                }
                idx -= c.reps.len();
            }
            unreachable!("class index in range")
        };
        let module = GradedModule::from_action(self.side(), lo, dims.clone(), alg.graded(), |deg, s, b, idx| {
            let k = (deg - degs[0]) as usize;
            let (w, rep) = locate(k, idx);
            let tgt = deg + s as i64;
            let tk = (tgt - degs[0]) as usize;
            let image = self.module.action_basis(deg, s, b).apply(rep);
            let tw = w + alg.weight(s, b);
            let mut out = Vec::new();
            if tk < per_degree.len() {
                for (w2, c) in &per_degree[tk] {
                    if *w2 == tw {
                        out.extend(c.coords(&image));
                    } else {
                        out.extend(vec![F::zero(); c.reps.len()]);
                    }
                }
            }
            out
        });
        Ok(module)
    }

    /// Plain-text structure constants: header, weights, action and differential blocks.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let side = if self.side() == Side::Left { "left" } else { "right" };
        out.push_str(&format!("dgmodule {side} lo {}\n", self.lo()));
        for deg in self.degrees() {
            let ws: Vec<String> = self.weights_at(deg).iter().map(i64::to_string).collect();
            out.push_str(&format!("degree {deg} dim {} weights {}\n", self.dim(deg), ws.join(" ")));
        }
        for deg in self.degrees() {
            for s in 0..self.module.alg_dims().len() {
                for b in 0..self.module.alg_dims()[s] {
                    let m = self.module.action_basis(deg, s, b);
                    if m.rows() > 0 && m.cols() > 0 && !m.is_zero() {
                        out.push_str(&format!("act {deg} {s} {b} {}\n", matrix_text(&m)));
                    }
                }
            }
            let d = self.diff_at(deg);
            if d.rows() > 0 && d.cols() > 0 && !d.is_zero() {
                out.push_str(&format!("diff {deg} {}\n", matrix_text(&d)));
            }
        }
        out
    }

    /// Inverse of [`Self::to_text`]; the algebra fixes the shape of the action table.
    pub fn from_text(alg: &DgAlgebra<F>, text: &str) -> Result<Self, DgError> {
        let err = |line: usize, message: &str| DgError::Parse { line, message: message.to_string() };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (l0, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 4 || h[0] != "dgmodule" || h[2] != "lo" {
            return Err(err(l0 + 1, "expected `dgmodule <side> lo <n>`"));
        }
        let side = match h[1] {
            "left" => Side::Left,
            "right" => Side::Right,
            _ => return Err(err(l0 + 1, "side must be left or right")),
        };
        let lo: i64 = h[3].parse().map_err(|_| err(l0 + 1, "bad lo"))?;
        let mut dims = Vec::new();
        let mut weights = Vec::new();
        let mut acts: BTreeMap<(i64, usize, usize), Matrix<F>> = BTreeMap::new();
        let mut diffs: BTreeMap<i64, Matrix<F>> = BTreeMap::new();
        for (ln, line) in lines {
            let t: Vec<&str> = line.split_whitespace().collect();
            let int = |s: &str| s.parse::<i64>().map_err(|_| err(ln + 1, "bad integer"));
            match t[0] {
                "degree" => {
                    if t.len() < 5 || t[2] != "dim" || t[4] != "weights" {
                        return Err(err(ln + 1, "expected `degree <n> dim <k> weights ...`"));
                    }
                    if int(t[1])? != lo + dims.len() as i64 {
                        return Err(err(ln + 1, "degrees must be consecutive"));
                    }
                    let k = int(t[3])? as usize;
                    let ws = t[5..].iter().map(|s| int(s)).collect::<Result<Vec<_>, _>>()?;
                    if ws.len() != k {
                        return Err(err(ln + 1, "weight count differs from dim"));
                    }
                    dims.push(k);
                    weights.push(ws);
                }
                "act" if t.len() >= 4 => {
                    let key = (int(t[1])?, int(t[2])? as usize, int(t[3])? as usize);
                    acts.insert(key, parse_matrix(&t[4..].join(" ")).ok_or_else(|| err(ln + 1, "bad matrix"))?);
                }
                "diff" if t.len() >= 2 => {
                    diffs.insert(int(t[1])?, parse_matrix(&t[2..].join(" ")).ok_or_else(|| err(ln + 1, "bad matrix"))?);
                }
                _ => return Err(err(ln + 1, "unknown line")),
            }
        }
        let dim_at = |d: i64| if d < lo || d >= lo + dims.len() as i64 { 0 } else { dims[(d - lo) as usize] };
        let module = GradedModule::from_action(side, lo, dims.clone(), alg.graded(), |deg, s, b, m| match acts.get(&(deg, s, b)) {
            Some(mat) if mat.cols() == dim_at(deg) && mat.rows() == dim_at(deg + s as i64) => mat.column(m),
            _ => vec![F::zero(); dim_at(deg + s as i64)],
        });
        let diff = (0..dims.len())
            .map(|k| {
                let deg = lo + k as i64;
                diffs.get(&deg).cloned().unwrap_or_else(|| Matrix::zeros(dim_at(deg + 1), dims[k]))
            })
            .collect();
        let m = Self::new(module, weights, diff)?;
        m.check(alg)?;
        Ok(m)
    }
}

fn matrix_text<F: Field>(m: &Matrix<F>) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.value().to_string()).collect::<Vec<_>>().join(" ")).collect();
    format!("{}x{} {}", m.rows(), m.cols(), rows.join(" ; "))
}

fn parse_matrix<F: Field>(s: &str) -> Option<Matrix<F>> {
    let (shape, body) = s.split_once(' ')?;
    let (r, c) = shape.split_once('x')?;
    let (r, c): (usize, usize) = (r.parse().ok()?, c.parse().ok()?);
    let rows: Vec<Vec<F>> = body.split(';').map(|row| row.split_whitespace().map(|x| x.parse::<i64>().ok().map(F::from_i64)).collect::<Option<Vec<F>>>()).collect::<Option<_>>()?;
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return None;
    }
    Matrix::from_rows(rows).ok()
}

pub(crate) fn select_columns<F: Field>(m: &Matrix<F>, idx: &[usize]) -> Matrix<F> {
    Matrix::from_fn(m.rows(), idx.len(), |r, c| m[(r, idx[c])])
}

pub(crate) fn scatter<F: Field>(n: usize, idx: &[usize], v: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (&i, &x) in idx.iter().zip(v) {
        out[i] = x;
    }
    out
}

/// Representatives of `Z / B` and coordinates of cycles against them.
#[derive(Clone, Debug)]
pub(crate) struct Classes<F: Field> {
    pub reps: Vec<Vec<F>>,
    solver: Matrix<F>,
    boundary_dim: usize,
}

impl<F: Field> Classes<F> {
    pub fn new(ambient: usize, boundaries: &[Vec<F>], cycles: &[Vec<F>]) -> Self {
        let b = Subspace::spanned_by(ambient, boundaries);
        let basis = b.basis().to_vec();
        let mut span = b;
        let reps: Vec<Vec<F>> = cycles.iter().filter(|z| span.insert(z)).cloned().collect();
        let cols: Vec<Vec<F>> = basis.iter().chain(&reps).cloned().collect();
        let solver = Matrix::from_columns(ambient, &cols).expect("column length");
        Classes { reps, solver, boundary_dim: basis.len() }
    }

    /// Class coordinates of a cycle.
    pub fn coords(&self, z: &[F]) -> Vec<F> {
        if self.reps.is_empty() {
            return Vec::new();
        }
        let x = self.solver.solve(z).expect("length").expect("argument is a cycle");
        x[self.boundary_dim..].to_vec()
    }
}
