//! Finite groups given by multiplication tables, with a designated subgroup.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;

use super::SmoothRepError;
use crate::exactla::Matrix;
use crate::field::Field;

/// A finite group `G` on `0..n` together with a subgroup `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroupDatum {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    id: usize,
    subgroup: Vec<usize>,
    subgroup_mask: Vec<bool>,
}

/// A left coset `gU` (or a double coset `UgU`): sorted members, least member first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub rep: usize,
    pub members: Vec<usize>,
}

impl FinGroupDatum {
    /// Validates the table (closure, associativity, identity, inverses) and the subgroup.
    pub fn new(mul: Vec<Vec<usize>>, inv: Vec<usize>, id: usize, subgroup: Vec<usize>) -> Result<Self, SmoothRepError> {
        let n = mul.len();
        let bad = |msg: String| Err(SmoothRepError::InvalidGroup(msg));
        if n == 0 {
            return bad("empty group".into());
        }
        if mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("multiplication table is not an n x n table on 0..n".into());
        }
        if inv.len() != n || inv.iter().any(|&x| x >= n) {
            return bad("inverse list has the wrong shape".into());
        }
        if id >= n || (0..n).any(|g| mul[id][g] != g || mul[g][id] != g) {
            return bad(format!("{id} is not a two-sided identity"));
        }
        if let Some(g) = (0..n).find(|&g| mul[g][inv[g]] != id || mul[inv[g]][g] != id) {
            return bad(format!("inverse of {g} is wrong"));
        }
        for (a, b, c) in (0..n).cartesian_product(0..n).cartesian_product(0..n).map(|((a, b), c)| (a, b, c)) {
            if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                return bad(format!("not associative at ({a}, {b}, {c})"));
            }
        }
        let mut sub: Vec<usize> = subgroup.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if sub.iter().any(|&x| x >= n) {
            return bad("subgroup member out of range".into());
        }
        let mut mask = vec![false; n];
        for &u in &sub {
            mask[u] = true;
        }
        if !mask[id] {
            return bad("subgroup misses the identity".into());
        }
        if sub.iter().any(|&u| !mask[inv[u]] || sub.iter().any(|&v| !mask[mul[u][v]])) {
            return bad("subgroup is not closed".into());
        }
        sub.sort_unstable();
        Ok(FinGroupDatum { mul, inv, id, subgroup: sub, subgroup_mask: mask })
    }

    /// From a multiplication table alone; the identity and inverses are read off the table.
    pub fn from_table(mul: Vec<Vec<usize>>, subgroup: Vec<usize>) -> Result<Self, SmoothRepError> {
        let n = mul.len();
        let id = (0..n)
            .find(|&e| mul[e].len() == n && (0..n).all(|g| mul[e][g] == g && mul.get(g).and_then(|r| r.get(e)) == Some(&g)))
            .ok_or_else(|| SmoothRepError::InvalidGroup("the table has no identity".into()))?;
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| mul[a].get(b) == Some(&id)).ok_or_else(|| SmoothRepError::InvalidGroup(format!("{a} has no inverse"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(mul, inv, id, subgroup)
    }

    /// The same group with another designated subgroup.
    pub fn with_subgroup(&self, subgroup: Vec<usize>) -> Result<Self, SmoothRepError> {
        Self::new(self.mul.clone(), self.inv.clone(), self.id, subgroup)
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn in_subgroup(&self, g: usize) -> bool {
        self.subgroup_mask[g]
    }

    /// `a b c`.
    pub fn mul3(&self, a: usize, b: usize, c: usize) -> usize {
        self.mul(self.mul(a, b), c)
    }

    /// `h x h^-1`.
    pub fn conj(&self, h: usize, x: usize) -> usize {
        self.mul3(h, x, self.inv(h))
    }

    /// Left cosets `gU`, ordered by their least members.
    pub fn left_cosets(&self) -> Vec<Coset> {
        left_cosets_in(self, &(0..self.order()).collect_vec(), &self.subgroup)
    }

    /// Least representatives of the left cosets.
    pub fn coset_reps(&self) -> Vec<usize> {
        self.left_cosets().into_iter().map(|c| c.rep).collect()
    }

    /// For every element, the index of its left coset in [`Self::left_cosets`].
    pub fn coset_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.order()];
        for (i, c) in self.left_cosets().iter().enumerate() {
            for &g in &c.members {
                idx[g] = i;
            }
        }
        idx
    }

    /// Double cosets `UgU`, ordered by their least members.
    pub fn double_cosets(&self) -> Vec<Coset> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in self.elements() {
            if seen[g] {
                continue;
            }
            let members: BTreeSet<usize> = self
                .subgroup
                .iter()
                .flat_map(|&u| self.subgroup.iter().map(move |&v| (u, v)))
                .map(|(u, v)| self.mul3(u, g, v))
                .collect();
            for &m in &members {
                seen[m] = true;
            }
            out.push(Coset { rep: g, members: members.into_iter().collect() });
        }
        out
    }

    /// For every element, the index of its double coset in [`Self::double_cosets`].
    pub fn double_coset_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.order()];
        for (i, c) in self.double_cosets().iter().enumerate() {
            for &g in &c.members {
                idx[g] = i;
            }
        }
        idx
    }

    /// `U ∩ hUh^-1`, sorted.
    pub fn conjugate_intersection(&self, h: usize) -> Vec<usize> {
        self.subgroup.iter().copied().filter(|&u| self.in_subgroup(self.mul3(self.inv(h), u, h))).collect()
    }

    /// Writes `g = u h u'` with `u, u'` in `U`, if `g` lies in `UhU`.
    pub fn double_coset_factor(&self, h: usize, g: usize) -> Option<(usize, usize)> {
        for &u in &self.subgroup {
            let rest = self.mul3(self.inv(h), self.inv(u), g);
            if self.in_subgroup(rest) {
                return Some((u, rest));
            }
        }
        None
    }

    /// Plain-text table: `order n`, n table rows, the inverse row, then `U: ...`.
    pub fn to_table_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "order {}", self.order());
        for row in &self.mul {
            let _ = writeln!(s, "{}", row.iter().join(" "));
        }
        let _ = writeln!(s, "{}", self.inv.iter().join(" "));
        let _ = writeln!(s, "U: {}", self.subgroup.iter().join(" "));
        s
    }

    /// Parses the format written by [`Self::to_table_text`].
    pub fn parse_table(text: &str) -> Result<Self, SmoothRepError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line: usize, msg: &str| SmoothRepError::Parse { line, message: msg.to_string() };
        let (ln, head) = lines.next().ok_or_else(|| err(1, "missing `order n` line"))?;
        let n: usize = head
            .strip_prefix("order")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| err(ln, "expected `order n`"))?;
        let parse_row = |ln: usize, l: &str| -> Result<Vec<usize>, SmoothRepError> {
            let row: Vec<usize> = l.split_whitespace().map(str::parse).collect::<Result<_, _>>().map_err(|_| err(ln, "non-integer entry"))?;
            if row.len() != n {
                return Err(err(ln, &format!("expected {n} entries, found {}", row.len())));
            }
            Ok(row)
        };
        let mut mul = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, l) = lines.next().ok_or_else(|| err(ln, "table ended early"))?;
            mul.push(parse_row(ln, l)?);
        }
        let (ln, l) = lines.next().ok_or_else(|| err(ln, "missing inverse line"))?;
        let inv = parse_row(ln, l)?;
        let (ln, l) = lines.next().ok_or_else(|| err(ln, "missing `U:` line"))?;
        let members = l.strip_prefix("U:").ok_or_else(|| err(ln, "expected `U:`"))?;
        let sub: Vec<usize> = members.split_whitespace().map(str::parse).collect::<Result<_, _>>().map_err(|_| err(ln, "non-integer subgroup member"))?;
        if sub.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err(ln, "subgroup members must be strictly increasing"));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(err(ln, "trailing content"));
        }
        let id = (0..n).find(|&e| (0..n).all(|g| mul[e][g] == g)).ok_or_else(|| err(ln, "no identity element"))?;
        Self::new(mul, inv, id, sub)
    }
}

/// Left cosets of `sub` inside the subgroup with elements `within`, by least member.
pub fn left_cosets_in(g: &FinGroupDatum, within: &[usize], sub: &[usize]) -> Vec<Coset> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut sorted = within.to_vec();
    sorted.sort_unstable();
    for &x in &sorted {
        if seen.contains(&x) {
            continue;
        }
        let members: BTreeSet<usize> = sub.iter().map(|&u| g.mul(x, u)).collect();
        seen.extend(members.iter().copied());
        out.push(Coset { rep: x, members: members.into_iter().collect() });
    }
    out
}

fn from_closure(elems: usize, mul: impl Fn(usize, usize) -> usize, id: usize, subgroup: Vec<usize>) -> FinGroupDatum {
    let table: Vec<Vec<usize>> = (0..elems).map(|a| (0..elems).map(|b| mul(a, b)).collect()).collect();
    let inv = (0..elems).map(|a| (0..elems).find(|&b| table[a][b] == id).expect("finite group has inverses")).collect();
    FinGroupDatum::new(table, inv, id, subgroup).expect("bundled group tables are valid")
}

/// Permutations of `{0,1,2}` in lexicographic order; `(στ)(i) = σ(τ(i))`.
pub fn s3_elements() -> Vec<[usize; 3]> {
    (0..3).permutations(3).map(|p| [p[0], p[1], p[2]]).collect()
}

/// `S_3` with `U = ⟨(12)⟩`. Element 0 is the identity, 2 is `(12)`, 5 is `(13)`.
pub fn s3() -> FinGroupDatum {
    let el = s3_elements();
    let index = |p: [usize; 3]| el.iter().position(|&q| q == p).expect("permutation");
    let mul = |a: usize, b: usize| {
        let (s, t) = (el[a], el[b]);
        index([s[t[0]], s[t[1]], s[t[2]]])
    };
    let u = vec![0, index([1, 0, 2])];
    from_closure(6, mul, 0, u)
}

/// Index of the transposition swapping positions `i` and `j` in [`s3`].
pub fn s3_transposition(i: usize, j: usize) -> usize {
    let mut p = [0, 1, 2];
    p.swap(i, j);
    s3_elements().iter().position(|&q| q == p).expect("permutation")
}

/// Cyclic group of order `n` with subgroup generated by `sub_gen`.
pub fn cyclic(n: usize, sub_gen: usize) -> FinGroupDatum {
    let mut u: Vec<usize> = (0..n).map(|k| (k * sub_gen) % n).collect();
    u.sort_unstable();
    u.dedup();
    from_closure(n, |a, b| (a + b) % n, 0, u)
}

/// `C_4` with `U = C_2`.
pub fn c4() -> FinGroupDatum {
    cyclic(4, 2)
}

/// Dihedral group of order 8 with `U` generated by a reflection.
/// Element `2k + f` is `r^k s^f`.
pub fn d4() -> FinGroupDatum {
    let mul = |a: usize, b: usize| {
        let (k1, f1) = (a / 2, a % 2);
        let (k2, f2) = (b / 2, b % 2);
        let k = if f1 == 0 { (k1 + k2) % 4 } else { (k1 + 4 - k2) % 4 };
        2 * k + (f1 ^ f2)
    };
    from_closure(8, mul, 0, vec![0, 1])
}

/// `(Z/p)^d ⋊ C` with `U = (Z/p)^d`, where `c` acts on `(Z/p)^d` by `action[c]`.
/// Element `c * p^d + v` encodes `(v, c)` with `v` read in base `p`, least digit first.
pub fn semidirect<F: Field>(d: usize, c: &FinGroupDatum, action: &[Matrix<F>]) -> Result<FinGroupDatum, SmoothRepError> {
    let p = F::ORDER as usize;
    let vol = p.checked_pow(d as u32).ok_or_else(|| SmoothRepError::InvalidGroup("group too large".into()))?;
    let n = vol * c.order();
    if n > 256 {
        return Err(SmoothRepError::InvalidGroup(format!("semidirect product of order {n} is too large")));
    }
    if action.len() != c.order() || action.iter().any(|m| m.rows() != d || m.cols() != d) {
        return Err(SmoothRepError::InvalidGroup("one d x d action matrix per element of C is required".into()));
    }
    let decode = |v: usize| -> Vec<F> { (0..d).map(|i| F::from_i64(((v / p.pow(i as u32)) % p) as i64)).collect() };
    let encode = |v: &[F]| -> usize { v.iter().enumerate().map(|(i, x)| x.value() as usize * p.pow(i as u32)).sum() };
    let mul = |a: usize, b: usize| {
        let (ca, va) = (a / vol, decode(a % vol));
        let (cb, vb) = (b / vol, decode(b % vol));
        let moved = action[ca].apply(&vb);
        let sum: Vec<F> = va.iter().zip(&moved).map(|(&x, &y)| x + y).collect();
        c.mul(ca, cb) * vol + encode(&sum)
    };
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
    let id = c.id() * vol;
    let inv = (0..n)
        .map(|a| (0..n).find(|&b| table[a][b] == id))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| SmoothRepError::InvalidGroup("action does not define a group".into()))?;
    let u: Vec<usize> = (0..vol).map(|v| id + v).collect();
    FinGroupDatum::new(table, inv, id, u)
}
