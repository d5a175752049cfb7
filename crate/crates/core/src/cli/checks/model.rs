//! Identities of a crossed model: the algebra `E*`, the pairing, `Δ_gr` and the box product.

use itertools::Itertools;

use super::{ensure, ensure_eq, CheckResult, Context, Failure};
use crate::dgcore::{adjunction_check, boxtimes, swap_descent, DgAlgebra, DgBimodule, DgModule, WeightWindow};
use crate::exactla::{unit_vector, Matrix};
use crate::field::Field;
use crate::yoneda::duality::{check_maindual, extends_along, is_short_exact};
use crate::yoneda::{delta_gr, delta_gr_map, Bimodule, CrossedModel, ExtN, GradedAlgebra, GradedAntiInvolution, GradedModule, Side};

pub(super) fn run<F: Field>(id: &str, ctx: &Context<F>) -> Option<CheckResult> {
    let f: fn(&CrossedModel<F>, &Context<F>) -> CheckResult = match id {
        "e-associative" => |m, _| Ok(m.e_algebra().check_associative_unital()?),
        "chi-determinant" => chi_determinant,
        "j-anti-involution" => |m, _| anti_involution(&m.e_algebra(), &m.anti_involution()?.0),
        "jchi-anti-involution" => |m, _| anti_involution(&m.e_algebra(), &m.twisted_anti_involution()?),
        "degree0-hecke" => degree0_hecke,
        "gram-invertible" => gram_invertible,
        "linear-i" => |m, _| linear(m, false),
        "linear-ii" => |m, _| linear(m, true),
        "actions-commute" => actions_commute,
        "swap-interchange" => swap_interchange,
        "ext2-swap" => ext2_swap,
        "delta-exact" => |m, _| delta_sequences(m, true),
        "delta-injective" => |m, _| delta_sequences(m, false),
        "delta-e" => delta_e,
        "maindual" => maindual,
        "boxtimes-unit" => boxtimes_unit,
        "boxtimes-assoc" => boxtimes_assoc,
        "koszul-descent" => koszul_descent,
        "adjunction" => adjunction,
        _ => return None,
    };
    Some(ctx.model().and_then(|m| f(m, ctx)))
}

/// Cofactor expansion along the first row.
fn cofactor_det<F: Field>(m: &Matrix<F>) -> F {
    let n = m.rows();
    if n == 0 {
        return F::one();
    }
    (0..n).fold(F::zero(), |acc, c| {
        let minor = Matrix::from_fn(n - 1, n - 1, |r, k| m[(r + 1, if k < c { k } else { k + 1 })]);
        acc + F::sign(c as i64) * m[(0, c)] * cofactor_det(&minor)
    })
}

fn chi_determinant<F: Field>(m: &CrossedModel<F>, _: &Context<F>) -> CheckResult {
    let chi = m.duality_character();
    let c = m.c_group();
    for x in c.elements() {
        ensure_eq(&chi[x], &cofactor_det(m.h1_action(x)), || format!("c={x}"))?;
        for y in c.elements() {
            ensure_eq(&chi[c.mul(x, y)], &(chi[x] * chi[y]), || format!("(c, c')=({x}, {y})"))?;
        }
    }
    Ok(())
}

fn anti_involution<F: Field>(alg: &GradedAlgebra<F>, sigma: &GradedAntiInvolution<F>) -> CheckResult {
    for i in 0..alg.dims().len() {
        for a in 0..alg.dims()[i] {
            let e = alg.basis(i, a);
            ensure_eq(&sigma.apply(i, &sigma.apply(i, &e)), &e, || format!("σσ({})", alg.label(i, a)))?;
        }
    }
    for i in 0..alg.dims().len() {
        for j in 0..alg.dims().len() - i {
            let s = F::sign((i * j) as i64);
            for (a, b) in (0..alg.dims()[i]).cartesian_product(0..alg.dims()[j]) {
                let (x, y) = (alg.basis(i, a), alg.basis(j, b));
                let lhs = sigma.apply(i + j, &alg.mul(i, &x, j, &y));
                let rhs: Vec<F> = alg.mul(j, &sigma.apply(j, &y), i, &sigma.apply(i, &x)).into_iter().map(|v| s * v).collect();
                ensure_eq(&lhs, &rhs, || format!("σ({} {})", alg.label(i, a), alg.label(j, b)))?;
            }
        }
    }
    Ok(())
}

fn degree0_hecke<F: Field>(m: &CrossedModel<F>, _: &Context<F>) -> CheckResult {
    let (j, _) = m.anti_involution()?;
    let cmp = m.compare_with_hecke(&j)?;
    ensure(cmp.products_match, || "E^0 products".into(), || "differ from convolution".into(), "convolution in k[U\\G/U]")?;
    ensure(cmp.involution_match, || "J on E^0".into(), || "differs from J0".into(), "J0")
}

fn gram_invertible<F: Field>(m: &CrossedModel<F>, _: &Context<F>) -> CheckResult {
    let b = Bimodule::from_model(m)?;
    for i in 0..=m.d() as i64 {
        let g = b.gram(i);
        ensure(g.is_invertible(), || format!("degree {i}"), || format!("{g:?}"), "an invertible Gram matrix")?;
    }
    Ok(())
}

/// `(i)`: the second action against left multiplication; `(ii)`: the first action against
/// `e σ(τ)` with the Koszul sign. Fails when a model never exercises the sign `-1` in `(ii)`.
fn linear<F: Field>(m: &CrossedModel<F>, second_identity: bool) -> CheckResult {
    let alg = m.e_algebra();
    let b = Bimodule::from_model(m)?;
    let d = m.d() as i64;
    let mut negative = 0;
    for i in 0..=d {
        for s in 0..=(d - i) {
            let e_deg = d - i - s;
            let su = s as usize;
            for (f, t, e) in (0..b.first.dim(i)).cartesian_product(0..alg.dims()[su]).cartesian_product(0..alg.dims()[e_deg as usize]).map(|((f, t), e)| (f, t, e)) {
                let fv = unit_vector(b.first.dim(i), f);
                let tau = alg.basis(su, t);
                let ev = alg.basis(e_deg as usize, e);
                let at = || format!("f=B^{i}[{f}], τ={}, e={}", alg.label(su, t), alg.label(e_deg as usize, e));
                if second_identity {
                    let sign = F::sign(s * e_deg);
                    let lhs = b.pairing(i + s, &b.first.act(i, &fv, su, &tau), e_deg, &ev)?;
                    let rhs = b.pairing(i, &fv, d - i, &alg.mul(e_deg as usize, &ev, su, &b.sigma.apply(su, &tau)))?;
                    ensure_eq(&lhs, &(sign * rhs), at)?;
                    if (s * e_deg) % 2 == 1 && !rhs.is_zero() {
                        negative += 1;
                    }
                } else {
                    let lhs = b.pairing(i + s, &b.second.act(i, &fv, su, &tau), e_deg, &ev)?;
                    let rhs = b.pairing(i, &fv, d - i, &alg.mul(su, &tau, e_deg as usize, &ev))?;
                    ensure_eq(&lhs, &rhs, at)?;
                }
            }
        }
    }
    if second_identity && negative == 0 && d >= 2 {
        return Err(Failure::Witness(super::Witness { at: "all triples".into(), lhs: "no triple with sign -1".into(), rhs: "at least one".into() }));
    }
    Ok(())
}

fn actions_commute<F: Field>(m: &CrossedModel<F>, _: &Context<F>) -> CheckResult {
    let alg = m.e_algebra();
    let b = Bimodule::from_model(m)?;
    let n = alg.dims().len();
    for i in b.first.degrees() {
        for (s, s2) in (0..n).cartesian_product(0..n) {
            for (t, t2) in (0..alg.dims()[s]).cartesian_product(0..alg.dims()[s2]) {
                let (x, y) = (alg.basis(s, t), alg.basis(s2, t2));
                let a = &b.second.action_by(i + s as i64, s2, &y) * &b.first.action_by(i, s, &x);
                let c = &b.first.action_by(i + s2 as i64, s, &x) * &b.second.action_by(i, s2, &y);
                ensure_eq(&a, &c.scale(F::sign((s * s2) as i64)), || format!("B^{i}, ·₁{}, ·₂{}", alg.label(s, t), alg.label(s2, t2)))?;
            }
        }
    }
    Ok(())
}

fn swap_interchange<F: Field>(m: &CrossedModel<F>, _: &Context<F>) -> CheckResult {
    let alg = m.e_algebra();
    let b = Bimodule::from_model(m)?;
    let sw = b.swap();
    for i in b.first.degrees() {
        let blk = sw.block(i, &b.first, &b.first);
        ensure_eq(&(&blk * &blk), &Matrix::identity(b.first.dim(i)), || format!("ς*² on B^{i}"))?;
        for s in 0..alg.dims().len() {
            for t in 0..alg.dims()[s] {
                let tau = alg.basis(s, t);
                let lhs = &sw.block(i + s as i64, &b.first, &b.first) * &b.second.action_by(i, s, &tau);
                let rhs = &b.first.action_by(i, s, &tau) * &blk;
                ensure_eq(&lhs, &rhs, || format!("B^{i}, τ={}", alg.label(s, t)))?;
            }
        }
    }
    Ok(())
}

fn ext2_swap<F: Field>(m: &CrossedModel<F>, _: &Context<F>) -> CheckResult {
    let alg = m.e_algebra();
    let e2 = ExtN::new(m, 2)?;
    let sw = e2.slot_swap()?;
    for deg in e2.left.degrees() {
        let blk = sw.block(deg, &e2.left, &e2.left);
        ensure_eq(&(&blk * &blk), &Matrix::identity(e2.left.dim(deg)), || format!("swap² in degree {deg}"))?;
        for s in 0..alg.dims().len() {
            for t in 0..alg.dims()[s] {
                let tau = alg.basis(s, t);
                let lhs = &sw.block(deg + s as i64, &e2.left, &e2.left) * &e2.rights[0].action_by(deg, s, &tau);
                let rhs = &e2.rights[1].action_by(deg, s, &tau) * &blk;
                ensure_eq(&lhs, &rhs, || format!("degree {deg}, τ={}", alg.label(s, t)))?;
            }
        }
    }
    Ok(())
}

/// Short exact sequences `0 → ⟨x⟩ → M → M/⟨x⟩ → 0` for basis vectors `x` of `E*`, `H*(U, k)`
/// `Δ_gr(E*)` and `E* ⊕ H*(U, k)`. Requires at least 5 sequences (`exact`) or 10 monomorphisms.
fn delta_sequences<F: Field>(m: &CrossedModel<F>, exact: bool) -> CheckResult {
    let alg = m.e_algebra();
    let s = m.twisted_anti_involution()?;
    let d = m.d() as i64;
    let e = GradedModule::regular_right(&alg);
    let target = delta_gr(&alg, &s, d, &e, None)?;
    let h = m.cohomology_module();
    let ambients = [("E", e.clone()), ("H", h.clone()), ("ΔE", target.clone()), ("E⊕H", e.direct_sum(&h))];
    let mut count = 0;
    for (name, amb) in &ambients {
        for deg in amb.degrees() {
            for k in 0..amb.dim(deg) {
                let at = || format!("M={name}, x=basis {k} in degree {deg}");
                let spaces = amb.generated_subspaces(&[(deg, unit_vector(amb.dim(deg), k))]);
                let (sub, inc) = amb.submodule(&spaces);
                let (quot, proj) = amb.quotient(&spaces);
                if exact {
                    ensure(is_short_exact(&inc, &proj, &sub, amb, &quot), at, || "not exact".into(), "a short exact sequence")?;
                    let damb = delta_gr(&alg, &s, d, amb, None)?;
                    let dsub = delta_gr(&alg, &s, d, &sub, None)?;
                    let dquot = delta_gr(&alg, &s, d, &quot, None)?;
                    let dp = delta_gr_map(&proj, amb, &quot, d)?;
                    let di = delta_gr_map(&inc, &sub, amb, d)?;
                    ensure(dp.is_linear(&dquot, &damb) && di.is_linear(&damb, &dsub), at, || "a non-linear dual map".into(), "E*-linear duals")?;
                    ensure(is_short_exact(&dp, &di, &dquot, &damb, &dsub), at, || "dual sequence not exact".into(), "a short exact dual sequence")?;
                } else {
                    for t in (target.lo() - amb.hi())..=(target.hi() - sub.lo()) {
                        ensure(extends_along(&inc, &sub, amb, &target, t), at, || format!("a degree {t} map that does not extend"), "every map extends")?;
                    }
                }
                count += 1;
            }
        }
    }
    let needed = if exact { 5 } else { 10 };
    ensure(count >= needed, || "sequence count".into(), || count.to_string(), &format!("at least {needed}"))
}

fn delta_e<F: Field>(m: &CrossedModel<F>, ctx: &Context<F>) -> CheckResult {
    let alg = m.e_algebra();
    let s = m.twisted_anti_involution()?;
    let b = Bimodule::from_model(m)?;
    let e = GradedModule::regular_right(&alg);
    let r = check_maindual(&alg, &s, m.d() as i64, &e, &b.first, ctx.seed)?;
    ensure(r.is_iso(), || "M=E".into(), || format!("{r:?}"), "an isomorphism")
}

fn maindual<F: Field>(m: &CrossedModel<F>, ctx: &Context<F>) -> CheckResult {
    let alg = m.e_algebra();
    let s = m.twisted_anti_involution()?;
    let d = m.d() as i64;
    let b = Bimodule::from_model(m)?;
    let chi_inv: Vec<F> = m.duality_character().iter().map(|x| x.inv().expect("character values are units")).collect();
    let cases = [
        ("E", GradedModule::regular_right(&alg), b.first.clone()),
        ("k", m.trivial_module(), GradedModule::one_dimensional(Side::Right, d, &alg, &chi_inv)),
        ("H", m.cohomology_module(), m.cohomology_module()),
    ];
    for (name, module, dual) in cases {
        let r = check_maindual(&alg, &s, d, &module, &dual, ctx.seed)?;
        ensure(r.is_iso(), || format!("M={name}"), || format!("{r:?}"), "an isomorphism")?;
    }
    Ok(())
}

fn small_modules<F: Field>(a: &DgAlgebra<F>) -> [(&'static str, DgModule<F>); 2] {
    let aug = vec![F::one(); a.dims()[0]];
    [
        ("A", DgModule::formal(GradedModule::regular_left(a.graded()))),
        ("k", DgModule::formal(GradedModule::one_dimensional(Side::Left, 0, a.graded(), &aug))),
    ]
}

fn window_or(ctx: &Context<impl Field>, lo: i64, hi: i64) -> Result<WeightWindow, Failure> {
    let (lo, hi) = ctx.window.unwrap_or((lo, hi));
    Ok(WeightWindow::new(lo, hi)?)
}

fn boxtimes_unit<F: Field>(m: &CrossedModel<F>, ctx: &Context<F>) -> CheckResult {
    let a = DgAlgebra::from_model(m);
    let unit = DgBimodule::unit_kernel(&a, &vec![F::one(); a.dims()[0]])?;
    let w = window_or(ctx, 0, 3)?;
    let mods = small_modules(&a);
    let k_right = mods[1].1.opposite_side();
    let tor = crate::dgcore::derived_tensor(&a, &k_right, &mods[1].1, w)?.cohomology().restrict(w.lo, w.hi);
    let one = {
        let mut b = crate::dgcore::Bigraded::default();
        b.add(0, 0, 1);
        b
    };
    // 1 ⊠ (M, N) = M ⊗ (k ⊗^L N)
    for ((nx, x), (ny, _)) in mods.iter().cartesian_product(mods.iter()) {
        let y = if *ny == "A" { &mods[0].1 } else { &mods[1].1 };
        let got = boxtimes(&a, &unit, x, y, w)?.module.cohomology().restrict(w.lo, w.hi);
        let second = if *ny == "A" { &one } else { &tor };
        let expected = convolve(&x.cohomology(), second, w.lo, w.hi);
        ensure_eq(&got, &expected, || format!("1 ⊠ ({nx}, {ny})"))?;
    }
    Ok(())
}

fn convolve(x: &crate::dgcore::Bigraded, y: &crate::dgcore::Bigraded, lo: i64, hi: i64) -> crate::dgcore::Bigraded {
    let mut out = crate::dgcore::Bigraded::default();
    for ((d1, w1), c1) in x.iter() {
        for ((d2, w2), c2) in y.iter() {
            if (lo..=hi).contains(&(w1 + w2)) {
                out.add(d1 + d2, w1 + w2, c1 * c2);
            }
        }
    }
    out
}

fn boxtimes_assoc<F: Field>(m: &CrossedModel<F>, ctx: &Context<F>) -> CheckResult {
    let a = DgAlgebra::from_model(m);
    let kernel = DgBimodule::from_ext2(m)?;
    let w = window_or(ctx, 0, 3)?;
    let wide = WeightWindow::with_margin(w.lo, w.hi, w.margin + 2)?;
    let mods = small_modules(&a);
    for (((nx, x), (ny, y)), (nz, z)) in mods.iter().cartesian_product(mods.iter()).cartesian_product(mods.iter()) {
        let left = boxtimes(&a, &kernel, &boxtimes(&a, &kernel, x, y, wide)?.module, z, w)?;
        let right = boxtimes(&a, &kernel, x, &boxtimes(&a, &kernel, y, z, wide)?.module, w)?;
        ensure_eq(&left.module.cohomology().restrict(w.lo, w.hi), &right.module.cohomology().restrict(w.lo, w.hi), || format!("({nx}, {ny}, {nz})"))?;
    }
    Ok(())
}

fn koszul_descent<F: Field>(m: &CrossedModel<F>, ctx: &Context<F>) -> CheckResult {
    let a = DgAlgebra::from_model(m);
    let kernel = DgBimodule::from_ext2(m)?;
    let swap = kernel.swap.clone().ok_or_else(|| Failure::Error("the kernel carries no swap".into()))?;
    let w = window_or(ctx, 0, 2)?;
    for (name, x) in small_modules(&a) {
        let rep = swap_descent(&a, &kernel, &swap, &x, w)?;
        ensure(rep.descends(), || format!("M={name}"), || format!("{rep:?}"), "a chain involution commuting with both actions")?;
    }
    Ok(())
}

fn adjunction<F: Field>(m: &CrossedModel<F>, ctx: &Context<F>) -> CheckResult {
    let a = DgAlgebra::from_model(m);
    let kernel = DgBimodule::from_ext2(m)?;
    let w = window_or(ctx, -3, 1)?;
    let mods = small_modules(&a);
    for (((nm, x), (nn, y)), (nr, z)) in mods.iter().cartesian_product(mods.iter()).cartesian_product(mods.iter()) {
        let rep = adjunction_check(&a, &kernel, x, y, z, w)?;
        ensure(rep.holds(), || format!("(M, N, R)=({nm}, {nn}, {nr})"), || format!("{} vs {}", rep.lhs, rep.rhs), "equal dimensions")?;
    }
    Ok(())
}
