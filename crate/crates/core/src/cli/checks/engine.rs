//! The dg engine over `Λ(y)` and the Eilenberg–Moore spectral sequences.

use super::{ensure, ensure_eq, CheckResult, Context, Failure, Setting};
use crate::dgcore::derived::{hom_semifree, tensor_semifree};
use crate::dgcore::{
    derived_hom, derived_tensor, derived_tensor_resolving_first, semifree_resolve, DgAlgebra, DgBimodule, DgModule, Generator, ResidualAction,
    SemifreeModule, WeightWindow,
};
use crate::emss::{collapse_check_cohdelta, em_tor_ss, exterior_instances, model_instances, EmssInstance, SpectralSequence};
use crate::field::Field;
use crate::yoneda::{CrossedModel, ExtN, GradedModule, Side};

pub(super) fn run<F: Field>(id: &str, ctx: &Context<F>) -> Option<CheckResult> {
    let f: fn(&Context<F>) -> CheckResult = match id {
        "tor-lambda" => tor_lambda,
        "ext-lambda" => ext_lambda,
        "resolution-invariance" => resolution_invariance,
        "tensor-balanced" => tensor_balanced,
        "emss-abutment" => |c| each_instance(c, abutment),
        "emss-e2" => |c| each_instance(c, |_, ss| ensure(ss.e2_matches_graded_tor, || "E_2".into(), || format!("{:?}", ss.e2().collapsed()), "graded Tor")),
        "emss-rank-identity" => |c| each_instance(c, |_, ss| ensure(ss.rank_identity, || "page passage".into(), || "mismatch".into(), "dim E_{r+1} = dim E_r - ranks")),
        "emss-tor-vanishing" => |c| each_instance(c, |_, ss| ensure(ss.tor_variant_vanishing, || "E_2".into(), || format!("{:?}", ss.e2().collapsed()), "zero for s > 0")),
        "emss-formal-degeneration" => formal_degeneration,
        "emss-ext2" => ext2,
        "emss-equivariance" => equivariance,
        "cohdelta-collapse" => cohdelta,
        _ => return None,
    };
    Some(f(ctx))
}

fn trivial<F: Field>(a: &DgAlgebra<F>, side: Side) -> DgModule<F> {
    DgModule::formal(GradedModule::one_dimensional(side, 0, a.graded(), &vec![F::one(); a.dims()[0]]))
}

fn engine_window<F: Field>(ctx: &Context<F>) -> Result<(i64, i64), Failure> {
    let (lo, hi) = ctx.window.unwrap_or((0, 6));
    if lo < 0 {
        return Err(Failure::Skip("the engine window starts at weight 0 or above".into()));
    }
    Ok((lo, hi))
}

/// `… → A g_2 → A g_1 → A g_0 → k` with `d g_s = y g_{s-1}`, through `g_top`.
fn koszul_chain<F: Field>(a: &DgAlgebra<F>, top: i64) -> Result<SemifreeModule<F>, Failure> {
    let mut s = SemifreeModule::free(vec![Generator { degree: 0, weight: 0, idempotent: 0 }]);
    for w in 1..=top {
        s.push_stage(a, vec![(Generator { degree: 0, weight: w, idempotent: 0 }, vec![((w - 1) as usize, vec![F::one()])])])?;
    }
    Ok(s)
}

fn tor_lambda<F: Field>(ctx: &Context<F>) -> CheckResult {
    let (lo, hi) = engine_window(ctx)?;
    let a = DgAlgebra::<F>::exterior_one();
    let (k_r, k_l) = (trivial(&a, Side::Right), trivial(&a, Side::Left));
    let tor = derived_tensor(&a, &k_r, &k_l, WeightWindow::new(lo, hi)?)?.cohomology().restrict(lo, hi);
    let chain = koszul_chain(&a, hi + 1)?;
    let oracle = tensor_semifree(&a, &k_r, None, &chain).cohomology().restrict(lo, hi);
    ensure_eq(&tor, &oracle, || "k ⊗^L k against the Koszul chain".into())?;
    for w in lo..=hi {
        ensure_eq(&tor.at(0, w), &1, || format!("weight {w}"))?;
    }
    ensure_eq(&tor.total(), &((hi - lo + 1) as usize), || "total".into())
}

fn ext_lambda<F: Field>(ctx: &Context<F>) -> CheckResult {
    let (lo, hi) = engine_window(ctx)?;
    let a = DgAlgebra::<F>::exterior_one();
    let k_l = trivial(&a, Side::Left);
    let ext = derived_hom(&a, &k_l, &k_l, WeightWindow::new(-hi, -lo)?)?.cohomology().restrict(-hi, -lo);
    let chain = koszul_chain(&a, hi + 1)?;
    let oracle = hom_semifree(&a, &chain, &k_l, None).cohomology().restrict(-hi, -lo);
    ensure_eq(&ext, &oracle, || "RHom(k, k) against the Koszul chain".into())?;
    for w in lo..=hi {
        ensure_eq(&ext.at(0, -w), &1, || format!("weight {}", -w))?;
    }
    ensure_eq(&ext.total(), &((hi - lo + 1) as usize), || "total".into())
}

fn resolution_invariance<F: Field>(ctx: &Context<F>) -> CheckResult {
    let (lo, hi) = engine_window(ctx)?;
    let a = DgAlgebra::<F>::exterior_one();
    let w = WeightWindow::new(lo, hi)?;
    let wide = WeightWindow::with_margin(lo, hi, hi - lo + 2)?;
    let k_r = trivial(&a, Side::Right);
    let k_l = trivial(&a, Side::Left);
    let two_term = {
        let mut s = SemifreeModule::free(vec![Generator { degree: 0, weight: 0, idempotent: 0 }]);
        s.push_stage(&a, vec![(Generator { degree: 0, weight: 1, idempotent: 0 }, vec![(0, vec![F::one()])])])?;
        s.materialize(&a)
    };
    let hw = WeightWindow::new(-hi, -lo)?;
    for (name, m) in [("k", k_l.clone()), ("two-term", two_term)] {
        let p = semifree_resolve(&a, &m, wide)?.resolution;
        let direct = derived_tensor(&a, &k_r, &m, w)?.cohomology().restrict(lo, hi);
        let replaced = derived_tensor(&a, &k_r, &p, w)?.cohomology().restrict(lo, hi);
        ensure_eq(&direct, &replaced, || format!("k ⊗^L {name}"))?;
        let direct = derived_hom(&a, &m, &k_l, hw)?.cohomology().restrict(-hi, -lo);
        let replaced = derived_hom(&a, &p, &k_l, hw)?.cohomology().restrict(-hi, -lo);
        ensure_eq(&direct, &replaced, || format!("RHom({name}, k)"))?;
    }
    Ok(())
}

fn tensor_balanced<F: Field>(ctx: &Context<F>) -> CheckResult {
    let (lo, hi) = engine_window(ctx)?;
    let a = DgAlgebra::<F>::exterior_one();
    let k = trivial(&a, Side::Left);
    let w = WeightWindow::new(lo, hi)?;
    for (name, p) in [("k", trivial(&a, Side::Right)), ("A", DgModule::formal(GradedModule::regular_right(a.graded())))] {
        let one = derived_tensor(&a, &p, &k, w)?.cohomology().restrict(lo, hi);
        let two = derived_tensor_resolving_first(&a, &p, &k, w)?.cohomology().restrict(lo, hi);
        ensure_eq(&one, &two, || format!("P={name}"))?;
    }
    Ok(())
}

fn instances<F: Field>(ctx: &Context<F>) -> Result<Vec<EmssInstance<F>>, Failure> {
    let mut out = exterior_instances::<F>();
    if let Setting::Model(m) = &ctx.setting {
        out.extend(model_instances(m)?);
    }
    Ok(out)
}

fn sequence<F: Field>(ctx: &Context<F>, inst: &EmssInstance<F>) -> Result<SpectralSequence, Failure> {
    let hi = ctx.window.map_or(inst.window.1, |w| w.1.max(inst.window.0));
    Ok(em_tor_ss(&inst.alg, &inst.p, &inst.m, None, WeightWindow::new(inst.window.0, hi)?)?)
}

fn each_instance<F: Field>(ctx: &Context<F>, check: fn(&EmssInstance<F>, &SpectralSequence) -> CheckResult) -> CheckResult {
    for inst in instances(ctx)? {
        let ss = sequence(ctx, &inst)?;
        check(&inst, &ss).map_err(|e| match e {
            Failure::Witness(mut w) => {
                w.at = format!("{}: {}", inst.name, w.at);
                Failure::Witness(w)
            }
            other => other,
        })?;
    }
    Ok(())
}

fn abutment<F: Field>(inst: &EmssInstance<F>, ss: &SpectralSequence) -> CheckResult {
    let mut totals = crate::dgcore::Bigraded::default();
    for (&(s, t, w), &c) in &ss.e_infinity().dims {
        totals.add(s + t, w, c);
    }
    ensure_eq(&totals, &ss.abutment, || "Σ E_∞ against h*(P ⊗^L M)".into())?;
    if let Some(expected) = &inst.expected_by_degree {
        let got: Vec<(i64, usize)> = ss.abutment.by_degree().into_iter().filter(|&(_, c)| c > 0).collect();
        ensure_eq(&got, expected, || "closed form".into())?;
    }
    Ok(())
}

fn formal_degeneration<F: Field>(ctx: &Context<F>) -> CheckResult {
    let mut tested = 0;
    for inst in instances(ctx)? {
        if !inst.p.degrees().all(|d| inst.p.diff_at(d).is_zero()) {
            continue;
        }
        let ss = sequence(ctx, &inst)?;
        let ranks: Vec<_> = ss.pages.iter().map(|p| p.differential_ranks.clone()).filter(|r| !r.is_empty()).collect();
        ensure(ss.degenerates_at_e2(), || inst.name.clone(), || format!("{ranks:?}"), "no nonzero d_r for r ≥ 2")?;
        tested += 1;
    }
    ensure(tested > 0, || "instances".into(), || "none formal".into(), "at least one formal instance")
}

fn with_model<F: Field>(ctx: &Context<F>) -> Result<&CrossedModel<F>, Failure> {
    ctx.model()
}

fn ext2<F: Field>(ctx: &Context<F>) -> CheckResult {
    let model = with_model(ctx)?;
    let inst = model_instances(model)?.into_iter().find(|i| i.name == "model-ext2-free").expect("bundled");
    let ss = sequence(ctx, &inst)?;
    let dims = ExtN::new(model, 2)?.dims().to_vec();
    for (deg, &n) in dims.iter().enumerate() {
        ensure_eq(&ss.abutment.by_degree().get(&(deg as i64)).copied().unwrap_or(0), &n, || format!("degree {deg}"))?;
        let e2: usize = ss.e2().collapsed().iter().filter(|(&(s, t), _)| s + t == deg as i64).map(|(_, &c)| c).sum();
        ensure_eq(&e2, &n, || format!("E_2 in total degree {deg}"))?;
    }
    ensure(ss.degenerates_at_e2(), || "E*(2)".into(), || "a nonzero d_r".into(), "E_2 = E_∞")
}

fn equivariance<F: Field>(ctx: &Context<F>) -> CheckResult {
    let model = with_model(ctx)?;
    let e = DgAlgebra::from_model(model);
    let ee = e.tensor(&e);
    let b = DgBimodule::from_ext2(model)?;
    let m = DgModule::formal(GradedModule::regular_left(ee.graded()));
    let ss = em_tor_ss(&ee, &b.main, &m, Some(ResidualAction { alg: &e, action: &b.residual }), WeightWindow::new(0, 3)?)?;
    ensure_eq(&ss.equivariant, &Some(true), || "residual degree-0 action".into())
}

fn cohdelta<F: Field>(ctx: &Context<F>) -> CheckResult {
    let model = with_model(ctx)?;
    let e = model.e_algebra();
    let zero = GradedModule::from_action(Side::Right, 0, vec![0], &e, |_, _, _, _| Vec::new());
    for (name, m) in [("E", GradedModule::regular_right(&e)), ("k", model.trivial_module()), ("H", model.cohomology_module()), ("0", zero)] {
        let r = collapse_check_cohdelta(model, &m, 3, ctx.seed)?;
        let at = || format!("M={name}");
        ensure(r.higher_ext_vanishes, at, || format!("{}", r.ext), "Ext^{s>0} = 0")?;
        ensure(r.row_zero_matches, at, || format!("{}", r.ext), "Ext^0 of the dimensions of Δ_gr(M)")?;
        ensure(r.collapses(), at, || format!("{:?}", r.maindual), "an isomorphism with Δ_gr(M)")?;
    }
    Ok(())
}
