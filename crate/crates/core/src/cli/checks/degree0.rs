//! Degree-zero identities on a finite pair `(G, U)` and its Hecke algebra.

use super::{ensure, ensure_eq, CheckResult, Context};
use crate::exactla::{axpy, unit_vector, Matrix};
use crate::field::Field;
use crate::smoothrep::group::left_cosets_in;
use crate::smoothrep::maps::*;
use crate::smoothrep::{FinGroupDatum, HeckeAlgebra, HomSpace, InducedRep, Rep};

/// Largest group for which the regular representation joins the test representations.
const REGULAR_LIMIT: usize = 12;

fn reps<F: Field>(g: &FinGroupDatum) -> Vec<(&'static str, Rep<F>)> {
    let mut out = vec![("trivial", Rep::trivial(g)), ("cosets", Rep::coset_permutation(g))];
    if g.order() <= REGULAR_LIMIT {
        out.push(("regular", Rep::regular(g)));
    }
    out
}

fn pairs<F: Field>(g: &FinGroupDatum) -> Vec<(String, DegreeZero<F>)> {
    let rs = reps::<F>(g);
    let mut out = Vec::new();
    for (n1, v1) in &rs {
        for (n2, v2) in &rs {
            let z = DegreeZero::new(g, v1.clone(), v2.clone(), Rep::trivial(g)).expect("representations of G");
            out.push((format!("V1={n1}, V2={n2}"), z));
        }
    }
    out
}

pub(super) fn run<F: Field>(id: &str, ctx: &Context<F>) -> Option<CheckResult> {
    let f: fn(&FinGroupDatum) -> CheckResult = match id {
        "char-fn-action" => char_fn_action::<F>,
        "j-involution" => j_involution::<F>,
        "jprime-involution" => jprime_involution::<F>,
        "rec-roundtrip" => rec_roundtrip::<F>,
        "jprime-via-rec" => jprime_via_rec::<F>,
        "refined-trace" => refined_trace::<F>,
        "jprime-j" => jprime_j::<F>,
        "anti-swap" => anti_swap::<F>,
        "factor-fr" => factor_fr::<F>,
        "tr-cores" => tr_cores::<F>,
        "support-swap" => support_swap::<F>,
        "jprime-support-swap" => jprime_support_swap::<F>,
        "shapiro" => shapiro_check::<F>,
        "hecke-associative" => hecke_associative::<F>,
        "j0-anti" => j0_anti::<F>,
        "j0-involution" => j0_involution::<F>,
        "hecke-endomorphism" => hecke_endomorphism::<F>,
        "j0-matches-j" => j0_matches_j::<F>,
        _ => return None,
    };
    Some(ctx.group().and_then(f))
}

fn char_fn_action<F: Field>(g: &FinGroupDatum) -> CheckResult {
    for (name, v) in reps::<F>(g) {
        let ind = InducedRep::new(g, &v)?;
        for a in g.elements() {
            for h in g.elements() {
                for j in 0..v.dim() {
                    let e = unit_vector(v.dim(), j);
                    let at = || format!("V={name}, a={a}, h={h}, v=e{j}");
                    ensure_eq(&ind.action(a).apply(&ind.char_fn(h, &e)), &ind.char_fn(g.mul(a, h), &e), at)?;
                    ensure_eq(&ind.eval(&ind.char_fn(h, &e), h), &e, at)?;
                }
            }
        }
    }
    Ok(())
}

fn j_involution<F: Field>(g: &FinGroupDatum) -> CheckResult {
    for (name, z) in pairs::<F>(g) {
        let space = z.hom_v1_ind2();
        for (k, a) in space.basis().iter().enumerate() {
            let ja = z.j(a)?;
            ensure(space.contains(&ja), || format!("{name}, basis {k}"), || format!("{ja:?}"), "a U-linear map")?;
            ensure_eq(&z.j(&ja)?, a, || format!("{name}, basis {k}"))?;
        }
    }
    Ok(())
}

fn jprime_involution<F: Field>(g: &FinGroupDatum) -> CheckResult {
    for (name, z) in pairs::<F>(g) {
        for (k, l) in z.hom_ind2_v1().basis().iter().enumerate() {
            ensure_eq(&z.jprime(&z.jprime(l)?)?, l, || format!("{name}, basis {k}"))?;
        }
    }
    Ok(())
}

fn rec_roundtrip<F: Field>(g: &FinGroupDatum) -> CheckResult {
    for (name, z) in pairs::<F>(g) {
        for (k, a) in z.hom_v2_ind1().basis().iter().enumerate() {
            ensure_eq(&z.rec_inv(&z.rec(a)?)?, a, || format!("{name}, rec_inv(rec(basis {k}))"))?;
        }
        for (k, b) in z.hom_ind2_v1().basis().iter().enumerate() {
            ensure_eq(&z.rec(&z.rec_inv(b)?)?, b, || format!("{name}, rec(rec_inv(basis {k}))"))?;
        }
    }
    Ok(())
}

fn jprime_via_rec<F: Field>(g: &FinGroupDatum) -> CheckResult {
    for (name, z) in pairs::<F>(g) {
        for (k, l) in z.hom_ind2_v1().basis().iter().enumerate() {
            let via = z.rec(&z.j_swapped(&z.rec_inv(l)?)?)?;
            ensure_eq(&z.jprime(l)?, &via, || format!("{name}, basis {k}"))?;
        }
    }
    Ok(())
}

fn triples<F: Field>(g: &FinGroupDatum) -> Result<Vec<(String, DegreeZero<F>)>, super::Failure> {
    let rs = reps::<F>(g);
    let mut out = Vec::new();
    for (n1, v1) in &rs {
        for (n2, v2) in &rs {
            for (n3, v3) in &rs {
                out.push((format!("V1={n1}, V2={n2}, V3={n3}"), DegreeZero::new(g, v1.clone(), v2.clone(), v3.clone())?));
            }
        }
    }
    Ok(out)
}

fn refined_trace<F: Field>(g: &FinGroupDatum) -> CheckResult {
    for (name, z) in triples::<F>(g)? {
        let target = z.hom_ind1_v3();
        for (i, c) in z.hom_ind2_v3().basis().iter().enumerate() {
            for (j, d) in z.hom_v1_ind2().basis().iter().enumerate() {
                let at = || format!("{name}, C=basis {i}, D=basis {j}");
                let p = z.pairing(c, d)?;
                ensure(target.contains(&p), at, || format!("{p:?}"), "a U-linear map ind V1 → V3")?;
                ensure_eq(&z.trace(&p)?, &(c * d), at)?;
            }
        }
    }
    Ok(())
}

fn jprime_j<F: Field>(g: &FinGroupDatum) -> CheckResult {
    for (name, z) in triples::<F>(g)? {
        for (i, c) in z.hom_ind2_v3().basis().iter().enumerate() {
            for (j, d) in z.hom_v1_ind2().basis().iter().enumerate() {
                let lhs = z.pairing(&z.jprime_v3(c)?, d)?;
                let rhs = z.jprime_outer(&z.pairing(c, &z.j(d)?)?)?;
                ensure_eq(&lhs, &rhs, || format!("{name}, C=basis {i}, D=basis {j}"))?;
            }
        }
    }
    Ok(())
}

fn anti_swap<F: Field>(g: &FinGroupDatum) -> CheckResult {
    let x = InducedRep::<F>::new(g, &Rep::trivial(g))?;
    let xx = tensor_square(&x);
    let s = swap_matrix::<F>(x.dim());
    let all: Vec<usize> = g.elements().collect();
    for (name, v) in reps::<F>(g) {
        let hom = HomSpace::between(&xx, &v, &all);
        for (k, l) in hom.basis().iter().enumerate() {
            let lhs = involution_jprime(&v, &x, &swap_identification(&x, l)?)?;
            let rhs = swap_identification(&x, &(l * &s))?;
            ensure_eq(&lhs, &rhs, || format!("V={name}, basis {k}"))?;
        }
    }
    Ok(())
}

fn fixed_pairs<F: Field>(g: &FinGroupDatum) -> Vec<(&'static str, Rep<F>, usize, Vec<F>)> {
    let mut out = Vec::new();
    for (name, v) in reps::<F>(g) {
        for h in g.elements() {
            for w in v.fixed_vectors(&g.conjugate_intersection(h)) {
                out.push((name, v.clone(), h, w));
            }
        }
    }
    out
}

fn factor_fr<F: Field>(g: &FinGroupDatum) -> CheckResult {
    let x = InducedRep::<F>::new(g, &Rep::trivial(g))?;
    for (name, v, h, w) in fixed_pairs::<F>(g) {
        let fr = frobenius(&x, &v, h, &w)?;
        let hw = v.action(g.inv(h)).apply(&w);
        let lhs = involution_jprime(&v, &x, &fr)?;
        ensure_eq(&lhs, &frobenius(&x, &v, g.inv(h), &hw)?, || format!("V={name}, h={h}, v={w:?}"))?;
    }
    Ok(())
}

fn tr_cores<F: Field>(g: &FinGroupDatum) -> CheckResult {
    let x = InducedRep::<F>::new(g, &Rep::trivial(g))?;
    for (name, v, h, w) in fixed_pairs::<F>(g) {
        let tr = trace(&x, &frobenius(&x, &v, h, &w)?)?;
        let mut cores = vec![F::zero(); v.dim()];
        for c in left_cosets_in(g, g.subgroup(), &g.conjugate_intersection(h)) {
            axpy(&mut cores, F::one(), &v.action(c.rep).apply(&w));
        }
        ensure_eq(&tr.column(0), &cores, || format!("V={name}, h={h}, v={w:?}"))?;
    }
    Ok(())
}

fn support_swap<F: Field>(g: &FinGroupDatum) -> CheckResult {
    for (name, z) in pairs::<F>(g) {
        for h in z.double_coset_reps() {
            for (k, a) in z.hom_v1_ind2().basis().iter().enumerate() {
                let lhs = z.j(&project_to_double_coset(&z.ind2, h, a))?;
                let rhs = project_to_double_coset(&z.ind2, g.inv(h), &z.j(a)?);
                ensure_eq(&lhs, &rhs, || format!("{name}, h={h}, basis {k}"))?;
            }
        }
    }
    Ok(())
}

fn jprime_support_swap<F: Field>(g: &FinGroupDatum) -> CheckResult {
    for (name, z) in pairs::<F>(g) {
        for h in z.double_coset_reps() {
            for (k, l) in z.hom_ind2_v1().basis().iter().enumerate() {
                let lhs = z.jprime(&restrict_to_double_coset(&z.ind2, h, l))?;
                let rhs = restrict_to_double_coset(&z.ind2, g.inv(h), &z.jprime(l)?);
                ensure_eq(&lhs, &rhs, || format!("{name}, h={h}, basis {k}"))?;
            }
        }
    }
    Ok(())
}

fn shapiro_check<F: Field>(g: &FinGroupDatum) -> CheckResult {
    for (name, v) in reps::<F>(g) {
        let z = DegreeZero::new(g, v.clone(), v.clone(), Rep::trivial(g))?;
        for h in g.elements() {
            let hi = g.inv(h);
            for (k, a) in z.hom_v1_ind2().basis().iter().enumerate() {
                let at = || format!("V={name}, h={h}, basis {k}");
                let comp = project_to_double_coset(&z.ind2, h, a);
                let sh = shapiro(&v, &z.ind2, h, &comp)?;
                ensure_eq(&shapiro_inv(&v, &z.ind2, h, &sh)?, &comp, at)?;
                let jc = z.j(&comp)?;
                ensure_eq(&shapiro(&v, &z.ind2, hi, &jc)?, &conjugation_pushforward(&v, &v, h, &sh)?, at)?;
            }
        }
    }
    Ok(())
}

fn hecke_associative<F: Field>(g: &FinGroupDatum) -> CheckResult {
    let h = HeckeAlgebra::<F>::new(g);
    let n = h.dim();
    for a in 0..n {
        let ea = h.basis(a);
        ensure_eq(&h.mul(&h.unit(), &ea), &ea, || format!("1 * T_{a}"))?;
        ensure_eq(&h.mul(&ea, &h.unit()), &ea, || format!("T_{a} * 1"))?;
        for b in 0..n {
            for c in 0..n {
                let (eb, ec) = (h.basis(b), h.basis(c));
                ensure_eq(&h.mul(&h.mul(&ea, &eb), &ec), &h.mul(&ea, &h.mul(&eb, &ec)), || format!("(T_{a}, T_{b}, T_{c})"))?;
            }
        }
    }
    Ok(())
}

fn j0_anti<F: Field>(g: &FinGroupDatum) -> CheckResult {
    let h = HeckeAlgebra::<F>::new(g);
    for a in 0..h.dim() {
        for b in 0..h.dim() {
            let (ea, eb) = (h.basis(a), h.basis(b));
            ensure_eq(&h.j0(&h.mul(&ea, &eb)), &h.mul(&h.j0(&eb), &h.j0(&ea)), || format!("(T_{a}, T_{b})"))?;
        }
    }
    Ok(())
}

fn j0_involution<F: Field>(g: &FinGroupDatum) -> CheckResult {
    let h = HeckeAlgebra::<F>::new(g);
    for a in 0..h.dim() {
        ensure_eq(&h.j0(&h.j0(&h.basis(a))), &h.basis(a), || format!("T_{a}"))?;
    }
    Ok(())
}

fn hecke_endomorphism<F: Field>(g: &FinGroupDatum) -> CheckResult {
    let h = HeckeAlgebra::<F>::new(g);
    for a in 0..h.dim() {
        for b in 0..h.dim() {
            let (ea, eb) = (h.basis(a), h.basis(b));
            ensure_eq(&h.endomorphism(&h.mul(&ea, &eb)), &(&h.endomorphism(&eb) * &h.endomorphism(&ea)), || format!("(T_{a}, T_{b})"))?;
        }
    }
    Ok(())
}

fn j0_matches_j<F: Field>(g: &FinGroupDatum) -> CheckResult {
    let h = HeckeAlgebra::<F>::new(g);
    let x = InducedRep::<F>::new(g, &Rep::trivial(g))?;
    let k = Rep::trivial(g);
    for a in 0..h.dim() {
        let alpha = Matrix::from_columns(x.dim(), &[h.as_function(&h.basis(a))])?;
        let j = involution_j(&k, &x, &alpha)?;
        ensure_eq(&j.column(0), &h.as_function(&h.j0(&h.basis(a))), || format!("T_{a}"))?;
    }
    Ok(())
}
