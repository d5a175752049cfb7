use hecke_duality::exactla::{unit_vector, Matrix};
use hecke_duality::field::{Field, F3, F5};
use hecke_duality::smoothrep::group::{c4, d4, s3, s3_elements};
use hecke_duality::smoothrep::maps::*;
use hecke_duality::smoothrep::{FinGroupDatum, HeckeAlgebra, HomSpace, InducedRep, Rep};

fn point_permutation<F: Field>(g: &FinGroupDatum) -> Rep<F> {
    let perms = s3_elements();
    let action = g.elements().map(|x| Matrix::from_fn(3, 3, |r, c| if perms[x][c] == r { F::one() } else { F::zero() })).collect();
    Rep::of_group(g, action).unwrap()
}

fn groups() -> Vec<(&'static str, FinGroupDatum)> {
    vec![("s3", s3()), ("c4", c4()), ("d4", d4())]
}

fn reps_for<F: Field>(name: &str, g: &FinGroupDatum) -> Vec<Rep<F>> {
    let mut out = vec![Rep::trivial(g), Rep::coset_permutation(g)];
    if name == "s3" {
        out.push(point_permutation(g));
    }
    out
}

#[test]
fn induced_dimensions_and_c4_generator() {
    let g = s3();
    let x = InducedRep::<F3>::new(&g, &Rep::trivial(&g)).unwrap();
    assert_eq!(x.dim(), 3);
    let c = c4();
    let xc = InducedRep::<F3>::new(&c, &Rep::trivial(&c)).unwrap();
    assert_eq!(xc.dim(), 2);
    assert_eq!(*xc.action(1), Matrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap());
    let whole = g.with_subgroup(g.elements().collect()).unwrap();
    assert_eq!(InducedRep::<F3>::new(&whole, &Rep::trivial(&whole)).unwrap().dim(), 1);
}

#[test]
fn char_fn_action_law() {
    for (name, g) in groups() {
        for v in reps_for::<F5>(name, &g) {
            let ind = InducedRep::new(&g, &v).unwrap();
            for a in g.elements() {
                for h in g.elements() {
                    for j in 0..v.dim() {
                        let e = unit_vector(v.dim(), j);
                        assert_eq!(ind.action(a).apply(&ind.char_fn(h, &e)), ind.char_fn(g.mul(a, h), &e));
                        assert_eq!(ind.eval(&ind.char_fn(h, &e), h), e);
                    }
                }
            }
        }
    }
}

#[test]
fn involutions_square_to_identity() {
    for (name, g) in groups() {
        for v1 in reps_for::<F3>(name, &g) {
            for v2 in reps_for::<F3>(name, &g) {
                let z = DegreeZero::new(&g, v1.clone(), v2.clone(), Rep::trivial(&g)).unwrap();
                for a in z.hom_v1_ind2().basis() {
                    let ja = z.j(a).unwrap();
                    assert!(z.hom_v1_ind2().contains(&ja));
                    assert_eq!(&z.j(&ja).unwrap(), a);
                }
                for l in z.hom_ind2_v1().basis() {
                    let jl = z.jprime(l).unwrap();
                    assert_eq!(&z.jprime(&jl).unwrap(), l);
                    let via_rec = z.rec(&z.j_swapped(&z.rec_inv(l).unwrap()).unwrap()).unwrap();
                    assert_eq!(jl, via_rec);
                }
                for a in z.hom_v2_ind1().basis() {
                    assert_eq!(&z.rec_inv(&z.rec(a).unwrap()).unwrap(), a);
                }
                assert_eq!(z.hom_v2_ind1().dim(), z.hom_ind2_v1().dim());
            }
        }
    }
}

#[test]
fn pairing_trace_and_jprime_j() {
    for (name, g) in groups() {
        let reps = reps_for::<F3>(name, &g);
        for v3 in &reps {
            let z = DegreeZero::new(&g, Rep::trivial(&g), Rep::trivial(&g), v3.clone()).unwrap();
            for c in z.hom_ind2_v3().basis() {
                for d in z.hom_v1_ind2().basis() {
                    let p = z.pairing(c, d).unwrap();
                    assert!(z.hom_ind1_v3().contains(&p));
                    assert_eq!(z.trace(&p).unwrap(), c * d);
                    let lhs = z.pairing(&z.jprime_v3(c).unwrap(), d).unwrap();
                    let rhs = z.jprime_outer(&z.pairing(c, &z.j(d).unwrap()).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn shapiro_square_and_support_swap() {
    let g = s3();
    let v = point_permutation::<F3>(&g);
    let z = DegreeZero::new(&g, v.clone(), v.clone(), Rep::trivial(&g)).unwrap();
    for h in g.elements() {
        let hi = g.inv(h);
        for a in z.hom_v1_ind2().basis() {
            let comp = project_to_double_coset(&z.ind2, h, a);
            let jc = z.j(&comp).unwrap();
            assert_eq!(jc, project_to_double_coset(&z.ind2, hi, &z.j(a).unwrap()));
            let sh = shapiro(&v, &z.ind2, h, &comp).unwrap();
            assert_eq!(shapiro_inv(&v, &z.ind2, h, &sh).unwrap(), comp);
            let pushed = conjugation_pushforward(&v, &v, h, &sh).unwrap();
            assert_eq!(shapiro(&v, &z.ind2, hi, &jc).unwrap(), pushed);
        }
    }
}

#[test]
fn frobenius_lemmas() {
    let g = s3();
    let x = InducedRep::<F3>::new(&g, &Rep::trivial(&g)).unwrap();
    let v = point_permutation::<F3>(&g);
    for h in g.elements() {
        let u_h = g.conjugate_intersection(h);
        for w in v.fixed_vectors(&u_h) {
            let fr = frobenius(&x, &v, h, &w).unwrap();
            let hw = v.action(g.inv(h)).apply(&w);
            assert_eq!(involution_jprime(&v, &x, &fr).unwrap(), frobenius(&x, &v, g.inv(h), &hw).unwrap());
            let tr = trace(&x, &fr).unwrap();
            let mut cores = vec![F3::from_i64(0); 3];
            for c in hecke_duality::smoothrep::group::left_cosets_in(&g, g.subgroup(), &u_h) {
                hecke_duality::exactla::axpy(&mut cores, F3::from_i64(1), &v.action(c.rep).apply(&w));
            }
            assert_eq!(tr.column(0), cores);
        }
    }
}

#[test]
fn swap_lemma() {
    let g = s3();
    let x = InducedRep::<F3>::new(&g, &Rep::trivial(&g)).unwrap();
    let v = point_permutation::<F3>(&g);
    let xx = tensor_square(&x);
    let hom = HomSpace::between(&xx, &v, &g.elements().collect::<Vec<_>>());
    let s = swap_matrix::<F3>(x.dim());
    for l in hom.basis() {
        let phi = swap_identification(&x, l).unwrap();
        let swapped = swap_identification(&x, &(l * &s)).unwrap();
        assert_eq!(involution_jprime(&v, &x, &phi).unwrap(), swapped);
    }
}

#[test]
fn hecke_algebra() {
    let g = s3();
    let h = HeckeAlgebra::<F3>::new(&g);
    assert_eq!(h.dim(), 2);
    for a in 0..h.dim() {
        for b in 0..h.dim() {
            let (ea, eb) = (h.basis(a), h.basis(b));
            assert_eq!(h.j0(&h.mul(&ea, &eb)), h.mul(&h.j0(&eb), &h.j0(&ea)));
            assert_eq!(h.endomorphism(&h.mul(&ea, &eb)), &h.endomorphism(&eb) * &h.endomorphism(&ea));
            for c in 0..h.dim() {
                let ec = h.basis(c);
                assert_eq!(h.mul(&h.mul(&ea, &eb), &ec), h.mul(&ea, &h.mul(&eb, &ec)));
            }
        }
    }
    let x = InducedRep::<F3>::new(&g, &Rep::trivial(&g)).unwrap();
    let k = Rep::trivial(&g);
    for a in 0..h.dim() {
        let alpha = Matrix::from_columns(x.dim(), &[h.as_function(&h.basis(a))]).unwrap();
        let j = involution_j(&k, &x, &alpha).unwrap();
        assert_eq!(j.column(0), h.as_function(&h.j0(&h.basis(a))));
    }
}
