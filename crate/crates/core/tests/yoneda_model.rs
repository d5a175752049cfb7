use hecke_duality::exactla::{unit_vector, Matrix};
use num_traits::{One, Zero};
use hecke_duality::field::{Field, F2, F3, F7};
use hecke_duality::yoneda::duality::{check_maindual, extends_along, is_short_exact, MaindualReport};
use hecke_duality::yoneda::graded::{hom_space, Side};
use hecke_duality::yoneda::model::cyclic_model;
use hecke_duality::yoneda::{delta_gr, delta_gr_map, Bimodule, CrossedModel, ExtN, GradedModule, YonedaError};
use itertools::Itertools;

fn sign_model() -> CrossedModel<F3> {
    cyclic_model(1, 2, &Matrix::from_ints(&[&[-1]]).unwrap()).unwrap()
}

fn diag_model() -> CrossedModel<F3> {
    cyclic_model(2, 2, &Matrix::from_ints(&[&[-1, 0], &[0, 1]]).unwrap()).unwrap()
}

fn c3_model() -> CrossedModel<F2> {
    cyclic_model(2, 3, &Matrix::from_ints(&[&[0, 1], &[1, 1]]).unwrap()).unwrap()
}

fn leibniz<F: Field>(m: &Matrix<F>) -> F {
    let n = m.rows();
    (0..n)
        .permutations(n)
        .map(|p| {
            let inversions = (0..n).tuple_combinations().filter(|&(i, j)| p[i] > p[j]).count();
            (0..n).fold(F::sign(inversions as i64), |acc, i| acc * m[(i, p[i])])
        })
        .fold(F::zero(), |a, b| a + b)
}

#[test]
fn exterior_algebra_shapes() {
    let m = diag_model();
    let l = m.exterior_algebra();
    assert_eq!(l.dims(), &[1, 2, 1]);
    let y1 = unit_vector::<F3>(2, 0);
    let y2 = unit_vector::<F3>(2, 1);
    let a = l.mul(1, &y1, 1, &y2);
    let b = l.mul(1, &y2, 1, &y1);
    assert_eq!(a, b.iter().map(|&x| -x).collect::<Vec<_>>());
    assert_eq!(l.mul(1, &y1, 1, &y1), vec![F3::zero()]);
    let m3 = cyclic_model::<F3>(3, 1, &Matrix::identity(3)).unwrap();
    assert_eq!(m3.exterior_algebra().total_dim(), 8);
}

#[test]
fn e_algebras_are_associative() {
    sign_model().e_algebra().check_associative_unital().unwrap();
    diag_model().e_algebra().check_associative_unital().unwrap();
    c3_model().e_algebra().check_associative_unital().unwrap();
    assert_eq!(sign_model().e_dims(), vec![2, 2]);
}

#[test]
fn duality_character_matches_determinant() {
    let m = sign_model();
    assert_eq!(m.duality_character(), vec![F3::one(), F3::from_i64(2)]);
    for c in m.c_group().elements() {
        assert_eq!(m.duality_character()[c], leibniz(m.h1_action(c)));
    }
    let c3 = c3_model();
    for c in c3.c_group().elements() {
        assert_eq!(c3.duality_character()[c], leibniz(c3.h1_action(c)));
    }
    let sl = cyclic_model::<F3>(2, 2, &Matrix::from_ints(&[&[-1, 0], &[0, -1]]).unwrap()).unwrap();
    assert!(sl.duality_character().iter().all(|&x| x == F3::one()));
}

#[test]
fn anti_involutions() {
    for result in [sign_model().anti_involution().map(|_| ()), diag_model().anti_involution().map(|_| ())] {
        result.unwrap();
    }
    let m = sign_model();
    let alg = m.e_algebra();
    let (j, norm) = m.anti_involution().unwrap();
    assert_eq!(norm.exponent, 1);
    let yc = alg.basis(1, m.e_index(0, 1));
    assert_eq!(j.apply(1, &yc), yc.iter().map(|&x| -x).collect::<Vec<_>>());
    let jx = m.twisted_anti_involution().unwrap();
    assert_eq!(jx.apply(1, &yc), yc);
    assert!(jx.is_involution() && jx.reverses_products(&alg, true));
    let c3 = c3_model();
    let (j3, n3) = c3.anti_involution().unwrap();
    assert_eq!(n3.exponent, -1);
    assert!(j3.reverses_products(&c3.e_algebra(), true));
    let cmp = m.compare_with_hecke(&j).unwrap();
    assert!(cmp.products_match && cmp.involution_match);
    let cmp3 = c3.compare_with_hecke(&j3).unwrap();
    assert!(cmp3.products_match && cmp3.involution_match);
}

#[test]
fn trivial_c_gives_identity_involution() {
    let m = cyclic_model::<F7>(1, 1, &Matrix::identity(1)).unwrap();
    let (j, _) = m.anti_involution().unwrap();
    assert!(j.blocks.iter().all(|b| *b == Matrix::identity(b.rows())));
    assert_eq!(m.twisted_anti_involution().unwrap(), j);
}

#[test]
fn delta_gr_shapes() {
    let m = sign_model();
    let alg = m.e_algebra();
    let s = m.twisted_anti_involution().unwrap();
    let k = m.trivial_module();
    let dk = delta_gr(&alg, &s, 1, &k, None).unwrap();
    assert_eq!((dk.lo(), dk.dims().to_vec()), (1, vec![1]));
    dk.check(&alg).unwrap();
    let e = GradedModule::regular_right(&alg);
    let de = delta_gr(&alg, &s, 1, &e, None).unwrap();
    assert_eq!(de.dims(), &[2, 2]);
    de.check(&alg).unwrap();
    let dde = delta_gr(&alg, &s, 1, &de, None).unwrap();
    assert_eq!(dde.dims(), e.dims());
    assert!(matches!(delta_gr(&alg, &s, 1, &k, Some((0, 0))), Err(YonedaError::WindowTooSmall { .. })));
}

fn pairing_suite<F: Field>(m: &CrossedModel<F>) -> (usize, usize) {
    let alg = m.e_algebra();
    let b = Bimodule::from_model(m).unwrap();
    b.first.check(&alg).unwrap();
    b.second.check(&alg).unwrap();
    let d = m.d() as i64;
    let mut checked = 0;
    let mut negative = 0;
    for i in 0..=d {
        assert!(b.gram(i).is_invertible());
        for s in 0..=(d - i) {
            let e_deg = d - i - s;
            for f in 0..b.first.dim(i) {
                let fv = unit_vector(b.first.dim(i), f);
                for t in 0..alg.dims()[s as usize] {
                    let tau = alg.basis(s as usize, t);
                    let st = b.sigma.apply(s as usize, &tau);
                    for e in 0..alg.dims()[e_deg as usize] {
                        let ev = alg.basis(e_deg as usize, e);
                        let l1 = b.pairing(i + s, &b.second.act(i, &fv, s as usize, &tau), e_deg, &ev).unwrap();
                        let r1 = b.pairing(i, &fv, d - i, &alg.mul(s as usize, &tau, e_deg as usize, &ev)).unwrap();
                        assert_eq!(l1, r1);
                        let sign = F::sign(s * e_deg);
                        let l2 = b.pairing(i + s, &b.first.act(i, &fv, s as usize, &tau), e_deg, &ev).unwrap();
                        let r2 = b.pairing(i, &fv, d - i, &alg.mul(e_deg as usize, &ev, s as usize, &st)).unwrap();
                        assert_eq!(l2, sign * r2);
                        checked += 1;
                        if sign != F::one() && !r2.is_zero() {
                            negative += 1;
                        }
                    }
                }
            }
        }
    }
    (checked, negative)
}

#[test]
fn pairing_identities() {
    let (n1, neg1) = pairing_suite(&sign_model());
    assert!(n1 > 0 && neg1 == 0);
    let (n2, neg2) = pairing_suite(&diag_model());
    assert!(n2 > 0 && neg2 > 0);
    pairing_suite(&c3_model());
}

#[test]
fn swap_interchanges_actions() {
    for m in [sign_model(), diag_model()] {
        let alg = m.e_algebra();
        let b = Bimodule::from_model(&m).unwrap();
        let sw = b.swap();
        for i in b.first.degrees() {
            let blk = sw.block(i, &b.first, &b.first);
            assert_eq!(&blk * &blk, Matrix::identity(b.first.dim(i)));
            for s in 0..alg.dims().len() {
                for t in 0..alg.dims()[s] {
                    let tau = alg.basis(s, t);
                    let lhs = &sw.block(i + s as i64, &b.first, &b.first) * &b.second.action_by(i, s, &tau);
                    let rhs = &b.first.action_by(i, s, &tau) * &blk;
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // the two actions commute up to the Koszul sign
        for i in b.first.degrees() {
            for s in 0..alg.dims().len() {
                for s2 in 0..alg.dims().len() {
                    for t in 0..alg.dims()[s] {
                        for t2 in 0..alg.dims()[s2] {
                            let (x, y) = (alg.basis(s, t), alg.basis(s2, t2));
                            let a = &b.second.action_by(i + s as i64, s2, &y) * &b.first.action_by(i, s, &x);
                            let c = &b.first.action_by(i + s2 as i64, s, &x) * &b.second.action_by(i, s2, &y);
                            assert_eq!(a, c.scale(F3::sign((s * s2) as i64)));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn ext_n_bimodules() {
    let m = sign_model();
    let alg = m.e_algebra();
    assert_eq!(ExtN::new(&m, 0).unwrap().dims(), &[1, 1]);
    let e1 = ExtN::new(&m, 1).unwrap();
    assert_eq!(e1.left, GradedModule::regular_left(&alg));
    assert_eq!(e1.rights[0], GradedModule::regular_right(&alg));
    let e2 = ExtN::new(&m, 2).unwrap();
    assert_eq!(e2.dims(), &[4, 4]);
    e2.left.check(&alg).unwrap();
    for r in &e2.rights {
        r.check(&alg).unwrap();
    }
    let sw = e2.slot_swap().unwrap();
    for deg in e2.left.degrees() {
        for s in 0..alg.dims().len() {
            for t in 0..alg.dims()[s] {
                let tau = alg.basis(s, t);
                let lhs = &sw.block(deg + s as i64, &e2.left, &e2.left) * &e2.rights[0].action_by(deg, s, &tau);
                let rhs = &e2.rights[1].action_by(deg, s, &tau) * &sw.block(deg, &e2.left, &e2.left);
                assert_eq!(lhs, rhs);
            }
        }
    }
    assert!(matches!(ExtN::new(&m, 12), Err(YonedaError::SizeOverflow { .. })));
}

#[test]
fn maindual_instances() {
    for m in [sign_model(), diag_model()] {
        let alg = m.e_algebra();
        let s = m.twisted_anti_involution().unwrap();
        let d = m.d() as i64;
        let e = GradedModule::regular_right(&alg);
        let b = Bimodule::from_model(&m).unwrap();
        assert!(check_maindual(&alg, &s, d, &e, &b.first, 7).unwrap().is_iso());
        let h = m.cohomology_module();
        h.check(&alg).unwrap();
        assert!(check_maindual(&alg, &s, d, &h, &h, 7).unwrap().is_iso());
        let k = m.trivial_module();
        let chi_inv: Vec<F3> = m.duality_character().iter().map(|x| x.inv().unwrap()).collect();
        let dk = GradedModule::one_dimensional(Side::Right, d, &alg, &chi_inv);
        assert!(check_maindual(&alg, &s, d, &k, &dk, 7).unwrap().is_iso());
        let untwisted = k.shifted(d);
        let twisted = chi_inv.iter().any(|x| !x.is_one());
        assert_eq!(check_maindual(&alg, &s, d, &k, &untwisted, 7).unwrap().is_iso(), !twisted);
        let wrong = b.first.shifted(1);
        assert!(matches!(check_maindual(&alg, &s, d, &e, &wrong, 7).unwrap(), MaindualReport::DimensionMismatch { .. }));
    }
}

#[test]
fn delta_is_exact_and_injective() {
    let m = diag_model();
    let alg = m.e_algebra();
    let s = m.twisted_anti_involution().unwrap();
    let d = m.d() as i64;
    let e = GradedModule::regular_right(&alg);
    let target = delta_gr(&alg, &s, d, &e, None).unwrap();
    let mut sequences = 0;
    let mut monos = 0;
    let ambients = [e.clone(), m.cohomology_module(), target.clone()];
    for amb in &ambients {
        for deg in amb.degrees() {
            for k in 0..amb.dim(deg) {
                let spaces = amb.generated_subspaces(&[(deg, unit_vector(amb.dim(deg), k))]);
                assert!(amb.is_submodule(&spaces));
                let (sub, inc) = amb.submodule(&spaces);
                let (quot, proj) = amb.quotient(&spaces);
                assert!(inc.is_linear(&sub, amb) && proj.is_linear(amb, &quot));
                assert!(is_short_exact(&inc, &proj, &sub, amb, &quot));
                let dsub = delta_gr(&alg, &s, d, &sub, None).unwrap();
                let damb = delta_gr(&alg, &s, d, amb, None).unwrap();
                let dquot = delta_gr(&alg, &s, d, &quot, None).unwrap();
                let dp = delta_gr_map(&proj, amb, &quot, d).unwrap();
                let di = delta_gr_map(&inc, &sub, amb, d).unwrap();
                assert!(dp.is_linear(&dquot, &damb) && di.is_linear(&damb, &dsub));
                assert!(is_short_exact(&dp, &di, &dquot, &damb, &dsub));
                sequences += 1;
                for t in (target.lo() - amb.hi())..=(target.hi() - sub.lo()) {
                    assert!(extends_along(&inc, &sub, amb, &target, t));
                }
                monos += 1;
            }
        }
    }
    assert!(sequences >= 5 && monos >= 10);
    assert!(!hom_space(&e, &target, 0).is_empty());
}
