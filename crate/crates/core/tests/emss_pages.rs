use hecke_duality::dgcore::{DgAlgebra, DgBimodule, DgModule, ResidualAction, WeightWindow};
use hecke_duality::emss::instances::two_cell_right;
use hecke_duality::emss::*;
use hecke_duality::yoneda::model::{cyclic_model, CrossedModel};
use hecke_duality::yoneda::{GradedModule, Side};
use hecke_duality::{Matrix, F3};
use num_traits::One;
use proptest::prelude::*;

fn lambda() -> DgAlgebra<F3> {
    DgAlgebra::exterior_one()
}

fn k_side(alg: &DgAlgebra<F3>, side: Side) -> GradedModule<F3> {
    GradedModule::one_dimensional(side, 0, alg.graded(), &vec![F3::one(); alg.dims()[0]])
}

fn sign_model() -> CrossedModel<F3> {
    cyclic_model(1, 2, &Matrix::from_ints(&[&[-1]]).unwrap()).unwrap()
}

fn window_of(inst: &EmssInstance<F3>) -> WeightWindow {
    WeightWindow::new(inst.window.0, inst.window.1).unwrap()
}

#[test]
fn trivial_exterior_sequence_is_the_bar_construction() {
    let a = lambda();
    let k_r = DgModule::formal(k_side(&a, Side::Right));
    let k_l = DgModule::formal(k_side(&a, Side::Left));
    let ss = em_tor_ss(&a, &k_r, &k_l, None, WeightWindow::new(0, 5).unwrap()).unwrap();
    let e2 = ss.e2().collapsed();
    for s in 0..=5 {
        assert_eq!(e2.get(&(-s, s)), Some(&1));
    }
    assert_eq!(e2.len(), 6);
    assert!(ss.degenerates_at_e2());
    assert!(ss.converges && ss.rank_identity && ss.e2_matches_graded_tor);
    assert_eq!(ss.abutment.by_degree().get(&0), Some(&6));
}

#[test]
fn two_cell_module_has_a_nonzero_differential() {
    let a = lambda();
    let p = two_cell_right(&a);
    let m = DgModule::formal(k_side(&a, Side::Left));
    let ss = em_tor_ss(&a, &p, &m, None, WeightWindow::new(-1, 4).unwrap()).unwrap();
    assert!(!ss.degenerates_at_e2());
    assert!(ss.e2().has_nonzero_differential());
    assert!(ss.e2().total() > ss.e_infinity().total());
    assert_eq!(ss.e_infinity().total(), 2);
    assert_eq!(ss.abutment.total(), 2);
    assert!(ss.converges && ss.rank_identity && ss.e2_matches_graded_tor);
}

#[test]
fn bundled_instances_meet_their_expectations() {
    for inst in bundled_instances().unwrap() {
        let ss = em_tor_ss(&inst.alg, &inst.p, &inst.m, None, window_of(&inst)).unwrap();
        assert!(ss.converges, "{}", inst.name);
        assert!(ss.rank_identity, "{}", inst.name);
        assert!(ss.e2_matches_graded_tor, "{}", inst.name);
        assert!(ss.tor_variant_vanishing, "{}", inst.name);
        if let Some(by_degree) = &inst.expected_by_degree {
            let got: Vec<(i64, usize)> = ss.abutment.by_degree().into_iter().filter(|&(_, c)| c > 0).collect();
            assert_eq!(&got, by_degree, "{}", inst.name);
        }
    }
}

#[test]
fn free_bimodule_instance_is_concentrated_in_column_zero() {
    let inst = bundled_instances().unwrap().into_iter().find(|i| i.name == "model-ext2-free").unwrap();
    let ss = em_tor_ss(&inst.alg, &inst.p, &inst.m, None, WeightWindow::new(0, 4).unwrap()).unwrap();
    let e2 = ss.e2().collapsed();
    assert_eq!(e2.get(&(0, 0)), Some(&4));
    assert_eq!(e2.get(&(0, 1)), Some(&4));
    assert!(e2.keys().all(|&(s, _)| s == 0));
}

#[test]
fn residual_action_is_compatible_with_the_filtration() {
    let model = sign_model();
    let e = DgAlgebra::from_model(&model);
    let ee = e.tensor(&e);
    let b = DgBimodule::from_ext2(&model).unwrap();
    let m = DgModule::formal(GradedModule::regular_left(ee.graded()));
    let residual = ResidualAction { alg: &e, action: &b.residual };
    let ss = em_tor_ss(&ee, &b.main, &m, Some(residual), WeightWindow::new(0, 3).unwrap()).unwrap();
    assert_eq!(ss.equivariant, Some(true));
    let plain = em_tor_ss(&ee, &b.main, &m, None, WeightWindow::new(0, 3).unwrap()).unwrap();
    assert_eq!(plain.equivariant, None);
}

#[test]
fn graded_tor_and_ext_over_the_exterior_algebra() {
    let a = lambda();
    let tor = graded_tor(&a, &k_side(&a, Side::Right), &k_side(&a, Side::Left), 4).unwrap();
    let ext = graded_ext(&a, &k_side(&a, Side::Right), &k_side(&a, Side::Right), 4).unwrap();
    for s in 0..=4 {
        assert_eq!(tor.at(-s, s), 1);
        assert_eq!(ext.at(s, -s), 1);
    }
    assert_eq!(tor.total(), 5);
    assert_eq!(ext.total(), 5);
}

#[test]
fn minimal_resolution_of_the_trivial_module() {
    let a = lambda();
    let res = GradedResolution::new(&a, &k_side(&a, Side::Left), 4).unwrap();
    for s in 0..=4 {
        assert_eq!(res.term(s).len(), 1);
        assert_eq!(res.min_degree(s), Some(s as i64));
    }
}

#[test]
fn free_module_resolution_stops() {
    let model = sign_model();
    let e = DgAlgebra::from_model(&model);
    let res = GradedResolution::new(&e, &GradedModule::regular_left(e.graded()), 3).unwrap();
    assert_eq!(res.term(0).len(), 2);
    assert!((1..=3).all(|s| res.term(s).is_empty()));
}

#[test]
fn collapse_for_standard_modules() {
    let models = [
        sign_model(),
        cyclic_model::<F3>(1, 1, &Matrix::from_ints(&[&[1]]).unwrap()).unwrap(),
        cyclic_model::<F3>(2, 2, &Matrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap()).unwrap(),
    ];
    for model in &models {
        let e = model.e_algebra();
        let zero = GradedModule::from_action(Side::Right, 0, vec![0], &e, |_, _, _, _| Vec::new());
        for (name, m) in [("E", GradedModule::regular_right(&e)), ("k", model.trivial_module()), ("H", model.cohomology_module()), ("0", zero)] {
            let r = collapse_check_cohdelta(model, &m, 3, 11).unwrap();
            assert!(r.higher_ext_vanishes, "{name}");
            assert!(r.row_zero_matches, "{name}");
            assert!(r.collapses(), "{name}");
        }
    }
}

#[test]
fn trivial_module_dual_sits_in_the_top_degree() {
    let model = cyclic_model::<F3>(2, 2, &Matrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap()).unwrap();
    let r = collapse_check_cohdelta(&model, &model.trivial_module(), 3, 11).unwrap();
    assert_eq!(r.ext.total(), 1);
    assert_eq!(r.ext.at(0, 2), 1);
}

#[test]
fn rejects_unsuitable_inputs() {
    let a = lambda();
    let reweighted = DgAlgebra::new(a.graded().clone(), vec![vec![0], vec![2]], vec![Matrix::zeros(1, 1), Matrix::zeros(0, 1)], vec![vec![F3::one()]]).unwrap();
    let k_r = DgModule::formal(k_side(&reweighted, Side::Right));
    let k_l = DgModule::formal(k_side(&reweighted, Side::Left));
    let w = WeightWindow::new(0, 3).unwrap();
    assert_eq!(em_tor_ss(&reweighted, &k_r, &k_l, None, w).unwrap_err(), EmssError::NotFormal);
    let k_r = DgModule::formal(k_side(&a, Side::Right));
    assert!(matches!(em_tor_ss(&a, &k_r, &k_r, None, w), Err(EmssError::SideMismatch(_))));
    assert!(matches!(graded_tor(&a, &k_side(&a, Side::Left), &k_side(&a, Side::Left), 2), Err(EmssError::SideMismatch(_))));
    let model = sign_model();
    let left = GradedModule::regular_left(&model.e_algebra());
    assert!(matches!(collapse_check_cohdelta(&model, &left, 2, 0), Err(EmssError::SideMismatch(_))));
}

#[test]
fn non_formal_target_is_rejected() {
    let a = lambda();
    let p = two_cell_right(&a);
    let w = WeightWindow::new(0, 3).unwrap();
    assert_eq!(em_tor_ss(&a, &DgModule::formal(k_side(&a, Side::Right)), &p.opposite_side(), None, w).unwrap_err(), EmssError::NotFormal);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pages_are_consistent(index in 0usize..5, hi in 0i64..5) {
        let inst = bundled_instances().unwrap().swap_remove(index);
        let ss = em_tor_ss(&inst.alg, &inst.p, &inst.m, None, WeightWindow::new(inst.window.0, hi).unwrap()).unwrap();
        prop_assert!(ss.converges);
        prop_assert!(ss.rank_identity);
        prop_assert!(ss.e2_matches_graded_tor);
        // pages only shrink
        for pair in ss.pages.windows(2) {
            prop_assert!(pair[1].total() <= pair[0].total());
        }
    }

    #[test]
    fn graded_tor_is_one_per_column(s_max in 0usize..6) {
        let a = lambda();
        let tor = graded_tor(&a, &k_side(&a, Side::Right), &k_side(&a, Side::Left), s_max).unwrap();
        prop_assert_eq!(tor.total(), s_max + 1);
    }
}
