use hecke_duality::dgcore::{derived_hom, derived_tensor, semifree_resolve, DgAlgebra, DgModule, WeightWindow};
use hecke_duality::yoneda::{GradedModule, Side};
use hecke_duality::F3;
use hecke_duality::Field;
use num_traits::{One, Zero};

fn lambda() -> DgAlgebra<F3> {
    DgAlgebra::exterior_one()
}

fn trivial(alg: &DgAlgebra<F3>, side: Side) -> DgModule<F3> {
    DgModule::formal(GradedModule::one_dimensional(side, 0, alg.graded(), &[F3::one()]))
}

#[test]
fn tor_and_ext_of_the_trivial_module() {
    let a = lambda();
    let k_left = trivial(&a, Side::Left);
    let k_right = trivial(&a, Side::Right);
    let w = WeightWindow::new(0, 6).unwrap();
    let tor = derived_tensor(&a, &k_right, &k_left, w).unwrap().cohomology().restrict(0, 6);
    for s in 0..=6 {
        assert_eq!(tor.at(0, s), 1, "{tor}");
    }
    assert_eq!(tor.total(), 7);
    let ext = derived_hom(&a, &k_left, &k_left, WeightWindow::new(-6, 0).unwrap()).unwrap().cohomology().restrict(-6, 0);
    for s in 0..=6 {
        assert_eq!(ext.at(0, -s), 1, "{ext}");
    }
}

#[test]
fn resolution_is_certified() {
    let a = lambda();
    let k = trivial(&a, Side::Left);
    let r = semifree_resolve(&a, &k, WeightWindow::new(0, 4).unwrap()).unwrap();
    assert!(r.is_quasi_iso(&a, 0, 4));
    assert!(r.resolution.check(&a).is_ok());
    assert_eq!(r.semifree.len(), 7);
}

use hecke_duality::dgcore::{
    adjunction_check, boxtimes, derived_tensor_resolving_first, hom_boxtimes, koszul_swap, swap_descent, Bigraded, DgBimodule, DgError,
};
use hecke_duality::exactla::Matrix;
use hecke_duality::yoneda::model::cyclic_model;
use hecke_duality::yoneda::{CrossedModel, GradedMap};

fn plain_model() -> CrossedModel<F3> {
    cyclic_model(1, 1, &Matrix::from_ints(&[&[1]]).unwrap()).unwrap()
}

fn sign_model() -> CrossedModel<F3> {
    cyclic_model(1, 2, &Matrix::from_ints(&[&[-1]]).unwrap()).unwrap()
}

fn augmentation(alg: &DgAlgebra<F3>) -> Vec<F3> {
    vec![F3::one(); alg.dims()[0]]
}

fn k_of(alg: &DgAlgebra<F3>) -> DgModule<F3> {
    DgModule::formal(GradedModule::one_dimensional(Side::Left, 0, alg.graded(), &augmentation(alg)))
}

fn free_of(alg: &DgAlgebra<F3>) -> DgModule<F3> {
    DgModule::formal(GradedModule::regular_left(alg.graded()))
}

fn weight_column(b: &Bigraded, lo: i64, hi: i64) -> Vec<usize> {
    (lo..=hi).map(|w| b.by_weight().get(&w).copied().unwrap_or(0)).collect()
}

#[test]
fn box_product_of_free_modules_is_the_kernel() {
    let m = sign_model();
    let a = DgAlgebra::from_model(&m);
    let kernel = DgBimodule::from_ext2(&m).unwrap();
    let aa = free_of(&a);
    let bx = boxtimes(&a, &kernel, &aa, &aa, WeightWindow::new(0, 3).unwrap()).unwrap();
    let h = bx.module.cohomology().restrict(0, 3);
    assert_eq!(h.by_degree().get(&0).copied(), Some(4));
    assert_eq!(h.by_degree().get(&1).copied(), Some(4));
    assert!(bx.module.check(&a).is_ok());
}

#[test]
fn box_products_over_the_plain_model() {
    let m = plain_model();
    let a = DgAlgebra::from_model(&m);
    let kernel = DgBimodule::from_ext2(&m).unwrap();
    let (k, free) = (k_of(&a), free_of(&a));
    let w = WeightWindow::new(0, 5).unwrap();
    // Λ ⊗^L_{Λ(u,v)} k with u = y₁ - y₂ is Tor over Λ(u): one class per weight
    let kk = boxtimes(&a, &kernel, &k, &k, w).unwrap().module.cohomology().restrict(0, 5);
    assert_eq!(weight_column(&kk, 0, 5), vec![1; 6]);
    assert_eq!(kk.by_degree().keys().copied().collect::<Vec<_>>(), vec![0]);
    for (x, y) in [(&free, &k), (&k, &free)] {
        let h = boxtimes(&a, &kernel, x, y, w).unwrap().module.cohomology().restrict(0, 5);
        assert_eq!(h.total(), 1);
        assert_eq!(h.at(0, 0), 1);
    }
}

#[test]
fn unit_kernel_acts_as_identity() {
    for model in [plain_model(), sign_model()] {
        let a = DgAlgebra::from_model(&model);
        let unit = DgBimodule::unit_kernel(&a, &augmentation(&a)).unwrap();
        let free = free_of(&a);
        for m in [k_of(&a), free.clone()] {
            let h = boxtimes(&a, &unit, &m, &free, WeightWindow::new(0, 4).unwrap()).unwrap().module.cohomology().restrict(0, 4);
            assert_eq!(h, m.cohomology().restrict(0, 4));
        }
    }
}

#[test]
fn box_product_is_associative_on_dimensions() {
    let model = plain_model();
    let a = DgAlgebra::from_model(&model);
    let kernel = DgBimodule::from_ext2(&model).unwrap();
    let (k, free) = (k_of(&a), free_of(&a));
    let w = WeightWindow::new(0, 3).unwrap();
    let wide = WeightWindow::with_margin(0, 3, 4).unwrap();
    for (x, y, z) in [(&k, &k, &k), (&free, &k, &k), (&k, &free, &free)] {
        let left = boxtimes(&a, &kernel, &boxtimes(&a, &kernel, x, y, wide).unwrap().module, z, w).unwrap();
        let right = boxtimes(&a, &kernel, x, &boxtimes(&a, &kernel, y, z, wide).unwrap().module, w).unwrap();
        assert_eq!(left.module.cohomology().restrict(0, 3), right.module.cohomology().restrict(0, 3));
    }
}

#[test]
fn adjunction_sweep() {
    let model = plain_model();
    let a = DgAlgebra::from_model(&model);
    let kernel = DgBimodule::from_ext2(&model).unwrap();
    let mods = [free_of(&a), k_of(&a)];
    for m in &mods {
        for n in &mods {
            for r in &mods {
                let rep = adjunction_check(&a, &kernel, m, n, r, WeightWindow::new(-3, 1).unwrap()).unwrap();
                assert!(rep.holds(), "{} vs {}", rep.lhs, rep.rhs);
            }
        }
    }
}

#[test]
fn hom_boxtimes_of_free_modules() {
    let model = sign_model();
    let a = DgAlgebra::from_model(&model);
    let kernel = DgBimodule::from_ext2(&model).unwrap();
    let free = free_of(&a);
    let h = hom_boxtimes(&a, &kernel, &free, &free, WeightWindow::new(-2, 2).unwrap()).unwrap();
    assert!(h.check(&a).is_ok());
    assert!(h.cohomology().restrict(-2, 2).total() > 0);
}

#[test]
fn slot_swap_descends_and_identity_does_not() {
    let model = sign_model();
    let a = DgAlgebra::from_model(&model);
    let kernel = DgBimodule::from_ext2(&model).unwrap();
    let swap = kernel.swap.clone().unwrap();
    let k = k_of(&a);
    let w = WeightWindow::new(0, 2).unwrap();
    let rep = swap_descent(&a, &kernel, &swap, &k, w).unwrap();
    assert!(rep.descends(), "{rep:?}");
    let id = GradedMap::identity(kernel.main.module());
    match swap_descent(&a, &kernel, &id, &k, w) {
        Err(DgError::Intertwining { a, b, .. }) => assert_ne!(a, b),
        other => panic!("expected a witness, got {other:?}"),
    }
}

#[test]
fn koszul_swap_on_complexes() {
    let a = lambda();
    let k = trivial(&a, Side::Left);
    let cone = k.cone_of_identity(&a);
    let free = DgModule::formal(GradedModule::regular_left(a.graded()));
    let s = koszul_swap(&cone, &free);
    assert!(s.chain_map && s.involution);
    let s = koszul_swap(&cone, &cone);
    assert!(s.chain_map && s.involution);
}

#[test]
fn tensor_is_balanced() {
    let a = lambda();
    let k = trivial(&a, Side::Left);
    let free_right = DgModule::formal(GradedModule::regular_right(a.graded()));
    let w = WeightWindow::new(0, 4).unwrap();
    for p in [trivial(&a, Side::Right), free_right] {
        let one = derived_tensor(&a, &p, &k, w).unwrap().cohomology().restrict(0, 4);
        let two = derived_tensor_resolving_first(&a, &p, &k, w).unwrap().cohomology().restrict(0, 4);
        assert_eq!(one, two);
    }
}

use hecke_duality::dgcore::{Generator, SemifreeModule, ValidWeights};
use hecke_duality::yoneda::GradedAlgebra;
use proptest::prelude::*;

/// `A g₀ ⊕ A g₁` over `Λ(y)` with `d g₁ = y g₀`.
fn two_term(a: &DgAlgebra<F3>) -> DgModule<F3> {
    let mut s = SemifreeModule::free(vec![Generator { degree: 0, weight: 0, idempotent: 0 }]);
    s.push_stage(a, vec![(Generator { degree: 0, weight: 1, idempotent: 0 }, vec![(0, vec![F3::one()])])]).unwrap();
    s.materialize(a)
}

/// `Λ(x) ⊗ k[z]/z²` with `|x| = 1`, `|z| = 2`, `dx = z`, both of weight 1.
fn acyclic_pair() -> DgAlgebra<F3> {
    // basis: 1 | x | z | xz
    let labels = vec![vec!["1".into()], vec!["x".into()], vec!["z".into()], vec!["xz".into()]];
    let graded = GradedAlgebra::from_product(vec![1, 1, 1, 1], labels, vec![F3::one()], |i, _, j, _| match (i, j) {
        (0, _) | (_, 0) => vec![F3::one()],
        (1, 2) | (2, 1) => vec![F3::one()],
        _ => vec![F3::zero()],
    });
    let weights = vec![vec![0], vec![1], vec![1], vec![2]];
    let d = |r: usize, c: usize, v: i64| Matrix::from_fn(r, c, |_, _| F3::from_i64(v));
    let diff = vec![d(1, 1, 0), d(1, 1, 1), d(1, 1, 0), d(0, 1, 0)];
    DgAlgebra::new(graded, weights, diff, vec![vec![F3::one()]]).unwrap()
}

fn reweighted(m: &DgModule<F3>, dw: i64) -> DgModule<F3> {
    let weights = m.degrees().map(|d| m.weights_at(d).iter().map(|w| w + dw).collect()).collect();
    DgModule::new(m.module().clone(), weights, m.degrees().map(|d| m.diff_at(d)).collect()).unwrap()
}


#[test]
fn cohomology_of_small_modules() {
    let a = lambda();
    let free = DgModule::formal(GradedModule::regular_left(a.graded()));
    assert_eq!(free.cohomology().total(), 2);
    assert!(free.cone_of_identity(&a).cohomology().is_zero());
    assert!(free.cone_of_identity(&a).check(&a).is_ok());
    let t = two_term(&a);
    assert!(t.check(&a).is_ok());
    let h = t.cohomology();
    assert_eq!(h.by_degree().into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 1)]);
}

#[test]
fn algebra_with_differential() {
    let a = acyclic_pair();
    assert!(a.check().is_ok());
    assert!(!a.is_formal());
    let h = a.cohomology_algebra();
    assert_eq!(h.dims()[0], 1);
    let k = trivial(&a, Side::Left);
    let w = WeightWindow::new(0, 4).unwrap();
    let r = semifree_resolve(&a, &k, w).unwrap();
    assert!(r.resolution.check(&a).is_ok());
    let one = derived_tensor(&a, &trivial(&a, Side::Right), &k, w).unwrap().cohomology().restrict(0, 4);
    let two = derived_tensor_resolving_first(&a, &trivial(&a, Side::Right), &k, w).unwrap().cohomology().restrict(0, 4);
    assert_eq!(one, two);
    assert_eq!(one.at(0, 0), 1);
}

#[test]
fn resolution_invariance() {
    let a = lambda();
    let w = WeightWindow::new(0, 5).unwrap();
    let wide = WeightWindow::with_margin(0, 5, 6).unwrap();
    let k_right = trivial(&a, Side::Right);
    for m in [trivial(&a, Side::Left), two_term(&a)] {
        let p = semifree_resolve(&a, &m, wide).unwrap().resolution;
        let direct = derived_tensor(&a, &k_right, &m, w).unwrap().cohomology().restrict(0, 5);
        let replaced = derived_tensor(&a, &k_right, &p, w).unwrap().cohomology().restrict(0, 5);
        assert_eq!(direct, replaced);
        let hw = WeightWindow::new(-4, 0).unwrap();
        let n = trivial(&a, Side::Left);
        let direct = derived_hom(&a, &m, &n, hw).unwrap().cohomology().restrict(-4, 0);
        let replaced = derived_hom(&a, &p, &n, hw).unwrap().cohomology().restrict(-4, 0);
        assert_eq!(direct, replaced);
    }
}

#[test]
fn identity_class_survives() {
    let a = lambda();
    for m in [trivial(&a, Side::Left), two_term(&a), DgModule::formal(GradedModule::regular_left(a.graded()))] {
        let h = derived_hom(&a, &m, &m, WeightWindow::new(0, 0).unwrap()).unwrap().cohomology();
        assert!(h.at(0, 0) >= 1);
    }
}

#[test]
fn over_the_ground_field() {
    let g = DgAlgebra::<F3>::ground();
    let k = trivial(&g, Side::Left);
    let cone = k.cone_of_identity(&g);
    let two = DgModule::formal(GradedModule::one_dimensional(Side::Left, 1, g.graded(), &[F3::one()]));
    let w = WeightWindow::new(-2, 2).unwrap();
    let r = semifree_resolve(&g, &two, w).unwrap();
    assert_eq!(r.resolution.cohomology(), two.cohomology());
    let t = derived_tensor(&g, &trivial(&g, Side::Right), &cone, w).unwrap();
    assert!(t.cohomology().is_zero());
    let unit = DgBimodule::unit_kernel(&g, &[F3::one()]).unwrap();
    let sum = k.module().direct_sum(two.module());
    let sum = DgModule::formal(sum);
    let bx = boxtimes(&g, &unit, &sum, &sum, w).unwrap().module.cohomology();
    // ⊗_k of (k ⊕ k[-1]) with itself: degrees 0, 1, 1, 2
    assert_eq!(bx.by_degree().into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 1)]);
}

#[test]
fn koszul_sign_on_odd_pair() {
    let g = DgAlgebra::<F3>::ground();
    let odd = DgModule::formal(GradedModule::one_dimensional(Side::Left, 1, g.graded(), &[F3::one()]));
    let s = koszul_swap(&odd, &odd);
    assert_eq!(s.blocks[0][(0, 0)], -F3::one());
}

#[test]
fn windows_and_sides_are_checked() {
    let a = lambda();
    let k = trivial(&a, Side::Left);
    let truncated = k.clone().with_valid(ValidWeights { min: None, max: Some(2) });
    assert!(matches!(semifree_resolve(&a, &truncated, WeightWindow::new(0, 4).unwrap()), Err(DgError::WindowTooSmall { .. })));
    assert!(matches!(derived_tensor(&a, &k, &k, WeightWindow::new(0, 1).unwrap()), Err(DgError::SideMismatch(_))));
    assert!(WeightWindow::new(3, 1).is_err());
    let r = semifree_resolve(&a, &k, WeightWindow::new(0, 3).unwrap()).unwrap();
    assert_eq!(r.certified, (0, 3));
    assert!(r.built_through >= 3 + hecke_duality::dgcore::DEFAULT_MARGIN);
}

#[test]
fn filtration_pieces_are_free() {
    let a = lambda();
    let r = semifree_resolve(&a, &trivial(&a, Side::Left), WeightWindow::new(0, 4).unwrap()).unwrap();
    let stages = r.semifree.stages();
    for (g, _) in r.semifree.generators().iter().enumerate() {
        let stage = stages.partition_point(|&c| c <= g);
        for (h, _) in r.semifree.boundary(g) {
            assert!(stages.partition_point(|&c| c <= *h) < stage);
        }
    }
}

#[test]
fn text_roundtrip_and_golden() {
    let a = lambda();
    let t = two_term(&a);
    let text = t.to_text();
    let back = DgModule::from_text(&a, &text).unwrap();
    assert_eq!(back.to_text(), text);
    assert_eq!(back.cohomology(), t.cohomology());
    let golden = include_str!("data/two_term.dgm");
    assert_eq!(text, golden);
    assert!(matches!(DgModule::<F3>::from_text(&a, "dgmodule up lo 0"), Err(DgError::Parse { line: 1, .. })));
}

fn formal_summand(a: &DgAlgebra<F3>, kind: u8, deg: i64, dw: i64) -> DgModule<F3> {
    let base = match kind {
        0 => DgModule::formal(GradedModule::one_dimensional(Side::Left, 0, a.graded(), &[F3::one()])),
        1 => DgModule::formal(GradedModule::regular_left(a.graded())),
        _ => two_term(a),
    };
    let shifted = DgModule::new(
        base.module().shifted(deg),
        base.degrees().map(|d| base.weights_at(d).to_vec()).collect(),
        base.degrees().map(|d| base.diff_at(d)).collect(),
    )
    .unwrap();
    reweighted(&shifted, dw)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn resolutions_are_quasi_isomorphisms(kind in 0u8..3, deg in -1i64..2, dw in 0i64..2) {
        let a = lambda();
        let m = formal_summand(&a, kind, deg, dw);
        prop_assert!(m.check(&a).is_ok());
        let r = semifree_resolve(&a, &m, WeightWindow::new(0, 3).unwrap()).unwrap();
        prop_assert!(r.resolution.check(&a).is_ok());
        prop_assert!(r.is_quasi_iso(&a, 0, 3));
    }

    #[test]
    fn tor_is_additive_and_balanced(k1 in 0u8..3, k2 in 0u8..3, dw in 0i64..2) {
        let a = lambda();
        let (m, n) = (formal_summand(&a, k1, 0, 0), formal_summand(&a, k2, 0, dw));
        let sum = m.direct_sum(&n);
        let p = trivial(&a, Side::Right);
        let w = WeightWindow::new(0, 3).unwrap();
        let tor = |x: &DgModule<F3>| derived_tensor(&a, &p, x, w).unwrap().cohomology().restrict(0, 3);
        let (tm, tn, ts) = (tor(&m), tor(&n), tor(&sum));
        for ((d, wt), c) in ts.iter() {
            prop_assert_eq!(c, tm.at(d, wt) + tn.at(d, wt));
        }
        prop_assert_eq!(ts.total(), tm.total() + tn.total());
        let other = derived_tensor_resolving_first(&a, &p, &sum, w).unwrap().cohomology().restrict(0, 3);
        prop_assert_eq!(other, ts);
    }

    #[test]
    fn identity_survives_on_random_sums(kind in 0u8..3, dw in 0i64..3) {
        let a = lambda();
        let m = formal_summand(&a, kind, 0, dw);
        let h = derived_hom(&a, &m, &m, WeightWindow::new(0, 0).unwrap()).unwrap().cohomology();
        prop_assert!(h.at(0, 0) >= 1);
    }
}
