//! Small `(A, P, M)` instances with known abutments.

use crate::dgcore::{DgAlgebra, DgBimodule, DgModule};
use crate::exactla::Matrix;
use crate::field::{Field, F3};
use crate::yoneda::model::{cyclic_model, CrossedModel};
use crate::yoneda::{ExtN, GradedModule, Side};

use super::EmssError;

#[derive(Clone, Debug)]
pub struct EmssInstance<F: Field> {
    pub name: String,
    pub alg: DgAlgebra<F>,
    pub p: DgModule<F>,
    pub m: DgModule<F>,
    /// Weight window the instance is meant to be run on.
    pub window: (i64, i64),
    /// Nonzero `h^n(P ⊗^L M)` summed over the window, per degree, when known in closed form.
    pub expected_by_degree: Option<Vec<(i64, usize)>>,
}

fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// `P = u A ⊕ v A` over `Λ(y)` with `du = v y`; `h*(P)` has two classes, but `P ⊗_A k` has
/// zero differential.
pub fn two_cell_right<F: Field>(a: &DgAlgebra<F>) -> DgModule<F> {
    // degree 0: u, v; degree 1: uy, vy
    let module = GradedModule::from_action(Side::Right, 0, vec![2, 2], a.graded(), |_, _, _, x| unit(2, x));
    let weights = vec![vec![0, -1], vec![1, 0]];
    let diff = vec![Matrix::from_ints(&[&[0, 0], &[1, 0]]).expect("shape"), Matrix::zeros(0, 2)];
    DgModule::new(module, weights, diff).expect("well formed")
}

fn trivial<F: Field>(alg: &DgAlgebra<F>, side: Side) -> DgModule<F> {
    DgModule::formal(GradedModule::one_dimensional(side, 0, alg.graded(), &vec![F::one(); alg.dims()[0]]))
}

/// The two instances over `Λ(y)`.
pub fn exterior_instances<F: Field>() -> Vec<EmssInstance<F>> {
    let a = DgAlgebra::exterior_one();
    vec![
        EmssInstance {
            name: "exterior-trivial".into(),
            p: trivial(&a, Side::Right),
            m: trivial(&a, Side::Left),
            window: (0, 4),
            expected_by_degree: Some(vec![(0, 5)]),
            alg: a.clone(),
        },
        EmssInstance {
            name: "exterior-two-cell".into(),
            p: two_cell_right(&a),
            m: trivial(&a, Side::Left),
            window: (-1, 4),
            expected_by_degree: Some(vec![(0, 2)]),
            alg: a,
        },
    ]
}

/// Instances over `E*` of a crossed model: `E*(2) ⊗^L E⊗E`, `E ⊗^L k` and `k ⊗^L k`.
pub fn model_instances<F: Field>(model: &CrossedModel<F>) -> Result<Vec<EmssInstance<F>>, EmssError> {
    let e = DgAlgebra::from_model(model);
    let ee = e.tensor(&e);
    let ext2 = DgBimodule::from_ext2(model)?;
    let ext_dims = ExtN::new(model, 2)?.dims().iter().enumerate().map(|(i, &n)| (i as i64, n)).filter(|&(_, n)| n > 0).collect();
    Ok(vec![
        EmssInstance {
            name: "model-ext2-free".into(),
            p: ext2.main,
            m: DgModule::formal(GradedModule::regular_left(ee.graded())),
            alg: ee,
            window: (0, 4),
            expected_by_degree: Some(ext_dims),
        },
        EmssInstance {
            name: "model-regular-trivial".into(),
            p: DgModule::formal(GradedModule::regular_right(e.graded())),
            m: trivial(&e, Side::Left),
            alg: e.clone(),
            window: (0, 4),
            expected_by_degree: Some(vec![(0, 1)]),
        },
        EmssInstance { name: "model-trivial-trivial".into(), p: trivial(&e, Side::Right), m: trivial(&e, Side::Left), alg: e, window: (0, 4), expected_by_degree: None },
    ])
}

/// The exterior instances together with those of the model `d = 1`, `C = C_2` acting by `-1`.
pub fn bundled_instances() -> Result<Vec<EmssInstance<F3>>, EmssError> {
    let model = cyclic_model(1, 2, &Matrix::from_ints(&[&[-1]])?)?;
    let mut out = exterior_instances();
    out.extend(model_instances(&model)?);
    Ok(out)
}
