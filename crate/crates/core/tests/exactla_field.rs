use hecke_duality::exactla::{LinAlgError, Matrix};
use hecke_duality::field::{Field, Fp, F13, F2, F3, F5, F7};
use proptest::prelude::*;
use num_traits::{One, Zero};

fn ints<const P: u32>(rows: &[&[i64]]) -> Matrix<Fp<P>> {
    Matrix::from_ints(rows).unwrap()
}

fn field_axioms<F: Field>() {
    let all = F::elements();
    assert_eq!(all.len(), F::ORDER as usize);
    for &a in &all {
        assert_eq!(a + F::zero(), a);
        assert_eq!(a * F::one(), a);
        assert_eq!(a + (-a), F::zero());
        match a.inv() {
            Some(i) => assert_eq!(a * i, F::one()),
            None => assert!(a.is_zero()),
        }
        for &b in &all {
            assert_eq!(a + b, b + a);
            assert_eq!(a * b, b * a);
            for &c in &all {
                assert_eq!((a + b) + c, a + (b + c));
                assert_eq!((a * b) * c, a * (b * c));
                assert_eq!(a * (b + c), a * b + a * c);
            }
        }
    }
}

#[test]
fn field_axioms_hold_for_small_primes() {
    field_axioms::<F2>();
    field_axioms::<F3>();
    field_axioms::<F5>();
    field_axioms::<F7>();
    field_axioms::<Fp<11>>();
    field_axioms::<F13>();
}

#[test]
fn rref_examples() {
    let (r, piv) = Matrix::<F5>::identity(3).rref();
    assert_eq!((r, piv), (Matrix::identity(3), vec![0, 1, 2]));
    let (r, piv) = Matrix::<F3>::zeros(2, 4).rref();
    assert_eq!((r, piv), (Matrix::zeros(2, 4), vec![]));
    let (r, piv) = ints::<5>(&[&[1, 2], &[2, 4]]).rref();
    assert_eq!(r, ints::<5>(&[&[1, 2], &[0, 0]]));
    assert_eq!(piv, vec![0]);
}

#[test]
fn kernel_examples() {
    assert!(Matrix::<F3>::identity(2).kernel_basis().is_empty());
    let k = Matrix::<F2>::zeros(1, 3).kernel_basis();
    assert_eq!(k.len(), 3);
    assert_eq!(Matrix::from_columns(3, &k).unwrap().rank(), 3);
    let one = F2::one();
    assert_eq!(ints::<2>(&[&[1, 1]]).kernel_basis(), vec![vec![one, one]]);
}

#[test]
fn solve_examples() {
    let b: Vec<F7> = [3, 0, 6].iter().map(|&x| F7::from_i64(x)).collect();
    assert_eq!(Matrix::<F7>::identity(3).solve(&b).unwrap(), Some(b.clone()));
    assert_eq!(Matrix::<F3>::zeros(2, 2).solve(&[F3::one(), F3::zero()]).unwrap(), None);
    assert_eq!(ints::<5>(&[&[2]]).solve(&[F5::from_i64(3)]).unwrap(), Some(vec![F5::from_i64(4)]));
    assert!(matches!(Matrix::<F3>::identity(2).solve(&[F3::one()]), Err(LinAlgError::DimensionMismatch { .. })));
}

fn matrix5() -> impl Strategy<Value = Matrix<F5>> {
    (0usize..5, 0usize..6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(0u64..5, r * c).prop_map(move |v| Matrix::from_fn(r, c, |i, j| F5::new(v[i * c + j])))
    })
}

fn is_rref(m: &Matrix<F5>, pivots: &[usize]) -> bool {
    let strictly_increasing = pivots.windows(2).all(|w| w[0] < w[1]);
    let pivot_rows = pivots.iter().enumerate().all(|(r, &c)| {
        m[(r, c)] == F5::one() && (0..m.rows()).all(|k| k == r || m[(k, c)].is_zero()) && (0..c).all(|j| m[(r, j)].is_zero())
    });
    let zero_below = (pivots.len()..m.rows()).all(|r| m.row(r).iter().all(|x| x.is_zero()));
    strictly_increasing && pivot_rows && zero_below
}

proptest! {
    #[test]
    fn rref_is_reduced_idempotent_and_row_equivalent(m in matrix5()) {
        let (r, piv) = m.rref();
        prop_assert!(is_rref(&r, &piv));
        prop_assert_eq!(r.rank(), m.rank());
        prop_assert_eq!(piv.len(), m.rank());
        prop_assert_eq!(r.rref(), (r.clone(), piv));
        prop_assert_eq!(m.vstack(&r).unwrap().rank(), m.rank());
    }

    #[test]
    fn kernel_basis_spans_the_null_space(m in matrix5()) {
        let k = m.kernel_basis();
        for v in &k {
            prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(k.len() + m.rank(), m.cols());
        if !k.is_empty() {
            prop_assert_eq!(Matrix::from_columns(m.cols(), &k).unwrap().rank(), k.len());
        }
    }

    #[test]
    fn solve_is_exact(m in matrix5(), seed in proptest::collection::vec(0u64..5, 5)) {
        let b: Vec<F5> = seed.iter().take(m.rows()).map(|&x| F5::new(x)).collect();
        match m.solve(&b).unwrap() {
            Some(x) => prop_assert_eq!(m.apply(&x), b),
            None => {
                let col = Matrix::from_columns(m.rows(), &[b]).unwrap();
                prop_assert!(m.hstack(&col).unwrap().rank() > m.rank());
            }
        }
    }
}
