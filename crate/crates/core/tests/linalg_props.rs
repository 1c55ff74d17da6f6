mod common;

use gkm::linalg::{
    canonical_basis, complete_inside_lattice, hermite_normal_form, integer_kernel_basis, rank, solve_integer,
    IntegerMatrix,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::{random_unimodular, rational_det, rational_rank, rng};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntegerMatrix> {
    (0..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-12i64..=12, c), r).prop_map(move |rows| {
            let rows: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
            IntegerMatrix::from_rows(rows, c)
        })
    })
}

/// Row-style Hermite form: zero rows last, strictly increasing positive
/// pivots, zeros below and reduced entries above each pivot.
fn is_hermite(h: &IntegerMatrix) -> bool {
    let mut last: Option<usize> = None;
    let mut seen_zero = false;
    for r in 0..h.rows() {
        match h.row(r).iter().position(|x| !x.is_zero()) {
            None => seen_zero = true,
            Some(p) => {
                if seen_zero || last.is_some_and(|l| p <= l) || !h[(r, p)].is_positive() {
                    return false;
                }
                for above in 0..r {
                    let x = &h[(above, p)];
                    if x.is_negative() || x >= &h[(r, p)] {
                        return false;
                    }
                }
                last = Some(p);
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hermite_form_properties(m in matrix(5, 6)) {
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(u.mul(&m), h.clone());
        prop_assert!(is_hermite(&h));
        prop_assert_eq!(rational_det(&u.to_rows()).numer().abs(), BigInt::one());
        prop_assert_eq!(rational_det(&u.to_rows()).denom().clone(), BigInt::one());
        prop_assert_eq!(hermite_normal_form(&h).0, h.clone());
        prop_assert_eq!(h.nonzero_rows(), rational_rank(&m.to_rows(), m.cols()));
        prop_assert_eq!(rank(&m), rational_rank(&m.to_rows(), m.cols()));
    }

    #[test]
    fn kernel_properties(m in matrix(5, 7)) {
        let kernel = integer_kernel_basis(&m);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(kernel.len() + rational_rank(&m.to_rows(), m.cols()), m.cols());
        prop_assert_eq!(rational_rank(&kernel, m.cols()), kernel.len());
        // primitive: nothing outside the span's integer points is missed
        if !kernel.is_empty() {
            let k = IntegerMatrix::from_rows(kernel.clone(), m.cols());
            prop_assert!(gkm::linalg::invariant_factors(&k).iter().all(One::is_one));
        }
        prop_assert_eq!(canonical_basis(&kernel, m.cols()).to_rows(), kernel);
    }

    #[test]
    fn canonical_form_ignores_basis_change(m in matrix(4, 5), seed in any::<u64>()) {
        let rows = canonical_basis(&m.to_rows(), m.cols());
        let k = rows.rows();
        let v = random_unimodular(&mut rng(seed), k);
        let changed = v.mul(&rows);
        prop_assert_eq!(canonical_basis(&changed.to_rows(), m.cols()), rows);
    }

    #[test]
    fn solves_consistent_systems(a in matrix(4, 4), seed in any::<u64>()) {
        use rand::Rng;
        let mut r = rng(seed);
        let x: Vec<Vec<BigInt>> = (0..a.cols()).map(|_| vec![BigInt::from(r.gen_range(-5i64..=5))]).collect();
        let x = IntegerMatrix::from_rows(x, 1);
        let b = a.mul(&x);
        let found = solve_integer(&a, &b).expect("b is in the image");
        prop_assert_eq!(a.mul(&found), b);
    }

    #[test]
    fn completion_extends_to_full_rank(lattice in matrix(4, 4), pick in 0usize..4) {
        let basis = canonical_basis(&lattice.to_rows(), lattice.cols()).to_rows();
        let chosen: Vec<_> = basis.iter().take(pick.min(basis.len())).map(|v| v.iter().map(|x| x * 3).collect()).collect();
        let done = complete_inside_lattice(&chosen, &basis).unwrap();
        let mut all = chosen.clone();
        all.extend(done.completion.iter().cloned());
        prop_assert_eq!(rational_rank(&all, lattice.cols()), basis.len());
        let expected_index = (0..chosen.len()).fold(BigInt::one(), |acc, _| acc * 3);
        prop_assert_eq!(done.index, expected_index);
        let bt = IntegerMatrix::from_rows(basis.clone(), lattice.cols()).transpose();
        for v in &done.completion {
            let rhs = IntegerMatrix::from_rows(vec![v.clone()], lattice.cols()).transpose();
            prop_assert!(solve_integer(&bt, &rhs).is_some());
        }
    }
}

#[test]
fn random_four_by_six_rank_nullity() {
    use rand::Rng;
    let mut r = rng(46);
    for _ in 0..50 {
        let rows: Vec<Vec<BigInt>> = (0..4).map(|_| (0..6).map(|_| BigInt::from(r.gen_range(-9i64..=9))).collect()).collect();
        let m = IntegerMatrix::from_rows(rows, 6);
        let kernel = integer_kernel_basis(&m);
        assert_eq!(rational_rank(&m.to_rows(), 6) + kernel.len(), 6);
        for v in &kernel {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }
}

#[test]
fn large_entries_do_not_overflow() {
    let big = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
    let m = IntegerMatrix::from_rows(vec![vec![big.clone(), BigInt::one()], vec![BigInt::one(), BigInt::zero()]], 2);
    let (h, u) = hermite_normal_form(&m);
    assert!(h.is_identity());
    assert_eq!(u.mul(&m), h);
    assert_eq!(integer_kernel_basis(&IntegerMatrix::from_rows(vec![vec![big.clone(), big]], 2)).len(), 1);
}
