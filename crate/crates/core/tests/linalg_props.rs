mod common;

use common::c;
use lqu::linalg::{
    hermitian_eig, kron, matrix_sqrt_psd, trace_product, ComplexMatrix, DEFAULT_NEG_TOL,
};
use proptest::prelude::*;

fn square(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(|v| {
        ComplexMatrix::from_row_major(v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap()
    })
}

/// Small integer entries, so every product in a Kronecker chain is exact.
fn integer_square(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_dim).prop_flat_map(|d| {
        prop::collection::vec((-4i32..=4, -4i32..=4), d * d).prop_map(|v| {
            ComplexMatrix::from_row_major(v.into_iter().map(|(a, b)| c(a as f64, b as f64)).collect())
                .unwrap()
        })
    })
}

fn any_square(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_dim).prop_flat_map(square)
}

/// G†G, Hermitian PSD and of full or deficient rank depending on G.
fn psd(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    any_square(max_dim).prop_map(|g| &g.adjoint() * &g)
}

fn hermitian(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    any_square(max_dim).prop_map(|g| g.add(&g.adjoint()).unwrap())
}

fn rel_frobenius(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.sub(b).unwrap().frobenius_norm() / b.frobenius_norm().max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eig_reconstructs_and_is_orthonormal(m in hermitian(16)) {
        let eig = hermitian_eig(&m, 1e-12).unwrap();
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(rel_frobenius(&eig.reconstruct(), &m) < 1e-10);
        let v = &eig.eigenvectors;
        let vtv = &v.adjoint() * v;
        prop_assert!(vtv.sub(&ComplexMatrix::identity(m.dim())).unwrap().frobenius_norm() < 1e-10);
    }

    #[test]
    fn eigenvalue_sum_is_trace(m in hermitian(16)) {
        let eig = hermitian_eig(&m, 1e-12).unwrap();
        let s: f64 = eig.eigenvalues.iter().sum();
        prop_assert!((s - m.trace().re).abs() < 1e-10 * m.frobenius_norm().max(1.0));
    }

    #[test]
    fn sqrt_round_trip(m in psd(16)) {
        let s = matrix_sqrt_psd(&m, DEFAULT_NEG_TOL).unwrap();
        prop_assert!(s.hermitian_deviation() < 1e-12 * m.frobenius_norm().max(1.0));
        prop_assert!(rel_frobenius(&(&s * &s), &m) < 1e-9);
        let eig = hermitian_eig(&s, 1e-10).unwrap();
        prop_assert!(eig.eigenvalues[0] >= -1e-12 * m.frobenius_norm().sqrt().max(1.0));
    }

    #[test]
    fn sqrt_of_rank_deficient(g in (2usize..=8).prop_flat_map(|d| (square(d), 1..d))) {
        // zero out rows of G to force rank < dim
        let (mut g, keep) = g;
        let d = g.dim();
        for i in keep..d {
            for j in 0..d {
                g[(i, j)] = c(0.0, 0.0);
            }
        }
        let m = &g.adjoint() * &g;
        let s = matrix_sqrt_psd(&m, DEFAULT_NEG_TOL).unwrap();
        prop_assert!(rel_frobenius(&(&s * &s), &m) < 1e-9);
    }

    #[test]
    fn kron_is_associative(a in integer_square(3), b in integer_square(3), d in integer_square(2)) {
        prop_assert_eq!(kron(&kron(&a, &b), &d), kron(&a, &kron(&b, &d)));
    }

    #[test]
    fn trace_product_cyclic_and_naive(
        (a, b, x, y) in (1usize..=8).prop_flat_map(|n| (square(n), square(n), square(n), square(n)))
    ) {
        let t = trace_product(&a, &b, &x, &y).unwrap();
        let t2 = trace_product(&b, &x, &y, &a).unwrap();
        prop_assert!((t - t2).norm() < 1e-12);
        let naive = (&(&(&a * &b) * &x) * &y).trace();
        prop_assert!((t - naive).norm() < 1e-12);
    }
}

#[test]
fn jacobi_handles_degenerate_and_clustered_spectra() {
    // U diag(1, 1, 1e-14, 0) U† with a dense unitary from a Hermitian eigenbasis
    let mut h = ComplexMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            h[(i, j)] = c((i + j) as f64, i as f64 - j as f64);
        }
    }
    let basis = hermitian_eig(&h, 1e-12).unwrap().eigenvectors;
    let d = ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 1e-14, 0.0]);
    let m = &(&basis * &d) * &basis.adjoint();
    let eig = hermitian_eig(&m, 1e-12).unwrap();
    let expect = [0.0, 1e-14, 1.0, 1.0];
    for (l, e) in eig.eigenvalues.iter().zip(expect) {
        assert!((l - e).abs() < 1e-15, "{l} vs {e}");
    }
}
