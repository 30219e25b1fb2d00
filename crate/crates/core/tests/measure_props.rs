mod common;

use common::{
    bloch_vector, conjugate, random_diagonal, random_mixed, random_noisy, random_qubit_unitary,
    tensor_all,
};
use lqu::analytic::AnalyticFamily;
use lqu::linalg::ComplexMatrix;
use lqu::measure::{embed_single_qubit, lqu_all, m_matrix, skew_information, SqrtDensity};
use lqu::rng::SeededRng;
use lqu::states::{kay_state, mix_white_noise, pure_state, random_pure, Family, StateSpec};
use proptest::prelude::*;

fn n_dot_sigma(n: [f64; 3]) -> ComplexMatrix {
    let x = ComplexMatrix::pauli_x().scale(n[0]);
    let y = ComplexMatrix::pauli_y().scale(n[1]);
    let z = ComplexMatrix::pauli_z().scale(n[2]);
    x.add(&y).unwrap().add(&z).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// 1 - nᵀMn equals the skew information of n·σ on the measured qubit.
    #[test]
    fn skew_identity(seed in any::<u64>(), n_qubits in 1usize..=4, dir_seed in any::<u64>()) {
        let rho = random_noisy(n_qubits, seed);
        let sqrt = SqrtDensity::new(&rho).unwrap();
        let mut rng = SeededRng::new(dir_seed);
        for q in 0..n_qubits {
            let m = sqrt.m_matrix(q).unwrap();
            for _ in 0..4 {
                let n = rng.unit_vector3();
                let k = embed_single_qubit(n_qubits, q, &n_dot_sigma(n)).unwrap();
                let skew = skew_information(&rho, &k).unwrap();
                prop_assert!((1.0 - m.quadratic_form(n) - skew).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn range_on_random_states(seed in any::<u64>(), n_qubits in 1usize..=4, full_rank in any::<bool>()) {
        let rho = if full_rank { random_mixed(n_qubits, seed) } else { random_noisy(n_qubits, seed) };
        let report = lqu_all(&rho).unwrap();
        for q in &report.per_bipartition {
            prop_assert!((0.0..=1.0).contains(q));
        }
        let sum: f64 = report.per_bipartition.iter().sum();
        prop_assert_eq!(report.mean, sum / n_qubits as f64);
    }

    #[test]
    fn local_unitary_invariance(seed in any::<u64>(), n_qubits in 1usize..=4) {
        let rho = random_noisy(n_qubits, seed);
        let mut rng = SeededRng::new(seed.wrapping_add(1));
        let us: Vec<ComplexMatrix> = (0..n_qubits).map(|_| random_qubit_unitary(&mut rng)).collect();
        let rotated = conjugate(&rho, &tensor_all(&us));
        let a = lqu_all(&rho).unwrap();
        let b = lqu_all(&rotated).unwrap();
        for (x, y) in a.per_bipartition.iter().zip(&b.per_bipartition) {
            prop_assert!((x - y).abs() < 1e-9, "{} vs {}", x, y);
        }
    }

    #[test]
    fn classical_states_have_zero_lqu(seed in any::<u64>(), n_qubits in 1usize..=4) {
        let rho = random_diagonal(n_qubits, seed);
        for q in lqu_all(&rho).unwrap().per_bipartition {
            prop_assert!(q.abs() < 1e-9);
        }
    }

    /// For pure states M = b bᵀ with b the Bloch vector of the measured qubit.
    #[test]
    fn pure_state_reduction(seed in any::<u64>(), n_qubits in 1usize..=4) {
        let rho = random_pure(n_qubits, seed).unwrap().projector();
        for q in 0..n_qubits {
            let m = m_matrix(&rho, q).unwrap();
            let b = bloch_vector(&rho, q);
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert!((m.entries[i][j] - b[i] * b[j]).abs() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn correlation_matrix_invariants() {
    for seed in 0..30 {
        let rho = random_mixed(3, seed);
        let sqrt = SqrtDensity::new(&rho).unwrap();
        for q in 0..3 {
            let m = sqrt.m_matrix(q).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    assert!((m.entries[i][j] - m.entries[j][i]).abs() <= 1e-10);
                }
            }
            let ev = m.eigenvalues().unwrap();
            assert!(ev.iter().all(|l| (-1e-9..=1.0 + 1e-9).contains(l)));
        }
    }
}

fn analytic_grid(f: Family) -> Vec<f64> {
    match f {
        Family::Kay => (0..=100).map(|k| 2.0 + 0.08 * k as f64).collect(),
        _ => (0..=100).map(|k| k as f64 / 100.0).collect(),
    }
}

/// The closed forms agree with the pipeline on 101-point grids, for every qubit.
#[test]
fn oracle_equivalence_all_families() {
    for f in Family::ALL {
        let Some(af) = AnalyticFamily::for_family(f) else { continue };
        for p in analytic_grid(f) {
            let rho = StateSpec::new(f, p).build().unwrap();
            let expected = af.lqu(p).unwrap();
            let report = lqu_all(&rho).unwrap();
            for q in &report.per_bipartition {
                assert!((q - expected).abs() <= 1e-8, "{f} at {p}: {q} vs {expected}");
            }
        }
    }
}

#[test]
fn numeric_pipeline_strictly_decreasing_on_noise() {
    for f in [Family::Ghz3, Family::W3, Family::Ghz4, Family::W4] {
        let means: Vec<f64> = (0..=20)
            .map(|k| {
                let rho = mix_white_noise(&pure_state(f).unwrap(), k as f64 / 20.0).unwrap();
                lqu_all(&rho).unwrap().mean
            })
            .collect();
        assert!(means.windows(2).all(|w| w[1] < w[0]), "{f}: {means:?}");
    }
}

#[test]
fn kay_pipeline_positive_for_large_gamma() {
    for g in [10.0, 100.0, 1000.0] {
        let q = lqu_all(&kay_state(g).unwrap()).unwrap().mean;
        assert!(q > 0.0, "γ = {g}");
    }
}

#[test]
fn four_qubit_random_state_is_asymmetric() {
    let rho = mix_white_noise(&random_pure(4, 7).unwrap(), 0.2).unwrap();
    let r = lqu_all(&rho).unwrap();
    let qs = &r.per_bipartition;
    let distinct = (0..4).all(|i| (i + 1..4).all(|j| (qs[i] - qs[j]).abs() > 1e-6));
    assert!(distinct, "{qs:?}");
}
