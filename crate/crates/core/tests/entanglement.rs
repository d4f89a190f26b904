use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use num_complex::Complex64;
use proptest::prelude::*;

use densop::entanglement::{
    deviation, measure, measure_order, observable_measure, spectra_equal_check, Partition,
};
use densop::linalg::{tensor_product, ComplexMatrix, DensityMatrix};
use densop::{random, states, Error};

fn qubits() -> Partition {
    Partition::singletons(vec![2, 2]).unwrap()
}

/// Entanglement of a two-spin density matrix from its entries alone:
/// purities and the overlap with the product of marginals written out by hand.
fn two_spin_oracle(rho: &ComplexMatrix) -> f64 {
    let r = |i: usize, k: usize| rho[(i - 1, k - 1)];
    let mu: f64 = (1..=4).flat_map(|i| (1..=4).map(move |k| (i, k))).map(|(i, k)| r(i, k).norm_sqr()).sum();
    let mu_a = (r(1, 1) + r(2, 2)).norm_sqr()
        + (r(1, 3) + r(2, 4)).norm_sqr()
        + (r(3, 1) + r(4, 2)).norm_sqr()
        + (r(3, 3) + r(4, 4)).norm_sqr();
    let mu_b = (r(1, 1) + r(3, 3)).norm_sqr()
        + (r(1, 2) + r(3, 4)).norm_sqr()
        + (r(2, 1) + r(4, 3)).norm_sqr()
        + (r(2, 2) + r(4, 4)).norm_sqr();
    let b = [r(1, 1) + r(3, 3), r(2, 1) + r(4, 3), r(1, 2) + r(3, 4), r(2, 2) + r(4, 4)];
    let row = |x: [Complex64; 4]| x[0] * b[0] + x[1] * b[1] + x[2] * b[2] + x[3] * b[3];
    let overlap = (r(1, 1) + r(2, 2)) * row([r(1, 1), r(1, 2), r(2, 1), r(2, 2)])
        + (r(3, 1) + r(4, 2)) * row([r(1, 3), r(1, 4), r(2, 3), r(2, 4)])
        + (r(1, 3) + r(2, 4)) * row([r(3, 1), r(3, 2), r(4, 1), r(4, 2)])
        + (r(3, 3) + r(4, 4)) * row([r(3, 3), r(3, 4), r(4, 3), r(4, 4)]);
    mu + mu_a * mu_b - 2.0 * overlap.re
}

#[test]
fn explicit_two_spin_formula_agrees() {
    let mut rng = random::rng(21);
    for k in 0..25 {
        let rho = random::random_density(&mut rng, &[2, 2], 1 + k % 4);
        let rep = measure(&rho, &qubits()).unwrap();
        assert_abs_diff_eq!(rep.e, two_spin_oracle(rho.matrix()), epsilon = 1e-12);
        assert_abs_diff_eq!(rep.e, rep.decomposed(), epsilon = 1e-12);
    }
}

#[test]
fn bell_reports() {
    let bell = states::bell();
    let rep = measure(&bell, &qubits()).unwrap();
    assert_abs_diff_eq!(rep.e, 0.75, epsilon = 1e-12);
    assert_abs_diff_eq!(rep.mu_ab, 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(rep.mu_parts[0], 0.5, epsilon = 1e-12);
    assert_abs_diff_eq!(rep.mu_parts[1], 0.5, epsilon = 1e-12);

    let r = deviation(&bell, &qubits()).unwrap();
    let expected = bell.matrix() - &ComplexMatrix::identity(4).scale_real(0.25);
    assert!(r.max_abs_diff(&expected) < 1e-15);

    assert_abs_diff_eq!(measure_order(&bell, &qubits(), 1).unwrap(), 0.75, epsilon = 1e-12);
    // Tr R^3 with R = Bell - I/4, frozen from the direct matrix power
    assert_abs_diff_eq!(measure_order(&bell, &qubits(), 2).unwrap(), 0.375, epsilon = 1e-12);
}

#[test]
fn phi_family_and_angle() {
    for deg in [0.0f64, 10.0, 22.5, 45.0, 67.5, 80.0, 90.0] {
        let x = (2.0 * deg.to_radians()).sin().powi(2);
        let rep = measure(&states::phi_state(deg.to_radians()), &qubits()).unwrap();
        assert_abs_diff_eq!(rep.e, 0.5 * x * (1.0 + 0.5 * x), epsilon = 1e-10);
    }
    let rep = measure(&states::phi_state(PI / 4.0), &qubits()).unwrap();
    assert_abs_diff_eq!(rep.theta().to_degrees(), 60.0, epsilon = 1e-8);
}

#[test]
fn products_have_no_deviation() {
    let mut rng = random::rng(4);
    let a = random::random_density(&mut rng, &[3], 2);
    let b = random::random_density(&mut rng, &[2], 2);
    let rho = DensityMatrix::new(tensor_product(a.matrix(), b.matrix()), vec![3, 2]).unwrap();
    let part = Partition::singletons(vec![3, 2]).unwrap();
    assert!(deviation(&rho, &part).unwrap().frobenius_norm() < 1e-15);
    for n in 1..4 {
        assert!(measure_order(&rho, &part, n).unwrap().abs() < 1e-15);
    }
    let rep = spectra_equal_check(&DensityMatrix::new(
        tensor_product(states::basis(2, 0).matrix(), states::basis(3, 1).matrix()),
        vec![2, 3],
    )
    .unwrap(), &Partition::singletons(vec![2, 3]).unwrap(), 4)
    .unwrap();
    assert!(rep.equal);
    assert_eq!(rep.comparisons[0].spectrum.len(), 1);
    assert_abs_diff_eq!(rep.comparisons[0].spectrum[0], 1.0, epsilon = 1e-12);
}

#[test]
fn deviation_is_traceless() {
    let mut rng = random::rng(8);
    for k in 0..50 {
        let rho = random::random_density(&mut rng, &[2, 2], 1 + k % 4);
        assert!(deviation(&rho, &qubits()).unwrap().trace().norm() < 1e-14);
    }
}

#[test]
fn observable_examples() {
    let [_, _, sz] = states::pauli();
    let zz = tensor_product(&sz, &sz);
    assert_abs_diff_eq!(observable_measure(&zz, &qubits(), 2, false).unwrap(), 4.0, epsilon = 1e-12);
    assert_abs_diff_eq!(observable_measure(&zz, &qubits(), 2, true).unwrap(), 1.0, epsilon = 1e-12);
    assert_eq!(observable_measure(&ComplexMatrix::zeros(4, 4), &qubits(), 2, true).unwrap(), 0.0);
    assert_abs_diff_eq!(
        observable_measure(states::bell().matrix(), &qubits(), 2, false).unwrap(),
        0.75,
        epsilon = 1e-12
    );
    // three parties
    let zzz = tensor_product(&zz, &sz);
    let three = Partition::singletons(vec![2, 2, 2]).unwrap();
    assert_abs_diff_eq!(observable_measure(&zzz, &three, 2, false).unwrap(), 8.0, epsilon = 1e-12);

    let mut skew = ComplexMatrix::zeros(4, 4);
    skew[(0, 1)] = Complex64::new(1.0, 0.0);
    assert!(matches!(observable_measure(&skew, &qubits(), 2, false), Err(Error::NotHermitian { .. })));
}

#[test]
fn bell_marginal_spectra() {
    let rep = spectra_equal_check(&states::bell(), &qubits(), 6).unwrap();
    assert!(rep.equal);
    for (a, b) in rep.comparisons[0].spectrum.iter().zip([0.5, 0.5]) {
        assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
    }
    let mixed = states::maximally_mixed(&[2, 2]);
    assert!(matches!(spectra_equal_check(&mixed, &qubits(), 3), Err(Error::NotPure { .. })));
}

#[test]
fn multipartite_groups_match_complements() {
    let mut rng = random::rng(17);
    let rho = random::random_pure(&mut rng, &[2, 2, 3]);
    let rep = spectra_equal_check(&rho, &Partition::singletons(vec![2, 2, 3]).unwrap(), 5).unwrap();
    assert_eq!(rep.comparisons.len(), 3);
    assert!(rep.equal);
}

#[test]
fn measure_requires_two_groups() {
    let three = Partition::singletons(vec![2, 2, 2]).unwrap();
    let mut rng = random::rng(2);
    let rho = random::random_pure(&mut rng, &[2, 2, 2]);
    assert!(measure(&rho, &three).is_err());
    assert!(measure(&rho, &Partition::bipartite(vec![2, 2, 2], 1).unwrap()).is_ok());
}

fn local_unitary_case(seed: u64) -> (f64, f64) {
    let mut rng = random::rng(seed);
    let rho = random::random_density(&mut rng, &[2, 3], 3);
    let u = tensor_product(&random::random_unitary(&mut rng, 2), &random::random_unitary(&mut rng, 3));
    let turned = DensityMatrix::new(u.matmul(rho.matrix()).matmul(&u.adjoint()).hermitian_part(), vec![2, 3]).unwrap();
    let part = Partition::singletons(vec![2, 3]).unwrap();
    (measure(&rho, &part).unwrap().e, measure(&turned, &part).unwrap().e)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn local_unitaries_preserve_entanglement(seed in any::<u64>()) {
        let (before, after) = local_unitary_case(seed);
        prop_assert!((before - after).abs() <= 1e-9);
        prop_assert!(before >= 0.0);
    }
}
