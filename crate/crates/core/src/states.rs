//! Small library of finite-dimensional reference states.

use num_complex::Complex64;

use crate::linalg::{ComplexMatrix, DensityMatrix};

fn real_ket(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

/// Computational basis projector `|k><k|` on a `dim`-level system.
pub fn basis(dim: usize, k: usize) -> DensityMatrix {
    let mut d = vec![0.0; dim];
    d[k] = 1.0;
    DensityMatrix::from_parts_unchecked(ComplexMatrix::from_diag(&d), vec![dim])
}

/// `(|01> + |10>)/sqrt(2)` on two qubits.
pub fn bell() -> DensityMatrix {
    phi_state(std::f64::consts::FRAC_PI_4)
}

/// `cos(phi)|01> + sin(phi)|10>` on two qubits.
pub fn phi_state(phi: f64) -> DensityMatrix {
    let psi = real_ket(&[0.0, phi.cos(), phi.sin(), 0.0]);
    DensityMatrix::from_parts_unchecked(ComplexMatrix::outer(&psi), vec![2, 2])
}

/// `I/d` on the given subsystem dims.
pub fn maximally_mixed(dims: &[usize]) -> DensityMatrix {
    let n: usize = dims.iter().product();
    DensityMatrix::from_parts_unchecked(
        ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
        dims.to_vec(),
    )
}

/// Pauli matrices `(sigma_x, sigma_y, sigma_z)`.
pub fn pauli() -> [ComplexMatrix; 3] {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        ComplexMatrix::new(2, 2, vec![o, one, one, o]).expect("static shape"),
        ComplexMatrix::new(2, 2, vec![o, -i, i, o]).expect("static shape"),
        ComplexMatrix::from_diag(&[1.0, -1.0]),
    ]
}
