use num_complex::Complex64;

use super::eig::hermitian_eigenvalues;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Numerical tolerances used when validating states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub herm: f64,
    pub trace: f64,
    pub psd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: 1e-10,
            trace: 1e-10,
            psd: 1e-9,
        }
    }
}

/// A validated density operator together with its subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        Self::with_tolerances(matrix, dims, &Tolerances::default())
    }

    /// Single-system state (`dims = [n]`).
    pub fn single(matrix: ComplexMatrix) -> Result<Self> {
        let n = matrix.rows();
        Self::new(matrix, vec![n])
    }

    pub fn with_tolerances(matrix: ComplexMatrix, dims: Vec<usize>, tol: &Tolerances) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::validation(
                "square",
                format!("{}x{} matrix", matrix.rows(), matrix.cols()),
            ));
        }
        if dims.is_empty() || dims.iter().any(|&d| d == 0) || dims.iter().product::<usize>() != matrix.rows() {
            return Err(Error::validation(
                "dims",
                format!("dims {dims:?} do not multiply to order {}", matrix.rows()),
            ));
        }
        let herm = matrix.hermiticity_residual();
        if herm > tol.herm {
            return Err(Error::validation("hermitian", format!("||M - M^dagger||_F = {herm:.3e}")));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol.trace {
            return Err(Error::validation("trace", format!("trace = {:.12}", tr.re)));
        }
        let min_eig = hermitian_eigenvalues(&matrix, tol.herm)?
            .last()
            .copied()
            .unwrap_or(0.0);
        if min_eig < -tol.psd {
            return Err(Error::validation("psd", format!("minimum eigenvalue {min_eig:.3e}")));
        }
        Ok(Self { matrix, dims })
    }

    /// Pure state `|psi><psi|` from an unnormalized vector.
    pub fn pure(psi: &[Complex64], dims: Vec<usize>) -> Result<Self> {
        Self::new(ComplexMatrix::projector(psi), dims)
    }

    pub(crate) fn from_parts_unchecked(matrix: ComplexMatrix, dims: Vec<usize>) -> Self {
        Self { matrix, dims }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.matrix.rows()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `Tr rho^2`.
    pub fn purity(&self) -> f64 {
        self.matrix.trace_of_product(&self.matrix).re
    }

    /// `||rho^2 - rho||_F`, zero for projectors.
    pub fn idempotency_residual(&self) -> f64 {
        (&self.matrix.matmul(&self.matrix) - &self.matrix).frobenius_norm()
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (self.purity() - 1.0).abs() <= tol
    }
}
