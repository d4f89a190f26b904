//! Dense complex linear algebra shared by every other module.

mod density;
mod eig;
mod matrix;
mod partial;

pub use density::{DensityMatrix, Tolerances};
pub use eig::{hermitian_eig, hermitian_eigenvalues, SpectralDecomposition};
pub use matrix::{frobenius_inner, tensor_product, ComplexMatrix};
pub use partial::{partial_trace, permute_subsystems};
