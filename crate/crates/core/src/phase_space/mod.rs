//! Single-mode phase-space calculus: Fock-space operators, Weyl symbols,
//! symplectic tomograms and star-product kernels.

mod field;
pub mod fock;
pub mod kernels;
mod superpose;
mod tomogram;
mod weyl;

pub use field::{FieldMetadata, PhaseSpaceGrid, SymbolField, SymbolKind};
pub use fock::{
    coherent_state, displacement, displacement_elements, number_state, parity, quadrature_moments, squeezed_vacuum,
    thermal_state, FockOperator,
};
pub use kernels::{
    tomographic_star_kernel, tomographic_trace_kernel, weyl_four_kernel, weyl_star_kernel, weyl_trace_kernel,
    ConstrainedValue, TomogramPoint,
};
pub use superpose::{kernel_numerator, symbol_superpose, SuperposeOptions, SymbolSuperposition, KERNEL_CHECK_TOL};
pub use tomogram::{tomogram_field, tomogram_gaussian, tomogram_radon};
pub use weyl::{trace_overlap_check, weyl_reconstruct, weyl_symbol, weyl_symbol_at};

use num_complex::Complex64;

/// Phase-space point `alpha` as the quadrature vector `(p, q)` used by
/// [`crate::gaussian`].
pub fn alpha_to_pq(alpha: Complex64) -> [f64; 2] {
    let s = std::f64::consts::SQRT_2;
    [s * alpha.im, s * alpha.re]
}
