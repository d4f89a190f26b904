//! Density-operator toolkit: coherent superposition of quantum states via a
//! fiducial projector, Hilbert-Schmidt entanglement measures, Gaussian
//! continuous-variable states, and Weyl/tomographic phase-space symbols.

pub mod entanglement;
pub mod error;
pub mod gaussian;
pub mod linalg;
pub mod phase_space;
pub mod purification;
pub mod random;
pub mod states;

pub use error::{Error, Result, Warning};
pub use linalg::{ComplexMatrix, DensityMatrix};
