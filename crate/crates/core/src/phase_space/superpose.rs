//! Coherent superposition of states given by their Weyl symbols.
//!
//! The output symbol is obtained by reconstructing operators, applying the
//! fiducial-projector rule and taking the symbol again. An optional
//! cross-check evaluates the numerator of the symbol-space formula
//!
//! ```text
//! f(a) = sum_{kj} sqrt(w_k w_j) ∫ f_k(a1) f_0(a2) f_j(a3) K(a1, a2, a3, a) / sqrt(Tr R_k P0 R_j P0)
//! ```
//!
//! directly by lattice quadrature, with the delta in `K` removed by
//! substituting `a3 = a - a1 + a2`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::field::{PhaseSpaceGrid, SymbolField, SymbolKind};
use super::fock::FockOperator;
use super::kernels::bracket;
use super::weyl::{weyl_reconstruct, weyl_symbol};
use crate::error::{Error, Result, Warning};
use crate::linalg::{hermitian_eig, ComplexMatrix, DensityMatrix};
use crate::purification::{superpose_impure, superpose_pure_many, FiducialProjector, SuperpositionWeights, TOL_EIG};

/// Deviation of the kernel quadrature above which a warning is raised.
pub const KERNEL_CHECK_TOL: f64 = 5e-2;

#[derive(Debug, Clone)]
pub struct SuperposeOptions {
    pub cutoff: usize,
    /// Grid for the kernel-quadrature cross-check; `None` skips it.
    pub cross_check: Option<PhaseSpaceGrid>,
}

#[derive(Debug, Clone)]
pub struct SymbolSuperposition {
    pub field: SymbolField,
    pub state: DensityMatrix,
    /// Largest deviation of the kernel route from the operator route.
    pub kernel_deviation: Option<f64>,
    pub warnings: Vec<Warning>,
}

/// Reconstructed operator made Hermitian and trace one.
fn reconstruct_state(f: &SymbolField, cutoff: usize) -> Result<DensityMatrix> {
    let op = weyl_reconstruct(f, cutoff)?.into_matrix().hermitian_part();
    let tr = op.trace().re;
    if !(tr > 0.0) {
        return Err(Error::validation("trace", format!("reconstructed trace {tr:.3e}")));
    }
    DensityMatrix::single(op.scale_real(1.0 / tr))
}

fn mutually_orthogonal(states: &[DensityMatrix]) -> bool {
    states.iter().enumerate().all(|(k, a)| {
        states[k + 1..]
            .iter()
            .all(|b| a.matrix().matmul(b.matrix()).frobenius_norm() <= crate::purification::TOL_ORTH)
    })
}

/// Components `(weight, projector)` that enter the fiducial sum.
fn components(states: &[DensityMatrix], w: &SuperpositionWeights, pure_path: bool) -> Result<Vec<(f64, ComplexMatrix)>> {
    if pure_path {
        return Ok(w
            .probabilities()
            .iter()
            .zip(states)
            .map(|(p, s)| (*p, s.matrix().clone()))
            .collect());
    }
    let n = states[0].order();
    let mut mixture = ComplexMatrix::zeros(n, n);
    for (s, p) in states.iter().zip(w.probabilities()) {
        mixture = &mixture + &s.matrix().scale_real(*p);
    }
    let dec = hermitian_eig(&mixture, 1e-9)?;
    Ok(dec
        .eigenvalues
        .into_iter()
        .zip(dec.projectors)
        .filter(|(om, _)| *om > TOL_EIG)
        .collect())
}

pub fn symbol_superpose(
    symbols: &[SymbolField],
    w: &SuperpositionWeights,
    fiducial: &SymbolField,
    opts: &SuperposeOptions,
) -> Result<SymbolSuperposition> {
    if symbols.is_empty() {
        return Err(Error::validation("probabilities", "no symbols given"));
    }
    for f in symbols.iter().chain(std::iter::once(fiducial)) {
        if f.kind() != SymbolKind::Weyl {
            return Err(Error::validation("kind", "Weyl fields are required"));
        }
        if f.grid() != fiducial.grid() {
            return Err(Error::Dimension("symbols live on different grids".into()));
        }
    }
    let states: Vec<DensityMatrix> = symbols
        .iter()
        .map(|f| reconstruct_state(f, opts.cutoff))
        .collect::<Result<_>>()?;
    let p0 = FiducialProjector::new(reconstruct_state(fiducial, opts.cutoff)?.into_matrix(), vec![opts.cutoff])?;

    let pure_path = states.iter().all(|s| s.idempotency_residual() <= 1e-9) && mutually_orthogonal(&states);
    let (state, mut warnings) = if pure_path {
        (superpose_pure_many(&states, w, &p0)?, Vec::new())
    } else {
        let out = superpose_impure(&states, w, &p0)?;
        (out.state, out.warnings)
    };
    let field = weyl_symbol(&FockOperator::from(state.clone()), fiducial.grid());

    let kernel_deviation = match &opts.cross_check {
        None => None,
        Some(coarse) => {
            let comps = components(&states, w, pure_path)?;
            let numerator = kernel_numerator(&comps, p0.matrix(), w.visibility(), coarse)?;
            let direct = weyl_symbol(&FockOperator::from(state.clone()), coarse);
            let dev = numerator.max_abs_diff(&direct)?;
            if dev > KERNEL_CHECK_TOL {
                warnings.push(Warning::KernelQuadrature { max_deviation: dev });
            }
            Some(dev)
        }
    };
    Ok(SymbolSuperposition {
        field,
        state,
        kernel_deviation,
        warnings,
    })
}

/// Symbol-space numerator on `grid` by lattice quadrature, divided by the
/// operator-level normalization `sqrt(Tr R_k P0 R_j P0)`.
pub fn kernel_numerator(
    comps: &[(f64, ComplexMatrix)],
    p0: &ComplexMatrix,
    visibility: f64,
    grid: &PhaseSpaceGrid,
) -> Result<SymbolField> {
    let f0 = weyl_symbol(&FockOperator::new(p0.clone())?, grid);
    let fs: Vec<SymbolField> = comps
        .iter()
        .map(|(_, r)| FockOperator::new(r.clone()).map(|op| weyl_symbol(&op, grid)))
        .collect::<Result<_>>()?;
    let mut coeffs = vec![vec![0.0; comps.len()]; comps.len()];
    for (k, (wk, rk)) in comps.iter().enumerate() {
        for (j, (wj, rj)) in comps.iter().enumerate() {
            let den = rk.matmul(p0).matmul(rj).trace_of_product(p0).re;
            if den <= 0.0 {
                return Err(Error::FiducialStraddle { index: k.max(j), overlap: den });
            }
            let vis = if k == j { 1.0 } else { visibility };
            coeffs[k][j] = vis * (wk * wj).sqrt() / den.sqrt();
        }
    }

    let n = grid.side() as isize;
    let cell2 = grid.cell() * grid.cell();
    let values: Vec<Complex64> = (0..grid.len())
        .into_par_iter()
        .map(|out| {
            let (oi, oj) = ((out as isize) / n, (out as isize) % n);
            let a = grid.point(out);
            let mut total = Complex64::new(0.0, 0.0);
            for i1 in 0..n {
                for j1 in 0..n {
                    let a1 = grid.point((i1 * n + j1) as usize);
                    for i2 in 0..n {
                        for j2 in 0..n {
                            let (i3, j3) = (oi - i1 + i2, oj - j1 + j2);
                            if i3 < 0 || j3 < 0 || i3 >= n || j3 >= n {
                                continue;
                            }
                            let a2 = grid.point((i2 * n + j2) as usize);
                            let a3 = a - a1 + a2;
                            let kernel = four_point_kernel(a1, a2, a3, a);
                            let base = f0.at(i2, j2) * kernel;
                            let mut s = Complex64::new(0.0, 0.0);
                            for (k, fk) in fs.iter().enumerate() {
                                let fk1 = fk.at(i1, j1);
                                for (j, fj) in fs.iter().enumerate() {
                                    s += coeffs[k][j] * fk1 * fj.at(i3, j3);
                                }
                            }
                            total += base * s;
                        }
                    }
                }
            }
            total * cell2
        })
        .collect();
    SymbolField::new(*grid, values, SymbolKind::Weyl)
}

/// Smooth part of `Tr[D(a1) D(a2) D(a3) U(a)]` on its constraint surface.
#[inline]
fn four_point_kernel(a1: Complex64, a2: Complex64, a3: Complex64, a: Complex64) -> Complex64 {
    let e = -bracket(a1, a2) + bracket(a1, a3) - bracket(a1, a) - bracket(a2, a3) + bracket(a2, a) - bracket(a3, a);
    (2.0 * e).exp() * (4.0 / (std::f64::consts::PI * std::f64::consts::PI))
}
