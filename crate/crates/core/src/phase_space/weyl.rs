//! Weyl symbols through displaced parity operators.
//!
//! `U(alpha) = 2 D(alpha) P D(-alpha) = 2 D(2 alpha) P` gives the symbol
//! `W_A(alpha) = Tr[A U(alpha)]` and the dual `(2/pi) D(2 alpha) P`
//! reconstructs `A = ∫ W_A(alpha) (2/pi) D(2 alpha) P d^2 alpha`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::field::{PhaseSpaceGrid, SymbolField, SymbolKind};
use super::fock::{displacement_elements, parity_sign, FockOperator};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `Tr[A 2 D(2 alpha) P]` at a single point.
pub fn weyl_symbol_at(a: &FockOperator, alpha: Complex64) -> Complex64 {
    let m = a.matrix();
    let n = a.cutoff();
    let d = displacement_elements(alpha * 2.0, n);
    let mut acc = ZERO;
    for r in 0..n {
        for c in 0..n {
            // (D P)[r, c] = D[r, c] (-1)^c
            acc += m[(c, r)] * d[(r, c)] * parity_sign(c);
        }
    }
    acc * 2.0
}

/// Weyl symbol sampled on every grid point. Points are evaluated in
/// parallel and reassembled in grid order.
pub fn weyl_symbol(a: &FockOperator, grid: &PhaseSpaceGrid) -> SymbolField {
    let values: Vec<Complex64> = (0..grid.len())
        .into_par_iter()
        .map(|k| weyl_symbol_at(a, grid.point(k)))
        .collect();
    SymbolField::new(*grid, values, SymbolKind::Weyl)
        .expect("one value per grid point")
        .with_cutoff(a.cutoff())
}

/// Inverse map by lattice quadrature with weight `h^2`.
pub fn weyl_reconstruct(f: &SymbolField, cutoff: usize) -> Result<FockOperator> {
    if f.kind() != SymbolKind::Weyl {
        return Err(Error::validation("kind", "a Weyl field is required"));
    }
    if cutoff == 0 {
        return Err(Error::Dimension("cutoff must be positive".into()));
    }
    let grid = *f.grid();
    let side = grid.side();
    // one partial sum per grid row, summed in row order for determinism
    let rows: Vec<ComplexMatrix> = (0..side)
        .into_par_iter()
        .map(|i| {
            let mut acc = ComplexMatrix::zeros(cutoff, cutoff);
            for j in 0..side {
                let k = i * side + j;
                let w = f.values()[k];
                if w == ZERO {
                    continue;
                }
                let d = displacement_elements(grid.point(k) * 2.0, cutoff);
                for r in 0..cutoff {
                    for c in 0..cutoff {
                        acc[(r, c)] += w * d[(r, c)] * parity_sign(c);
                    }
                }
            }
            acc
        })
        .collect();
    let mut total = ComplexMatrix::zeros(cutoff, cutoff);
    for r in &rows {
        total = &total + r;
    }
    FockOperator::new(total.scale_real(2.0 / PI * grid.cell()))
}

/// `(Tr(AB), (1/pi) ∫ W_A W_B d^2 alpha)`, real parts.
pub fn trace_overlap_check(a: &FockOperator, b: &FockOperator, grid: &PhaseSpaceGrid) -> Result<(f64, f64)> {
    if a.cutoff() != b.cutoff() {
        return Err(Error::Dimension(format!(
            "cutoffs {} and {} differ",
            a.cutoff(),
            b.cutoff()
        )));
    }
    let lhs = a.matrix().trace_of_product(b.matrix()).re;
    let wa = weyl_symbol(a, grid);
    let wb = weyl_symbol(b, grid);
    let rhs: Complex64 = wa.values().iter().zip(wb.values()).map(|(x, y)| x * y).sum();
    Ok((lhs, rhs.re * grid.cell() / PI))
}
