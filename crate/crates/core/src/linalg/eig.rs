//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so the
//! combined 2x2 unitary annihilates `a_pq` exactly. Sweeps visit pivots in
//! row-major order, which makes the result reproducible bit-for-bit.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (descending) with their orthonormal eigenvectors and rank-1
/// eigenprojectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
    pub projectors: Vec<ComplexMatrix>,
    /// Half-open index ranges of eigenvalues grouped as degenerate.
    pub degenerate_groups: Vec<(usize, usize)>,
}

impl SpectralDecomposition {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn has_degeneracy(&self) -> bool {
        !self.degenerate_groups.is_empty()
    }

    /// `sum_k lambda_k P_k`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.projectors.first().map_or(0, |p| p.rows());
        let mut acc = ComplexMatrix::zeros(n, n);
        for (lambda, p) in self.eigenvalues.iter().zip(&self.projectors) {
            acc = &acc + &p.scale_real(*lambda);
        }
        acc
    }
}

/// Diagonalizes a Hermitian matrix. Fails with `NotHermitian` when
/// `||m - m^dagger||_F > herm_tol`.
pub fn hermitian_eig(m: &ComplexMatrix, herm_tol: f64) -> Result<SpectralDecomposition> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigendecomposition of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let residual = m.hermiticity_residual();
    if residual > herm_tol {
        return Err(Error::NotHermitian {
            residual,
            tol: herm_tol,
        });
    }
    let n = m.rows();
    let scale = m.frobenius_norm();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let mut previous = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        // stop at round-off level or once a sweep stops making progress
        if off == 0.0 || off <= 1e-16 * scale || off >= previous {
            break;
        }
        previous = off;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    let off = off_diagonal_norm(&a);
    if off > 1e-10 * scale.max(1.0) {
        return Err(Error::InternalConsistency(format!(
            "Jacobi iteration did not converge (off-diagonal norm {off:.3e})"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    // Stable sort keeps Jacobi index order within ties.
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors: Vec<Vec<Complex64>> = order.iter().map(|&i| v.column(i)).collect();

    let tol_deg = 1e-9 * scale;
    let mut degenerate_groups = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (eigenvalues[end - 1] - eigenvalues[end]).abs() <= tol_deg {
            end += 1;
        }
        if end - start > 1 {
            degenerate_groups.push((start, end));
            gram_schmidt(&mut vectors[start..end]);
        }
        start = end;
    }
    for vec in vectors.iter_mut() {
        fix_phase(vec);
    }
    let projectors = vectors.iter().map(|x| ComplexMatrix::outer(x)).collect();
    Ok(SpectralDecomposition {
        eigenvalues,
        vectors,
        projectors,
        degenerate_groups,
    })
}

/// Eigenvalues only, descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, herm_tol: f64) -> Result<Vec<f64>> {
    hermitian_eig(m, herm_tol).map(|d| d.eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += a[(r, c)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // phase e^{-i phi} with a_pq = |a_pq| e^{i phi}
    let phase = (apq / mag).conj();
    // U = diag(1, phase) * [[c, s], [-s, c]]
    let u00 = Complex64::new(c, 0.0);
    let u01 = Complex64::new(s, 0.0);
    let u10 = phase * (-s);
    let u11 = phase * c;
    let n = a.rows();

    // A <- A U
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u00 + akq * u10;
        a[(k, q)] = akp * u01 + akq * u11;
    }
    // A <- U^dagger A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u00.conj() * apk + u10.conj() * aqk;
        a[(q, k)] = u01.conj() * apk + u11.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    // V <- V U
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u00 + vkq * u10;
        v[(k, q)] = vkp * u01 + vkq * u11;
    }
}

fn gram_schmidt(vectors: &mut [Vec<Complex64>]) {
    for i in 0..vectors.len() {
        for j in 0..i {
            let (head, tail) = vectors.split_at_mut(i);
            let proj: Complex64 = head[j]
                .iter()
                .zip(tail[0].iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            for (x, y) in tail[0].iter_mut().zip(head[j].iter()) {
                *x -= proj * y;
            }
        }
        let norm = vectors[i].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in vectors[i].iter_mut() {
            *x /= norm;
        }
    }
}

/// Rotates the vector so its largest-magnitude component (first on ties) is
/// real and positive.
fn fix_phase(v: &mut [Complex64]) {
    let mut best = 0;
    let mut best_mag = -1.0;
    for (i, z) in v.iter().enumerate() {
        let mag = z.norm();
        if mag > best_mag * (1.0 + 1e-12) {
            best = i;
            best_mag = mag;
        }
    }
    if best_mag <= 0.0 {
        return;
    }
    let phase = (v[best] / best_mag).conj();
    for z in v.iter_mut() {
        *z *= phase;
    }
    v[best] = Complex64::new(v[best].norm(), 0.0);
}
