//! Seeded random states and matrices for property tests and the CLI.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, DensityMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_c<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Matrix with iid standard complex Gaussian entries.
pub fn ginibre<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian_c(rng))
}

/// Haar-random unit vector.
pub fn random_ket<R: Rng>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim).map(|_| gaussian_c(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

pub fn random_pure<R: Rng>(rng: &mut R, dims: &[usize]) -> DensityMatrix {
    let n: usize = dims.iter().product();
    let psi = random_ket(rng, n);
    DensityMatrix::from_parts_unchecked(ComplexMatrix::outer(&psi), dims.to_vec())
}

/// Density matrix `G G^dagger / Tr` with `G` a `d x rank` Ginibre matrix.
pub fn random_density<R: Rng>(rng: &mut R, dims: &[usize], rank: usize) -> DensityMatrix {
    let n: usize = dims.iter().product();
    let g = ginibre(rng, n, rank.max(1));
    let m = g.matmul(&g.adjoint());
    let tr = m.trace().re;
    DensityMatrix::from_parts_unchecked(m.scale_real(1.0 / tr).hermitian_part(), dims.to_vec())
}

/// Haar-random unitary from Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim, dim);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for c in 0..dim {
        let mut v = g.column(c);
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= proj * ui;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(dim, dim, |r, c| cols[c][r])
}

/// Random Hermitian matrix `(G + G^dagger)/2`.
pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    ginibre(rng, dim, dim).hermitian_part()
}

/// Random real symmetric positive-definite matrix `A A^T + shift I`,
/// row-major.
pub fn random_spd<R: Rng>(rng: &mut R, n: usize, shift: f64) -> Vec<f64> {
    let a: Vec<f64> = (0..n * n).map(|_| rng.sample(StandardNormal)).collect();
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let s: f64 = (0..n).map(|k| a[i * n + k] * a[j * n + k]).sum();
            out[i * n + j] = s + if i == j { shift } else { 0.0 };
        }
    }
    out
}
