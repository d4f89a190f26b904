//! Gaussian continuous-variable states described by covariance matrices.
//!
//! Phase-space variables are ordered `(p_1..p_n, q_1..q_n)` with `hbar = 1`,
//! so the vacuum has covariance `I/2`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

const SYM_TOL: f64 = 1e-12;
const MAX_COND: f64 = 1e12;
const PURITY_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    sigma: DMatrix<f64>,
    mean: DVector<f64>,
}

fn check_spd(m: &DMatrix<f64>, what: &str) -> Result<()> {
    let eig = m.clone().symmetric_eigen();
    let min = eig.eigenvalues.min();
    let max = eig.eigenvalues.max();
    if !(min > 0.0) {
        return Err(Error::SingularCovariance(format!(
            "{what} is not positive definite (smallest eigenvalue {min:.3e})"
        )));
    }
    if max / min > MAX_COND {
        return Err(Error::SingularCovariance(format!(
            "{what} has condition number {:.3e}",
            max / min
        )));
    }
    Ok(())
}

fn inverse(m: &DMatrix<f64>, what: &str) -> Result<DMatrix<f64>> {
    check_spd(m, what)?;
    m.clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::SingularCovariance(format!("{what} is not invertible")))
}

fn det(m: &DMatrix<f64>) -> f64 {
    m.clone().lu().determinant()
}

/// `2^{-n} (det s)^{-1/2}` for a `2n x 2n` covariance.
fn purity_of(s: &DMatrix<f64>) -> f64 {
    let n = s.nrows() / 2;
    0.5f64.powi(n as i32) / det(s).sqrt()
}

impl GaussianState {
    pub fn new(sigma: DMatrix<f64>, mean: DVector<f64>) -> Result<Self> {
        let dim = sigma.nrows();
        if dim == 0 || dim % 2 != 0 || sigma.ncols() != dim {
            return Err(Error::Covariance(format!(
                "covariance must be 2n x 2n, got {}x{}",
                sigma.nrows(),
                sigma.ncols()
            )));
        }
        if mean.len() != dim {
            return Err(Error::Covariance(format!("mean of length {} for {dim} variables", mean.len())));
        }
        if sigma.iter().chain(mean.iter()).any(|x| !x.is_finite()) {
            return Err(Error::Covariance("non-finite entry".into()));
        }
        let asym = (&sigma - sigma.transpose()).amax();
        if asym > SYM_TOL * sigma.amax().max(1.0) {
            return Err(Error::Covariance(format!("covariance is not symmetric ({asym:.3e})")));
        }
        check_spd(&sigma, "covariance")?;
        let mu = purity_of(&sigma);
        if mu > 1.0 + PURITY_SLACK {
            return Err(Error::Covariance(format!(
                "purity {mu:.12} exceeds 1; det(sigma) is below (1/4)^n"
            )));
        }
        Ok(Self { sigma, mean })
    }

    pub fn centered(sigma: DMatrix<f64>) -> Result<Self> {
        let n = sigma.nrows();
        Self::new(sigma, DVector::zeros(n))
    }

    pub fn vacuum(n_modes: usize) -> Self {
        Self::thermal_modes(n_modes, 0.0)
    }

    /// Product of identical thermal modes with mean occupation `nbar`.
    pub fn thermal_modes(n_modes: usize, nbar: f64) -> Self {
        let dim = 2 * n_modes;
        Self {
            sigma: DMatrix::identity(dim, dim) * ((2.0 * nbar + 1.0) / 2.0),
            mean: DVector::zeros(dim),
        }
    }

    /// Single-mode vacuum squeezed along `q`.
    pub fn squeezed_vacuum(r: f64) -> Self {
        Self {
            sigma: DMatrix::from_diagonal(&DVector::from_vec(vec![
                0.5 * (2.0 * r).exp(),
                0.5 * (-2.0 * r).exp(),
            ])),
            mean: DVector::zeros(2),
        }
    }

    /// Two-mode squeezed vacuum with squeezing parameter `r`.
    pub fn two_mode_squeezed(r: f64) -> Self {
        let c = (2.0 * r).cosh() / 2.0;
        let s = (2.0 * r).sinh() / 2.0;
        #[rustfmt::skip]
        let sigma = DMatrix::from_row_slice(4, 4, &[
            c, -s, 0.0, 0.0,
            -s, c, 0.0, 0.0,
            0.0, 0.0, c, s,
            0.0, 0.0, s, c,
        ]);
        Self {
            sigma,
            mean: DVector::zeros(4),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.sigma.nrows() / 2
    }

    pub fn sigma(&self) -> &DMatrix<f64> {
        &self.sigma
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    fn require_centered(&self) -> Result<()> {
        if self.mean.iter().any(|&m| m != 0.0) {
            return Err(Error::UnsupportedMean);
        }
        Ok(())
    }
}

/// Split of the modes into the first `n1` and the remaining `n2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModePartition {
    pub n1: usize,
    pub n2: usize,
}

impl ModePartition {
    pub fn new(n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::Dimension(format!("empty mode group ({n1}, {n2})")));
        }
        Ok(Self { n1, n2 })
    }

    fn check(&self, g: &GaussianState) -> Result<()> {
        if self.n1 + self.n2 != g.n_modes() {
            return Err(Error::Dimension(format!(
                "partition {}+{} for a {}-mode state",
                self.n1,
                self.n2,
                g.n_modes()
            )));
        }
        Ok(())
    }

    /// Global indices in subsystem-major order: `p` then `q` of subsystem 1,
    /// then `p` then `q` of subsystem 2.
    fn subsystem_major(&self) -> Vec<usize> {
        let n = self.n1 + self.n2;
        (0..self.n1)
            .chain(n..n + self.n1)
            .chain(self.n1..n)
            .chain(n + self.n1..2 * n)
            .collect()
    }
}

fn permuted(m: &DMatrix<f64>, idx: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(idx.len(), idx.len(), |r, c| m[(idx[r], idx[c])])
}

/// `2^{-n} (det Sigma)^{-1/2}`.
pub fn gaussian_purity(g: &GaussianState) -> Result<f64> {
    check_spd(&g.sigma, "covariance")?;
    Ok(purity_of(&g.sigma))
}

/// Marginal covariances from Schur complements of the inverse covariance.
/// Each is returned in its own `(p.., q..)` ordering.
pub fn marginal_covariances(g: &GaussianState, part: &ModePartition) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    part.check(g)?;
    let inv = inverse(&permuted(&g.sigma, &part.subsystem_major()), "covariance")?;
    let (d1, d2) = (2 * part.n1, 2 * part.n2);
    let a = inv.view((0, 0), (d1, d1)).into_owned();
    let b = inv.view((0, d1), (d1, d2)).into_owned();
    let c = inv.view((d1, d1), (d2, d2)).into_owned();
    let a_inv = inverse(&a, "inverse-covariance block A")?;
    let c_inv = inverse(&c, "inverse-covariance block C")?;
    let s1 = inverse(&(&a - &b * &c_inv * b.transpose()), "Schur complement of C")?;
    let s2 = inverse(&(&c - b.transpose() * &a_inv * &b), "Schur complement of A")?;
    Ok((s1, s2))
}

/// Covariance of `rho_1 ⊗ rho_2` in the global ordering.
pub fn product_covariance(g: &GaussianState, part: &ModePartition) -> Result<DMatrix<f64>> {
    let (s1, s2) = marginal_covariances(g, part)?;
    let (d1, d2) = (s1.nrows(), s2.nrows());
    let mut block = DMatrix::zeros(d1 + d2, d1 + d2);
    block.view_mut((0, 0), (d1, d1)).copy_from(&s1);
    block.view_mut((d1, d1), (d2, d2)).copy_from(&s2);
    let idx = part.subsystem_major();
    let mut out = DMatrix::zeros(d1 + d2, d1 + d2);
    for r in 0..idx.len() {
        for c in 0..idx.len() {
            out[(idx[r], idx[c])] = block[(r, c)];
        }
    }
    Ok(out)
}

/// `Tr(rho sigma_rho) = (det(Sigma + sigma))^{-1/2}` for centered states.
pub fn gaussian_overlap(g: &GaussianState, sigma_product: &DMatrix<f64>) -> Result<f64> {
    g.require_centered()?;
    if sigma_product.shape() != g.sigma.shape() {
        return Err(Error::Dimension(format!(
            "{}x{} covariance against {}x{}",
            sigma_product.nrows(),
            sigma_product.ncols(),
            g.sigma.nrows(),
            g.sigma.ncols()
        )));
    }
    check_spd(sigma_product, "second covariance")?;
    let sum = &g.sigma + sigma_product;
    check_spd(&sum, "covariance sum")?;
    Ok(1.0 / det(&sum).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianEntanglementReport {
    pub e_g: f64,
    /// Purity of the joint state.
    pub purity: f64,
    /// Purity of the product of marginals.
    pub product_purity: f64,
    pub marginal_purities: (f64, f64),
    pub overlap: f64,
}

pub fn gaussian_entanglement_report(g: &GaussianState, part: &ModePartition) -> Result<GaussianEntanglementReport> {
    g.require_centered()?;
    let (s1, s2) = marginal_covariances(g, part)?;
    let sp = product_covariance(g, part)?;
    let purity = gaussian_purity(g)?;
    let product_purity = purity_of(&sp);
    let overlap = gaussian_overlap(g, &sp)?;
    Ok(GaussianEntanglementReport {
        e_g: purity + product_purity - 2.0 * overlap,
        purity,
        product_purity,
        marginal_purities: (purity_of(&s1), purity_of(&s2)),
        overlap,
    })
}

/// `Tr (rho - rho_1 ⊗ rho_2)^2` for a centered Gaussian state.
pub fn gaussian_entanglement(g: &GaussianState, part: &ModePartition) -> Result<f64> {
    Ok(gaussian_entanglement_report(g, part)?.e_g)
}

/// Wigner function normalized so that `∫ W dQ / (2 pi)^n = 1`.
pub fn wigner_gaussian(g: &GaussianState, q: &[f64]) -> Result<f64> {
    if q.len() != g.sigma.nrows() {
        return Err(Error::Dimension(format!(
            "point of length {} for {} variables",
            q.len(),
            g.sigma.nrows()
        )));
    }
    let inv = inverse(&g.sigma, "covariance")?;
    let x = DVector::from_column_slice(q) - &g.mean;
    let quad = (x.transpose() * inv * &x)[(0, 0)];
    Ok((-0.5 * quad).exp() / det(&g.sigma).sqrt())
}

/// `∫ exp(-x^T a x + b^T x) d^n x = pi^{n/2} (det a)^{-1/2} exp(b^T a^{-1} b / 4)`.
pub fn gaussian_integral(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<f64> {
    if a.nrows() != a.ncols() || a.nrows() != b.len() {
        return Err(Error::Dimension("matrix and vector sizes differ".into()));
    }
    let inv = inverse(a, "quadratic form")?;
    let n = a.nrows() as f64;
    let expo = 0.25 * (b.transpose() * inv * b)[(0, 0)];
    Ok(std::f64::consts::PI.powf(n / 2.0) / det(a).sqrt() * expo.exp())
}
