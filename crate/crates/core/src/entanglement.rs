//! Hilbert-Schmidt distance between a state and the product of its
//! marginals, used as an entanglement measure.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, partial_trace, permute_subsystems, ComplexMatrix, DensityMatrix};

/// A grouping of subsystems into parties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    dims: Vec<usize>,
    groups: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(dims: Vec<usize>, groups: Vec<Vec<usize>>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::Dimension(format!("invalid subsystem dims {dims:?}")));
        }
        if groups.len() < 2 || groups.iter().any(|g| g.is_empty()) {
            return Err(Error::Dimension(format!("need at least two nonempty groups, got {groups:?}")));
        }
        let mut all: Vec<usize> = groups.iter().flatten().copied().collect();
        all.sort_unstable();
        if all != (0..dims.len()).collect::<Vec<_>>() {
            return Err(Error::Dimension(format!(
                "groups {groups:?} do not partition subsystems 0..{}",
                dims.len()
            )));
        }
        let groups = groups
            .into_iter()
            .map(|mut g| {
                g.sort_unstable();
                g
            })
            .collect();
        Ok(Self { dims, groups })
    }

    /// Subsystems `0..split` against `split..`.
    pub fn bipartite(dims: Vec<usize>, split: usize) -> Result<Self> {
        let n = dims.len();
        if split == 0 || split >= n {
            return Err(Error::Dimension(format!("split {split} for {n} subsystems")));
        }
        Self::new(dims, vec![(0..split).collect(), (split..n).collect()])
    }

    /// Every subsystem is its own party.
    pub fn singletons(dims: Vec<usize>) -> Result<Self> {
        let groups = (0..dims.len()).map(|k| vec![k]).collect();
        Self::new(dims, groups)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn is_bipartite(&self) -> bool {
        self.groups.len() == 2
    }

    fn order(&self) -> usize {
        self.dims.iter().product()
    }

    fn check(&self, m: &ComplexMatrix) -> Result<()> {
        if !m.is_square() || m.rows() != self.order() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for partition dims {:?}",
                m.rows(),
                m.cols(),
                self.dims
            )));
        }
        Ok(())
    }

    fn require_bipartite(&self) -> Result<()> {
        if !self.is_bipartite() {
            return Err(Error::Dimension(format!(
                "bipartite partition required, got {} groups",
                self.groups.len()
            )));
        }
        Ok(())
    }
}

/// Reduced operators `Tr_{rest} m`, one per group.
pub fn reductions(m: &ComplexMatrix, part: &Partition) -> Result<Vec<ComplexMatrix>> {
    part.check(m)?;
    part.groups
        .iter()
        .map(|g| partial_trace(m, &part.dims, g))
        .collect()
}

/// Tensor product of the reductions, put back into the original subsystem
/// order.
pub fn product_of_reductions(m: &ComplexMatrix, part: &Partition) -> Result<ComplexMatrix> {
    let reds = reductions(m, part)?;
    let mut prod = reds[0].clone();
    for r in &reds[1..] {
        prod = prod.kron(r);
    }
    let flat: Vec<usize> = part.groups.iter().flatten().copied().collect();
    let flat_dims: Vec<usize> = flat.iter().map(|&k| part.dims[k]).collect();
    let mut order = vec![0; flat.len()];
    for (pos, &k) in flat.iter().enumerate() {
        order[k] = pos;
    }
    permute_subsystems(&prod, &flat_dims, &order)
}

/// `R = rho - rho_A ⊗ rho_B`.
pub fn deviation(rho: &DensityMatrix, part: &Partition) -> Result<ComplexMatrix> {
    part.require_bipartite()?;
    let prod = product_of_reductions(rho.matrix(), part)?;
    Ok(rho.matrix() - &prod)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    /// `Tr R^2`.
    pub e: f64,
    pub mu_ab: f64,
    pub mu_parts: Vec<f64>,
    /// Cosine of the angle between `rho` and `rho_A ⊗ rho_B` as vectors.
    pub cos_theta: f64,
    pub order: u32,
}

impl EntanglementReport {
    /// `mu_AB + mu_A mu_B - 2 sqrt(mu_AB mu_A mu_B) cos(theta)`.
    pub fn decomposed(&self) -> f64 {
        let mu_prod: f64 = self.mu_parts.iter().product();
        self.mu_ab + mu_prod - 2.0 * (self.mu_ab * mu_prod).sqrt() * self.cos_theta
    }

    pub fn theta(&self) -> f64 {
        self.cos_theta.acos()
    }
}

const COS_CLAMP: f64 = 1e-9;

pub fn measure(rho: &DensityMatrix, part: &Partition) -> Result<EntanglementReport> {
    part.require_bipartite()?;
    let reds = reductions(rho.matrix(), part)?;
    let prod = product_of_reductions(rho.matrix(), part)?;
    let r = rho.matrix() - &prod;
    let e = r.trace_of_product(&r).re;
    let mu_ab = rho.purity();
    let mu_parts: Vec<f64> = reds.iter().map(|m| m.trace_of_product(m).re).collect();
    let mu_prod: f64 = mu_parts.iter().product();
    let overlap = rho.matrix().trace_of_product(&prod).re;
    let mut cos_theta = overlap / (mu_ab * mu_prod).sqrt();
    if cos_theta.abs() > 1.0 {
        if cos_theta.abs() - 1.0 > COS_CLAMP {
            return Err(Error::InternalConsistency(format!("cos(theta) = {cos_theta}")));
        }
        cos_theta = cos_theta.clamp(-1.0, 1.0);
    }
    Ok(EntanglementReport {
        e,
        mu_ab,
        mu_parts,
        cos_theta,
        order: 2,
    })
}

/// `Tr R^{n+1}`.
pub fn measure_order(rho: &DensityMatrix, part: &Partition, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::validation("order", "n must be at least 1"));
    }
    let r = deviation(rho, part)?;
    Ok(r.powi(n + 1).trace().re)
}

/// `Tr[(O - O_A ⊗ ... ⊗ O_C)^k]`, optionally divided by `Tr O^2`.
pub fn observable_measure(obs: &ComplexMatrix, part: &Partition, k: u32, normalized: bool) -> Result<f64> {
    if k < 2 {
        return Err(Error::validation("order", "k must be at least 2"));
    }
    part.check(obs)?;
    let residual = obs.hermiticity_residual();
    if residual > 1e-10 {
        return Err(Error::NotHermitian { residual, tol: 1e-10 });
    }
    let prod = product_of_reductions(obs, part)?;
    let value = (obs - &prod).powi(k).trace().re;
    if !normalized {
        return Ok(value);
    }
    let mu0 = obs.trace_of_product(obs).re;
    if mu0 == 0.0 {
        return Ok(0.0);
    }
    Ok(value / mu0)
}

/// Spectrum of one party compared with that of its complement.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectraComparison {
    pub group: Vec<usize>,
    /// Nonzero eigenvalues, descending.
    pub spectrum: Vec<f64>,
    pub complement_spectrum: Vec<f64>,
    /// `|Tr rho_g^n - Tr rho_rest^n|` for `n = 1..=n_max`.
    pub moment_differences: Vec<f64>,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectraReport {
    pub comparisons: Vec<SpectraComparison>,
    pub equal: bool,
}

const MOMENT_TOL: f64 = 1e-9;
const SPECTRUM_TOL: f64 = 1e-8;
const NONZERO: f64 = 1e-10;

fn nonzero_spectrum(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigenvalues(m, 1e-9)?
        .into_iter()
        .filter(|&w| w > NONZERO)
        .collect())
}

/// For a pure state, each party and its complement share their nonzero
/// spectrum. For more than two groups every group is checked against the
/// union of the others.
pub fn spectra_equal_check(rho_pure: &DensityMatrix, part: &Partition, n_max: u32) -> Result<SpectraReport> {
    part.check(rho_pure.matrix())?;
    let purity = rho_pure.purity();
    if (purity - 1.0).abs() > 1e-8 {
        return Err(Error::NotPure { purity });
    }
    let checked = if part.is_bipartite() { 1 } else { part.groups.len() };
    let mut comparisons = Vec::with_capacity(checked);
    for group in &part.groups[..checked] {
        let rest: Vec<usize> = (0..part.dims.len()).filter(|k| !group.contains(k)).collect();
        let a = partial_trace(rho_pure.matrix(), &part.dims, group)?;
        let b = partial_trace(rho_pure.matrix(), &part.dims, &rest)?;
        let moment_differences: Vec<f64> = (1..=n_max)
            .map(|n| (a.powi(n).trace().re - b.powi(n).trace().re).abs())
            .collect();
        let spectrum = nonzero_spectrum(&a)?;
        let complement_spectrum = nonzero_spectrum(&b)?;
        let equal = moment_differences.iter().all(|&d| d <= MOMENT_TOL)
            && spectrum.len() == complement_spectrum.len()
            && spectrum
                .iter()
                .zip(&complement_spectrum)
                .all(|(x, y)| (x - y).abs() <= SPECTRUM_TOL);
        comparisons.push(SpectraComparison {
            group: group.clone(),
            spectrum,
            complement_spectrum,
            moment_differences,
            equal,
        });
    }
    let equal = comparisons.iter().all(|c| c.equal);
    Ok(SpectraReport { comparisons, equal })
}
