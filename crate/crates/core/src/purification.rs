//! Coherent addition of density operators through a fiducial projector.
//!
//! Given mutually orthogonal rank-one projectors `R_k` with weights `w_k`
//! and a rank-one fiducial `P0` overlapping each of them, the sum
//!
//! ```text
//! rho = sum_{k,j} sqrt(w_k w_j) R_k P0 R_j / sqrt(Tr(R_k P0 R_j P0))
//! ```
//!
//! is again a rank-one projector with `R_k rho R_k = w_k R_k`. Mixed inputs
//! are first brought into this form by diagonalizing their convex mixture.

use num_complex::Complex64;

use crate::entanglement::{self, Partition};
use crate::error::{Error, Result, Warning};
use crate::linalg::{hermitian_eig, ComplexMatrix, DensityMatrix, SpectralDecomposition, Tolerances};

/// Below this overlap a fiducial is declared non-straddling.
pub const TOL_OVERLAP: f64 = 1e-12;
/// Eigenvalues of the mixture at or below this are dropped.
pub const TOL_EIG: f64 = 1e-12;
/// Required orthogonality `||rho1 rho2||_F` for the orthogonal rule.
pub const TOL_ORTH: f64 = 1e-10;
/// Smallest admissible normalization constant in the nonorthogonal rule.
pub const TOL_NORM: f64 = 1e-10;
const TOL_PROJ: f64 = 1e-9;
const TOL_RADICAND: f64 = 1e-12;

fn output_tolerances() -> Tolerances {
    Tolerances {
        herm: 1e-9,
        trace: 1e-9,
        psd: 1e-8,
    }
}

/// Rank-one projector used to fix the relative phases of a superposition.
#[derive(Debug, Clone, PartialEq)]
pub struct FiducialProjector {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl FiducialProjector {
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        let rho = DensityMatrix::new(matrix, dims)?;
        let residual = rho.idempotency_residual();
        if residual > TOL_PROJ {
            return Err(Error::validation(
                "projector",
                format!("||P^2 - P||_F = {residual:.3e}"),
            ));
        }
        let dims = rho.dims().to_vec();
        Ok(Self {
            matrix: rho.into_matrix(),
            dims,
        })
    }

    pub fn from_vector(psi: &[Complex64], dims: Vec<usize>) -> Result<Self> {
        Self::new(ComplexMatrix::projector(psi), dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
}

/// Mixing probabilities plus the interference visibility `gamma`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionWeights {
    probabilities: Vec<f64>,
    visibility: f64,
}

impl SuperpositionWeights {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        Self::with_visibility(probabilities, 1.0)
    }

    pub fn with_visibility(probabilities: Vec<f64>, visibility: f64) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::validation("probabilities", "no weights given"));
        }
        if probabilities.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::validation(
                "probabilities",
                format!("weights {probabilities:?} outside [0, 1]"),
            ));
        }
        let sum: f64 = probabilities.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::validation("probabilities", format!("weights sum to {sum}")));
        }
        if !(0.0..=1.0).contains(&visibility) {
            return Err(Error::validation("visibility", format!("gamma = {visibility}")));
        }
        Ok(Self {
            probabilities,
            visibility,
        })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn visibility(&self) -> f64 {
        self.visibility
    }
}

/// A purified state together with any warnings raised on the way.
#[derive(Debug, Clone)]
pub struct Purified {
    pub state: DensityMatrix,
    pub warnings: Vec<Warning>,
}

fn check_order(m: &ComplexMatrix, p0: &FiducialProjector) -> Result<()> {
    if m.rows() != p0.matrix.rows() {
        return Err(Error::Dimension(format!(
            "state of order {} with fiducial of order {}",
            m.rows(),
            p0.matrix.rows()
        )));
    }
    Ok(())
}

fn require_projector(rho: &DensityMatrix) -> Result<()> {
    let residual = rho.idempotency_residual();
    if residual > TOL_PROJ {
        return Err(Error::validation(
            "projector",
            format!("input is not a pure-state projector (||rho^2 - rho||_F = {residual:.3e})"),
        ));
    }
    Ok(())
}

/// `Tr(A P0 B P0)` checked to be a nonnegative real within round-off.
fn sandwich_overlap(a: &ComplexMatrix, p0: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let value: Complex64 = a.matmul(p0).matmul(b).trace_of_product(p0);
    if value.re < -TOL_RADICAND {
        return Err(Error::NegativeRadicand { value: value.re });
    }
    Ok(value.re.max(0.0))
}

/// `Tr(R P0 R P0)` for every component, with the straddle verdict applied.
fn check_straddle(components: &[&ComplexMatrix], p0: &ComplexMatrix) -> Result<Vec<f64>> {
    components
        .iter()
        .enumerate()
        .map(|(index, r)| {
            let overlap = sandwich_overlap(r, p0, r)?;
            if overlap <= TOL_OVERLAP {
                Err(Error::FiducialStraddle { index, overlap })
            } else {
                Ok(overlap)
            }
        })
        .collect()
}

/// Core double sum over orthogonal rank-one components. Cross terms are
/// scaled by `visibility`.
fn fiducial_sum(
    weights: &[f64],
    components: &[&ComplexMatrix],
    p0: &ComplexMatrix,
    visibility: f64,
) -> Result<ComplexMatrix> {
    let n = p0.rows();
    check_straddle(components, p0)?;
    let mut acc = ComplexMatrix::zeros(n, n);
    for (k, rk) in components.iter().enumerate() {
        let rk_p0 = rk.matmul(p0);
        for (j, rj) in components.iter().enumerate() {
            let term = rk_p0.matmul(rj);
            let denom = term.trace_of_product(p0);
            if denom.re < -TOL_RADICAND {
                return Err(Error::NegativeRadicand { value: denom.re });
            }
            let denom = denom.re.max(0.0).sqrt();
            if denom <= TOL_OVERLAP {
                return Err(Error::FiducialStraddle {
                    index: if k == j { k } else { k.max(j) },
                    overlap: denom * denom,
                });
            }
            let mut coeff = (weights[k] * weights[j]).sqrt() / denom;
            if k != j {
                coeff *= visibility;
            }
            acc = &acc + &term.scale_real(coeff);
        }
    }
    Ok(acc)
}

fn finish(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<DensityMatrix> {
    DensityMatrix::with_tolerances(matrix, dims, &output_tolerances()).map_err(|e| {
        Error::InternalConsistency(format!("purified output failed validation: {e}"))
    })
}

/// Superposition of two orthogonal pure states with visibility `gamma`.
pub fn superpose_pure(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    w: &SuperpositionWeights,
    p0: &FiducialProjector,
) -> Result<DensityMatrix> {
    if w.probabilities.len() != 2 {
        return Err(Error::validation("probabilities", "two weights required"));
    }
    superpose_orthogonal(&[rho1, rho2], w, p0)
}

/// Superposition of any number of mutually orthogonal pure states.
pub fn superpose_pure_many(
    rhos: &[DensityMatrix],
    w: &SuperpositionWeights,
    p0: &FiducialProjector,
) -> Result<DensityMatrix> {
    let refs: Vec<&DensityMatrix> = rhos.iter().collect();
    superpose_orthogonal(&refs, w, p0)
}

fn superpose_orthogonal(
    rhos: &[&DensityMatrix],
    w: &SuperpositionWeights,
    p0: &FiducialProjector,
) -> Result<DensityMatrix> {
    if rhos.is_empty() || rhos.len() != w.probabilities.len() {
        return Err(Error::validation(
            "probabilities",
            format!("{} states with {} weights", rhos.len(), w.probabilities.len()),
        ));
    }
    for rho in rhos {
        check_order(rho.matrix(), p0)?;
        require_projector(rho)?;
    }
    for (k, a) in rhos.iter().enumerate() {
        for b in &rhos[k + 1..] {
            let residual = a.matrix().matmul(b.matrix()).frobenius_norm();
            if residual > TOL_ORTH {
                return Err(Error::NotOrthogonal { residual });
            }
        }
    }
    let comps: Vec<&ComplexMatrix> = rhos.iter().map(|r| r.matrix()).collect();
    let sum = fiducial_sum(&w.probabilities, &comps, &p0.matrix, w.visibility)?;
    finish(sum, rhos[0].dims().to_vec())
}

/// Superposition of two pure states that need not be orthogonal; the
/// bracket is divided by its trace `N`.
pub fn superpose_nonorthogonal(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    w: &SuperpositionWeights,
    p0: &FiducialProjector,
) -> Result<DensityMatrix> {
    if w.probabilities.len() != 2 {
        return Err(Error::validation("probabilities", "two weights required"));
    }
    for rho in [rho1, rho2] {
        check_order(rho.matrix(), p0)?;
        require_projector(rho)?;
    }
    let (p1, p2) = (w.probabilities[0], w.probabilities[1]);
    let (r1, r2, f) = (rho1.matrix(), rho2.matrix(), &p0.matrix);
    check_straddle(&[r1, r2], f)?;
    let denom = sandwich_overlap(r1, f, r2)?.sqrt();
    if denom <= TOL_OVERLAP {
        return Err(Error::FiducialStraddle {
            index: 1,
            overlap: denom * denom,
        });
    }
    let cross = r1.matmul(f).matmul(r2);
    let coeff = w.visibility * (p1 * p2).sqrt() / denom;
    let norm = 1.0 + 2.0 * coeff * cross.trace().re;
    if norm <= TOL_NORM {
        return Err(Error::DegenerateNormalization { value: norm });
    }
    let bracket = &(&r1.scale_real(p1) + &r2.scale_real(p2)) + &(&cross + &cross.adjoint()).scale_real(coeff);
    finish(bracket.scale_real(1.0 / norm), rho1.dims().to_vec())
}

fn degeneracy_warning(eigenvalues: &[f64], scale: f64) -> Option<Warning> {
    let tol_deg = 1e-9 * scale;
    let close: Vec<f64> = eigenvalues
        .windows(2)
        .filter(|w| (w[0] - w[1]).abs() < tol_deg)
        .flat_map(|w| [w[0], w[1]])
        .collect();
    if close.is_empty() {
        return None;
    }
    let mut vals = close;
    vals.dedup();
    Some(Warning::DegenerateSpectrum { eigenvalues: vals })
}

/// Eigenvalues above [`TOL_EIG`] with their projectors.
fn retained(decomp: &SpectralDecomposition) -> (Vec<f64>, Vec<&ComplexMatrix>) {
    decomp
        .eigenvalues
        .iter()
        .zip(&decomp.projectors)
        .filter(|(w, _)| **w > TOL_EIG)
        .map(|(w, p)| (*w, p))
        .unzip()
}

/// Deformed addition of possibly mixed states: diagonalize the mixture and
/// apply the fiducial sum to its eigenprojectors.
pub fn superpose_impure(
    rhos: &[DensityMatrix],
    w: &SuperpositionWeights,
    p0: &FiducialProjector,
) -> Result<Purified> {
    if rhos.is_empty() || rhos.len() != w.probabilities.len() {
        return Err(Error::validation(
            "probabilities",
            format!("{} states with {} weights", rhos.len(), w.probabilities.len()),
        ));
    }
    let n = p0.matrix.rows();
    let mut mixture = ComplexMatrix::zeros(n, n);
    for (rho, p) in rhos.iter().zip(&w.probabilities) {
        check_order(rho.matrix(), p0)?;
        mixture = &mixture + &rho.matrix().scale_real(*p);
    }
    let decomp = hermitian_eig(&mixture, 1e-9)?;
    let (omegas, projectors) = retained(&decomp);
    let warnings: Vec<Warning> = degeneracy_warning(&omegas, mixture.frobenius_norm())
        .into_iter()
        .collect();
    let sum = fiducial_sum(&omegas, &projectors, &p0.matrix, w.visibility)?;
    Ok(Purified {
        state: finish(sum, rhos[0].dims().to_vec())?,
        warnings,
    })
}

/// Purification of the product `rho_A ⊗ rho_B` through a fiducial on the
/// joint space. The output carries weight `p_j q_k` on each product of
/// eigenprojectors; its marginals are in general not `rho_A`, `rho_B`.
pub fn purify_separable(
    rho_a: &DensityMatrix,
    rho_b: &DensityMatrix,
    pi_ab: &FiducialProjector,
) -> Result<Purified> {
    let joint = rho_a.order() * rho_b.order();
    if pi_ab.matrix.rows() != joint {
        return Err(Error::Dimension(format!(
            "fiducial of order {} for a {}x{} product space",
            pi_ab.matrix.rows(),
            rho_a.order(),
            rho_b.order()
        )));
    }
    let dec_a = hermitian_eig(rho_a.matrix(), 1e-9)?;
    let dec_b = hermitian_eig(rho_b.matrix(), 1e-9)?;
    let (pa, proj_a) = retained(&dec_a);
    let (qb, proj_b) = retained(&dec_b);
    let mut warnings = Vec::new();
    warnings.extend(degeneracy_warning(&pa, rho_a.matrix().frobenius_norm()));
    warnings.extend(degeneracy_warning(&qb, rho_b.matrix().frobenius_norm()));

    let mut weights = Vec::with_capacity(pa.len() * qb.len());
    let mut products = Vec::with_capacity(pa.len() * qb.len());
    for (p, a) in pa.iter().zip(&proj_a) {
        for (q, b) in qb.iter().zip(&proj_b) {
            weights.push(p * q);
            products.push(a.kron(b));
        }
    }
    let comps: Vec<&ComplexMatrix> = products.iter().collect();
    let sum = fiducial_sum(&weights, &comps, &pi_ab.matrix, 1.0)?;
    let mut dims = rho_a.dims().to_vec();
    dims.extend_from_slice(rho_b.dims());
    Ok(Purified {
        state: finish(sum, dims)?,
        warnings,
    })
}

/// Overlap diagnostics of a fiducial against a set of projectors.
#[derive(Debug, Clone, PartialEq)]
pub struct FiducialReport {
    /// `Tr(R_k P0 R_k P0)` per projector.
    pub overlaps: Vec<f64>,
    pub straddles_each: Vec<bool>,
    pub straddles: bool,
    /// Hilbert-Schmidt entanglement of the fiducial across its first
    /// subsystem versus the rest; `None` for a single subsystem.
    pub entanglement: Option<f64>,
    pub entangled: Option<bool>,
}

pub fn validate_fiducial(p0: &FiducialProjector, projectors: &[ComplexMatrix]) -> Result<FiducialReport> {
    let mut overlaps = Vec::with_capacity(projectors.len());
    for r in projectors {
        check_order(r, p0)?;
        overlaps.push(sandwich_overlap(r, &p0.matrix, r)?);
    }
    let straddles_each: Vec<bool> = overlaps.iter().map(|&o| o > TOL_OVERLAP).collect();
    let straddles = !straddles_each.is_empty() && straddles_each.iter().all(|&s| s);
    let (entanglement, entangled) = if p0.dims.len() >= 2 {
        let part = Partition::bipartite(p0.dims.clone(), 1)?;
        let rho = DensityMatrix::from_parts_unchecked(p0.matrix.clone(), p0.dims.clone());
        let e = entanglement::measure(&rho, &part)?.e;
        (Some(e), Some(e > 1e-9))
    } else {
        (None, None)
    };
    Ok(FiducialReport {
        overlaps,
        straddles_each,
        straddles,
        entanglement,
        entangled,
    })
}
