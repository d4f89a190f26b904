//! Single-mode operators in a truncated number basis.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::GaussianState;
use crate::linalg::{ComplexMatrix, DensityMatrix};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Operator represented by its matrix in the number basis `|0>..|N-1>`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    matrix: ComplexMatrix,
}

impl FockOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix is not square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { matrix })
    }

    pub fn cutoff(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Diagonal weight on the top `fraction` of the basis.
    pub fn tail_weight(&self, fraction: f64) -> f64 {
        let n = self.cutoff();
        let start = n - ((fraction * n as f64).ceil() as usize).min(n);
        (start..n).map(|k| self.matrix[(k, k)].re.abs()).sum()
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::single(self.matrix.clone())
    }
}

impl From<DensityMatrix> for FockOperator {
    fn from(rho: DensityMatrix) -> Self {
        Self {
            matrix: rho.into_matrix(),
        }
    }
}

fn check_cutoff(cutoff: usize) -> Result<()> {
    if cutoff == 0 {
        return Err(Error::Dimension("cutoff must be positive".into()));
    }
    Ok(())
}

/// Truncated annihilation operator.
pub fn annihilation(cutoff: usize) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(cutoff, cutoff);
    for n in 1..cutoff {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    a
}

/// `exp(alpha a^dagger - alpha^* a)` with the generator truncated at
/// `cutoff`. Only the lower part of the basis is faithful.
pub fn displacement(alpha: Complex64, cutoff: usize) -> Result<FockOperator> {
    check_cutoff(cutoff)?;
    let a = annihilation(cutoff);
    let generator = &a.adjoint().scale(alpha) - &a.scale(alpha.conj());
    FockOperator::new(generator.expm())
}

/// Number-basis elements `<m|D(beta)|n>` of the untruncated displacement
/// operator for `m, n < cutoff`, from a normalized Laguerre recurrence
/// along each diagonal.
pub fn displacement_elements(beta: Complex64, cutoff: usize) -> ComplexMatrix {
    let mut d = ComplexMatrix::zeros(cutoff, cutoff);
    let r = beta.norm();
    if r == 0.0 {
        return ComplexMatrix::identity(cutoff);
    }
    let x = r * r;
    let phase = beta / r;
    let minus_conj = -phase.conj();
    let mut up = Complex64::new(1.0, 0.0);
    let mut down = Complex64::new(1.0, 0.0);
    let mut log_fact = 0.0;
    for k in 0..cutoff {
        if k > 0 {
            log_fact += (k as f64).ln();
            up *= phase;
            down *= minus_conj;
        }
        // g_n = sqrt(n!/(n+k)!) |beta|^k e^{-x/2} L_n^{(k)}(x)
        let mut prev = 0.0;
        let mut g = (k as f64 * r.ln() - 0.5 * x - 0.5 * log_fact).exp();
        for n in 0..cutoff - k {
            let m = n + k;
            d[(m, n)] = up * g;
            if k > 0 {
                d[(n, m)] = down * g;
            }
            let nf = n as f64;
            let kf = k as f64;
            let next = ((2.0 * nf + 1.0 + kf - x) * g - (nf * (nf + kf)).sqrt() * prev)
                / ((nf + 1.0) * (nf + kf + 1.0)).sqrt();
            prev = g;
            g = next;
        }
    }
    d
}

/// `(-1)^{a^dagger a}`.
pub fn parity(cutoff: usize) -> Result<FockOperator> {
    check_cutoff(cutoff)?;
    let signs: Vec<f64> = (0..cutoff).map(parity_sign).collect();
    FockOperator::new(ComplexMatrix::from_diag(&signs))
}

pub(crate) fn parity_sign(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn ket_projector(psi: &[Complex64]) -> Result<FockOperator> {
    FockOperator::new(ComplexMatrix::outer(psi))
}

/// `|n><n|`.
pub fn number_state(n: usize, cutoff: usize) -> Result<FockOperator> {
    check_cutoff(cutoff)?;
    if n >= cutoff {
        return Err(Error::Dimension(format!("level {n} beyond cutoff {cutoff}")));
    }
    let mut d = vec![0.0; cutoff];
    d[n] = 1.0;
    FockOperator::new(ComplexMatrix::from_diag(&d))
}

/// Truncated coherent amplitudes `e^{-|alpha|^2/2} alpha^n / sqrt(n!)`.
pub fn coherent_ket(alpha: Complex64, cutoff: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(cutoff);
    let mut c = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 0..cutoff {
        if n > 0 {
            c = c * alpha / (n as f64).sqrt();
        }
        out.push(c);
    }
    out
}

/// `|alpha><alpha|`, not renormalized after truncation.
pub fn coherent_state(alpha: Complex64, cutoff: usize) -> Result<FockOperator> {
    check_cutoff(cutoff)?;
    ket_projector(&coherent_ket(alpha, cutoff))
}

/// Thermal state with mean occupation `nbar`, not renormalized.
pub fn thermal_state(nbar: f64, cutoff: usize) -> Result<FockOperator> {
    check_cutoff(cutoff)?;
    if !(nbar >= 0.0) || !nbar.is_finite() {
        return Err(Error::validation("nbar", format!("mean occupation {nbar}")));
    }
    let ratio = nbar / (1.0 + nbar);
    let diag: Vec<f64> = (0..cutoff).map(|n| ratio.powi(n as i32) / (1.0 + nbar)).collect();
    FockOperator::new(ComplexMatrix::from_diag(&diag))
}

/// Amplitudes of `S(r)|0>` with `S(r) = exp(r (a^2 - a^dagger^2)/2)`.
pub fn squeezed_vacuum_ket(r: f64, cutoff: usize) -> Vec<Complex64> {
    let t = -r.tanh();
    let mut out = vec![ZERO; cutoff];
    let mut c = 1.0 / r.cosh().sqrt();
    for n in (0..cutoff).step_by(2) {
        if n > 0 {
            // c_{2m} = c_{2m-2} t sqrt((2m-1)/(2m))
            c *= t * ((n - 1) as f64 / n as f64).sqrt();
        }
        out[n] = Complex64::new(c, 0.0);
    }
    out
}

pub fn squeezed_vacuum(r: f64, cutoff: usize) -> Result<FockOperator> {
    check_cutoff(cutoff)?;
    ket_projector(&squeezed_vacuum_ket(r, cutoff))
}

/// `exp(r (a^2 - a^dagger^2)/2)` computed on a doubled basis and cut back to
/// `cutoff`, which keeps the returned block accurate.
pub fn squeeze_operator(r: f64, cutoff: usize) -> Result<FockOperator> {
    check_cutoff(cutoff)?;
    let big = 2 * cutoff + 8;
    let a = annihilation(big);
    let a2 = a.matmul(&a);
    let generator = (&a2 - &a2.adjoint()).scale_real(0.5 * r);
    FockOperator::new(generator.expm().leading_block(cutoff))
}

/// Quadrature first and second moments of a state as a Gaussian covariance
/// in `(p, q)` order. Uses `q = (a + a^dagger)/sqrt 2`,
/// `p = (a - a^dagger)/(i sqrt 2)`.
pub fn quadrature_moments(rho: &FockOperator) -> Result<GaussianState> {
    let n = rho.cutoff();
    // pad so that products of two quadratures are exact on the support
    let big = n + 2;
    let padded = ComplexMatrix::from_fn(big, big, |r, c| if r < n && c < n { rho.matrix[(r, c)] } else { ZERO });
    let a = annihilation(big);
    let ad = a.adjoint();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let q = (&a + &ad).scale_real(s);
    let p = (&a - &ad).scale(Complex64::new(0.0, -s));
    let expect = |op: &ComplexMatrix| padded.trace_of_product(op).re;
    let (mp, mq) = (expect(&p), expect(&q));
    let pp = expect(&p.matmul(&p)) - mp * mp;
    let qq = expect(&q.matmul(&q)) - mq * mq;
    let pq = 0.5 * expect(&(&p.matmul(&q) + &q.matmul(&p))) - mp * mq;
    GaussianState::new(
        DMatrix::from_row_slice(2, 2, &[pp, pq, pq, qq]),
        DVector::from_vec(vec![mp, mq]),
    )
}
