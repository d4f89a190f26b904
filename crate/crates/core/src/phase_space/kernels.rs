//! Closed-form star-product and trace kernels.
//!
//! Kernels that contain delta functions are returned as a smooth
//! coefficient together with the arguments of the deltas; callers integrate
//! by eliminating constrained variables instead of discretizing the delta.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smooth part of a kernel plus the residuals of its delta constraints.
/// An empty residual list means the kernel has no delta factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstrainedValue {
    pub coefficient: Complex64,
    pub residuals: Vec<f64>,
}

impl ConstrainedValue {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }
}

/// `a b^* - a^* b`, purely imaginary.
pub fn bracket(a: Complex64, b: Complex64) -> Complex64 {
    a * b.conj() - a.conj() * b
}

fn minus_one_pow(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Closed-form star-product kernel with `q = -1`:
///
/// ```text
/// (2/pi)^{N-1} exp{ sum_{i<j<N} 2(q^{j-i+2-N} a_i a_j^* + q^{i-j} a_j a_i^*)
///                 + sum_{i<N} 2(q^{1-i} a_i a_N^* + q^{i+1-N} a_N a_i^*) }
/// ```
///
/// with 1-based indices. It agrees with the operator trace
/// [`weyl_trace_kernel`] only for symmetric operand pairs; see the tests.
pub fn weyl_star_kernel(alphas: &[Complex64]) -> Result<Complex64> {
    let n = alphas.len();
    if n < 3 {
        return Err(Error::validation("kernel", format!("need at least 3 points, got {n}")));
    }
    let big_n = n as i64;
    let last = alphas[n - 1];
    let mut expo = Complex64::new(0.0, 0.0);
    for i in 1..big_n {
        let ai = alphas[(i - 1) as usize];
        for j in i + 1..big_n {
            let aj = alphas[(j - 1) as usize];
            expo += 2.0 * (minus_one_pow(j - i + 2 - big_n) * ai * aj.conj() + minus_one_pow(i - j) * aj * ai.conj());
        }
        expo += 2.0 * (minus_one_pow(1 - i) * ai * last.conj() + minus_one_pow(i + 1 - big_n) * last * ai.conj());
    }
    Ok((2.0 / PI).powi(n as i32 - 1) * expo.exp())
}

/// `Tr[D(x_1) ... D(x_{N-1}) U(x_N)]` for the Weyl pair
/// `U = 2 D(a) P D(-a)`, `D = U/pi`.
///
/// With alternating signs `s_k = (-1)^{k-1}` the phase is
/// `exp(2 sum_{i<j} s_i s_j [a_i a_j^* - c.c.])`. Odd `N` gives a smooth
/// kernel with prefactor `(2/pi)^{N-1}`; even `N` carries
/// `delta^2(sum s_k a_k)` with prefactor `(2/pi)^{N-2}`.
pub fn weyl_trace_kernel(alphas: &[Complex64]) -> Result<ConstrainedValue> {
    let n = alphas.len();
    if n < 2 {
        return Err(Error::validation("kernel", format!("need at least 2 points, got {n}")));
    }
    let sign = |k: usize| if k % 2 == 0 { 1.0 } else { -1.0 };
    let mut expo = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            expo += 2.0 * sign(i) * sign(j) * bracket(alphas[i], alphas[j]);
        }
    }
    if n % 2 == 1 {
        return Ok(ConstrainedValue {
            coefficient: (2.0 / PI).powi(n as i32 - 1) * expo.exp(),
            residuals: Vec::new(),
        });
    }
    let sum: Complex64 = alphas.iter().enumerate().map(|(k, a)| sign(k) * a).sum();
    Ok(ConstrainedValue {
        coefficient: (2.0 / PI).powi(n as i32 - 2) * expo.exp(),
        residuals: vec![sum.re, sum.im],
    })
}

/// `Tr[D(x_1) D(x_2) D(x_3) D(x_4)]`: coefficient
/// `(4/pi^3) exp{-2[(a1 a2^* - a1 a3^* + a1 a4^* + a2 a3^* - a2 a4^* + a3 a4^*) - c.c.]}`
/// and residual `a1 - a2 + a3 - a4`.
pub fn weyl_four_kernel(a1: Complex64, a2: Complex64, a3: Complex64, a4: Complex64) -> ConstrainedValue {
    let e = bracket(a1, a2) - bracket(a1, a3) + bracket(a1, a4) + bracket(a2, a3) - bracket(a2, a4)
        + bracket(a3, a4);
    let residual = a1 - a2 + a3 - a4;
    ConstrainedValue {
        coefficient: 4.0 / PI.powi(3) * (-2.0 * e).exp(),
        residuals: vec![residual.re, residual.im],
    }
}

/// Tomographic argument `(X, mu, nu)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TomogramPoint {
    pub x: f64,
    pub mu: f64,
    pub nu: f64,
}

impl TomogramPoint {
    pub fn new(x: f64, mu: f64, nu: f64) -> Result<Self> {
        if !(x.is_finite() && mu.is_finite() && nu.is_finite()) {
            return Err(Error::InvalidPoint(format!("({x}, {mu}, {nu}) is not finite")));
        }
        if mu == 0.0 && nu == 0.0 {
            return Err(Error::InvalidPoint("mu and nu are both zero".into()));
        }
        Ok(Self { x, mu, nu })
    }

    /// Frame `(cos theta, sin theta)`.
    pub fn at_angle(x: f64, theta: f64) -> Self {
        Self {
            x,
            mu: theta.cos(),
            nu: theta.sin(),
        }
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            x: lambda * self.x,
            mu: lambda * self.mu,
            nu: lambda * self.nu,
        }
    }

    fn check(&self) -> Result<()> {
        Self::new(self.x, self.mu, self.nu).map(|_| ())
    }
}

/// Star-product kernel of two tomograms:
/// `delta(mu(nu1+nu2) - nu(mu1+mu2))/(4 pi^2)` times
/// `exp[(i/2)((nu1 mu2 - nu2 mu1) + 2X1 + 2X2 - 2(nu1+nu2)X/nu)]`.
/// At `nu = 0` the ratio `(nu1+nu2)/nu` is replaced by its value
/// `(mu1+mu2)/mu` on the constraint surface.
pub fn tomographic_star_kernel(x1: &TomogramPoint, x2: &TomogramPoint, x: &TomogramPoint) -> Result<ConstrainedValue> {
    x1.check()?;
    x2.check()?;
    x.check()?;
    let residual = x.mu * (x1.nu + x2.nu) - x.nu * (x1.mu + x2.mu);
    let ratio = if x.nu != 0.0 {
        (x1.nu + x2.nu) / x.nu
    } else {
        (x1.mu + x2.mu) / x.mu
    };
    let phase = 0.5 * ((x1.nu * x2.mu - x2.nu * x1.mu) + 2.0 * x1.x + 2.0 * x2.x - 2.0 * ratio * x.x);
    Ok(ConstrainedValue {
        coefficient: Complex64::from_polar(1.0, phase) / (4.0 * PI * PI),
        residuals: vec![residual],
    })
}

/// `Tr[D(x_1) ... D(x_N)]` for the tomographic dual
/// `D(X, mu, nu) = exp(iX - i nu p - i mu q)/(2 pi)`:
/// coefficient `(2 pi)^{1-N} exp{i(sum X_k + (1/2) sum_{k<s}(nu_k mu_s - mu_k nu_s))}`
/// and residuals `(sum mu_k, sum nu_k)`.
pub fn tomographic_trace_kernel(xs: &[TomogramPoint]) -> Result<ConstrainedValue> {
    if xs.len() < 2 {
        return Err(Error::validation("kernel", "need at least 2 points"));
    }
    let mut phase: f64 = xs.iter().map(|p| p.x).sum();
    for k in 0..xs.len() {
        for s in k + 1..xs.len() {
            phase += 0.5 * (xs[k].nu * xs[s].mu - xs[k].mu * xs[s].nu);
        }
    }
    let n = xs.len() as i32;
    Ok(ConstrainedValue {
        coefficient: Complex64::from_polar((2.0 * PI).powi(1 - n), phase),
        residuals: vec![xs.iter().map(|p| p.mu).sum(), xs.iter().map(|p| p.nu).sum()],
    })
}
