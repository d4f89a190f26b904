//! Symplectic tomograms `w(X, mu, nu) = Tr[rho delta(X - mu q - nu p)]`.
//!
//! Quadratures relate to the grid by `q = sqrt2 x1`, `p = sqrt2 x2`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rayon::prelude::*;

use super::field::{PhaseSpaceGrid, SymbolField, SymbolKind};
pub use super::kernels::TomogramPoint;
use crate::error::{Error, Result};
use crate::gaussian::GaussianState;

/// Closed-form tomogram of a single-mode Gaussian state.
pub fn tomogram_gaussian(g: &GaussianState, pt: &TomogramPoint) -> Result<f64> {
    let pt = TomogramPoint::new(pt.x, pt.mu, pt.nu)?;
    if g.n_modes() != 1 {
        return Err(Error::Dimension(format!("single-mode state required, got {} modes", g.n_modes())));
    }
    let s = g.sigma();
    let (mean_p, mean_q) = (g.mean()[0], g.mean()[1]);
    let mean = pt.mu * mean_q + pt.nu * mean_p;
    let var = pt.mu * pt.mu * s[(1, 1)] + pt.nu * pt.nu * s[(0, 0)] + 2.0 * pt.mu * pt.nu * s[(0, 1)];
    if !(var > 0.0) {
        return Err(Error::Covariance(format!("quadrature variance {var:.3e} is not positive")));
    }
    let d = pt.x - mean;
    Ok((-d * d / (2.0 * var)).exp() / (2.0 * PI * var).sqrt())
}

/// Lagrange weights for the four nodes `-1, 0, 1, 2` at offset `t` in `[0, 1)`.
fn cubic_weights(t: f64) -> [f64; 4] {
    [
        -t * (t - 1.0) * (t - 2.0) / 6.0,
        (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
        -(t + 1.0) * t * (t - 2.0) / 2.0,
        (t + 1.0) * t * (t - 1.0) / 6.0,
    ]
}

/// Bicubic interpolation of the real part, zero outside the grid.
fn interpolate(f: &SymbolField, z: Complex64) -> f64 {
    let grid = f.grid();
    let h = grid.step();
    let half = grid.half() as f64;
    let u = z.re / h + half;
    let v = z.im / h + half;
    let (i0, j0) = (u.floor(), v.floor());
    let (wu, wv) = (cubic_weights(u - i0), cubic_weights(v - j0));
    let mut acc = 0.0;
    for (a, wa) in wu.iter().enumerate() {
        let i = i0 as isize + a as isize - 1;
        for (b, wb) in wv.iter().enumerate() {
            let j = j0 as isize + b as isize - 1;
            acc += wa * wb * f.at(i, j).re;
        }
    }
    acc
}

/// Line integral of a sampled Weyl symbol along `mu q + nu p = X`,
/// `w = (1/(2 pi s)) ∫ W dt` with `s = |(mu, nu)|` and `t` the arc length in
/// `(q, p)`.
pub fn tomogram_radon(f: &SymbolField, pt: &TomogramPoint) -> Result<f64> {
    let pt = TomogramPoint::new(pt.x, pt.mu, pt.nu)?;
    if f.kind() != SymbolKind::Weyl {
        return Err(Error::validation("kind", "a Weyl field is required"));
    }
    let grid = f.grid();
    let l = grid.extent();
    let s = pt.mu.hypot(pt.nu);
    // closest point of the line to the origin, in grid units
    let c = Complex64::new(pt.mu, pt.nu) * (pt.x / (s * s * SQRT_2));
    let dir = Complex64::new(-pt.nu, pt.mu) / s;
    if c.norm() > l {
        return Err(Error::GridCoverage(format!(
            "line X = {} at (mu, nu) = ({}, {}) misses the grid of extent {l}",
            pt.x, pt.mu, pt.nu
        )));
    }
    // clip the parameter range to the square
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (c0, d0) in [(c.re, dir.re), (c.im, dir.im)] {
        if d0.abs() > 1e-15 {
            let (a, b) = ((-l - c0) / d0, (l - c0) / d0);
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
    }
    let dtau = grid.step() / 2.0;
    let n = ((hi - lo) / dtau).ceil().max(1.0) as usize;
    let dtau = (hi - lo) / n as f64;
    let mut sum = 0.0;
    for k in 0..=n {
        let tau = lo + k as f64 * dtau;
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        sum += w * interpolate(f, c + dir * tau);
    }
    // dt = sqrt2 dtau
    Ok(SQRT_2 * sum * dtau / (2.0 * PI * s))
}

/// Tomogram sampled at `X = x1`, frame angle `x2` of `grid`.
pub fn tomogram_field(f: &SymbolField, grid: &PhaseSpaceGrid) -> Result<SymbolField> {
    let values: Vec<Result<Complex64>> = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let z = grid.point(k);
            tomogram_radon(f, &TomogramPoint::at_angle(z.re, z.im)).map(|w| Complex64::new(w, 0.0))
        })
        .collect();
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;
    let mut out = SymbolField::new(*grid, values, SymbolKind::Tomogram)?;
    if let Some(c) = f.cutoff() {
        out = out.with_cutoff(c);
    }
    Ok(out)
}
