//! Square sampling grids over the complex plane and fields sampled on them.

use std::io::{BufRead, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lattice `alpha = x1 + i x2` with `x1, x2` in `[-L, L]` at spacing `h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpaceGrid {
    extent: f64,
    step: f64,
}

impl PhaseSpaceGrid {
    pub fn new(extent: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !(extent > 0.0) || !step.is_finite() || !extent.is_finite() {
            return Err(Error::validation("grid", format!("extent {extent}, step {step}")));
        }
        let ratio = extent / step;
        if (ratio - ratio.round()).abs() > 1e-12 * ratio.max(1.0) {
            return Err(Error::validation(
                "grid",
                format!("extent/step = {ratio} is not an integer"),
            ));
        }
        Ok(Self { extent, step })
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Half-width in steps.
    pub fn half(&self) -> usize {
        (self.extent / self.step).round() as usize
    }

    /// Points per axis.
    pub fn side(&self) -> usize {
        2 * self.half() + 1
    }

    pub fn len(&self) -> usize {
        self.side() * self.side()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        (i as f64 - self.half() as f64) * self.step
    }

    /// Point for flat index `i * side + j`, with `i` along `x1`.
    pub fn point(&self, index: usize) -> Complex64 {
        let n = self.side();
        Complex64::new(self.coordinate(index / n), self.coordinate(index % n))
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.len()).map(|k| self.point(k))
    }

    /// Area element `h^2`.
    pub fn cell(&self) -> f64 {
        self.step * self.step
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolKind {
    /// Weyl symbol `W(alpha)`.
    Weyl,
    /// Tomogram `w(X, cos t, sin t)` with `X = x1` and frame angle `t = x2`.
    Tomogram,
}

impl SymbolKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SymbolKind::Weyl => "weyl",
            SymbolKind::Tomogram => "tomogram",
        }
    }
}

/// Values of a symbol at every grid point, ordered as [`PhaseSpaceGrid::point`].
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolField {
    grid: PhaseSpaceGrid,
    values: Vec<Complex64>,
    kind: SymbolKind,
    cutoff: Option<usize>,
}

/// JSON sidecar describing a CSV field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldMetadata {
    pub schema: u32,
    pub extent: f64,
    pub step: f64,
    pub kind: SymbolKind,
    pub cutoff: Option<usize>,
}

impl SymbolField {
    pub fn new(grid: PhaseSpaceGrid, values: Vec<Complex64>, kind: SymbolKind) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Dimension(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self {
            grid,
            values,
            kind,
            cutoff: None,
        })
    }

    pub fn from_fn(grid: PhaseSpaceGrid, kind: SymbolKind, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            grid,
            values: grid.points().map(f).collect(),
            kind,
            cutoff: None,
        }
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Self {
        self.cutoff = Some(cutoff);
        self
    }

    pub fn grid(&self) -> &PhaseSpaceGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn cutoff(&self) -> Option<usize> {
        self.cutoff
    }

    /// Value at lattice indices, or zero outside the grid.
    pub fn at(&self, i: isize, j: isize) -> Complex64 {
        let n = self.grid.side() as isize;
        if i < 0 || j < 0 || i >= n || j >= n {
            return Complex64::new(0.0, 0.0);
        }
        self.values[(i * n + j) as usize]
    }

    /// Largest absolute difference to another field on the same grid.
    pub fn max_abs_diff(&self, other: &SymbolField) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::Dimension("fields live on different grids".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `sum f h^2`.
    pub fn integral(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() * self.grid.cell()
    }

    pub fn metadata(&self) -> FieldMetadata {
        FieldMetadata {
            schema: 1,
            extent: self.grid.extent,
            step: self.grid.step,
            kind: self.kind,
            cutoff: self.cutoff,
        }
    }

    /// CSV with header `x1,x2,re,im`, one row per point.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x1,x2,re,im")?;
        for (k, v) in self.values.iter().enumerate() {
            let z = self.grid.point(k);
            writeln!(out, "{},{},{},{}", z.re, z.im, v.re, v.im)?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(input: R, meta: &FieldMetadata) -> Result<Self> {
        if meta.schema != 1 {
            return Err(Error::validation("schema", format!("unsupported schema {}", meta.schema)));
        }
        let grid = PhaseSpaceGrid::new(meta.extent, meta.step)?;
        let mut lines = input.lines();
        let header = lines
            .next()
            .transpose()
            .map_err(|e| Error::validation("csv", e.to_string()))?;
        if header.as_deref().map(str::trim) != Some("x1,x2,re,im") {
            return Err(Error::validation("csv", "expected header x1,x2,re,im"));
        }
        let mut values = Vec::with_capacity(grid.len());
        for (row, line) in lines.enumerate() {
            let line = line.map_err(|e| Error::validation("csv", e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let cols: Vec<f64> = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::validation("csv", format!("row {}: {e}", row + 2)))?;
            if cols.len() != 4 {
                return Err(Error::validation("csv", format!("row {} has {} columns", row + 2, cols.len())));
            }
            let expected = grid.point(values.len().min(grid.len() - 1));
            if (cols[0] - expected.re).abs() > 1e-9 || (cols[1] - expected.im).abs() > 1e-9 {
                return Err(Error::validation(
                    "csv",
                    format!("row {} at ({}, {}) is off the grid order", row + 2, cols[0], cols[1]),
                ));
            }
            values.push(Complex64::new(cols[2], cols[3]));
        }
        let mut field = Self::new(grid, values, meta.kind)?;
        field.cutoff = meta.cutoff;
        Ok(field)
    }
}
