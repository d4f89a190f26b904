//! JSON documents for matrices and covariances, CSV for fields.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use densop::gaussian::GaussianState;
use densop::linalg::{ComplexMatrix, DensityMatrix};
use densop::phase_space::SymbolField;

use crate::error::{CliError, CliResult};

pub const SCHEMA: u32 = 1;

fn schema_one() -> u32 {
    SCHEMA
}

/// `{"schema": 1, "dims": [..], "re": [[..]], "im": [[..]]}`, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDoc {
    #[serde(default = "schema_one")]
    pub schema: u32,
    pub dims: Vec<usize>,
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Option<Vec<Vec<f64>>>,
}

/// `{"schema": 1, "sigma": [[..]], "mean": [..]}` in `(p_1..p_n, q_1..q_n)` order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CovarianceDoc {
    #[serde(default = "schema_one")]
    pub schema: u32,
    pub sigma: Vec<Vec<f64>>,
    #[serde(default)]
    pub mean: Option<Vec<f64>>,
}

fn invalid(invariant: &'static str, detail: impl Into<String>) -> CliError {
    CliError::Domain(densop::Error::Validation {
        invariant,
        detail: detail.into(),
    })
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read_text(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn check_schema(schema: u32) -> CliResult<()> {
    if schema != SCHEMA {
        return Err(invalid("schema", format!("unsupported schema {schema}")));
    }
    Ok(())
}

fn square_rows(rows: &[Vec<f64>], name: &str) -> CliResult<usize> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(invalid("square", format!("`{name}` is not a nonempty square array")));
    }
    Ok(n)
}

impl MatrixDoc {
    pub fn from_matrix(m: &ComplexMatrix, dims: &[usize]) -> Self {
        let n = m.rows();
        Self {
            schema: SCHEMA,
            dims: dims.to_vec(),
            re: (0..n).map(|r| (0..n).map(|c| m[(r, c)].re).collect()).collect(),
            im: Some((0..n).map(|r| (0..n).map(|c| m[(r, c)].im).collect()).collect()),
        }
    }

    /// Matrix and dims without any density-operator checks.
    pub fn to_matrix(&self) -> CliResult<(ComplexMatrix, Vec<usize>)> {
        check_schema(self.schema)?;
        let n = square_rows(&self.re, "re")?;
        if let Some(im) = &self.im {
            if square_rows(im, "im")? != n {
                return Err(invalid("square", "`re` and `im` have different sizes"));
            }
        }
        if self.dims.is_empty() || self.dims.iter().any(|&d| d == 0) || self.dims.iter().product::<usize>() != n {
            return Err(invalid("dims", format!("dims {:?} do not multiply to order {n}", self.dims)));
        }
        let data = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .map(|(r, c)| Complex64::new(self.re[r][c], self.im.as_ref().map_or(0.0, |im| im[r][c])))
            .collect();
        Ok((ComplexMatrix::new(n, n, data)?, self.dims.clone()))
    }

    pub fn to_density(&self) -> CliResult<DensityMatrix> {
        let (m, dims) = self.to_matrix()?;
        Ok(DensityMatrix::new(m, dims)?)
    }
}

pub fn read_matrix(path: &Path) -> CliResult<(ComplexMatrix, Vec<usize>)> {
    parse_json::<MatrixDoc>(path)?.to_matrix()
}

pub fn read_density(path: &Path) -> CliResult<DensityMatrix> {
    parse_json::<MatrixDoc>(path)?.to_density()
}

pub fn read_covariance(path: &Path) -> CliResult<GaussianState> {
    let doc: CovarianceDoc = parse_json(path)?;
    check_schema(doc.schema)?;
    let n = square_rows(&doc.sigma, "sigma")?;
    let sigma = DMatrix::from_fn(n, n, |r, c| doc.sigma[r][c]);
    let mean = match doc.mean {
        Some(m) if m.len() != n => return Err(invalid("dims", format!("mean of length {} for {n} variables", m.len()))),
        Some(m) => DVector::from_vec(m),
        None => DVector::zeros(n),
    };
    Ok(GaussianState::new(sigma, mean)?)
}

/// Pretty JSON to `output`, or to stdout.
pub fn emit_json(value: &Value, output: Option<&Path>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

/// Path of the metadata file written next to a CSV field.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

/// CSV to `output` plus a JSON metadata sidecar, or CSV alone to stdout.
pub fn emit_field(field: &SymbolField, output: Option<&Path>) -> CliResult<()> {
    let Some(path) = output else {
        let stdout = std::io::stdout();
        return field.write_csv(BufWriter::new(stdout.lock())).map_err(|source| CliError::Write {
            path: PathBuf::from("<stdout>"),
            source,
        });
    };
    if path.extension().is_some_and(|e| e == "json") {
        return Err(CliError::Usage("field output must not use the .json extension".into()));
    }
    let werr = |p: &Path| {
        let p = p.to_path_buf();
        move |source| CliError::Write { path: p, source }
    };
    let file = fs::File::create(path).map_err(werr(path))?;
    let mut out = BufWriter::new(file);
    field.write_csv(&mut out).map_err(werr(path))?;
    out.flush().map_err(werr(path))?;
    let meta = serde_json::to_value(field.metadata()).expect("metadata serializes");
    emit_json(&meta, Some(&sidecar_path(path)))
}
