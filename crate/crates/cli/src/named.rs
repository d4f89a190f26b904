//! Built-in states, written `name` or `name:key=value,key=value`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_complex::Complex64;

use densop::gaussian::GaussianState;
use densop::linalg::DensityMatrix;
use densop::phase_space::{coherent_state, number_state, squeezed_vacuum, thermal_state, FockOperator};
use densop::{random, states};

use crate::error::{CliError, CliResult};
use crate::io;

const NAMES: &[&str] = &[
    "vacuum", "bell", "phi-state", "basis", "plus", "mixed", "random", "fock", "coherent", "thermal", "squeezed",
    "tmsv",
];

const MAX_ORDER: usize = 4096;
const MAX_MODES: usize = 64;

#[derive(Debug, Clone)]
pub struct Named {
    name: String,
    params: BTreeMap<String, String>,
}

/// A command-line state argument: a built-in name or a JSON file.
#[derive(Debug, Clone)]
pub enum Source {
    Named(Named),
    Path(PathBuf),
}

impl Source {
    pub fn parse(arg: &str) -> CliResult<Self> {
        let (head, tail) = arg.split_once(':').unwrap_or((arg, ""));
        if !NAMES.contains(&head) {
            return Ok(Source::Path(PathBuf::from(arg)));
        }
        let mut params = BTreeMap::new();
        for pair in tail.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| CliError::Parse(format!("state parameter `{pair}` is not key=value")))?;
            params.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Source::Named(Named {
            name: head.to_string(),
            params,
        }))
    }

    /// Finite-dimensional density matrix.
    pub fn density(&self) -> CliResult<DensityMatrix> {
        match self {
            Source::Path(p) => io::read_density(p),
            Source::Named(n) => n.density(),
        }
    }

    /// Single-mode Fock-space operator. Files use their own order as cutoff.
    pub fn fock(&self, cutoff: Option<usize>) -> CliResult<FockOperator> {
        match self {
            Source::Path(p) => {
                let (m, dims) = io::read_matrix(p)?;
                if dims.len() != 1 {
                    return Err(CliError::Usage(format!("single-mode operator required, got dims {dims:?}")));
                }
                if cutoff.is_some_and(|c| c != m.rows()) {
                    return Err(CliError::Usage(format!("--cutoff differs from the file order {}", m.rows())));
                }
                Ok(FockOperator::new(m)?)
            }
            Source::Named(n) => n.fock(cutoff.unwrap_or(40)),
        }
    }

    pub fn gaussian(&self) -> CliResult<GaussianState> {
        match self {
            Source::Path(p) => io::read_covariance(p),
            Source::Named(n) => n.gaussian(),
        }
    }
}

impl Named {
    fn unknown(&self, context: &str) -> CliError {
        CliError::Usage(format!("state `{}` is not available as {context}", self.name))
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        self.params
            .get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| CliError::Parse(format!("`{}`: cannot parse {key}={v}", self.name)))
            })
            .transpose()
    }

    fn require<T: std::str::FromStr>(&self, key: &str) -> CliResult<T> {
        self.get(key)?
            .ok_or_else(|| CliError::Usage(format!("`{}` requires the parameter {key}=", self.name)))
    }

    fn dims(&self, default: &[usize]) -> CliResult<Vec<usize>> {
        let dims = match self.params.get("dims") {
            None => default.to_vec(),
            Some(v) => v
                .split('x')
                .map(|d| d.parse::<usize>().ok().filter(|&d| d > 0))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| CliError::Parse(format!("`{}`: dims must look like 2x3, got {v}", self.name)))?,
        };
        if dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).is_none_or(|n| n > MAX_ORDER) {
            return Err(CliError::Usage(format!("total dimension above {MAX_ORDER}")));
        }
        Ok(dims)
    }

    fn density(&self) -> CliResult<DensityMatrix> {
        let state = match self.name.as_str() {
            "bell" => states::bell(),
            "phi-state" => states::phi_state(self.require::<f64>("phi")?.to_radians()),
            "basis" => {
                let dim: usize = self.require("dim")?;
                let k: usize = self.require("k")?;
                if k >= dim || dim > MAX_ORDER {
                    return Err(CliError::Usage(format!("basis index {k} with dimension {dim}")));
                }
                states::basis(dim, k)
            }
            "plus" => {
                let dims = self.dims(&[2])?;
                let n = dims.iter().product();
                DensityMatrix::pure(&vec![Complex64::new(1.0, 0.0); n], dims)?
            }
            "mixed" => states::maximally_mixed(&self.dims(&[2])?),
            "random" => {
                let seed: u64 = self.require("seed")?;
                let dims = self.dims(&[2, 2])?;
                let n: usize = dims.iter().product();
                let rank: usize = self.get("rank")?.unwrap_or(1);
                if rank == 0 || rank > n {
                    return Err(CliError::Usage(format!("rank {rank} outside 1..={n}")));
                }
                random::random_density(&mut random::rng(seed), &dims, rank)
            }
            _ => return Err(self.unknown("a finite-dimensional density matrix")),
        };
        Ok(state)
    }

    fn fock(&self, cutoff: usize) -> CliResult<FockOperator> {
        let op = match self.name.as_str() {
            "vacuum" => number_state(0, cutoff)?,
            "fock" => number_state(self.require("n")?, cutoff)?,
            "coherent" => {
                let alpha = Complex64::new(self.get("re")?.unwrap_or(0.0), self.get("im")?.unwrap_or(0.0));
                coherent_state(alpha, cutoff)?
            }
            "thermal" => thermal_state(self.require("nbar")?, cutoff)?,
            "squeezed" => squeezed_vacuum(self.require("r")?, cutoff)?,
            _ => return Err(self.unknown("a single-mode Fock operator")),
        };
        Ok(op)
    }

    fn gaussian(&self) -> CliResult<GaussianState> {
        let modes: usize = self.get("modes")?.unwrap_or(2);
        if modes == 0 || modes > MAX_MODES {
            return Err(CliError::Usage(format!("mode count must lie in 1..={MAX_MODES}")));
        }
        let g = match self.name.as_str() {
            "vacuum" => GaussianState::vacuum(modes),
            "thermal" => GaussianState::thermal_modes(modes, self.require("nbar")?),
            "squeezed" => GaussianState::squeezed_vacuum(self.require("r")?),
            "tmsv" => GaussianState::two_mode_squeezed(self.require("r")?),
            _ => return Err(self.unknown("a Gaussian state")),
        };
        Ok(GaussianState::new(g.sigma().clone(), g.mean().clone())?)
    }
}
