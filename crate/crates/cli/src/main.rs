mod error;
mod io;
mod named;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use densop::entanglement::{measure, measure_order, observable_measure, spectra_equal_check, Partition};
use densop::gaussian::{gaussian_entanglement_report, ModePartition};
use densop::linalg::{ComplexMatrix, DensityMatrix};
use densop::phase_space::{tomogram_field, tomogram_radon, weyl_symbol, PhaseSpaceGrid, TomogramPoint};
use densop::purification::{
    purify_separable, superpose_impure, superpose_nonorthogonal, superpose_pure_many, validate_fiducial,
    FiducialProjector, SuperpositionWeights, TOL_ORTH,
};
use densop::Warning;

use error::{CliError, CliResult};
use io::{emit_field, emit_json, MatrixDoc, SCHEMA};
use named::Source;

const MAX_CUTOFF: usize = 400;

/// Density-operator purification, entanglement measures and phase-space symbols.
///
/// State arguments take a JSON file or a built-in name such as `bell`,
/// `phi-state:phi=30`, `tmsv:r=0.5`, `coherent:re=1,im=0` or
/// `random:dims=2x3,rank=2,seed=7`.
#[derive(Parser)]
#[command(name = "densop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coherent superposition of states through a fiducial projector.
    Superpose(SuperposeArgs),
    /// Pure state built from two marginals and a joint fiducial projector.
    PurifyMixed(PurifyArgs),
    /// Hilbert-Schmidt entanglement of a density matrix.
    Entangle(EntangleArgs),
    /// Entanglement measure of an observable.
    ObservableEntangle(ObservableArgs),
    /// Entanglement of a centered Gaussian state from its covariance matrix.
    Gaussian(GaussianArgs),
    /// Weyl symbol of a single-mode state on a square grid.
    Wigner(WignerArgs),
    /// Symplectic tomogram of a single-mode state.
    Tomogram(TomogramArgs),
    /// Overlap diagnostics of a fiducial projector.
    ValidateFiducial(FiducialArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    /// Pick from the inputs: orthogonal pure, two nonorthogonal pure, or mixed.
    Auto,
    Orthogonal,
    Nonorthogonal,
    Impure,
}

#[derive(Args)]
struct SuperposeArgs {
    #[arg(long)]
    rho1: String,
    #[arg(long)]
    rho2: String,
    /// Further components, in order after rho1 and rho2.
    #[arg(long = "rho")]
    more: Vec<String>,
    /// Weights, comma separated, one per component.
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<f64>,
    #[arg(long)]
    fiducial: String,
    /// Visibility of the interference terms, in [0, 1].
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PurifyArgs {
    #[arg(long)]
    rho_a: String,
    #[arg(long)]
    rho_b: String,
    /// Projector on the joint space.
    #[arg(long)]
    fiducial: String,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EntangleArgs {
    #[arg(long, visible_alias = "state")]
    input: String,
    /// Subsystem dimensions, e.g. `2,2`; defaults to the state's own.
    #[arg(long, value_delimiter = ',')]
    partition: Option<Vec<usize>>,
    /// Number of leading subsystems in the first part.
    #[arg(long, default_value_t = 1)]
    split: usize,
    /// Also report Tr R^(n+1).
    #[arg(long)]
    order: Option<u32>,
    /// Also compare marginal spectra of a pure state up to this moment.
    #[arg(long)]
    spectra: Option<u32>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ObservableArgs {
    /// Hermitian matrix in the density JSON schema, or a built-in state.
    #[arg(long)]
    input: String,
    #[arg(long, value_delimiter = ',')]
    partition: Option<Vec<usize>>,
    /// Subsystem groups such as `0/1,2`; defaults to one group per subsystem.
    #[arg(long)]
    groups: Option<String>,
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Divide by Tr O^2.
    #[arg(long)]
    normalized: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GaussianArgs {
    /// Covariance JSON or a built-in Gaussian state (`tmsv:r=0.5`).
    #[arg(long, visible_aliases = ["state", "covariance"])]
    input: String,
    /// Modes in the first subsystem.
    #[arg(long, default_value_t = 1)]
    split: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    /// Fock cutoff for built-in states.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Half-width of the Weyl grid.
    #[arg(long, default_value_t = 5.0)]
    extent: f64,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
}

#[derive(Args)]
struct WignerArgs {
    #[arg(long, visible_alias = "input")]
    state: String,
    #[command(flatten)]
    grid: GridArgs,
    /// CSV path; a JSON sidecar with the grid is written next to it.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TomogramArgs {
    #[arg(long, visible_alias = "input")]
    state: String,
    #[command(flatten)]
    grid: GridArgs,
    /// Half-width of the (X, angle) output grid.
    #[arg(long, default_value_t = 3.0)]
    x_extent: f64,
    #[arg(long, default_value_t = 0.1)]
    x_step: f64,
    /// Single point `X,mu,nu`; prints JSON instead of a field.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FiducialArgs {
    #[arg(long)]
    fiducial: String,
    /// Projectors to test against.
    #[arg(long = "projector")]
    projectors: Vec<String>,
    /// Test against the computational basis.
    #[arg(long)]
    basis: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn density_json(state: &DensityMatrix) -> Value {
    serde_json::to_value(MatrixDoc::from_matrix(state.matrix(), state.dims())).expect("matrix serializes")
}

fn warnings_json(warnings: &[Warning]) -> Value {
    warnings
        .iter()
        .map(|w| match w {
            Warning::DegenerateSpectrum { eigenvalues } => json!({ "code": w.code(), "eigenvalues": eigenvalues }),
            Warning::KernelQuadrature { max_deviation } => json!({ "code": w.code(), "max_deviation": max_deviation }),
        })
        .collect()
}

fn fiducial_from(arg: &str) -> CliResult<FiducialProjector> {
    let d = Source::parse(arg)?.density()?;
    let dims = d.dims().to_vec();
    Ok(FiducialProjector::new(d.into_matrix(), dims)?)
}

fn orthogonal(states: &[DensityMatrix]) -> bool {
    states.iter().enumerate().all(|(k, a)| {
        states[k + 1..]
            .iter()
            .all(|b| a.matrix().matmul(b.matrix()).frobenius_norm() <= TOL_ORTH)
    })
}

fn superpose(a: SuperposeArgs) -> CliResult<()> {
    let rhos: Vec<DensityMatrix> = [&a.rho1, &a.rho2]
        .into_iter()
        .chain(&a.more)
        .map(|s| Source::parse(s)?.density())
        .collect::<CliResult<_>>()?;
    let w = SuperpositionWeights::with_visibility(a.p, a.gamma)?;
    let p0 = fiducial_from(&a.fiducial)?;
    let method = match a.method {
        Method::Auto => {
            let pure = rhos.iter().all(|r| r.idempotency_residual() <= 1e-9);
            match (pure, orthogonal(&rhos), rhos.len()) {
                (true, true, _) => Method::Orthogonal,
                (true, false, 2) => Method::Nonorthogonal,
                _ => Method::Impure,
            }
        }
        m => m,
    };
    let (state, warnings, name) = match method {
        Method::Orthogonal => (superpose_pure_many(&rhos, &w, &p0)?, Vec::new(), "orthogonal"),
        Method::Nonorthogonal => {
            if rhos.len() != 2 {
                return Err(CliError::Usage("the nonorthogonal rule takes exactly two states".into()));
            }
            (superpose_nonorthogonal(&rhos[0], &rhos[1], &w, &p0)?, Vec::new(), "nonorthogonal")
        }
        _ => {
            let out = superpose_impure(&rhos, &w, &p0)?;
            (out.state, out.warnings, "impure")
        }
    };
    let mut doc = density_json(&state);
    doc["method"] = json!(name);
    doc["warnings"] = warnings_json(&warnings);
    emit_json(&doc, a.output.as_deref())
}

fn purify_mixed(a: PurifyArgs) -> CliResult<()> {
    let ra = Source::parse(&a.rho_a)?.density()?;
    let rb = Source::parse(&a.rho_b)?.density()?;
    let out = purify_separable(&ra, &rb, &fiducial_from(&a.fiducial)?)?;
    let mut doc = density_json(&out.state);
    doc["warnings"] = warnings_json(&out.warnings);
    emit_json(&doc, a.output.as_deref())
}

fn with_partition(state: DensityMatrix, dims: Option<Vec<usize>>) -> CliResult<DensityMatrix> {
    match dims {
        None => Ok(state),
        Some(d) => Ok(DensityMatrix::new(state.into_matrix(), d)?),
    }
}

fn entangle(a: EntangleArgs) -> CliResult<()> {
    let rho = with_partition(Source::parse(&a.input)?.density()?, a.partition)?;
    let part = Partition::bipartite(rho.dims().to_vec(), a.split)?;
    let rep = measure(&rho, &part)?;
    let mut doc = json!({
        "schema": SCHEMA,
        "dims": rho.dims(),
        "split": a.split,
        "e": rep.e,
        "mu": rep.mu_ab,
        "mu_A": rep.mu_parts[0],
        "mu_B": rep.mu_parts[1],
        "cos_theta": rep.cos_theta,
        "theta_deg": rep.theta().to_degrees(),
    });
    if let Some(n) = a.order {
        if n == 0 {
            return Err(CliError::Usage("--order must be at least 1".into()));
        }
        doc["order"] = json!({ "n": n, "value": measure_order(&rho, &part, n)? });
    }
    if let Some(n_max) = a.spectra {
        let s = spectra_equal_check(&rho, &part, n_max)?;
        let c = &s.comparisons[0];
        doc["spectra"] = json!({
            "equal": s.equal,
            "first": c.spectrum,
            "second": c.complement_spectrum,
            "moment_differences": c.moment_differences,
        });
    }
    emit_json(&doc, a.output.as_deref())
}

fn parse_groups(spec: &str) -> CliResult<Vec<Vec<usize>>> {
    spec.split('/')
        .map(|g| {
            g.split(',')
                .map(|i| i.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::Parse(format!("cannot parse group `{g}` in `{spec}`")))
        })
        .collect()
}

fn observable_entangle(a: ObservableArgs) -> CliResult<()> {
    let (obs, dims): (ComplexMatrix, Vec<usize>) = match Source::parse(&a.input)? {
        Source::Path(p) => io::read_matrix(&p)?,
        named => {
            let d = named.density()?;
            let dims = d.dims().to_vec();
            (d.into_matrix(), dims)
        }
    };
    let dims = a.partition.unwrap_or(dims);
    if dims.iter().product::<usize>() != obs.rows() {
        return Err(CliError::Domain(densop::Error::Validation {
            invariant: "dims",
            detail: format!("dims {dims:?} do not multiply to order {}", obs.rows()),
        }));
    }
    let part = match &a.groups {
        Some(g) => Partition::new(dims, parse_groups(g)?)?,
        None => Partition::singletons(dims)?,
    };
    let e0 = observable_measure(&obs, &part, a.k, a.normalized)?;
    let doc = json!({
        "schema": SCHEMA,
        "groups": part.groups(),
        "k": a.k,
        "normalized": a.normalized,
        "e0": e0,
    });
    emit_json(&doc, a.output.as_deref())
}

fn gaussian(a: GaussianArgs) -> CliResult<()> {
    let g = Source::parse(&a.input)?.gaussian()?;
    let n = g.n_modes();
    if a.split == 0 || a.split >= n {
        return Err(CliError::Usage(format!("--split must lie in 1..{n} for {n} modes")));
    }
    let part = ModePartition::new(a.split, n - a.split)?;
    let rep = gaussian_entanglement_report(&g, &part)?;
    let doc = json!({
        "schema": SCHEMA,
        "modes": n,
        "split": [part.n1, part.n2],
        "e_g": rep.e_g,
        "purity": rep.purity,
        "product_purity": rep.product_purity,
        "mu_1": rep.marginal_purities.0,
        "mu_2": rep.marginal_purities.1,
        "overlap": rep.overlap,
    });
    emit_json(&doc, a.output.as_deref())
}

fn symbol_of(state: &str, grid: &GridArgs) -> CliResult<densop::phase_space::SymbolField> {
    if grid.cutoff.is_some_and(|c| c == 0 || c > MAX_CUTOFF) {
        return Err(CliError::Usage(format!("--cutoff must lie in 1..={MAX_CUTOFF}")));
    }
    let op = Source::parse(state)?.fock(grid.cutoff)?;
    let g = PhaseSpaceGrid::new(grid.extent, grid.step)?;
    Ok(weyl_symbol(&op, &g))
}

fn wigner(a: WignerArgs) -> CliResult<()> {
    emit_field(&symbol_of(&a.state, &a.grid)?, a.output.as_deref())
}

fn tomogram(a: TomogramArgs) -> CliResult<()> {
    let w = symbol_of(&a.state, &a.grid)?;
    if let Some(point) = &a.point {
        let v: Vec<f64> = point
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::Parse(format!("--point expects X,mu,nu, got `{point}`")))?;
        let [x, mu, nu] = v[..] else {
            return Err(CliError::Parse(format!("--point expects three numbers, got {}", v.len())));
        };
        let value = tomogram_radon(&w, &TomogramPoint::new(x, mu, nu)?)?;
        let doc = json!({ "schema": SCHEMA, "x": x, "mu": mu, "nu": nu, "w": value });
        return emit_json(&doc, a.output.as_deref());
    }
    let out_grid = PhaseSpaceGrid::new(a.x_extent, a.x_step)?;
    emit_field(&tomogram_field(&w, &out_grid)?, a.output.as_deref())
}

fn validate(a: FiducialArgs) -> CliResult<()> {
    let p0 = fiducial_from(&a.fiducial)?;
    let mut projectors: Vec<ComplexMatrix> = a
        .projectors
        .iter()
        .map(|s| Source::parse(s)?.density().map(DensityMatrix::into_matrix))
        .collect::<CliResult<_>>()?;
    if a.basis {
        let n = p0.matrix().rows();
        projectors.extend((0..n).map(|k| densop::states::basis(n, k).into_matrix()));
    }
    if projectors.is_empty() {
        return Err(CliError::Usage("give --projector at least once or --basis".into()));
    }
    let rep = validate_fiducial(&p0, &projectors)?;
    let doc = json!({
        "schema": SCHEMA,
        "overlaps": rep.overlaps,
        "straddles_each": rep.straddles_each,
        "straddles": rep.straddles,
        "entanglement": rep.entanglement,
        "entangled": rep.entangled,
    });
    emit_json(&doc, a.output.as_deref())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Superpose(a) => superpose(a),
        Command::PurifyMixed(a) => purify_mixed(a),
        Command::Entangle(a) => entangle(a),
        Command::ObservableEntangle(a) => observable_entangle(a),
        Command::Gaussian(a) => gaussian(a),
        Command::Wigner(a) => wigner(a),
        Command::Tomogram(a) => tomogram(a),
        Command::ValidateFiducial(a) => validate(a),
    }
}

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", err.to_json());
    ExitCode::from(err.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(e.to_string().trim_end().to_string())),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
