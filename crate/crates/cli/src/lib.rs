//! Command-line front end: spectra, isospectrality reports, gates and the
//! combined table, in plain, CSV or JSON form.
//!
//! Exit codes: 0 verified, 1 verification failed, 2 usage or input error,
//! 3 numerical failure (convergence or Hermiticity).

pub mod matrix_file;
pub mod render;
pub mod report;

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use spin_hierarchy::eigen::{EigSettings, DEFAULT_MAX_SWEEPS, DEFAULT_TOL};
use spin_hierarchy::gate::wrap_phase;
use spin_hierarchy::{
    build_cyclic, build_heisenberg, certify_spin, closed_form_spectrum, cluster_spectrum,
    default_cluster_tol, gate_fidelity, hermitian_eig_with, make_spin_triple, synthesize_gate,
    verify_su2, CMatrix, Gate, HalfInteger,
};

use matrix_file::MatrixFileError;
use render::OutputFormat;
use report::{
    clusters_of, ComparisonOut, GateCheckOut, GateReport, MomentsOut, NewtonOut, OracleOut, SpinReport,
    TableReport,
};

pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Tolerance applied to the su(2) identities (per unit dimension).
pub const ALGEBRA_TOL: f64 = 1e-12;
/// Default tolerance for moment and Newton comparisons.
pub const MOMENT_TOL: f64 = 1e-8;
/// `gate --check` fails above this unitarity residual.
pub const GATE_UNITARITY_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    VerificationFailed = 1,
    Usage = 2,
    Numerical = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    MatrixFile(#[from] MatrixFileError),
    #[error(transparent)]
    Numerics(#[from] spin_hierarchy::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Numerics(e) if e.is_numerical() => ExitStatus::Numerical,
            CliError::Io(_) => ExitStatus::Numerical,
            _ => ExitStatus::Usage,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "spin-tool", version, about = "Spin-s couplings: spectra, isospectrality checks and gates")]
pub struct Cli {
    /// Jacobi convergence tolerance (relative off-diagonal norm).
    #[arg(long, global = true, env = "SPIN_TOOL_TOL", default_value_t = DEFAULT_TOL)]
    pub eig_tol: f64,

    /// Maximum number of Jacobi sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SWEEPS)]
    pub max_sweeps: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Clustered spectrum of H, K or a matrix read from a file.
    Spectrum(SpectrumArgs),
    /// su(2) identities plus spectrum and moment comparison of H and K.
    Verify(VerifyArgs),
    /// The gate exp(−iθH) or exp(−iθK).
    Gate(GateArgs),
    /// One verification row per spin from 1/2 up to --max-spin.
    Table(TableArgs),
    /// Print the JSON schema of the reports.
    Schema,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HamiltonianArg {
    #[value(name = "H")]
    H,
    #[value(name = "K")]
    K,
    #[value(name = "file")]
    File,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Spin as "n", "n/2" or a decimal such as 1.5.
    #[arg(long, value_parser = parse_spin)]
    pub spin: Option<HalfInteger>,
    #[arg(long, value_enum, default_value = "H")]
    pub hamiltonian: HamiltonianArg,
    /// Matrix file, required with `--hamiltonian file`.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: OutputFormat,
    /// Defaults to 1e-9·max(1, ‖M‖_F).
    #[arg(long)]
    pub cluster_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_spin)]
    pub spin: HalfInteger,
    /// Highest moment power; defaults to (2s+1)², capped where tr(M^k) would overflow.
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long, default_value_t = MOMENT_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GateHamiltonian {
    #[value(name = "H")]
    H,
    #[value(name = "K")]
    K,
}

#[derive(Debug, Args)]
pub struct GateArgs {
    #[arg(long, value_parser = parse_spin)]
    pub spin: HalfInteger,
    #[arg(long, value_enum)]
    pub hamiltonian: GateHamiltonian,
    /// Dimensionless angle θ.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: OutputFormat,
    /// Report unitarity residual and eigenphases.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = parse_spin)]
    pub max_spin: HalfInteger,
    #[arg(long, default_value_t = MOMENT_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: OutputFormat,
}

fn parse_spin(text: &str) -> Result<HalfInteger, String> {
    text.parse::<HalfInteger>().map_err(|e| e.to_string())
}

/// Note attached to every spin-3/2 report.
pub const THREE_HALVES_NOTE: &str =
    "spin 3/2: the level 9/4 has multiplicity 7 (total spin 3); multiplicities 1+3+5+7 account for all 16 states, so a multiplicity of 1 for 9/4 cannot be right";

const PREFIX_NOTE: &str =
    "moments k <= 2s+1 are marked as the prefix; the verdict rests on the full eigenvalue comparison and all moments up to kmax";

/// Largest moment power whose traces stay comfortably inside f64 range,
/// capped at the full dimension. The spectral radius of both couplings is
/// s(s+1).
pub fn default_kmax(s: HalfInteger) -> usize {
    let dim = s.dimension() * s.dimension();
    let radius = s.casimir().max(2.0);
    let safe = ((1e300 / dim as f64).ln() / radius.ln()).floor() as usize;
    dim.min(safe)
}

impl Cli {
    fn eig_settings(&self) -> Result<EigSettings, CliError> {
        if !(self.eig_tol > 0.0 && self.eig_tol.is_finite()) {
            return Err(CliError::Usage(format!("--eig-tol must be positive, got {}", self.eig_tol)));
        }
        Ok(EigSettings { tol: self.eig_tol, max_sweeps: self.max_sweeps })
    }
}

/// Runs one command, writing the report to `out`. `Ok(true)` means every
/// check in the report passed.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let eig = cli.eig_settings()?;
    match &cli.command {
        Command::Spectrum(a) => {
            let r = spectrum_report(a, &eig)?;
            emit(out, a.format, &r, render::plain_spin)?;
            Ok(r.verdict)
        }
        Command::Verify(a) => {
            check_tol(a.tol)?;
            let r = verify_report(a.spin, a.kmax, a.tol, &eig)?;
            emit(out, a.format, &r, render::plain_spin)?;
            Ok(r.verdict)
        }
        Command::Table(a) => {
            check_tol(a.tol)?;
            let rows = a
                .max_spin
                .up_to()
                .map(|s| verify_report(s, None, a.tol, &eig))
                .collect::<Result<Vec<_>, _>>()?;
            let verdict = rows.iter().all(|r| r.verdict);
            let t = TableReport { command: "table".into(), max_spin: a.max_spin.to_string(), rows, verdict };
            emit(out, a.format, &t, render::plain_table)?;
            Ok(verdict)
        }
        Command::Gate(a) => {
            let r = gate_report(a)?;
            emit(out, a.format, &r, render::plain_gate)?;
            Ok(r.verdict)
        }
        Command::Schema => {
            out.write_all(SCHEMA.as_bytes())?;
            Ok(true)
        }
    }
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--tol must be positive, got {tol}")))
    }
}

fn emit<T: serde::Serialize>(
    out: &mut dyn Write,
    format: OutputFormat,
    report: &T,
    plain: fn(&T) -> String,
) -> Result<(), CliError> {
    let text = match format {
        OutputFormat::Plain => plain(report),
        OutputFormat::Json => render::json(report),
        OutputFormat::Csv => render::csv(report),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn spin_notes(s: HalfInteger) -> Vec<String> {
    if s.twice() == 3 {
        vec![THREE_HALVES_NOTE.to_string()]
    } else {
        Vec::new()
    }
}

pub fn spectrum_report(a: &SpectrumArgs, eig: &EigSettings) -> Result<SpinReport, CliError> {
    let (matrix, tag): (CMatrix, &str) = match (a.hamiltonian, a.spin) {
        (HamiltonianArg::File, _) => {
            let path = a
                .file
                .as_ref()
                .ok_or_else(|| CliError::Usage("--hamiltonian file requires --file <PATH>".into()))?;
            (matrix_file::read_matrix(path)?, "file")
        }
        (HamiltonianArg::H, Some(s)) => (build_heisenberg(s).into_matrix(), "H"),
        (HamiltonianArg::K, Some(s)) => (build_cyclic(s).into_matrix(), "K"),
        (_, None) => return Err(CliError::Usage("--spin is required for --hamiltonian H or K".into())),
    };
    let cluster_tol = match a.cluster_tol {
        Some(t) if t > 0.0 && t.is_finite() => t,
        Some(t) => return Err(CliError::Usage(format!("--cluster-tol must be positive, got {t}"))),
        None => default_cluster_tol(&matrix),
    };
    let e = hermitian_eig_with(&matrix, eig)?;
    let spectrum = cluster_spectrum(&e.values, cluster_tol);

    let mut notes = Vec::new();
    let spin = if tag == "file" { None } else { a.spin };
    let oracle = spin.map(|s| {
        let closed = closed_form_spectrum(s);
        notes.extend(spin_notes(s));
        OracleOut { matches: spectrum.matches(&closed, cluster_tol.max(1e-9)), clusters: clusters_of(&closed) }
    });
    let verdict = oracle.as_ref().is_none_or(|o| o.matches);
    Ok(SpinReport {
        command: "spectrum".into(),
        spin: spin.map(|s| s.to_string()),
        dimension: matrix.rows(),
        hamiltonian: tag.into(),
        clusters: clusters_of(&spectrum),
        cluster_tol,
        eigenvalues: e.values,
        oracle,
        comparison: None,
        moments: None,
        newton: None,
        algebra: None,
        verdict,
        notes,
    })
}

pub fn verify_report(s: HalfInteger, kmax: Option<usize>, tol: f64, eig: &EigSettings) -> Result<SpinReport, CliError> {
    let algebra = verify_su2(&make_spin_triple(s), ALGEBRA_TOL);
    let mut notes = spin_notes(s);
    let dim = s.dimension() * s.dimension();
    let kmax = match kmax {
        Some(0) => return Err(CliError::Usage("--kmax must be at least 1".into())),
        Some(k) => k,
        None => {
            let k = default_kmax(s);
            if k < dim {
                notes.push(format!("kmax capped at {k} (of {dim}) to keep tr(M^k) inside double-precision range"));
            }
            k
        }
    };
    notes.push(PREFIX_NOTE.to_string());

    let r = certify_spin(s, Some(kmax), tol, eig)?;
    let closed = closed_form_spectrum(s);
    let oracle_tol = r.spectrum_a.cluster_tol.max(1e-9);
    let oracle = OracleOut { matches: r.spectrum_a.matches(&closed, oracle_tol), clusters: clusters_of(&closed) };
    let verdict = algebra.pass && r.spectra_equal && r.moments.pass && r.newton_a && r.newton_b && oracle.matches;

    Ok(SpinReport {
        command: "verify".into(),
        spin: Some(s.to_string()),
        dimension: dim,
        hamiltonian: "H".into(),
        clusters: clusters_of(&r.spectrum_a),
        cluster_tol: r.spectrum_a.cluster_tol,
        eigenvalues: r.values_a.clone(),
        oracle: Some(oracle),
        comparison: Some(ComparisonOut {
            hamiltonian: "K".into(),
            clusters: clusters_of(&r.spectrum_b),
            cluster_tol: r.spectrum_b.cluster_tol,
            spectra_equal: r.spectra_equal,
        }),
        moments: Some(MomentsOut::from(&r.moments)),
        newton: Some(NewtonOut { h: r.newton_a, k: r.newton_b }),
        algebra: Some((&algebra).into()),
        verdict,
        notes,
    })
}

/// Distance between two angles on the circle.
fn phase_gap(a: f64, b: f64) -> f64 {
    wrap_phase(a - b).abs()
}

pub fn gate_report(a: &GateArgs) -> Result<GateReport, CliError> {
    if !a.theta.is_finite() {
        return Err(CliError::Usage(format!("--theta must be finite, got {}", a.theta)));
    }
    let h = match a.hamiltonian {
        GateHamiltonian::H => build_heisenberg(a.spin),
        GateHamiltonian::K => build_cyclic(a.spin),
    };
    let g = synthesize_gate(&h, a.theta)?;
    let n = g.dimension();
    let matrix = (0..n)
        .map(|i| (0..n).map(|j| g.matrix().get(i, j)).map(|z| [z.re, z.im]).collect())
        .collect();

    let mut notes = Vec::new();
    let mut verdict = true;
    let check = if a.check {
        let residual = g.unitarity_residual();
        let eigenphases = g.eigenphases()?;
        let values = spin_hierarchy::hermitian_eig(h.matrix(), DEFAULT_TOL)?.values;
        let mut expected: Vec<f64> = values.iter().map(|l| wrap_phase(-a.theta * l)).collect();
        expected.sort_by(f64::total_cmp);
        let max_phase_error = match_phases(&eigenphases, &expected);
        let fidelity = gate_fidelity(&g, &Gate::identity(n))?;
        if (fidelity - 1.0).abs() <= 1e-9 {
            notes.push(format!(
                "gate equals the identity up to the global phase {} (= {}·π)",
                render::num(g.trace_phase()),
                render::num(g.trace_phase() / PI)
            ));
        }
        verdict = residual <= GATE_UNITARITY_LIMIT;
        Some(GateCheckOut {
            unitarity_residual: residual,
            unitarity_tol: GATE_UNITARITY_LIMIT,
            identity_fidelity: fidelity,
            trace_phase: g.trace_phase(),
            eigenphases,
            expected_eigenphases: expected,
            max_phase_error,
        })
    } else {
        None
    };

    Ok(GateReport {
        command: "gate".into(),
        spin: a.spin.to_string(),
        dimension: n,
        hamiltonian: h.kind().tag().into(),
        theta: a.theta,
        matrix,
        check,
        verdict,
        notes,
    })
}

/// Largest circular distance after greedily pairing each computed phase
/// with its nearest unused expected phase.
fn match_phases(got: &[f64], expected: &[f64]) -> f64 {
    let mut pool: Vec<f64> = expected.to_vec();
    let mut worst: f64 = 0.0;
    for &p in got {
        let Some((idx, gap)) = pool
            .iter()
            .enumerate()
            .map(|(i, &q)| (i, phase_gap(p, q)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
        else {
            return f64::INFINITY;
        };
        worst = worst.max(gap);
        pool.swap_remove(idx);
    }
    worst
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { ExitStatus::Usage.code() } else { ExitStatus::Success.code() };
            if e.use_stderr() {
                let rendered = e.render().to_string();
                let _ = write!(err, "{rendered}");
                if !rendered.contains("Usage:") {
                    let _ = writeln!(err, "\n{}", Cli::command().render_usage());
                }
            } else {
                let _ = write!(out, "{}", e.render());
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(true) => ExitStatus::Success.code(),
        Ok(false) => ExitStatus::VerificationFailed.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.status().code()
        }
    }
}
