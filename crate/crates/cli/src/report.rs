//! Serializable report types. The JSON shape of each is described by
//! `schema/report.schema.json`.

use serde::{Deserialize, Serialize};

use spin_hierarchy::spin::AlgebraReport;
use spin_hierarchy::{MomentReport, Spectrum};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterOut {
    pub value: f64,
    pub multiplicity: usize,
}

pub fn clusters_of(s: &Spectrum) -> Vec<ClusterOut> {
    s.clusters.iter().map(|c| ClusterOut { value: c.value, multiplicity: c.multiplicity }).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleOut {
    pub clusters: Vec<ClusterOut>,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentsOut {
    pub powers: Vec<usize>,
    pub traces_h: Vec<f64>,
    pub traces_k: Vec<f64>,
    pub thresholds: Vec<f64>,
    pub max_abs_diff: f64,
    pub max_scaled_diff: f64,
    pub tol: f64,
    pub pass: bool,
    pub prefix_len: Option<usize>,
    pub prefix_pass: Option<bool>,
}

impl From<&MomentReport> for MomentsOut {
    fn from(m: &MomentReport) -> Self {
        MomentsOut {
            powers: m.powers.clone(),
            traces_h: m.traces_a.clone(),
            traces_k: m.traces_b.clone(),
            thresholds: m.thresholds.clone(),
            max_abs_diff: m.max_abs_diff,
            max_scaled_diff: m.max_scaled_diff,
            tol: m.tol,
            pass: m.pass,
            prefix_len: m.prefix_len,
            prefix_pass: m.prefix_pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OddTraceOut {
    pub power: usize,
    pub residuals: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraOut {
    pub commutator: [f64; 3],
    pub casimir: f64,
    pub square_trace: [f64; 3],
    pub cross_trace: [f64; 3],
    pub odd_power_trace: Vec<OddTraceOut>,
    pub kron_cross_trace: f64,
    pub tol: f64,
    pub pass: bool,
}

impl From<&AlgebraReport> for AlgebraOut {
    fn from(a: &AlgebraReport) -> Self {
        AlgebraOut {
            commutator: a.commutator,
            casimir: a.casimir,
            square_trace: a.square_trace,
            cross_trace: a.cross_trace,
            odd_power_trace: a
                .odd_power_trace
                .iter()
                .map(|&(power, residuals)| OddTraceOut { power, residuals })
                .collect(),
            kron_cross_trace: a.kron_cross_trace,
            tol: a.tol,
            pass: a.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NewtonOut {
    #[serde(rename = "H")]
    pub h: bool,
    #[serde(rename = "K")]
    pub k: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonOut {
    pub hamiltonian: String,
    pub clusters: Vec<ClusterOut>,
    pub cluster_tol: f64,
    pub spectra_equal: bool,
}

/// Output of `spectrum` and `verify`, and one row of `table`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinReport {
    pub command: String,
    pub spin: Option<String>,
    pub dimension: usize,
    pub hamiltonian: String,
    pub clusters: Vec<ClusterOut>,
    pub cluster_tol: f64,
    pub eigenvalues: Vec<f64>,
    pub oracle: Option<OracleOut>,
    pub comparison: Option<ComparisonOut>,
    pub moments: Option<MomentsOut>,
    pub newton: Option<NewtonOut>,
    pub algebra: Option<AlgebraOut>,
    pub verdict: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub command: String,
    pub max_spin: String,
    pub rows: Vec<SpinReport>,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateCheckOut {
    pub unitarity_residual: f64,
    pub unitarity_tol: f64,
    pub identity_fidelity: f64,
    pub trace_phase: f64,
    pub eigenphases: Vec<f64>,
    pub expected_eigenphases: Vec<f64>,
    pub max_phase_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateReport {
    pub command: String,
    pub spin: String,
    pub dimension: usize,
    pub hamiltonian: String,
    pub theta: f64,
    /// Row-major `[re, im]` pairs.
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub check: Option<GateCheckOut>,
    pub verdict: bool,
    pub notes: Vec<String>,
}
