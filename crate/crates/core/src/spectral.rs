//! Power-trace moments, eigenvalue clustering and the isospectrality
//! comparison of two Hermitian matrices.
//!
//! Two independent lines of evidence are kept apart: the clustered spectra
//! from the eigensolver (the verdict of record) and the traces `tr(M^k)`
//! computed by repeated multiplication. Moment tolerances grow with the
//! power, `tol_k = tol · dim · max(1, ρ)^k`, where `ρ` bounds the spectral
//! radius, since `tr(M^k)` itself grows like `ρ^k`.

use crate::eigen::{hermitian_eig_with, EigSettings};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_cyclic, build_heisenberg};
use crate::matrix::{matmul, trace, CMatrix};
use crate::spin::HalfInteger;

/// Relative clustering tolerance; scaled by `max(1, ‖M‖_F)`.
pub const CLUSTER_TOL: f64 = 1e-9;
/// Hermiticity gate (per unit dimension) for moment input.
const MOMENT_HERMITIAN_TOL: f64 = 1e-10;
/// Largest imaginary part of `tr(M^k)` tolerated, per unit dimension.
const IMAG_DRIFT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Ascending by value.
    pub clusters: Vec<Cluster>,
    pub cluster_tol: f64,
    pub dimension: usize,
}

impl Spectrum {
    /// Same number of clusters, values within `tol`, identical multiplicities.
    pub fn matches(&self, other: &Spectrum, tol: f64) -> bool {
        self.dimension == other.dimension
            && self.clusters.len() == other.clusters.len()
            && self
                .clusters
                .iter()
                .zip(&other.clusters)
                .all(|(a, b)| a.multiplicity == b.multiplicity && (a.value - b.value).abs() <= tol)
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.clusters.iter().map(|c| c.multiplicity).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.clusters.iter().map(|c| c.value).collect()
    }
}

pub fn default_cluster_tol(m: &CMatrix) -> f64 {
    CLUSTER_TOL * m.frobenius_norm().max(1.0)
}

/// Greedy left-to-right clustering: a value joins the current cluster when
/// it lies within `cluster_tol` of the cluster's running mean.
pub fn cluster_spectrum(values: &[f64], cluster_tol: f64) -> Spectrum {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);

    let mut clusters: Vec<Cluster> = Vec::new();
    let mut sum = 0.0;
    for &x in &sorted {
        match clusters.last_mut() {
            Some(c) if (x - c.value).abs() <= cluster_tol => {
                sum += x;
                c.multiplicity += 1;
                c.value = sum / c.multiplicity as f64;
            }
            _ => {
                sum = x;
                clusters.push(Cluster { value: x, multiplicity: 1 });
            }
        }
    }
    Spectrum { clusters, cluster_tol, dimension: values.len() }
}

/// Spectrum of `Σ Sj⊗Sj` from the total-spin decomposition: total spin
/// `J = 0, 1, …, 2s` contributes `J(J+1)/2 − s(s+1)` with multiplicity
/// `2J + 1`.
pub fn closed_form_spectrum(s: HalfInteger) -> Spectrum {
    let cas = s.casimir();
    let clusters = (0..=s.twice())
        .map(|j| {
            let j = f64::from(j);
            Cluster { value: j * (j + 1.0) / 2.0 - cas, multiplicity: 2 * j as usize + 1 }
        })
        .collect();
    let d = s.dimension();
    Spectrum { clusters, cluster_tol: CLUSTER_TOL, dimension: d * d }
}

/// Max absolute row sum; an upper bound on the spectral norm.
fn row_sum_norm(m: &CMatrix) -> f64 {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `(tr(M), tr(M²), …, tr(M^kmax))`, real parts.
pub fn moments(m: &CMatrix, kmax: usize) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::Shape { op: "moments", detail: format!("{}x{} is not square", m.rows(), m.cols()) });
    }
    if kmax == 0 {
        return Err(Error::Domain("kmax must be at least 1"));
    }
    let n = m.rows() as f64;
    let herm_tol = MOMENT_HERMITIAN_TOL * n * m.frobenius_norm().max(1.0);
    let herm_res = m.hermiticity_residual();
    if herm_res > herm_tol {
        return Err(Error::NotHermitian { residual: herm_res, tol: herm_tol });
    }
    let base = row_sum_norm(m).max(1.0);

    let mut out = Vec::with_capacity(kmax);
    let mut power = m.clone();
    for k in 1..=kmax {
        if k > 1 {
            power = matmul(&power, m).map_err(|_| Error::Overflow { power: k })?;
        }
        let tr = trace(&power)?;
        if !tr.is_finite() {
            return Err(Error::Overflow { power: k });
        }
        let tol = IMAG_DRIFT_TOL * n * base.powi(k as i32);
        if tr.im.abs() > tol {
            return Err(Error::HermiticityDrift { power: k, imag: tr.im.abs(), tol });
        }
        out.push(tr.re);
    }
    Ok(out)
}

fn moment_scale(dim: usize, radius: f64, k: usize) -> f64 {
    dim as f64 * radius.max(1.0).powi(k as i32)
}

/// Newton's power-sum relation `tr(M^k) = Σ λ_i^k`, checked for every `k`
/// covered by `traces`.
pub fn newton_check(values: &[f64], traces: &[f64], tol: f64) -> bool {
    let radius = values.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
    traces.iter().enumerate().all(|(i, &t)| {
        let k = i + 1;
        let sum: f64 = values.iter().map(|x| x.powi(k as i32)).sum();
        (sum - t).abs() <= tol * moment_scale(values.len(), radius, k)
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    /// 1, 2, …, kmax.
    pub powers: Vec<usize>,
    pub traces_a: Vec<f64>,
    pub traces_b: Vec<f64>,
    /// Per-power thresholds `tol · dim · max(1, ρ)^k`.
    pub thresholds: Vec<f64>,
    /// max_k |tr(A^k) − tr(B^k)|.
    pub max_abs_diff: f64,
    /// max_k |tr(A^k) − tr(B^k)| / (dim · max(1, ρ)^k); `pass` compares this to `tol`.
    pub max_scaled_diff: f64,
    pub tol: f64,
    pub pass: bool,
    /// Highlighted leading range of powers (for spin pairs: `2s + 1`).
    pub prefix_len: Option<usize>,
    pub prefix_pass: Option<bool>,
}

impl MomentReport {
    pub fn compare(traces_a: Vec<f64>, traces_b: Vec<f64>, dim: usize, radius: f64, tol: f64) -> Self {
        assert_eq!(traces_a.len(), traces_b.len(), "moment vectors must share length");
        let powers: Vec<usize> = (1..=traces_a.len()).collect();
        let scales: Vec<f64> = powers.iter().map(|&k| moment_scale(dim, radius, k)).collect();
        let diffs: Vec<f64> = traces_a.iter().zip(&traces_b).map(|(a, b)| (a - b).abs()).collect();
        let max_abs_diff = diffs.iter().copied().fold(0.0, f64::max);
        let max_scaled_diff = diffs.iter().zip(&scales).map(|(d, s)| d / s).fold(0.0, f64::max);
        MomentReport {
            powers,
            traces_a,
            traces_b,
            thresholds: scales.iter().map(|s| s * tol).collect(),
            max_abs_diff,
            max_scaled_diff,
            tol,
            pass: max_scaled_diff <= tol,
            prefix_len: None,
            prefix_pass: None,
        }
    }

    pub fn with_prefix(mut self, len: usize) -> Self {
        let len = len.min(self.powers.len());
        let ok = (0..len).all(|i| (self.traces_a[i] - self.traces_b[i]).abs() <= self.thresholds[i]);
        self.prefix_len = Some(len);
        self.prefix_pass = Some(ok);
        self
    }

    /// Index (0-based) of the first power whose traces disagree.
    pub fn first_mismatch(&self) -> Option<usize> {
        (0..self.powers.len()).find(|&i| (self.traces_a[i] - self.traces_b[i]).abs() > self.thresholds[i])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsospectralReport {
    pub spectrum_a: Spectrum,
    pub spectrum_b: Spectrum,
    /// Raw ascending eigenvalues behind the clusters.
    pub values_a: Vec<f64>,
    pub values_b: Vec<f64>,
    pub moments: MomentReport,
    /// Newton relation between each matrix's eigenvalues and its own traces.
    pub newton_a: bool,
    pub newton_b: bool,
    pub spectra_equal: bool,
}

impl IsospectralReport {
    pub fn pass(&self) -> bool {
        self.spectra_equal && self.moments.pass
    }
}

pub fn certify_isospectral(a: &CMatrix, b: &CMatrix, kmax: Option<usize>, tol: f64) -> Result<IsospectralReport> {
    certify_isospectral_with(a, b, kmax, tol, &EigSettings::default())
}

pub fn certify_isospectral_with(
    a: &CMatrix,
    b: &CMatrix,
    kmax: Option<usize>,
    tol: f64,
    eig: &EigSettings,
) -> Result<IsospectralReport> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Shape {
            op: "certify_isospectral",
            detail: format!("{}x{} vs {}x{}", a.rows(), a.cols(), b.rows(), b.cols()),
        });
    }
    let dim = a.rows();
    let ea = hermitian_eig_with(a, eig)?;
    let eb = hermitian_eig_with(b, eig)?;
    let spectrum_a = cluster_spectrum(&ea.values, default_cluster_tol(a));
    let spectrum_b = cluster_spectrum(&eb.values, default_cluster_tol(b));
    let spectra_equal = spectrum_a.matches(&spectrum_b, spectrum_a.cluster_tol.max(spectrum_b.cluster_tol));

    let kmax = kmax.unwrap_or(dim);
    let traces_a = moments(a, kmax)?;
    let traces_b = moments(b, kmax)?;
    let newton_a = newton_check(&ea.values, &traces_a, tol);
    let newton_b = newton_check(&eb.values, &traces_b, tol);
    let radius = ea.values.iter().chain(&eb.values).fold(0.0_f64, |r, x| r.max(x.abs()));
    let moments = MomentReport::compare(traces_a, traces_b, dim, radius, tol);

    Ok(IsospectralReport {
        spectrum_a,
        spectrum_b,
        values_a: ea.values,
        values_b: eb.values,
        moments,
        newton_a,
        newton_b,
        spectra_equal,
    })
}

/// Compares the isotropic and cyclic couplings for spin `s`, highlighting
/// the first `2s + 1` moments.
pub fn certify_spin(s: HalfInteger, kmax: Option<usize>, tol: f64, eig: &EigSettings) -> Result<IsospectralReport> {
    let h = build_heisenberg(s);
    let k = build_cyclic(s);
    let mut report = certify_isospectral_with(h.matrix(), k.matrix(), kmax, tol, eig)?;
    report.moments = report.moments.with_prefix(s.dimension());
    Ok(report)
}
