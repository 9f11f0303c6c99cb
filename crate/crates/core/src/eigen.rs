//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the real symmetric Jacobi rotation that zeroes
//! it. Pivots are visited row by row over the strict upper triangle; the
//! iteration stops once the off-diagonal Frobenius norm is at most
//! `tol · ‖M‖_F`.
//!
//! Output is deterministic: eigenvalues ascending (ties keep the sweep
//! order), and every eigenvector is rotated so that its largest-magnitude
//! component (first one on ties) is real and positive.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::matrix::{adjoint, CMatrix, Complex, ONE, ZERO};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigSettings {
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for EigSettings {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, max_sweeps: DEFAULT_MAX_SWEEPS }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigDecomposition {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: CMatrix,
    /// max_k ‖M v_k − λ_k v_k‖.
    pub residual: f64,
    pub sweeps: usize,
}

impl EigDecomposition {
    pub fn dimension(&self) -> usize {
        self.values.len()
    }

    /// `V · diag(values) · V†`.
    pub fn reconstruct(&self) -> CMatrix {
        self.map_spectrum(|x| Complex::new(x, 0.0))
    }

    /// `V · diag(f(λ)) · V†`, the spectral calculus used for gates.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> Complex) -> CMatrix {
        let weights: Vec<Complex> = self.values.iter().map(|&x| f(x)).collect();
        self.weighted_outer(0..self.dimension(), &weights)
    }

    /// Orthogonal projector onto the span of eigenvectors `range`.
    pub fn projector(&self, range: Range<usize>) -> CMatrix {
        let weights = vec![ONE; self.dimension()];
        self.weighted_outer(range, &weights)
    }

    fn weighted_outer(&self, range: Range<usize>, weights: &[Complex]) -> CMatrix {
        let n = self.dimension();
        let v = &self.vectors;
        CMatrix::from_fn(n, n, |i, j| {
            range.clone().map(|k| weights[k] * v.get(i, k) * v.get(j, k).conj()).sum()
        })
    }

    /// ‖V†V − I‖_F.
    pub fn orthonormality_error(&self) -> f64 {
        let g = &adjoint(&self.vectors) * &self.vectors;
        (&g - &CMatrix::identity(self.dimension())).frobenius_norm()
    }
}

pub fn hermitian_eig(m: &CMatrix, tol: f64) -> Result<EigDecomposition> {
    hermitian_eig_with(m, &EigSettings { tol, ..EigSettings::default() })
}

pub fn hermitian_eig_with(m: &CMatrix, settings: &EigSettings) -> Result<EigDecomposition> {
    if !m.is_square() {
        return Err(Error::Shape {
            op: "hermitian_eig",
            detail: format!("{}x{} is not square", m.rows(), m.cols()),
        });
    }
    if !(settings.tol > 0.0) {
        return Err(Error::Domain("eigensolver tolerance must be positive"));
    }
    let n = m.rows();
    let norm = m.frobenius_norm();
    let herm_tol = settings.tol * n as f64 * norm.max(1.0);
    let herm_res = m.hermiticity_residual();
    if herm_res > herm_tol {
        return Err(Error::NotHermitian { residual: herm_res, tol: herm_tol });
    }

    // Working copy: the Hermitian part of m, row-major.
    let mut a: Vec<Complex> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            (m.get(i, j) + m.get(j, i).conj()) * 0.5
        })
        .collect();
    let mut v: Vec<Complex> = CMatrix::identity(n).as_slice().to_vec();

    let threshold = settings.tol * norm;
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a, n);
        if off <= threshold {
            break;
        }
        if sweeps == settings.max_sweeps {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values: Vec<f64> = order.iter().map(|&k| a[k * n + k].re).collect();

    let mut columns: Vec<Vec<Complex>> = order.iter().map(|&k| (0..n).map(|i| v[i * n + k]).collect()).collect();
    for col in &mut columns {
        fix_phase(col);
    }
    let vectors = CMatrix::from_fn(n, n, |i, k| columns[k][i]);

    let mut residual: f64 = 0.0;
    for (k, col) in columns.iter().enumerate() {
        let mv = m.matvec(col)?;
        let r = mv.iter().zip(col).map(|(&x, &y)| (x - y * values[k]).norm_sqr()).sum::<f64>().sqrt();
        residual = residual.max(r);
    }

    Ok(EigDecomposition { values, vectors, residual, sweeps })
}

fn off_diagonal_norm(a: &[Complex], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One complex Jacobi rotation zeroing `a[p][q]`, accumulated into `v`.
fn rotate(a: &mut [Complex], v: &mut [Complex], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let (app, aqq) = (a[p * n + p].re, a[q * n + q].re);

    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
    let g_pp = Complex::new(c, 0.0);
    let g_pq = Complex::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    // A ← A G (columns p, q)
    for k in 0..n {
        let (x, y) = (a[k * n + p], a[k * n + q]);
        a[k * n + p] = x * g_pp + y * g_qp;
        a[k * n + q] = x * g_pq + y * g_qq;
    }
    // A ← G† A (rows p, q)
    for k in 0..n {
        let (x, y) = (a[p * n + k], a[q * n + k]);
        a[p * n + k] = g_pp.conj() * x + g_qp.conj() * y;
        a[q * n + k] = g_pq.conj() * x + g_qq.conj() * y;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p] = Complex::new(app - t * mag, 0.0);
    a[q * n + q] = Complex::new(aqq + t * mag, 0.0);

    for k in 0..n {
        let (x, y) = (v[k * n + p], v[k * n + q]);
        v[k * n + p] = x * g_pp + y * g_qp;
        v[k * n + q] = x * g_pq + y * g_qq;
    }
}

fn fix_phase(col: &mut [Complex]) {
    let mut best = 0;
    for (i, z) in col.iter().enumerate() {
        if z.norm() > col[best].norm() {
            best = i;
        }
    }
    let pivot = col[best];
    let mag = pivot.norm();
    if mag == 0.0 {
        return;
    }
    let rot = pivot.conj() / mag;
    for z in col.iter_mut() {
        *z *= rot;
    }
    col[best] = Complex::new(col[best].re, 0.0);
}

/// ‖M v̂ − λ v̂‖ with `v̂ = v / ‖v‖`.
pub fn verify_eigenpair(m: &CMatrix, v: &[Complex], lambda: f64) -> Result<f64> {
    if !m.is_square() || v.len() != m.rows() {
        return Err(Error::Shape {
            op: "verify_eigenpair",
            detail: format!("{}x{} matrix with length-{} vector", m.rows(), m.cols(), v.len()),
        });
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::Domain("eigenvector must have finite nonzero norm"));
    }
    let unit: Vec<Complex> = v.iter().map(|&z| z / norm).collect();
    let mv = m.matvec(&unit)?;
    Ok(mv.iter().zip(&unit).map(|(&x, &y)| (x - y * lambda).norm_sqr()).sum::<f64>().sqrt())
}
