//! Spin labels and the spin-s matrices `S1, S2, S3`.
//!
//! Matrices are written in the eigenbasis of `S3` with the labels running
//! `m = s, s−1, …, −s` down the diagonal and Condon–Shortley phases on the
//! ladder operators, so `S1` and `S3` are real symmetric and `S2` is purely
//! imaginary.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{kron, matmul, trace, CMatrix, Complex, I, ZERO};

/// Largest supported `2s`; the two-site matrices are then 625 × 625.
pub const MAX_TWICE: u32 = 24;

/// A spin label `s` stored exactly as the integer `2s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInteger {
    twice: u32,
}

impl HalfInteger {
    pub fn new(twice: u32) -> Result<Self> {
        if twice == 0 || twice > MAX_TWICE {
            return Err(Error::SpinOutOfRange(twice));
        }
        Ok(Self { twice })
    }

    pub const HALF: HalfInteger = HalfInteger { twice: 1 };

    pub fn twice(self) -> u32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    /// `2s + 1`.
    pub fn dimension(self) -> usize {
        self.twice as usize + 1
    }

    /// `s(s+1)`.
    pub fn casimir(self) -> f64 {
        let s = self.value();
        s * (s + 1.0)
    }

    /// Every supported spin from 1/2 up to and including `self`.
    pub fn up_to(self) -> impl Iterator<Item = HalfInteger> {
        (1..=self.twice).map(|twice| HalfInteger { twice })
    }

    /// Diagonal labels `s, s−1, …, −s` of `S3`.
    pub fn labels(self) -> impl Iterator<Item = f64> {
        let s = self.value();
        (0..self.dimension()).map(move |k| s - k as f64)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInteger {
    type Err = Error;

    /// Accepts `"2"`, `"3/2"` and `"1.5"`.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let invalid = || Error::InvalidSpin(text.to_string());
        let twice: u64 = if let Some((num, den)) = t.split_once('/') {
            let num: u64 = num.trim().parse().map_err(|_| invalid())?;
            let den: u64 = den.trim().parse().map_err(|_| invalid())?;
            if den == 0 || (2 * num) % den != 0 {
                return Err(invalid());
            }
            2 * num / den
        } else if let Ok(n) = t.parse::<u64>() {
            2 * n
        } else {
            let x: f64 = t.parse().map_err(|_| invalid())?;
            let doubled = 2.0 * x;
            if !doubled.is_finite() || doubled < 0.0 || doubled.fract() != 0.0 {
                return Err(invalid());
            }
            doubled as u64
        };
        let twice = u32::try_from(twice).map_err(|_| Error::SpinOutOfRange(u32::MAX))?;
        HalfInteger::new(twice)
    }
}

/// `S1, S2, S3` for one spin.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinTriple {
    s: HalfInteger,
    mats: [CMatrix; 3],
}

impl SpinTriple {
    /// Wraps three arbitrary matrices; only the dimensions are checked, so
    /// [`verify_su2`] can be pointed at deliberately broken input.
    pub fn from_parts(s: HalfInteger, s1: CMatrix, s2: CMatrix, s3: CMatrix) -> Result<Self> {
        let n = s.dimension();
        for m in [&s1, &s2, &s3] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Shape {
                    op: "SpinTriple::from_parts",
                    detail: format!("expected {n}x{n}, got {}x{}", m.rows(), m.cols()),
                });
            }
        }
        Ok(Self { s, mats: [s1, s2, s3] })
    }

    pub fn spin(&self) -> HalfInteger {
        self.s
    }

    pub fn dimension(&self) -> usize {
        self.s.dimension()
    }

    pub fn s1(&self) -> &CMatrix {
        &self.mats[0]
    }

    pub fn s2(&self) -> &CMatrix {
        &self.mats[1]
    }

    pub fn s3(&self) -> &CMatrix {
        &self.mats[2]
    }

    /// Component `j` with `j ∈ {0, 1, 2}` for `S1, S2, S3`.
    pub fn component(&self, j: usize) -> &CMatrix {
        &self.mats[j]
    }

    pub fn components(&self) -> &[CMatrix; 3] {
        &self.mats
    }

    /// Raising operator `S+ = S1 + iS2`.
    pub fn raising(&self) -> CMatrix {
        &self.mats[0] + &self.mats[1].scale(I)
    }

    /// Lowering operator `S− = S1 − iS2`.
    pub fn lowering(&self) -> CMatrix {
        &self.mats[0] - &self.mats[1].scale(I)
    }
}

pub fn make_spin_triple(s: HalfInteger) -> SpinTriple {
    let n = s.dimension();
    let labels: Vec<f64> = s.labels().collect();
    let cas = s.casimir();

    // (S+)_{k-1,k} = √(s(s+1) − m_k(m_k+1)), m_k = s − k
    let mut raise = vec![0.0; n * n];
    for k in 1..n {
        let m = labels[k];
        raise[(k - 1) * n + k] = (cas - m * (m + 1.0)).max(0.0).sqrt();
    }
    let up = |i: usize, j: usize| raise[i * n + j];

    let s1 = CMatrix::from_fn(n, n, |i, j| Complex::new((up(i, j) + up(j, i)) / 2.0, 0.0));
    // (S+ − S−)/(2i) = −i(S+ − S−)/2
    let s2 = CMatrix::from_fn(n, n, |i, j| Complex::new(0.0, -(up(i, j) - up(j, i)) / 2.0));
    let s3 = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex::new(labels[i], 0.0)
        } else {
            ZERO
        }
    });
    SpinTriple { s, mats: [s1, s2, s3] }
}

/// `s(s+1)(2s+1)/3`, the common value of `tr(Sj²)`.
pub fn square_trace_value(s: HalfInteger) -> f64 {
    s.casimir() * s.dimension() as f64 / 3.0
}

/// `tr(M^n)` by repeated multiplication.
pub fn trace_power(m: &CMatrix, n: usize) -> Result<Complex> {
    if n == 0 {
        return Ok(Complex::new(m.rows() as f64, 0.0));
    }
    let mut p = m.clone();
    for _ in 1..n {
        p = matmul(&p, m)?;
    }
    trace(&p)
}

/// Odd powers checked by [`verify_su2`].
pub const ODD_POWERS: [usize; 4] = [1, 3, 5, 7];

/// Residuals of the su(2) identities for one triple.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraReport {
    pub spin: HalfInteger,
    pub dimension: usize,
    /// ‖[S1,S2] − iS3‖, ‖[S2,S3] − iS1‖, ‖[S3,S1] − iS2‖.
    pub commutator: [f64; 3],
    /// ‖S1² + S2² + S3² − s(s+1)I‖.
    pub casimir: f64,
    /// |tr(Sj²) − s(s+1)(2s+1)/3| for j = 1, 2, 3.
    pub square_trace: [f64; 3],
    /// |tr(SjSk)| for the pairs (1,2), (2,3), (1,3).
    pub cross_trace: [f64; 3],
    /// |tr(Sj^n)| for n in [`ODD_POWERS`], one row per power.
    pub odd_power_trace: Vec<(usize, [f64; 3])>,
    /// max |tr((SjSk) ⊗ (SℓSm))| over j ≠ k, ℓ ≠ m.
    pub kron_cross_trace: f64,
    pub tol: f64,
    pub pass: bool,
}

impl AlgebraReport {
    pub fn max_residual(&self) -> f64 {
        self.commutator
            .iter()
            .chain(std::iter::once(&self.casimir))
            .chain(&self.square_trace)
            .chain(&self.cross_trace)
            .chain(self.odd_power_trace.iter().flat_map(|(_, r)| r))
            .chain(std::iter::once(&self.kron_cross_trace))
            .fold(0.0, |a, &b| f64::max(a, b))
    }
}

pub fn verify_su2(t: &SpinTriple, tol: f64) -> AlgebraReport {
    let n = t.dimension();
    let sj = t.components();
    let sq: Vec<CMatrix> = sj.iter().map(|m| m * m).collect();

    let mut commutator = [0.0; 3];
    for (j, r) in commutator.iter_mut().enumerate() {
        let (a, b, c) = (&sj[j], &sj[(j + 1) % 3], &sj[(j + 2) % 3]);
        let comm = a.commutator(b).expect("triple matrices share a shape");
        *r = (&comm - &c.scale(I)).frobenius_norm();
    }

    let total = &(&sq[0] + &sq[1]) + &sq[2];
    let casimir = (&total - &CMatrix::identity(n).scale_real(t.spin().casimir())).frobenius_norm();

    let expected = square_trace_value(t.spin());
    let mut square_trace = [0.0; 3];
    for (j, r) in square_trace.iter_mut().enumerate() {
        *r = (trace(&sq[j]).expect("square") - expected).norm();
    }

    const PAIRS: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];
    let products: Vec<CMatrix> = PAIRS.iter().map(|&(j, k)| &sj[j] * &sj[k]).collect();
    let mut cross_trace = [0.0; 3];
    for (r, p) in cross_trace.iter_mut().zip(&products) {
        *r = trace(p).expect("square").norm();
    }

    let odd_power_trace = ODD_POWERS
        .iter()
        .map(|&p| {
            let mut row = [0.0; 3];
            for (r, m) in row.iter_mut().zip(sj) {
                *r = trace_power(m, p).map(|z| z.norm()).unwrap_or(f64::INFINITY);
            }
            (p, row)
        })
        .collect();

    // All six ordered products SjSk with j ≠ k, paired with each other.
    let ordered: Vec<CMatrix> = (0..3)
        .flat_map(|j| (0..3).filter(move |&k| k != j).map(move |k| (j, k)))
        .map(|(j, k)| &sj[j] * &sj[k])
        .collect();
    let mut kron_cross_trace: f64 = 0.0;
    for a in &ordered {
        for b in &ordered {
            let tr = trace(&kron(a, b)).expect("square").norm();
            kron_cross_trace = kron_cross_trace.max(tr);
        }
    }

    let mut report = AlgebraReport {
        spin: t.spin(),
        dimension: n,
        commutator,
        casimir,
        square_trace,
        cross_trace,
        odd_power_trace,
        kron_cross_trace,
        tol,
        pass: false,
    };
    report.pass = report.max_residual() <= tol * n as f64;
    report
}
