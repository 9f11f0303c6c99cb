//! Gates `U(θ) = exp(−iθH)` and their action on two-qudit states.
//!
//! The exponential is taken through the eigendecomposition,
//! `U = V · diag(e^{−iθλ_k}) · V†`. Global phase is kept as computed.

use std::f64::consts::PI;

use crate::eigen::{hermitian_eig, EigDecomposition, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::hamiltonian::{Hamiltonian, HamiltonianKind};
use crate::matrix::{adjoint, CMatrix, Complex};
use crate::spin::HalfInteger;

/// Unitarity tolerance per unit dimension.
pub const UNITARY_TOL: f64 = 1e-10;
const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum GateSource {
    Hamiltonian { kind: HamiltonianKind, spin: HalfInteger },
    /// A unitary supplied directly (SWAP, identity, products of gates).
    Explicit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    theta: f64,
    source: GateSource,
    matrix: CMatrix,
}

impl Gate {
    /// Wraps a matrix that is unitary within `1e-10 · dim`.
    pub fn from_unitary(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Shape {
                op: "Gate::from_unitary",
                detail: format!("{}x{} is not square", matrix.rows(), matrix.cols()),
            });
        }
        let gate = Gate { theta: 0.0, source: GateSource::Explicit, matrix };
        let res = gate.unitarity_residual();
        let tol = UNITARY_TOL * gate.dimension() as f64;
        if res > tol {
            return Err(Error::Domain("matrix is not unitary"));
        }
        Ok(gate)
    }

    pub fn identity(n: usize) -> Self {
        Gate { theta: 0.0, source: GateSource::Explicit, matrix: CMatrix::identity(n) }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn source(&self) -> &GateSource {
        &self.source
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    /// ‖U†U − I‖_F.
    pub fn unitarity_residual(&self) -> f64 {
        (&(&adjoint(&self.matrix) * &self.matrix) - &CMatrix::identity(self.dimension())).frobenius_norm()
    }

    /// `self · other` as an explicit gate.
    pub fn then_after(&self, other: &Gate) -> Result<Gate> {
        let matrix = crate::matrix::matmul(&self.matrix, &other.matrix)?;
        Ok(Gate { theta: 0.0, source: GateSource::Explicit, matrix })
    }

    /// `arg tr(U)`: the global phase when `U` is a multiple of the identity.
    pub fn trace_phase(&self) -> f64 {
        self.matrix.diag().into_iter().sum::<Complex>().arg()
    }

    /// Eigenvalues of `U`, sorted by phase in `(−π, π]`.
    ///
    /// `U` is normal, so any real combination of its Hermitian and
    /// anti-Hermitian parts shares its eigenvectors; diagonalizing
    /// `Re U + α Im U` for an irrational `α` and reading off `V†UV` recovers
    /// the eigenvalues. The second value is the largest off-diagonal modulus
    /// left in `V†UV` (zero up to rounding unless two eigenvalues collide
    /// under the projection).
    pub fn eigenvalues(&self) -> Result<(Vec<Complex>, f64)> {
        const ALPHA: f64 = 0.618_033_988_749_894_9;
        let u = &self.matrix;
        let ua = adjoint(u);
        let re = (u + &ua).scale_real(0.5);
        let im = (u - &ua).scale(Complex::new(0.0, -0.5));
        let mix = &re + &im.scale_real(ALPHA);
        let e = hermitian_eig(&mix, DEFAULT_TOL)?;
        let d = &(&adjoint(&e.vectors) * u) * &e.vectors;
        let n = self.dimension();
        let mut off: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off = off.max(d.get(i, j).norm());
                }
            }
        }
        let mut vals = d.diag();
        vals.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        Ok((vals, off))
    }

    /// Eigenphases `arg λ_k(U)` in `(−π, π]`, ascending.
    pub fn eigenphases(&self) -> Result<Vec<f64>> {
        Ok(self.eigenvalues()?.0.iter().map(|z| z.arg()).collect())
    }
}

/// Reduces an angle to `(−π, π]`.
pub fn wrap_phase(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

pub fn synthesize_gate(h: &Hamiltonian, theta: f64) -> Result<Gate> {
    if !theta.is_finite() {
        return Err(Error::NonFinite("gate angle"));
    }
    if !h.is_hermitian() {
        return Err(Error::NotHermitian {
            residual: h.matrix().hermiticity_residual(),
            tol: crate::hamiltonian::HERMITIAN_TOL * h.dimension() as f64,
        });
    }
    let eig = hermitian_eig(h.matrix(), DEFAULT_TOL)?;
    Ok(Gate {
        theta,
        source: GateSource::Hamiltonian { kind: h.kind().clone(), spin: h.spin() },
        matrix: exp_from_eig(&eig, theta),
    })
}

/// `exp(−iθM)` from a Hermitian eigendecomposition of `M`.
pub fn exp_from_eig(eig: &EigDecomposition, theta: f64) -> CMatrix {
    eig.map_spectrum(|x| Complex::from_polar(1.0, -theta * x))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex>,
}

impl StateVector {
    /// Accepts amplitudes whose norm is 1 within `1e-10`.
    pub fn new(amplitudes: Vec<Complex>) -> Result<Self> {
        let norm = l2(&amplitudes);
        if amplitudes.is_empty() || !amplitudes.iter().all(|z| z.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Domain("state vector must have unit norm"));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales to unit norm.
    pub fn normalized(amplitudes: Vec<Complex>) -> Result<Self> {
        let norm = l2(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Domain("cannot normalize a zero or non-finite vector"));
        }
        Self::new(amplitudes.into_iter().map(|z| z / norm).collect())
    }

    /// Basis state `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::Domain("basis index out of range"));
        }
        let mut a = vec![Complex::new(0.0, 0.0); dim];
        a[index] = Complex::new(1.0, 0.0);
        Self::new(a)
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        l2(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }
}

fn l2(v: &[Complex]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn apply_gate(g: &Gate, psi: &StateVector) -> Result<StateVector> {
    if g.dimension() != psi.dimension() {
        return Err(Error::Shape {
            op: "apply_gate",
            detail: format!("{}-dimensional gate on {}-dimensional state", g.dimension(), psi.dimension()),
        });
    }
    let out = g.matrix.matvec(&psi.amplitudes)?;
    let norm = l2(&out);
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Domain("gate did not preserve the norm"));
    }
    Ok(StateVector { amplitudes: out })
}

/// `|tr(A†B)| / dim`: 1 exactly when the gates agree up to a global phase.
pub fn gate_fidelity(a: &Gate, b: &Gate) -> Result<f64> {
    if a.dimension() != b.dimension() {
        return Err(Error::Shape {
            op: "gate_fidelity",
            detail: format!("{} vs {}", a.dimension(), b.dimension()),
        });
    }
    let overlap: Complex = a.matrix.as_slice().iter().zip(b.matrix.as_slice()).map(|(x, y)| x.conj() * y).sum();
    Ok(overlap.norm() / a.dimension() as f64)
}
