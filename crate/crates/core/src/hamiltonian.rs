//! Two-site couplings on `C^(2s+1) ⊗ C^(2s+1)`.
//!
//! The left Kronecker factor acts on the first site. All Hamiltonians are
//! dimensionless (the overall energy scale is divided out).

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{kron, CMatrix, Complex};
use crate::spin::{make_spin_triple, HalfInteger, SpinTriple};

/// Hermiticity tolerance (per unit dimension) used for the stored flag.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum HamiltonianKind {
    /// `S1⊗S1 + S2⊗S2 + S3⊗S3`.
    HeisenbergH,
    /// `S1⊗S2 + S2⊗S3 + S3⊗S1`.
    CyclicK,
    /// `Σ_jk c[j][k] · Sj⊗Sk`.
    Bilinear([[f64; 3]; 3]),
}

impl HamiltonianKind {
    pub fn coefficients(&self) -> [[f64; 3]; 3] {
        match self {
            HamiltonianKind::HeisenbergH => [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            HamiltonianKind::CyclicK => [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]],
            HamiltonianKind::Bilinear(c) => *c,
        }
    }

    /// Short tag: `H`, `K` or `bilinear`.
    pub fn tag(&self) -> &'static str {
        match self {
            HamiltonianKind::HeisenbergH => "H",
            HamiltonianKind::CyclicK => "K",
            HamiltonianKind::Bilinear(_) => "bilinear",
        }
    }
}

impl fmt::Display for HamiltonianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    kind: HamiltonianKind,
    spin: HalfInteger,
    matrix: CMatrix,
    hermitian: bool,
}

impl Hamiltonian {
    pub fn kind(&self) -> &HamiltonianKind {
        &self.kind
    }

    pub fn spin(&self) -> HalfInteger {
        self.spin
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// `(2s+1)²`.
    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    /// Whether the matrix passed the Hermiticity check at construction.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }
}

fn assemble(triple: &SpinTriple, coeffs: &[[f64; 3]; 3]) -> CMatrix {
    let n = triple.dimension() * triple.dimension();
    let mut out = CMatrix::zeros(n, n);
    for (j, row) in coeffs.iter().enumerate() {
        for (k, &c) in row.iter().enumerate() {
            if c != 0.0 {
                let term = kron(triple.component(j), triple.component(k));
                out = &out + &term.scale(Complex::new(c, 0.0));
            }
        }
    }
    out
}

fn build(s: HalfInteger, kind: HamiltonianKind) -> Hamiltonian {
    let triple = make_spin_triple(s);
    let matrix = assemble(&triple, &kind.coefficients());
    let hermitian = matrix.is_hermitian(HERMITIAN_TOL);
    Hamiltonian { kind, spin: s, matrix, hermitian }
}

pub fn build_heisenberg(s: HalfInteger) -> Hamiltonian {
    build(s, HamiltonianKind::HeisenbergH)
}

pub fn build_cyclic(s: HalfInteger) -> Hamiltonian {
    build(s, HamiltonianKind::CyclicK)
}

/// General bilinear coupling. The result is Hermitian exactly when the
/// coefficient matrix is real, which it always is here, but the flag is
/// computed from the assembled matrix rather than assumed.
pub fn build_bilinear(s: HalfInteger, coeffs: [[f64; 3]; 3]) -> Result<Hamiltonian> {
    if !coeffs.iter().flatten().all(|c| c.is_finite()) {
        return Err(Error::NonFinite("bilinear coefficients"));
    }
    Ok(build(s, HamiltonianKind::Bilinear(coeffs)))
}

/// Total `S_k` on the two sites: `Sk⊗I + I⊗Sk`.
pub fn total_component(triple: &SpinTriple, k: usize) -> CMatrix {
    let id = CMatrix::identity(triple.dimension());
    &kron(triple.component(k), &id) + &kron(&id, triple.component(k))
}
