//! Spin-s operator hierarchy and the two-site couplings built from it.
//!
//! The crate constructs the spin matrices `S1, S2, S3` for any spin
//! `s = 1/2, 1, 3/2, …` (up to `2s = 24`), assembles the isotropic coupling
//! `H = Σ Sj ⊗ Sj` and the cyclic coupling `K = S1⊗S2 + S2⊗S3 + S3⊗S1`,
//! diagonalizes them with an in-repo complex Jacobi solver, and compares
//! their spectra both directly and through power-trace moments. Gates
//! `U(θ) = exp(-iθH)` are synthesized from the eigendecomposition.
//!
//! Everything is dense, double precision and pure: values are immutable
//! once built and every public function is safe to call concurrently.

pub mod eigen;
pub mod error;
pub mod gate;
pub mod hamiltonian;
pub mod matrix;
pub mod spectral;
pub mod spin;

pub use eigen::{hermitian_eig, hermitian_eig_with, verify_eigenpair, EigDecomposition, EigSettings};
pub use error::{Error, Result};
pub use gate::{apply_gate, gate_fidelity, synthesize_gate, Gate, GateSource, StateVector};
pub use hamiltonian::{build_bilinear, build_cyclic, build_heisenberg, Hamiltonian, HamiltonianKind};
pub use matrix::{adjoint, frobenius_distance, kron, matmul, trace, CMatrix, Complex};
pub use spectral::{
    certify_isospectral, certify_isospectral_with, certify_spin, closed_form_spectrum,
    cluster_spectrum, default_cluster_tol, moments, newton_check, Cluster, IsospectralReport,
    MomentReport, Spectrum,
};
pub use spin::{make_spin_triple, verify_su2, AlgebraReport, HalfInteger, SpinTriple};
