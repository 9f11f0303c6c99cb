use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch in {op}: {detail}")]
    Shape { op: &'static str, detail: String },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid spin {0:?}: expected \"n\", \"n/2\" or a decimal multiple of 0.5")]
    InvalidSpin(String),

    #[error("spin with 2s = {0} is outside the supported range 1..=24")]
    SpinOutOfRange(u32),

    #[error("matrix is not Hermitian: ‖M − M†‖ = {residual:e} exceeds {tol:e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("imaginary part {imag:e} of tr(M^{power}) exceeds {tol:e}")]
    HermiticityDrift { power: usize, imag: f64, tol: f64 },

    #[error("tr(M^{power}) overflowed f64 range")]
    Overflow { power: usize },

    #[error("domain error: {0}")]
    Domain(&'static str),
}

impl Error {
    /// True for failures of the numerical kernels (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian { .. } | Error::NoConvergence { .. } | Error::HermiticityDrift { .. }
                | Error::Overflow { .. }
        )
    }
}
