use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("({tau}, {sigma}) is not coprime: gcd = {gcd}")]
    NotCoprime { tau: u64, sigma: u64, gcd: u64 },

    #[error("a resonant pair needs tau > sigma >= 1, got ({tau}, {sigma})")]
    Ordering { tau: u64, sigma: u64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("numerical structure: {0}")]
    NumericalStructure(String),

    #[error("relative energy drift {drift:.3e} exceeds tolerance {tol:.3e}; reduce the step size")]
    EnergyDrift { drift: f64, tol: f64 },
}

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "{name} must be finite, got {value}"
        )))
    }
}
