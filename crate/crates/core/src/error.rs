//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by validation and numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("trace is not 1 (got {0})")]
    NotUnitTrace(f64),

    #[error("not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPSD(f64),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("matrix is not unitary (max deviation of U\u{2020}U from identity {0:.3e})")]
    NotUnitary(f64),

    #[error("degenerate spectrum: eigenvalue {0:.3e} is not strictly positive")]
    DegenerateSpectrum(f64),

    #[error("target state is inside the class (S = {0} bits >= 1)")]
    TargetInsideClass(f64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("no sample satisfied the {0} filter")]
    EmptyAcceptance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
