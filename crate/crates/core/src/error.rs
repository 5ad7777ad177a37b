use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the domain of a function (zero separation, negative width, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A unit-norm vector failed its normalization check.
    #[error("{what} is not normalized: squared norm = {norm_sq} (deviation {deviation:.3e})")]
    Normalization {
        what: &'static str,
        norm_sq: f64,
        deviation: f64,
    },

    /// A scalar fell outside its admissible range.
    #[error("`{key}` = {value} is out of range: {bound}")]
    OutOfRange {
        key: &'static str,
        value: f64,
        bound: &'static str,
    },

    #[error("configuration error: {0}")]
    Config(String),

    /// Adaptive integration could not make progress.
    #[error(
        "step size underflow at t = {t}: h = {h:.3e} after {accepted} accepted / {rejected} rejected steps \
         (generator norm {generator_norm:.3e}; the problem is likely stiff on this scale)"
    )]
    StepUnderflow {
        t: f64,
        h: f64,
        accepted: usize,
        rejected: usize,
        generator_norm: f64,
    },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is not Hermitian: max |A - A^H| = {0:.3e}")]
    NotHermitian(f64),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code for this error class: 1 validation, 2 numerical, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::Normalization { .. }
            | Error::OutOfRange { .. }
            | Error::Config(_) => 1,
            Error::StepUnderflow { .. }
            | Error::NoConvergence { .. }
            | Error::NotHermitian(_)
            | Error::InvalidState(_) => 2,
            Error::Io { .. } => 3,
        }
    }
}
