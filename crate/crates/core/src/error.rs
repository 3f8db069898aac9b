//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Configuration or domain data violating one of the model hypotheses.
    /// The message names the violated hypothesis.
    #[error("config error: {0}")]
    Config(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("eikonal solve error: {0}")]
    Eikonal(String),

    #[error("inadmissible state: {0}")]
    Inadmissible(String),

    /// A single incremental minimization ran out of iterations.
    #[error("nonconverged step {step}: residual {residual:.3e} > tol {tol:.3e}")]
    NonconvergedStep { step: usize, residual: f64, tol: f64 },

    /// The outer eikonal/equilibrium loop hit its iteration cap.
    #[error("coupling nonconverged after {iterations} iterations: |dtheta|={dtheta:.3e}, |dy|={dy:.3e}")]
    CouplingNonconverged { iterations: usize, dtheta: f64, dy: f64 },

    #[error("export error: {0}")]
    Export(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
