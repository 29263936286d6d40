use thiserror::Error;

/// Errors produced by the simulator library.
#[derive(Debug, Error)]
pub enum Error {
    /// A model parameter violates its invariant. `rule` names the violated constraint.
    #[error("{rule}: {reason}")]
    InvalidParameter { rule: &'static str, reason: String },

    #[error("parameter file line {line}: {reason}")]
    ParamFile { line: usize, reason: String },

    #[error("quadratic form is not Hermitian under the Bogoliubov metric (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("eigensolver did not converge on a {dim}x{dim} block")]
    NonConvergence { dim: usize },

    /// Complex quasi-particle frequencies: the normal phase is dynamically unstable.
    #[error("dynamical instability: largest growth rate {growth_rate:.3e}")]
    DynamicalInstability { growth_rate: f64 },

    #[error("eigenvalues could not be paired as +/- omega (unmatched {value:.6e})")]
    UnpairedEigenvalue { value: f64 },

    #[error("indefinite but stable quadratic form is not supported")]
    IndefiniteForm,

    #[error("quasi-momentum {q} outside the half zone (0, 1/2]")]
    QuasiMomentumOutOfRange { q: f64 },

    #[error("soft polariton mode could not be identified: {0}")]
    SoftModeIdentification(String),

    #[error("occupation requested for non-positive frequency {0}")]
    NonPositiveFrequency(f64),

    #[error("eta grid value {0} outside [0, 1)")]
    EtaGrid(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
