//! Error type shared by all solvers and geometry constructors.

use thiserror::Error;

/// Library-wide error enum.
///
/// Variants are grouped by failure class so that callers (notably the CLI)
/// can map them onto exit codes: input problems vs. solver problems.
#[derive(Debug, Error)]
pub enum Error {
    /// A shape violates its invariants (degenerate polygon, nonpositive length, ...).
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    /// Voxelization resolution too low to place any interior cell center.
    #[error("invalid resolution: {0}")]
    InvalidResolution(String),

    /// A caller-supplied argument is out of range or missing.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A grid would exceed the configured cell budget.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// An iterative solver failed to reach its tolerance within budget.
    #[error("solver did not converge: {what} (residual {residual:.3e})")]
    Convergence { what: String, residual: f64 },

    /// Multiplier sweep produced only empty or only full sets.
    #[error("degenerate isoperimetric profile: {0}")]
    DegenerateProfile(String),

    /// The sampled profile cannot certify the constrained small-volume gap.
    #[error("insufficient profile: {0}")]
    InsufficientProfile(String),

    /// An internal invariant was violated; indicates a bug, not bad input.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    /// I/O or parse failure on shape/config files.
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by bad input rather than solver behavior.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidShape(_)
                | Error::InvalidResolution(_)
                | Error::InvalidArgument(_)
                | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
