//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A quantity violated its mathematical domain (non-positive bandwidth,
    /// zero resolution, and the like).
    #[error("domain error: {0}")]
    Domain(String),

    /// A typed value failed its construction/load invariant. `field` is a
    /// path such as `streams[0].framerate`.
    #[error("invariant violation at {field}: {reason}")]
    Invariant { field: String, reason: String },

    /// A processing-latency table does not cover the requested resolution.
    #[error("no processing latency for {resolution}px (profiled range {min}..={max}px)")]
    ProfileMissing { resolution: u32, min: u32, max: u32 },

    /// The exhaustive solver refused an enumeration larger than its cap.
    #[error("{candidates} candidate assignments exceed the enumeration cap {cap}; use the greedy solver")]
    EnumerationCap { candidates: u128, cap: u128 },

    /// Curve fitting needs at least three distinct abscissae.
    #[error("rank-deficient fit: {0} distinct resolutions, need at least 3")]
    RankDeficient(usize),

    /// Caller misuse: bad flag combination, empty input, mismatched ids.
    #[error("usage: {0}")]
    Usage(String),

    /// No feasible assignment exists at the first simulation slot.
    #[error("infeasible at startup: {0}")]
    StartupInfeasible(String),

    /// A text input (CSV, trace, profile) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invariant(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invariant {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
