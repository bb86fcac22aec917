//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Unrecognized configuration, e.g. an unknown Cartan type label.
    #[error("configuration error: {0}")]
    Config(String),

    /// API misuse: mismatched variable tags, out-of-window alcoves,
    /// exhausted margins.
    #[error("usage error: {0}")]
    Usage(String),

    /// Input outside the mathematical domain of an operation, e.g. a
    /// coweight with a negative coefficient where N[I] is required.
    #[error("domain error: {0}")]
    Domain(String),

    /// A coefficient was requested beyond the truncation bound of a series.
    #[error("out of truncation range: {0}")]
    OutOfRange(String),

    /// A stabilized polynomial did not converge within the allotted number
    /// of translation steps. Never silently guessed.
    #[error("stabilization did not converge after {tried} translates (limit {limit}): {what}")]
    NonConvergence {
        what: String,
        tried: u32,
        limit: u32,
    },

    /// An internal cross-check failed. This signals a convention bug in the
    /// library, not a user error.
    #[error("consistency failure: {0}")]
    Consistency(String),
}
