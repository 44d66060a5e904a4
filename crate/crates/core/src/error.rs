//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration value; the message names the offending key.
    #[error("config: {0}")]
    Config(String),

    /// Unknown ordering name passed to [`crate::ordering::named_ordering`].
    #[error("unknown ordering name {0:?}")]
    UnknownOrdering(String),

    /// The s-ordered family needs its `s` parameter.
    #[error("ordering \"s-ordered\" requires the parameter s")]
    MissingOrderingParameter,

    /// Grid geometry violation (non power-of-two sizes, empty ranges, ...).
    #[error("grid: {0}")]
    Grid(String),

    /// A model cannot be expressed in the representation an operation needs,
    /// e.g. damping with time-dependent quadratic coefficients.
    #[error("representation: {0}")]
    Representation(String),

    /// A factor coefficient diverged during integration. The Riccati equation
    /// for the first coefficient has poles at focal times; propagation must
    /// then be split into slices.
    #[error(
        "factor coefficient w{index} exceeded {threshold:.1e} at t = {t:.6e}; \
         split the propagation into more slices"
    )]
    Blowup {
        index: usize,
        t: f64,
        threshold: f64,
    },

    /// A spectral multiplier amplified the characteristic function beyond the
    /// configured cap, or left it non-decaying at the edge of the dual grid.
    #[error("stability: factor {factor}: {detail}")]
    Stability { factor: String, detail: String },

    /// Initial-state construction impossible for the requested ordering
    /// (non-decaying characteristic function).
    #[error("state: {0}")]
    State(String),

    /// Truncated Fock evolution leaked population into the top levels.
    #[error(
        "fock cutoff too small: top-level population {population:.3e} exceeds {threshold:.1e}"
    )]
    CutoffLeakage { population: f64, threshold: f64 },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    /// Malformed grid file.
    #[error("grid file: {0}")]
    GridFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
