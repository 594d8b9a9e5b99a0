use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Variants carry the offending values so messages name them; callers that
/// need to branch (CLI usage errors vs. runtime failures) can match instead
/// of parsing strings.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// (n,k) outside 1 <= k < n. Rate-1 "codes" (n = k) add no redundancy
    /// and are handled as plain slotted ALOHA, not as a code.
    #[error("invalid code ({n},{k}): need 1 <= k < n")]
    InvalidCode { n: u32, k: u32 },

    /// A probability argument left [0, 1].
    #[error("{name} = {value} is outside [0, 1]")]
    UnitInterval { name: &'static str, value: f64 },

    /// Offered load must be positive where a limiting graph ensemble is
    /// defined (G = 0 has no edges to evolve).
    #[error("offered load G = {0} must be positive")]
    NonPositiveLoad(f64),

    /// The target mean slot degree exceeds the user count, which the
    /// binomial slot-degree model cannot produce.
    #[error("mean slot degree {mean} exceeds the user count M = {m_users}")]
    MeanDegreeExceedsUsers { mean: f64, m_users: usize },

    /// Truncating a degree distribution left no probability mass.
    #[error("truncation at degree {d_max} keeps no probability mass")]
    EmptyTruncation { d_max: usize },

    /// A degree distribution was built from coefficients that do not form
    /// one (negative, non-finite, or all zero).
    #[error("invalid degree coefficients: {0}")]
    InvalidCoefficients(String),

    /// Threshold bisection needs density evolution to converge at the lower
    /// bracket end; it did not, so G* lies below the bracket.
    #[error("density evolution already fails at the lower bracket end G = {0}")]
    BracketLowFails(f64),

    /// Threshold bisection needs density evolution to fail at the upper
    /// bracket end; it converged, so G* lies above the bracket.
    #[error("density evolution still converges at the upper bracket end G = {0}")]
    BracketHighSucceeds(f64),

    /// A frame too short to give one burst n distinct slots.
    #[error("a frame of {n_csa} slots cannot host {n} distinct units per burst")]
    FrameTooSmall { n: u32, n_csa: usize },

    /// Decoder invoked with a code that does not match the splitting the
    /// frame was built with.
    #[error("code ({code_n},{code_k}) does not match the frame splitting ({frame_n},{frame_k})")]
    CodeMismatch {
        code_n: u32,
        code_k: u32,
        frame_n: u32,
        frame_k: u32,
    },

    /// A hand-supplied frame graph that violates the frame invariants.
    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    /// Catch-all for scalar argument validation (iteration counts, grids,
    /// tolerances, ...). The message names the parameter and the constraint.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
