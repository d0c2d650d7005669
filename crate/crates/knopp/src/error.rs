//! Crate-wide error type.

/// Errors shared by the analysis modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parameter `{name}` invalid: {reason}")]
    Parameter { name: &'static str, reason: String },

    #[error("ideal `{model}` expects a {expected}-indexed set, got a {got}-indexed one")]
    ArityMismatch {
        model: String,
        expected: &'static str,
        got: &'static str,
    },

    /// The window is not ideal-bounded: the index set where the norm exceeds
    /// `bound` is not small under `model`.
    #[error("sequence is not ideal-bounded under `{model}` (bound {bound})")]
    UnboundedSequence { model: String, bound: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{what} must be nonempty")]
    EmptyInput { what: &'static str },

    #[error("unknown generator `{name}`")]
    UnknownGenerator { name: String },

    #[error("cannot parse ideal spec `{spec}`: {reason}")]
    IdealSpec { spec: String, reason: String },

    #[error("{path}:{line}: {reason}")]
    Csv {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("double window incomplete: {reason}")]
    IncompleteWindow { reason: String },

    #[error("linear program too large: {vars} variables, {constraints} constraints")]
    LpTooLarge { vars: usize, constraints: usize },

    /// Point is outside the convex hull; carries the separating halfspace
    /// `(normal, offset)` with `<normal, p> < offset <= <normal, s>` for all
    /// hull generators `s`.
    #[error("point lies outside the convex hull")]
    NotInHull { normal: Vec<f64>, offset: f64 },

    #[error("Euler transform overflow at row {row} (r = {r})")]
    EulerOverflow { row: usize, r: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parameter(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Parameter {
            name,
            reason: reason.into(),
        }
    }
}
