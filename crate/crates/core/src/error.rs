use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the evaluation routines.
///
/// The variants are grouped so that callers can map them onto coarse
/// outcomes: input problems (`Domain`, `Parameter`, `Sector`, `Pole`,
/// `Degenerate`, `Condition`, `Contour`) versus numerical trouble
/// (`Accuracy`, `Divergence`, `Probe`, `Inconclusive`).
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("sector violation: arg(-z) = {arg:.6} outside ({min:.6}, {max:.6})")]
    Sector { arg: f64, min: f64, max: f64 },

    #[error("pole at {location} ({family})")]
    Pole { location: Complex64, family: String },

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("condition {name} violated: {detail}")]
    Condition { name: String, detail: String },

    #[error("contour construction failed: {reason}")]
    Contour {
        reason: String,
        conflicts: Vec<(Complex64, Complex64)>,
    },

    #[error("accuracy failure: estimated error {estimate:.3e} (best value {best})")]
    Accuracy { best: Complex64, estimate: f64 },

    #[error("integral tail does not decay: last tail contribution {tail:.3e} (value so far {value})")]
    Divergence { value: Complex64, tail: f64 },

    #[error("probe failure: {0}")]
    Probe(String),

    #[error("inconclusive winding number {value:.4}")]
    Inconclusive { value: f64 },
}

impl Error {
    /// True for errors caused by the inputs rather than by numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Parameter(_)
                | Error::Sector { .. }
                | Error::Pole { .. }
                | Error::Degenerate(_)
                | Error::Condition { .. }
                | Error::Contour { .. }
        )
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Parameter(_) => "parameter",
            Error::Sector { .. } => "sector",
            Error::Pole { .. } => "pole",
            Error::Degenerate(_) => "degenerate",
            Error::Condition { .. } => "condition",
            Error::Contour { .. } => "contour",
            Error::Accuracy { .. } => "accuracy",
            Error::Divergence { .. } => "divergence",
            Error::Probe(_) => "probe",
            Error::Inconclusive { .. } => "inconclusive",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
