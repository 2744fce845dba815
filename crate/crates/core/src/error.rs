use thiserror::Error;

/// Errors raised by constructors and numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("non-finite value {value} at t = {at}")]
    NonFinite { at: f64, value: f64 },

    #[error("winding sampling too coarse: argument jump {jump:.3} at sample {index}")]
    SamplingTooCoarse { index: usize, jump: f64 },

    #[error("function nearly vanishes on the circle (|f| = {modulus:e} at sample {index})")]
    VanishesOnCircle { index: usize, modulus: f64 },

    #[error("not trigonometrically convex below rho = {rho_max}")]
    NotTrigConvex { rho_max: f64 },

    #[error("cannot write {path}: {reason}")]
    Io { path: String, reason: String },

    #[error("family member {index}: {source}")]
    Member {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
