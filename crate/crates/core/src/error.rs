use thiserror::Error;

/// Errors raised by the numerical and sampling routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} is outside its domain: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error(
        "integration did not converge after {evaluations} evaluations \
         (partial value {partial}, error estimate {error_estimate})"
    )]
    Integration {
        partial: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("result of {what} is not representable as a finite f64")]
    Range { what: &'static str },

    #[error("integer overflow computing {what}")]
    Overflow { what: &'static str },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("LP solver exceeded {limit} pivots")]
    LpIterationLimit { limit: usize },

    #[error("too many discarded samples: {discarded} of {requested}")]
    DataQuality { discarded: u64, requested: u64 },

    #[error("invalid run configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }

    /// True for failures of a numerical procedure (quadrature or LP), as opposed
    /// to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Integration { .. }
                | Error::LpIterationLimit { .. }
                | Error::Range { .. }
                | Error::Overflow { .. }
                | Error::DataQuality { .. }
                | Error::Degenerate(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
