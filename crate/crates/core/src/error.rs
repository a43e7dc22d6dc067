use core::fmt;

use crate::ParameterPoint;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    Domain { op: &'static str, value: f64 },
    /// Quadrature did not reach its tolerance.
    Quadrature { op: &'static str, estimate: f64, error: f64 },
    /// A kernel or objective produced a non-finite value.
    NonFinite { op: &'static str, at: ParameterPoint },
    /// A certified quantity failed its required sign or bound.
    Certification { what: &'static str, value: f64, at: ParameterPoint },
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    /// True for failures of the numerics rather than of a certified claim.
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::Certification { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { op, value } => write!(f, "{op}: argument {value} outside domain"),
            Error::Quadrature { op, estimate, error } => {
                write!(f, "{op}: quadrature not converged (estimate {estimate}, error {error})")
            }
            Error::NonFinite { op, at } => write!(f, "{op}: non-finite value at {at}"),
            Error::Certification { what, value, at } => {
                write!(f, "certification failed: {what} = {value} at {at}")
            }
        }
    }
}

impl core::error::Error for Error {}
