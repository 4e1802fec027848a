use rug::Rational;
use thiserror::Error;

/// Errors raised by the exact and numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: Rational },

    #[error("exponent of prime {prime} is not an integer: {exponent}")]
    NonIntegralExponent { prime: String, exponent: Rational },

    #[error("value is not a positive integer")]
    NonIntegerValue,

    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("parameter {name} must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: Rational },

    #[error("solution tuple has an irrational component ({0}); use the numerical check")]
    NonRationalTuple(&'static str),

    #[error("domain violation: |{name}| must be < 1, got {name} = {value}")]
    DomainViolation { name: &'static str, value: Rational },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse {input:?} as a rational: {reason}")]
    Parse { input: String, reason: &'static str },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_precision(bits: u32) -> Result<()> {
    if bits < 64 {
        return Err(Error::InvalidArgument(format!(
            "precision must be at least 64 bits, got {bits}"
        )));
    }
    Ok(())
}
