use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Broad classification used by front ends to choose an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// The caller supplied something that violates a precondition.
    Invalid,
    /// The request is well formed but exceeds an enumeration cap.
    Infeasible,
    /// An internal invariant failed. Always a bug.
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    ZeroVector(&'static str),
    LoopsPresent,
    Divisible { gcd: u32 },
    NotAPolynomial,
    NonInvertible,
    NotPrime(u64),
    InsufficientPoints { needed: usize, found: usize },
    DuplicateAbscissa(i64),
    InconsistentPoints,
    NonIntegral,
    CapExceeded { what: &'static str, needed: u128, cap: u128 },
    Invalid(String),
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::CapExceeded { .. } => ErrorKind::Infeasible,
            Error::NotAPolynomial | Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Invalid,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => write!(
                f,
                "dimension vector has {found} entries but the quiver has {expected} vertices"
            ),
            Error::ZeroVector(what) => write!(f, "{what} must be nonzero"),
            Error::LoopsPresent => {
                f.write_str("root-theoretic operations require a quiver without loops")
            }
            Error::Divisible { gcd } => write!(
                f,
                "dimension vector is divisible (gcd {gcd}); an indivisible vector is required"
            ),
            Error::NotAPolynomial => f.write_str("not a polynomial: inexact division by the denominator"),
            Error::NonInvertible => f.write_str("series has a non-invertible constant term"),
            Error::NotPrime(q) => write!(f, "{q} is not a prime below 2^15"),
            Error::InsufficientPoints { needed, found } => write!(
                f,
                "interpolation needs at least {needed} points, got {found}"
            ),
            Error::DuplicateAbscissa(x) => write!(f, "duplicate interpolation abscissa {x}"),
            Error::InconsistentPoints => {
                f.write_str("points do not lie on a polynomial within the degree bound")
            }
            Error::NonIntegral => f.write_str("result has non-integer coefficients"),
            Error::CapExceeded { what, needed, cap } => {
                write!(f, "{what} needs {needed} steps, above the cap {cap}")
            }
            Error::Invalid(msg) => f.write_str(msg),
            Error::Internal(msg) => write!(f, "internal invariant failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
