use core::fmt;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A series that must be divisible by `t^e` has a non-zero coefficient
    /// below `e`. This can only come from a bug in a determinant routine.
    Divisibility { exponent: usize, index: usize },
    /// A brute-force enumeration or a matrix would exceed the configured cap.
    CapExceeded { what: &'static str, size: u128, cap: u128 },
    /// Parameters violate a documented precondition.
    InvalidParams(&'static str),
    /// The Hilbert series did not reach a non-positive coefficient within the
    /// order cap, so there is no finite degree of regularity.
    NoFiniteRegDegree { order_cap: usize },
    /// No `(a, dc)` pair of the hybrid search produced a finite cost.
    NoAdmissibleParams,
    /// Field size is not a prime below 2^31.
    NotPrime(u64),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Divisibility { exponent, index } => write!(
                f,
                "series is not divisible by t^{exponent}: coefficient {index} is non-zero"
            ),
            Error::CapExceeded { what, size, cap } => {
                write!(f, "{what} of size {size} exceeds the cap {cap}")
            }
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::NoFiniteRegDegree { order_cap } => write!(
                f,
                "Hilbert series has no non-positive coefficient below order {order_cap}"
            ),
            Error::NoAdmissibleParams => {
                write!(f, "no admissible (a, dc) pair gives a finite degree of regularity")
            }
            Error::NotPrime(q) => write!(f, "{q} is not a prime below 2^31"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::error::Error for Error {}
