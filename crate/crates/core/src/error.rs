use core::fmt;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain(&'static str),
    /// Adaptive quadrature or an iterative solver ran out of budget.
    NonConvergence {
        /// Best estimate reached before giving up.
        value: f64,
        /// Error estimate attached to `value`.
        error: f64,
    },
    /// The function has the same sign at both ends of the bracket.
    NotBracketed {
        /// Lower end of the last bracket tried.
        lo: f64,
        /// Upper end of the last bracket tried.
        hi: f64,
    },
    /// The integrand of a functional is not integrable for this profile.
    SingularProfile(&'static str),
    /// A point configuration cannot be evaluated.
    DegenerateConfig(&'static str),
    /// Two point masses share a position where distinct ones are required.
    CoincidentPoints {
        /// First particle index.
        i: usize,
        /// Second particle index.
        j: usize,
    },
    /// External data (table, overlay curve) is malformed.
    MalformedInput(alloc::string::String),
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NonConvergence { value, error } => {
                write!(f, "no convergence (estimate {value:e}, error {error:e})")
            }
            Error::NotBracketed { lo, hi } => {
                write!(f, "root not bracketed in [{lo:e}, {hi:e}]")
            }
            Error::SingularProfile(msg) => write!(f, "singular profile: {msg}"),
            Error::DegenerateConfig(msg) => write!(f, "degenerate configuration: {msg}"),
            Error::CoincidentPoints { i, j } => {
                write!(f, "particles {i} and {j} share the same position")
            }
            Error::MalformedInput(msg) => write!(f, "malformed input: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
