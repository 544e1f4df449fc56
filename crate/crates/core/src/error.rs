use thiserror::Error;

/// Errors raised by field construction, spectrum computation and the
/// verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field degree {m} out of range (supported: {min}..={max})")]
    DegreeOutOfRange { m: u32, min: u32, max: u32 },

    #[error("modulus {modulus:#x} does not have degree {m}")]
    ModulusDegree { m: u32, modulus: u64 },

    #[error("modulus {modulus:#x} is reducible over GF(2)")]
    Reducible { modulus: u64 },

    #[error("modulus {modulus:#x} is irreducible but not primitive (order of X is {order})")]
    NotPrimitive { modulus: u64, order: u64 },

    #[error("{value} is not invertible modulo {modulus} (gcd = {gcd})")]
    NotCoprime { value: u64, modulus: u64, gcd: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("resource guard: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    /// Short machine-readable tag, used in the CLI's JSON error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegreeOutOfRange { .. } => "range",
            Error::ModulusDegree { .. } | Error::Reducible { .. } | Error::NotPrimitive { .. } => {
                "rejected_modulus"
            }
            Error::NotCoprime { .. } => "not_coprime",
            Error::Domain(_) => "domain",
            Error::Unsupported(_) => "unsupported",
            Error::Resource(_) => "resource",
        }
    }
}
