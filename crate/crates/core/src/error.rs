//! Crate-wide error type.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A single failed axiom or structural check, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Which axiom failed ("coassociativity", "instability", ...).
    pub axiom: String,
    /// Basis element or location witnessing the failure.
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at {}", self.axiom, self.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Scalars from different fields were mixed.
    FieldMismatch,
    /// Matrix or block dimensions do not line up.
    Shape(String),
    /// A map required to be injective has a kernel.
    NotInjective(String),
    /// A linear system required to be solvable is not.
    Unsolvable(String),
    /// Structural validation failed; all violations are listed.
    Validation(Vec<Violation>),
    /// A dimension budget was exceeded. Never silently truncated.
    Budget {
        context: String,
        needed: usize,
        limit: usize,
    },
    /// The operation is defined but deliberately not supported here.
    Unsupported(String),
}

impl Error {
    pub fn shape(msg: &str) -> Self {
        Error::Shape(String::from(msg))
    }

    pub fn unsupported(msg: &str) -> Self {
        Error::Unsupported(String::from(msg))
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldMismatch => write!(f, "mixed scalars from different fields"),
            Error::Shape(m) => write!(f, "shape mismatch: {m}"),
            Error::NotInjective(m) => write!(f, "map is not injective: {m}"),
            Error::Unsolvable(m) => write!(f, "linear system unsolvable: {m}"),
            Error::Validation(vs) => {
                write!(f, "validation failed ({} violations):", vs.len())?;
                for v in vs {
                    write!(f, "\n  {v}")?;
                }
                Ok(())
            }
            Error::Budget {
                context,
                needed,
                limit,
            } => write!(
                f,
                "dimension budget exceeded in {context}: needed {needed}, limit {limit}"
            ),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
