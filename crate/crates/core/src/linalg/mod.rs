//! Exact linear algebra over F2 and Q.
//!
//! F2 matrices are bit-packed (64 entries per word); Q matrices hold reduced
//! arbitrary-precision rationals. Row reduction is deterministic: pivots are
//! chosen at the first nonzero column, then the lowest row index, so every
//! derived basis is reproducible byte-for-byte.

pub mod graded;
pub mod matrix;
pub mod system;

pub use matrix::Matrix;

use alloc::string::String;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The coefficient field of a computation session.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    /// The prime field with two elements; scalars are bits.
    F2,
    /// The rationals; scalars are reduced fractions of big integers.
    Q,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::F2 => write!(f, "F2"),
            Field::Q => write!(f, "Q"),
        }
    }
}

/// An exact scalar in the session field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    F2(bool),
    Q(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::F2(_) => Field::F2,
            Scalar::Q(_) => Field::Q,
        }
    }

    pub fn zero(field: Field) -> Self {
        match field {
            Field::F2 => Scalar::F2(false),
            Field::Q => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(field: Field) -> Self {
        match field {
            Field::F2 => Scalar::F2(true),
            Field::Q => Scalar::Q(BigRational::one()),
        }
    }

    /// The image of an integer in the field.
    pub fn from_int(field: Field, n: i64) -> Self {
        match field {
            Field::F2 => Scalar::F2(n.rem_euclid(2) == 1),
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// Exact rational from a numerator/denominator pair. Reduced on entry.
    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::F2(b) => !b,
            Scalar::Q(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::F2(b) => *b,
            Scalar::Q(r) => r.is_one(),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::F2(b) => Scalar::F2(*b),
            Scalar::Q(r) => Scalar::Q(-r.clone()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::F2(a), Scalar::F2(b)) => Scalar::F2(a ^ b),
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::F2(a), Scalar::F2(b)) => Scalar::F2(a & b),
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }

    /// Deterministic text form; rationals print as `num/den` (denominator
    /// positive, fraction reduced), integers without the denominator.
    pub fn render(&self) -> String {
        use alloc::format;
        match self {
            Scalar::F2(b) => String::from(if *b { "1" } else { "0" }),
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Parse a scalar from the `num/den` text form used in input files.
pub fn parse_scalar(field: Field, text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    match field {
        Field::Q => Some(Scalar::Q(BigRational::new(num, den))),
        Field::F2 => {
            // Denominator must be odd so the fraction is defined mod 2.
            if (&den % 2u8).is_zero() {
                return None;
            }
            Some(Scalar::F2((num.abs() % 2u8).is_one()))
        }
    }
}
