//! Crate-wide error type.

use std::fmt;

/// Errors raised by polynomial construction, geometry, and search operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Modulus outside the supported range `2..=2^31`.
    InvalidModulus { modulus: u64 },
    /// Two polynomials or codes over different moduli were combined.
    ModulusMismatch { left: u64, right: u64 },
    /// `zero_polynomial` was called with `p * q != n`.
    BadFactorization { n: u64, p: u64, q: u64 },
    /// The map is not a bijection; `value` is produced by both `first_x`
    /// and `second_x`.
    NotAPermutation {
        value: u64,
        first_x: u64,
        second_x: u64,
    },
    /// `(f1, f2)` does not define a quadratic permutation polynomial mod `n`.
    NotAQpp { n: u64, f1: u64, f2: u64 },
    /// A representative set does not cover every orbit exactly once.
    InvalidRepresentatives { reason: String },
    /// The refined non-linearity is only defined when `gcd(f1, n) == 1`.
    NonUnitLinearCoefficient { f1: u64, n: u64 },
    /// Parameter entropy is only defined for power-of-two lengths.
    EntropyUndefined { n: u64 },
    /// Index `k` outside the valid range for the maximum-spread family.
    InvalidMsIndex { k: u32, min: u32, max: u32 },
    /// Length is not twice a perfect square.
    NotTwicePerfectSquare { n: u64 },
    /// No irreducible-degree QPP exists for this length.
    NoQppExists { n: u64 },
    /// The spread-factor floor excluded every candidate.
    NoCandidateMeetsFloor { n: u64, floor: u64 },
    /// Searches of degree above two need explicit coefficient ranges.
    CoefficientBoundsRequired { degree: usize },
    /// A residue or parameter was outside its domain.
    OutOfRange { what: &'static str, value: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidModulus { modulus } => {
                write!(f, "modulus {modulus} outside supported range 2..=2^31")
            }
            Error::ModulusMismatch { left, right } => {
                write!(f, "modulus mismatch: {left} vs {right}")
            }
            Error::BadFactorization { n, p, q } => {
                write!(f, "{p} * {q} != {n}")
            }
            Error::NotAPermutation {
                value,
                first_x,
                second_x,
            } => write!(
                f,
                "not a permutation: value {value} produced at x={first_x} and x={second_x}"
            ),
            Error::NotAQpp { n, f1, f2 } => {
                write!(f, "{f1}x + {f2}x^2 is not a permutation polynomial mod {n}")
            }
            Error::InvalidRepresentatives { reason } => {
                write!(f, "invalid representative set: {reason}")
            }
            Error::NonUnitLinearCoefficient { f1, n } => write!(
                f,
                "refined non-linearity undefined: gcd({f1}, {n}) != 1"
            ),
            Error::EntropyUndefined { n } => {
                write!(f, "parameter entropy undefined for non-power-of-two length {n}")
            }
            Error::InvalidMsIndex { k, min, max } => {
                write!(f, "index k={k} outside {min}..={max}")
            }
            Error::NotTwicePerfectSquare { n } => {
                write!(f, "{n} is not of the form 2n^2")
            }
            Error::NoQppExists { n } => {
                write!(f, "no irreducible-degree QPP exists for N={n}")
            }
            Error::NoCandidateMeetsFloor { n, floor } => {
                write!(f, "no candidate for N={n} has spread factor >= {floor}")
            }
            Error::CoefficientBoundsRequired { degree } => write!(
                f,
                "degree-{degree} search requires explicit coefficient bounds"
            ),
            Error::OutOfRange { what, value } => {
                write!(f, "{what} out of range: {value}")
            }
        }
    }
}

impl std::error::Error for Error {}
