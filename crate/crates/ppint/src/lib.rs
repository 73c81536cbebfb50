//! Permutation-polynomial interleavers over Z_N.
//!
//! A library and CLI toolkit for constructing, validating, and evaluating
//! the interleavers generated by permutation polynomials over integer
//! rings: spread factors under the Lee and L1 metrics, isometry orbits and
//! non-linearity degrees, composite quality scores, polynomial inverses,
//! the maximum-spread quadratic family, and exhaustive deterministic
//! searches over coefficient spaces.
//!
//! Start with [`RingPolynomial`] for the algebra and
//! [`InterleaverCode`] for the geometry:
//!
//! ```
//! use ppint::{RingPolynomial, InterleaverCode};
//! use ppint::geometry::spread_d;
//!
//! let f = RingPolynomial::qpp(128, 15, 32)?;
//! let code = InterleaverCode::from_polynomial(&f)?;
//! assert_eq!(spread_d(&code), 16); // meets the sqrt(2N) bound
//! # Ok::<(), ppint::Error>(())
//! ```
//!
//! The narrative guide in `book/` walks through each concept; its code
//! samples are mirrored under [`book`] so they run as doc-tests.

pub mod cli;
pub mod designs;
pub mod error;
pub mod geometry;
pub mod inverse;
pub mod metrics;
pub mod modring;
pub mod permcheck;
pub mod search;

pub mod book;

pub use error::Error;
pub use geometry::InterleaverCode;
pub use modring::RingPolynomial;

pub type Result<T> = std::result::Result<T, Error>;
