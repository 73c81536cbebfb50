//! Closed-form constructions and spread bounds.
//!
//! The centerpiece is the infinite family of maximum-spread quadratics
//! `(2^k - 1)x + 2^(k+1)x^2 (mod 2^(2k-1))`, which meets the spread upper
//! bound sqrt(2N) exactly. Alongside it: the upper bounds ub_D and ub_DE,
//! and oracle-driven enumeration of all maximum-spread linear interleavers
//! for lengths of the form 2n^2.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::geometry::{self, isqrt, InterleaverCode};
use crate::modring::{gcd, RingPolynomial};
use crate::Result;

/// One member of the maximum-spread quadratic family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MsQpp {
    pub k: u32,
    pub poly: RingPolynomial,
    /// For k <= 3 the quadratic collapses to a linear function.
    pub reducible: bool,
}

/// `f(x) = (2^k - 1)x + 2^(k+1)x^2 (mod 2^(2k-1))`.
pub fn ms_qpp(k: u32) -> Result<MsQpp> {
    if !(1..=16).contains(&k) {
        return Err(Error::InvalidMsIndex { k, min: 1, max: 16 });
    }
    let n = 1u64 << (2 * k - 1);
    let f1 = ((1u64 << k) - 1) % n;
    let f2 = (1u64 << (k + 1)) % n;
    let poly = RingPolynomial::new(n, &[0, f1, f2])?;
    let reducible = poly.degree() < 2 || 2 * poly.coefficient(2) % n == 0;
    Ok(MsQpp { k, poly, reducible })
}

/// Spread upper bound `(sqrt(2N), floor(sqrt(2N)))`.
pub fn ub_d(n: u64) -> (f64, u64) {
    (((2 * n) as f64).sqrt(), geometry::floor_sqrt_2n(n))
}

/// Which constructive family an ub_DE value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UbDeFamily {
    /// `N = 2p^2`: bound `2(N-1)/(sqrt(2N)-1)`.
    TwoPSquared,
    /// `N = p^2 + (p-1)^2`: bound `2(N-1)/(sqrt(2N-1)-1)`.
    CenteredSquares,
}

/// Constructive upper bound on D_E where one of the two packing families
/// applies; the N=4 value 3 is known by inspection. The families never
/// overlap: 2p^2 is even while p^2+(p-1)^2 is odd.
pub fn ub_de(n: u64) -> Option<(f64, Option<UbDeFamily>)> {
    if n == 4 {
        return Some((3.0, None));
    }
    if n < 8 {
        return None;
    }
    let p = isqrt(n / 2);
    if p >= 2 && 2 * p * p == n {
        let value = 2.0 * (n - 1) as f64 / (((2 * n) as f64).sqrt() - 1.0);
        return Some((value, Some(UbDeFamily::TwoPSquared)));
    }
    let p = isqrt(2 * n - 1).div_ceil(2);
    if p >= 2 && p * p + (p - 1) * (p - 1) == n {
        let value = 2.0 * (n - 1) as f64 / (((2 * n - 1) as f64).sqrt() - 1.0);
        return Some((value, Some(UbDeFamily::CenteredSquares)));
    }
    None
}

/// Bundle of both bounds for one length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub ub_d: f64,
    pub ub_d_int: u64,
    pub ub_de: Option<f64>,
    pub ub_de_family: Option<UbDeFamily>,
}

pub fn bounds(n: u64) -> BoundReport {
    let (ub, ub_int) = ub_d(n);
    let de = ub_de(n);
    BoundReport {
        n,
        ub_d: ub,
        ub_d_int: ub_int,
        ub_de: de.map(|(v, _)| v),
        ub_de_family: de.and_then(|(_, f)| f),
    }
}

/// All multipliers f1 of maximum-spread linear interleavers
/// `f1 * x (mod N = 2n^2)`, found by direct spread measurement.
pub fn linear_ms_enumerate(n: u64) -> Result<Vec<u64>> {
    let m = isqrt(n / 2);
    if m == 0 || 2 * m * m != n {
        return Err(Error::NotTwicePerfectSquare { n });
    }
    let target = geometry::floor_sqrt_2n(n);
    let mut out: Vec<u64> = (1..n)
        .into_par_iter()
        .filter(|&f1| {
            if gcd(f1, n) != 1 {
                return false;
            }
            let poly = RingPolynomial::new(n, &[0, f1]).expect("valid modulus");
            let code = InterleaverCode::from_polynomial(&poly).expect("unit multiplier");
            geometry::spread_d(&code) == target
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}
