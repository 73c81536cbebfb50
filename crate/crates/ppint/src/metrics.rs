//! Interleaver quality metrics.
//!
//! The degree of non-linearity zeta counts the orbits of an
//! interleaver-code under its translation isometries; the shift-invariance
//! epsilon = N/zeta is the orbit size. The refined degree zeta' counts the
//! distinct nonlinear disturbance residues over one representative period,
//! and the composite scores are Omega = ln(D) * zeta and
//! Omega' = ln(D) * zeta'. Corner merit measures how far the code stays
//! from the top-right corner, which matters for uninterleaved dual
//! termination.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::geometry::{self, InterleaverCode};
use crate::modring::{gcd, RingPolynomial};
use crate::Result;

/// Flags for values that were clamped during computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub struct CappedFlags {
    /// Set when every orbit representative hit the local-spread clamp, so
    /// the reported D is the cap rather than an observed pair distance.
    pub spread_d: bool,
}

/// Bundled evaluation of one interleaver.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub n: u64,
    pub coefficients: Vec<u64>,
    pub d: u64,
    pub d_e: u64,
    pub zeta: u64,
    pub epsilon: u64,
    /// None when `gcd(f1, N) != 1`, where the refinement is undefined.
    pub zeta_refined: Option<u64>,
    pub omega: f64,
    /// None exactly when `zeta_refined` is.
    pub omega_refined: Option<f64>,
    pub corner_merit: u64,
    /// None for lengths that are not powers of two.
    pub entropy_bits: Option<f64>,
    pub capped: CappedFlags,
}

/// Number of distinct orbits. Polynomial sources of degree at most two use
/// `zeta = N / gcd(2*f2, N)`; anything else counts translations directly.
pub fn zeta(code: &InterleaverCode) -> u64 {
    let n = code.n();
    if let Some(poly) = code.source() {
        if poly.degree() <= 2 {
            return n / gcd(2 * poly.coefficient(2) % n, n);
        }
    }
    n / geometry::isometry_group_generic(code).len() as u64
}

/// Orbit size `epsilon = N / zeta`.
pub fn epsilon(code: &InterleaverCode) -> u64 {
    code.n() / zeta(code)
}

/// Refined degree of non-linearity: the number of distinct values of
/// `f(x) - f1*x - f0 (mod N)` over one representative period `x = 0..zeta`.
/// For a quadratic this is the disturbance set `{f2 * x^2 mod N}`.
/// Requires the linear part to be a unit; the non-unit case has no
/// agreed definition and is rejected.
pub fn zeta_refined(poly: &RingPolynomial) -> Result<u64> {
    let n = poly.modulus();
    let f1 = poly.coefficient(1);
    if gcd(f1, n) != 1 {
        return Err(Error::NonUnitLinearCoefficient { f1, n });
    }
    let z = if poly.degree() <= 2 {
        n / gcd(2 * poly.coefficient(2) % n, n)
    } else {
        let code = InterleaverCode::from_polynomial(poly)?;
        zeta(&code)
    };
    let f0 = poly.constant_term();
    let mut values: Vec<u64> = (0..z)
        .map(|x| {
            let linear = (f1 * x + f0) % n;
            (poly.eval(x) + n - linear) % n
        })
        .collect();
    values.sort_unstable();
    values.dedup();
    Ok(values.len() as u64)
}

/// `Omega = ln(D) * zeta`.
pub fn omega(d: u64, zeta: u64) -> f64 {
    (d as f64).ln() * zeta as f64
}

/// `Omega' = ln(D) * zeta'`.
pub fn omega_refined(d: u64, zeta_refined: u64) -> f64 {
    (d as f64).ln() * zeta_refined as f64
}

/// Corner merit: minimum L1 distance from the code to `(N-1, N-1)`.
pub fn corner_merit(code: &InterleaverCode) -> u64 {
    let n = code.n();
    let perm = code.perm();
    (0..n as usize)
        .map(|x| (n - 1 - x as u64) + perm[x].abs_diff(n - 1))
        .min()
        .expect("code is nonempty")
}

fn corner_merit_shifted(perm: &[u64], n: u64, f0: u64) -> u64 {
    (0..n as usize)
        .map(|x| {
            let y = (perm[x] + f0) % n;
            (n - 1 - x as u64) + y.abs_diff(n - 1)
        })
        .min()
        .expect("code is nonempty")
}

/// Constant term maximizing the corner merit of `f(x) + f0`, ties broken by
/// the smallest `f0`. Returns `(f0, merit)`.
pub fn optimize_constant(poly: &RingPolynomial) -> Result<(u64, u64)> {
    let code = InterleaverCode::from_polynomial(poly)?;
    let n = code.n();
    let perm = code.perm();
    let best = (0..n)
        .into_par_iter()
        .map(|f0| (corner_merit_shifted(perm, n, f0), f0))
        .reduce_with(|a, b| {
            // Max merit, then min f0: (merit, f0) with inverted f0 order.
            if (b.0, std::cmp::Reverse(b.1)) > (a.0, std::cmp::Reverse(a.1)) {
                b
            } else {
                a
            }
        })
        .expect("n >= 2");
    Ok((best.1, best.0))
}

/// Coefficient entropy `deg(f) * log2(N/2)` bits; the counting argument
/// behind it only works for power-of-two lengths.
pub fn parameter_entropy(poly: &RingPolynomial) -> Result<f64> {
    let n = poly.modulus();
    if n & (n - 1) != 0 {
        return Err(Error::EntropyUndefined { n });
    }
    Ok(poly.degree() as f64 * ((n / 2) as f64).log2())
}

/// Full metric bundle for a permutation polynomial.
pub fn report(poly: &RingPolynomial) -> Result<MetricsReport> {
    let code = InterleaverCode::from_polynomial(poly)?;
    let n = code.n();
    let z = zeta(&code);
    let reps: Vec<u64> = (0..z).collect();
    let est = geometry::spread_via_representatives(&code, &reps)?;
    let zr = match zeta_refined(poly) {
        Ok(v) => Some(v),
        Err(Error::NonUnitLinearCoefficient { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(MetricsReport {
        n,
        coefficients: poly.coefficients().to_vec(),
        d: est.value,
        d_e: geometry::spread_de(&code),
        zeta: z,
        epsilon: n / z,
        zeta_refined: zr,
        omega: omega(est.value, z),
        omega_refined: zr.map(|zr| omega_refined(est.value, zr)),
        corner_merit: corner_merit(&code),
        entropy_bits: parameter_entropy(poly).ok(),
        capped: CappedFlags {
            spread_d: est.capped,
        },
    })
}
