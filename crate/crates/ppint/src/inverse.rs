//! Inverse permutations and inverse polynomials.
//!
//! Every permutation has an inverse permutation; only some permutation
//! polynomials have an inverse that is again a polynomial of low degree.
//! `fit_polynomial_inverse` decides the question degree by degree: it
//! enumerates the complete solution coset of the interpolation system at
//! x = 0..=d and verifies each candidate at all N points, so "no verified
//! candidate" proves nonexistence at that degree (unless the coset was
//! truncated, which is reported as undecided).

use serde::Serialize;

use crate::error::Error;
use crate::geometry::InterleaverCode;
use crate::modring::{fit, RingPolynomial};
use crate::Result;

/// Inverse data for one permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InverseResult {
    pub inverse_perm: Vec<u64>,
    pub inverse_poly: Option<RingPolynomial>,
    pub fitted_degree: Option<usize>,
}

impl InverseResult {
    /// Inverts `poly` and fits an inverse polynomial up to `max_degree`;
    /// `inverse_poly` stays `None` when none exists (or the fit was
    /// undecided at some degree).
    pub fn compute(poly: &RingPolynomial, max_degree: usize) -> Result<Self> {
        let code = InterleaverCode::from_polynomial(poly)?;
        let inverse_perm = inverse_permutation(&code);
        let inverse_poly = match fit_polynomial_inverse(poly, max_degree)? {
            PolynomialFit::Found(p) => Some(p),
            PolynomialFit::NotFound | PolynomialFit::Undecided { .. } => None,
        };
        Ok(InverseResult {
            inverse_perm,
            fitted_degree: inverse_poly.as_ref().map(RingPolynomial::degree),
            inverse_poly,
        })
    }
}

/// Outcome of a polynomial-inverse fit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolynomialFit {
    Found(RingPolynomial),
    NotFound,
    /// The solution coset at this degree exceeded the enumeration cap.
    Undecided { degree: usize },
}

/// The unique inverse permutation.
pub fn inverse_permutation(code: &InterleaverCode) -> Vec<u64> {
    let n = code.n() as usize;
    let mut inv = vec![0u64; n];
    for (x, &v) in code.perm().iter().enumerate() {
        inv[v as usize] = x as u64;
    }
    inv
}

/// Lowest-degree polynomial realizing the inverse permutation of `poly`,
/// searching degrees `1..=max_degree`. Among functionally equal coefficient
/// forms the one with the smallest coefficients from the top degree down is
/// returned.
pub fn fit_polynomial_inverse(poly: &RingPolynomial, max_degree: usize) -> Result<PolynomialFit> {
    let code = InterleaverCode::from_polynomial(poly)?;
    let inv = inverse_permutation(&code);
    let n = poly.modulus();
    for d in 1..=max_degree {
        if d >= inv.len() {
            break;
        }
        let candidates = match fit::interpolation_candidates(&inv[..=d], n, fit::DEFAULT_CAP) {
            fit::FitSolutions::All(c) => c,
            fit::FitSolutions::Truncated => return Ok(PolynomialFit::Undecided { degree: d }),
        };
        let mut verified: Vec<RingPolynomial> = candidates
            .into_iter()
            .filter_map(|coeffs| {
                let cand = RingPolynomial::new(n, &coeffs).ok()?;
                (cand.eval_sequence() == inv).then_some(cand)
            })
            .collect();
        if !verified.is_empty() {
            verified.sort_by(|a, b| {
                let ka: Vec<u64> = a.coefficients().iter().rev().copied().collect();
                let kb: Vec<u64> = b.coefficients().iter().rev().copied().collect();
                ka.cmp(&kb)
            });
            return Ok(PolynomialFit::Found(verified.into_iter().next().unwrap()));
        }
    }
    Ok(PolynomialFit::NotFound)
}

/// Closed-form inverse of the maximum-spread family member
/// `(2^k - 1)x + 2^(k+1)x^2 (mod 2^(2k-1))`:
/// `(-2^k - 1)x + 2^(k+1)x^2`, valid in the strict QPP regime `k >= 4`.
pub fn ms_inverse(k: u32) -> Result<RingPolynomial> {
    if !(4..=16).contains(&k) {
        return Err(Error::InvalidMsIndex { k, min: 4, max: 16 });
    }
    let n = 1u64 << (2 * k - 1);
    let c1 = n - (1u64 << k) - 1;
    let c2 = 1u64 << (k + 1);
    RingPolynomial::new(n, &[0, c1, c2])
}

/// Inverse of the shifted polynomial `g(x) = f(x) + f0`, given the inverse
/// of the constant-free `f`: expands `h(y) = f_inv(y - f0)`.
pub fn shifted_inverse(inv: &RingPolynomial, f0: u64) -> RingPolynomial {
    let n = inv.modulus();
    let shift = (n - f0 % n) % n;
    // Accumulate sum of c_j * (y + shift)^j.
    let mut result = vec![inv.constant_term()];
    let mut power = vec![1u64]; // (y + shift)^j
    for j in 1..=inv.degree() {
        let mut next = vec![0u64; power.len() + 1];
        for (i, &c) in power.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % n;
            next[i] = (next[i] + c * shift) % n;
        }
        power = next;
        let cj = inv.coefficient(j);
        if result.len() < power.len() {
            result.resize(power.len(), 0);
        }
        for (i, &c) in power.iter().enumerate() {
            result[i] = (result[i] + cj * c) % n;
        }
    }
    RingPolynomial::new(n, &result).expect("modulus already validated")
}
