//! Exact polynomial arithmetic over the ring Z_N.
//!
//! The central object is [`RingPolynomial`], an immutable polynomial
//! `f(x) = f0 + f1*x + ... + fK*x^K (mod N)` with every coefficient kept in
//! canonical form `[0, N)`. Construction normalizes: coefficients are
//! reduced and trailing zeros trimmed, so the nominal degree is always the
//! largest index with a nonzero stored coefficient.

use serde::Serialize;

use crate::error::Error;
use crate::Result;

pub(crate) mod fit;

/// Largest supported modulus. Keeps every intermediate product inside u64.
pub const MAX_MODULUS: u64 = 1 << 31;

/// A polynomial over Z_N with canonical coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RingPolynomial {
    modulus: u64,
    coefficients: Vec<u64>,
}

impl RingPolynomial {
    /// Builds a polynomial from constant-term-first coefficients,
    /// reducing each modulo `modulus` and trimming trailing zeros.
    pub fn new(modulus: u64, coefficients: &[u64]) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&modulus) {
            return Err(Error::InvalidModulus { modulus });
        }
        let mut reduced: Vec<u64> = coefficients.iter().map(|&c| c % modulus).collect();
        while reduced.len() > 1 && *reduced.last().unwrap() == 0 {
            reduced.pop();
        }
        if reduced.is_empty() {
            reduced.push(0);
        }
        Ok(RingPolynomial {
            modulus,
            coefficients: reduced,
        })
    }

    /// Constant-free quadratic `f1*x + f2*x^2 (mod modulus)`.
    pub fn qpp(modulus: u64, f1: u64, f2: u64) -> Result<Self> {
        Self::new(modulus, &[0, f1, f2])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    /// Nominal degree: the largest index with a nonzero stored coefficient
    /// (0 for constants).
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Coefficient at `index`, zero beyond the stored degree.
    pub fn coefficient(&self, index: usize) -> u64 {
        self.coefficients.get(index).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u64 {
        self.coefficients[0]
    }

    /// Splits off the constant term: `(f - f0, f0)`.
    pub fn without_constant(&self) -> (Self, u64) {
        let f0 = self.coefficients[0];
        let mut coeffs = self.coefficients.clone();
        coeffs[0] = 0;
        (
            Self::new(self.modulus, &coeffs).expect("modulus already validated"),
            f0,
        )
    }

    /// Replaces the constant term with `f0`.
    pub fn with_constant(&self, f0: u64) -> Self {
        let mut coeffs = self.coefficients.clone();
        coeffs[0] = f0 % self.modulus;
        Self::new(self.modulus, &coeffs).expect("modulus already validated")
    }

    /// Coefficient-wise sum modulo N.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        let len = self.coefficients.len().max(other.coefficients.len());
        let coeffs: Vec<u64> = (0..len)
            .map(|i| (self.coefficient(i) + other.coefficient(i)) % self.modulus)
            .collect();
        Self::new(self.modulus, &coeffs)
    }

    /// Evaluates at `x` by Horner's rule, one multiply-add per degree.
    pub fn eval(&self, x: u64) -> u64 {
        debug_assert!(x < self.modulus);
        let n = self.modulus;
        let mut acc = 0u64;
        for &c in self.coefficients.iter().rev() {
            acc = (acc * x + c) % n;
        }
        acc
    }

    /// All evaluations `f(0), f(1), ..., f(N-1)` through a finite-difference
    /// cascade: after seeding the difference table, the inner loop performs
    /// only modular additions.
    pub fn eval_sequence(&self) -> Vec<u64> {
        let n = self.modulus;
        let k = self.degree();
        // Seed the forward differences at 0 from f(0..=k). A polynomial
        // function mod N is N-periodic, so arguments reduce mod N first.
        let mut diffs: Vec<u64> = (0..=k as u64).map(|x| self.eval(x % n)).collect();
        for level in 1..=k {
            for i in (level..=k).rev() {
                diffs[i] = (diffs[i] + n - diffs[i - 1]) % n;
            }
        }
        let mut out = Vec::with_capacity(n as usize);
        out.push(diffs[0]);
        for _ in 1..n {
            for j in 0..k {
                diffs[j] = (diffs[j] + diffs[j + 1]) % n;
            }
            out.push(diffs[0]);
        }
        out
    }
}

/// Expanded coefficients of `m*q * (x+k)(x+k+1)...(x+k+p-1) (mod N)`,
/// a polynomial of nominal degree at most `p` that evaluates to zero at
/// every point of Z_N: among `p` consecutive integers one is divisible by
/// `p`, and `m*q*p == 0 (mod N)`.
pub fn zero_polynomial(n: u64, p: u64, q: u64, m: u64, k: u64) -> Result<RingPolynomial> {
    if !(2..=MAX_MODULUS).contains(&n) {
        return Err(Error::InvalidModulus { modulus: n });
    }
    if p == 0 || q == 0 || p.checked_mul(q) != Some(n) {
        return Err(Error::BadFactorization { n, p, q });
    }
    let m = m % n;
    let k = k % n;
    let mut coeffs: Vec<u64> = vec![1];
    for i in 0..p {
        let root = (k + i) % n;
        let mut next = vec![0u64; coeffs.len() + 1];
        for (j, &c) in coeffs.iter().enumerate() {
            next[j + 1] = (next[j + 1] + c) % n;
            next[j] = (next[j] + c * root) % n;
        }
        coeffs = next;
    }
    let scale = (m * (q % n)) % n;
    for c in &mut coeffs {
        *c = (*c * scale) % n;
    }
    RingPolynomial::new(n, &coeffs)
}

/// True when `a` and `b` evaluate identically at every point of Z_N.
pub fn functional_equal(a: &RingPolynomial, b: &RingPolynomial) -> Result<bool> {
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch {
            left: a.modulus(),
            right: b.modulus(),
        });
    }
    Ok(a.eval_sequence() == b.eval_sequence())
}

/// Functionally equal polynomial of minimal nominal degree.
///
/// For each candidate degree `d` below the input's, solves the interpolation
/// system at `x = 0..=d` over Z_N (enumerating the whole solution coset, so
/// non-unit Vandermonde pivots lose no candidates) and accepts the first
/// degree with a fully verified match. Worst case the input is returned
/// unchanged.
pub fn reduce_degree(poly: &RingPolynomial) -> RingPolynomial {
    let n = poly.modulus();
    let seq = poly.eval_sequence();
    for d in 0..poly.degree() {
        let candidates = match fit::interpolation_candidates(&seq[..=d], n, fit::DEFAULT_CAP) {
            fit::FitSolutions::All(c) => c,
            fit::FitSolutions::Truncated => continue,
        };
        let mut verified: Vec<RingPolynomial> = candidates
            .into_iter()
            .filter_map(|coeffs| {
                let cand = RingPolynomial::new(n, &coeffs).ok()?;
                (cand.eval_sequence() == seq).then_some(cand)
            })
            .collect();
        if !verified.is_empty() {
            // Canonical representative: smallest coefficients from the top
            // degree down, matching the convention used for inverses.
            verified.sort_by(|a, b| {
                let ka: Vec<u64> = a.coefficients().iter().rev().copied().collect();
                let kb: Vec<u64> = b.coefficients().iter().rev().copied().collect();
                ka.cmp(&kb)
            });
            return verified.into_iter().next().unwrap();
        }
    }
    poly.clone()
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
