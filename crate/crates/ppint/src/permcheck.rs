//! Deciding whether a polynomial permutes Z_N.
//!
//! Two routes are provided and cross-validated in the test suite: an
//! occupancy-bitmap brute force that works for any polynomial, and an
//! algebraic per-prime-power criterion for quadratics. Degree three and
//! above always go through the brute-force oracle.

use rayon::prelude::*;
use serde::Serialize;

use crate::modring::{reduce_degree, RingPolynomial};

/// Which route produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMethod {
    BruteForce,
    AlgebraicQuadratic,
}

/// Outcome of a permutation check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationVerdict {
    pub is_permutation: bool,
    pub method: CheckMethod,
    /// Set only when the map is a permutation.
    pub irreducible_degree: Option<bool>,
}

/// Prime-power factorization `(p, e, p^e)` by trial division.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32, u64)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0u32;
            let mut pe = 1u64;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
                pe *= p;
            }
            out.push((p, e, pe));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1, n));
    }
    out
}

/// First duplicated output of the evaluation map, if any.
pub fn find_collision(poly: &RingPolynomial) -> Option<(u64, u64, u64)> {
    let n = poly.modulus();
    let mut first_seen: Vec<u64> = vec![u64::MAX; n as usize];
    for (x, v) in poly.eval_sequence().into_iter().enumerate() {
        let slot = &mut first_seen[v as usize];
        if *slot != u64::MAX {
            return Some((v, *slot, x as u64));
        }
        *slot = x as u64;
    }
    None
}

/// Brute-force bijection check: does the evaluation map hit every residue
/// exactly once?
pub fn is_permutation(poly: &RingPolynomial) -> bool {
    find_collision(poly).is_none()
}

fn f1_condition(p: u64, e: u32, f1: u64, f2: u64) -> bool {
    if p == 2 {
        if e == 1 {
            (f1 + f2) % 2 == 1
        } else {
            f1 % 2 == 1
        }
    } else {
        !f1.is_multiple_of(p)
    }
}

fn f2_condition(p: u64, e: u32, f2: u64) -> bool {
    if p == 2 {
        e == 1 || f2.is_multiple_of(2)
    } else {
        f2.is_multiple_of(p)
    }
}

/// Algebraic QPP criterion.
///
/// `f1*x + f2*x^2` permutes Z_N exactly when it permutes Z_{p^e} for each
/// prime power of N: mod 2 the two values must differ (`f1 + f2` odd); mod
/// 2^e with e >= 2 the map permutes iff `f1` is odd and `f2` even; mod an
/// odd prime power it permutes iff `p | f2` and `p` does not divide `f1`.
/// The test suite enforces exhaustive agreement with [`is_permutation`]
/// for every pair up to N = 512.
pub fn is_qpp_fast(n: u64, f1: u64, f2: u64) -> bool {
    debug_assert!(n >= 2);
    factorize(n)
        .into_iter()
        .all(|(p, e, _)| f1_condition(p, e, f1, f2) && f2_condition(p, e, f2))
}

/// True when no functionally equal polynomial of lower nominal degree
/// exists. Quadratics use the orbit-count shortcut `2*f2 != 0 (mod N)`;
/// other degrees fall back to [`reduce_degree`].
pub fn is_irreducible_degree(poly: &RingPolynomial) -> bool {
    match poly.degree() {
        0 | 1 => true,
        2 => !(2 * poly.coefficient(2)).is_multiple_of(poly.modulus()),
        _ => reduce_degree(poly).degree() == poly.degree(),
    }
}

/// Full verdict for one polynomial: quadratic inputs (after ignoring the
/// constant term, a pure relabeling) take the algebraic route.
pub fn verdict(poly: &RingPolynomial) -> PermutationVerdict {
    let n = poly.modulus();
    let (is_perm, method) = if poly.degree() <= 2 {
        (
            is_qpp_fast(n, poly.coefficient(1), poly.coefficient(2)),
            CheckMethod::AlgebraicQuadratic,
        )
    } else {
        (is_permutation(poly), CheckMethod::BruteForce)
    };
    PermutationVerdict {
        is_permutation: is_perm,
        method,
        irreducible_degree: is_perm.then(|| is_irreducible_degree(poly)),
    }
}

/// Smallest-f2-then-smallest-f1 witness of an irreducible-degree QPP for
/// length `n`, or `None` when no such QPP exists.
pub fn exists_irreducible_qpp(n: u64) -> Option<(u64, u64)> {
    if n < 2 {
        return None;
    }
    let pps = factorize(n);
    for f2 in 1..n {
        if 2 * f2 % n == 0 {
            continue;
        }
        if !pps.iter().all(|&(p, e, _)| f2_condition(p, e, f2)) {
            continue;
        }
        for f1 in 0..n {
            if pps.iter().all(|&(p, e, _)| f1_condition(p, e, f1, f2)) {
                return Some((f1, f2));
            }
        }
    }
    None
}

/// Number of lengths in `2..=n_max` admitting an irreducible-degree QPP.
pub fn scan_existence(n_max: u64) -> u64 {
    (2..=n_max)
        .into_par_iter()
        .filter(|&n| exists_irreducible_qpp(n).is_some())
        .count() as u64
}

/// All lengths in `2..=n_max` admitting an irreducible-degree QPP.
pub fn admissible_lengths(n_max: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (2..=n_max)
        .into_par_iter()
        .filter(|&n| exists_irreducible_qpp(n).is_some())
        .collect();
    out.sort_unstable();
    out
}

pub(crate) fn unit_count(n: u64) -> u64 {
    // Number of residues satisfying the f1-side conditions; independent of
    // f2 because the only coupling (N == 2 mod 4) fixes a parity class of
    // the same size.
    factorize(n)
        .into_iter()
        .map(|(p, e, pe)| {
            if p == 2 {
                if e == 1 {
                    1
                } else {
                    pe / 2
                }
            } else {
                pe - pe / p
            }
        })
        .product()
}
