//! The interleaver-code view of a permutation.
//!
//! A permutation f of Z_N becomes the point set {(x, f(x))} in Z_N^2. All
//! geometric machinery lives here: the L1 and two-dimensional Lee metrics,
//! spread factors, per-point local spreads, spread profiles, translation
//! isometries, and the orbit decomposition they induce. Points are never
//! materialized as a grid; the permutation sequence is the sole
//! representation.

use serde::Serialize;

use crate::error::Error;
use crate::modring::{gcd, RingPolynomial};
use crate::permcheck;
use crate::Result;

/// A length-N permutation together with the polynomial that generated it,
/// when there is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterleaverCode {
    perm: Vec<u64>,
    source: Option<RingPolynomial>,
}

impl InterleaverCode {
    /// Wraps an explicit permutation of `0..len`.
    pub fn from_permutation(perm: Vec<u64>) -> Result<Self> {
        let n = perm.len() as u64;
        if n < 2 {
            return Err(Error::InvalidModulus { modulus: n });
        }
        let mut first_seen: Vec<u64> = vec![u64::MAX; n as usize];
        for (x, &v) in perm.iter().enumerate() {
            if v >= n {
                return Err(Error::OutOfRange {
                    what: "permutation value",
                    value: v,
                });
            }
            if first_seen[v as usize] != u64::MAX {
                return Err(Error::NotAPermutation {
                    value: v,
                    first_x: first_seen[v as usize],
                    second_x: x as u64,
                });
            }
            first_seen[v as usize] = x as u64;
        }
        Ok(InterleaverCode { perm, source: None })
    }

    /// Evaluates a permutation polynomial into its code. Rejects non-PPs
    /// with the colliding output value as evidence.
    pub fn from_polynomial(poly: &RingPolynomial) -> Result<Self> {
        if let Some((value, first_x, second_x)) = permcheck::find_collision(poly) {
            return Err(Error::NotAPermutation {
                value,
                first_x,
                second_x,
            });
        }
        Ok(InterleaverCode {
            perm: poly.eval_sequence(),
            source: Some(poly.clone()),
        })
    }

    pub fn n(&self) -> u64 {
        self.perm.len() as u64
    }

    pub fn perm(&self) -> &[u64] {
        &self.perm
    }

    pub fn source(&self) -> Option<&RingPolynomial> {
        self.source.as_ref()
    }

    pub fn point(&self, x: u64) -> (u64, u64) {
        (x, self.perm[x as usize])
    }
}

/// Circular distance `|a - b|_N = min((a-b) mod N, (b-a) mod N)`.
pub fn lee_delta(n: u64, a: u64, b: u64) -> u64 {
    let d = a.abs_diff(b);
    d.min(n - d)
}

/// Two-dimensional Lee metric on Z_N^2.
pub fn lee_dist(n: u64, p1: (u64, u64), p2: (u64, u64)) -> u64 {
    lee_delta(n, p1.0, p2.0) + lee_delta(n, p1.1, p2.1)
}

/// Manhattan metric, no wraparound.
pub fn l1_dist(p1: (u64, u64), p2: (u64, u64)) -> u64 {
    p1.0.abs_diff(p2.0) + p1.1.abs_diff(p2.1)
}

pub(crate) fn isqrt(v: u64) -> u64 {
    let mut r = (v as f64).sqrt() as u64;
    while r.saturating_mul(r) > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// `floor(sqrt(2N))`: the integer-tightened spread upper bound.
pub fn floor_sqrt_2n(n: u64) -> u64 {
    isqrt(2 * n)
}

/// `ceil(sqrt(2N))`: the local-spread clamp.
pub fn spread_cap(n: u64) -> u64 {
    let s = isqrt(2 * n);
    if s * s == 2 * n {
        s
    } else {
        s + 1
    }
}

/// Spread factor D: minimum Lee distance over distinct code points.
/// Scans x-offsets in increasing order and stops once the offset alone
/// reaches the current best, so the cost is O(N * D).
pub fn spread_d(code: &InterleaverCode) -> u64 {
    let n = code.n();
    let perm = code.perm();
    let mut best = u64::MAX;
    for delta in 1..=n / 2 {
        if delta >= best {
            break;
        }
        for x in 0..n as usize {
            let y = x + delta as usize;
            let y = if y >= n as usize { y - n as usize } else { y };
            let d = delta + lee_delta(n, perm[x], perm[y]);
            if d < best {
                best = d;
            }
        }
    }
    best
}

/// Spread factor D_E: minimum L1 distance over distinct code points.
pub fn spread_de(code: &InterleaverCode) -> u64 {
    let n = code.n() as usize;
    let perm = code.perm();
    let mut best = u64::MAX;
    for delta in 1..n {
        if delta as u64 >= best {
            break;
        }
        for x in 0..n - delta {
            let d = delta as u64 + perm[x].abs_diff(perm[x + delta]);
            if d < best {
                best = d;
            }
        }
    }
    best
}

/// Local spread of one point, clamped at `ceil(sqrt(2N))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalSpread {
    pub value: u64,
    /// True when no other point lies within the clamp, in which case
    /// `value` is the clamp itself.
    pub capped: bool,
}

/// Minimum Lee distance from `p_x` to any other code point, with distances
/// beyond `ceil(sqrt(2N))` clamped to that cap. Only x-offsets that could
/// still beat the running minimum are scanned.
pub fn local_spread(code: &InterleaverCode, x: u64) -> LocalSpread {
    let n = code.n();
    let perm = code.perm();
    let cap = spread_cap(n);
    let fx = perm[x as usize];
    let mut best = u64::MAX;
    let mut delta = 1u64;
    while delta <= n / 2 && delta < best.min(cap + 1) {
        let plus = (x + delta) % n;
        let d = delta + lee_delta(n, fx, perm[plus as usize]);
        if d <= cap && d < best {
            best = d;
        }
        if delta * 2 != n {
            let minus = (x + n - delta) % n;
            let d = delta + lee_delta(n, fx, perm[minus as usize]);
            if d <= cap && d < best {
                best = d;
            }
        }
        delta += 1;
    }
    if best == u64::MAX {
        LocalSpread {
            value: cap,
            capped: true,
        }
    } else {
        LocalSpread {
            value: best,
            capped: false,
        }
    }
}

/// Spread computed from orbit representatives only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpreadEstimate {
    pub value: u64,
    /// True when every representative was clamped; the true spread then
    /// equals or exceeds the cap.
    pub capped: bool,
}

/// Spread factor from a full set of orbit representatives: the minimum of
/// their local spreads. Equals [`spread_d`] whenever the spread is at most
/// the clamp, which holds for every permutation since D <= sqrt(2N).
pub fn spread_via_representatives(code: &InterleaverCode, reps: &[u64]) -> Result<SpreadEstimate> {
    let n = code.n();
    let h = isometry_group(code);
    let zeta = n / h.len() as u64;
    if reps.len() as u64 != zeta {
        return Err(Error::InvalidRepresentatives {
            reason: format!("expected {zeta} representatives, got {}", reps.len()),
        });
    }
    // Orbits are exactly the classes of x mod zeta, so a valid set covers
    // each residue class exactly once.
    let mut seen = vec![false; zeta as usize];
    for &r in reps {
        if r >= n {
            return Err(Error::InvalidRepresentatives {
                reason: format!("representative {r} out of range"),
            });
        }
        let class = (r % zeta) as usize;
        if seen[class] {
            return Err(Error::InvalidRepresentatives {
                reason: format!("orbit class {class} covered twice"),
            });
        }
        seen[class] = true;
    }
    let mut value = u64::MAX;
    let mut all_capped = true;
    for &r in reps {
        let ls = local_spread(code, r);
        all_capped &= ls.capped;
        value = value.min(ls.value);
    }
    Ok(SpreadEstimate {
        value,
        capped: all_capped,
    })
}

/// Translation isometries of a QPP interleaver-code in closed form:
/// `k0(i) = N*i / gcd(2*q2, N)` and `k1(i) = q1*k0 - q2*k0^2 (mod N)`.
pub fn qpp_orbit_translations(n: u64, q1: u64, q2: u64) -> Result<Vec<(u64, u64)>> {
    if !permcheck::is_qpp_fast(n, q1, q2) {
        return Err(Error::NotAQpp { n, f1: q1, f2: q2 });
    }
    Ok(qpp_translations_unchecked(n, q1, q2))
}

fn qpp_translations_unchecked(n: u64, q1: u64, q2: u64) -> Vec<(u64, u64)> {
    let g = gcd(2 * q2 % n, n);
    let step = n / g;
    (0..g)
        .map(|i| {
            let k0 = step * i;
            let sq = k0 * k0 % n;
            let k1 = (q1 * k0 % n + n - q2 * sq % n) % n;
            (k0, k1)
        })
        .collect()
}

/// All translations `(k0, k1)` mapping the code onto itself, by direct
/// verification: for each k0 the difference `perm[x+k0] - perm[x]` must be
/// constant. Works for arbitrary permutations; polynomial sources of degree
/// at most two dispatch to the closed form.
pub fn isometry_group(code: &InterleaverCode) -> Vec<(u64, u64)> {
    if let Some(poly) = code.source() {
        if poly.degree() <= 2 {
            // The constant term is a vertical translation of the whole code
            // and does not change its isometries.
            return qpp_translations_unchecked(
                poly.modulus(),
                poly.coefficient(1),
                poly.coefficient(2),
            );
        }
    }
    isometry_group_generic(code)
}

/// The O(N^2) translation scan, with no polynomial shortcuts. Kept public
/// as the oracle that the closed-form path is validated against.
pub fn isometry_group_generic(code: &InterleaverCode) -> Vec<(u64, u64)> {
    let n = code.n();
    let perm = code.perm();
    let mut out = Vec::new();
    for k0 in 0..n {
        let k1 = (perm[k0 as usize] + n - perm[0]) % n;
        let mut ok = true;
        for x in 1..n as usize {
            let shifted = (x + k0 as usize) % n as usize;
            if perm[shifted] != (perm[x] + k1) % n {
                ok = false;
                break;
            }
        }
        if ok {
            out.push((k0, k1));
        }
    }
    out
}

/// Partition of a code into isometry orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    /// The translation subgroup H inducing the partition.
    pub translations: Vec<(u64, u64)>,
    /// One point set per orbit, each of size |H|.
    pub orbits: Vec<Vec<(u64, u64)>>,
    /// One x-coordinate per orbit: 0..zeta-1.
    pub representatives: Vec<u64>,
}

/// Decomposes the code under its isometry group. The k0-projections of H
/// form the subgroup of multiples of zeta = N/|H|, so orbits are exactly
/// the residue classes of x mod zeta and x = 0..zeta-1 is a complete set
/// of representatives.
pub fn orbits(code: &InterleaverCode) -> OrbitDecomposition {
    let n = code.n();
    let translations = isometry_group(code);
    let zeta = n / translations.len() as u64;
    debug_assert_eq!(n % translations.len() as u64, 0);
    let orbits: Vec<Vec<(u64, u64)>> = (0..zeta)
        .map(|r| {
            (0..n / zeta)
                .map(|i| {
                    let x = r + i * zeta;
                    code.point(x)
                })
                .collect()
        })
        .collect();
    OrbitDecomposition {
        translations,
        orbits,
        representatives: (0..zeta).collect(),
    }
}

/// Lower bound `2N / gcd(2*q2, N)` on the Lee distance between distinct
/// points of one orbit of a QPP interleaver-code.
pub fn intra_orbit_bound(n: u64, q2: u64) -> u64 {
    2 * n / gcd(2 * q2 % n, n)
}

/// Multiplicity of each Lee distance `1..=floor(sqrt(2N))` from `p_x` to
/// the rest of the code.
pub fn spread_profile(code: &InterleaverCode, x: u64) -> Vec<(u64, u64)> {
    let n = code.n();
    let perm = code.perm();
    let maxd = floor_sqrt_2n(n);
    let fx = perm[x as usize];
    let mut counts = vec![0u64; maxd as usize];
    let mut tally = |other: u64| {
        let d = lee_delta(n, x, other) + lee_delta(n, fx, perm[other as usize]);
        if d >= 1 && d <= maxd {
            counts[(d - 1) as usize] += 1;
        }
    };
    for delta in 1..maxd.min(n / 2 + 1) {
        tally((x + delta) % n);
        if delta * 2 != n {
            tally((x + n - delta) % n);
        }
    }
    (1..=maxd).map(|d| (d, counts[(d - 1) as usize])).collect()
}
