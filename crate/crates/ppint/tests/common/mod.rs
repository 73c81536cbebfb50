//! Brute-force oracles shared by the integration suites. These stay
//! independent of the library's windowed and representative-based paths:
//! every pair is visited, nothing is pruned.

// Each integration test binary compiles its own copy and uses a subset.
#![allow(dead_code)]

use ppint::geometry::{l1_dist, lee_dist, InterleaverCode};

/// O(N^2) spread factor under the Lee metric.
pub fn brute_spread_lee(code: &InterleaverCode) -> u64 {
    let n = code.n();
    let mut best = u64::MAX;
    for i in 0..n {
        for j in (i + 1)..n {
            best = best.min(lee_dist(n, code.point(i), code.point(j)));
        }
    }
    best
}

/// O(N^2) spread factor under the L1 metric.
pub fn brute_spread_l1(code: &InterleaverCode) -> u64 {
    let n = code.n();
    let mut best = u64::MAX;
    for i in 0..n {
        for j in (i + 1)..n {
            best = best.min(l1_dist(code.point(i), code.point(j)));
        }
    }
    best
}

/// Checks that an orbit decomposition partitions the code into equal-size
/// parts whose union is the whole point set.
pub fn assert_orbit_partition(code: &InterleaverCode) {
    let dec = ppint::geometry::orbits(code);
    let n = code.n() as usize;
    let size = dec.orbits[0].len();
    let mut seen = vec![false; n];
    for orbit in &dec.orbits {
        assert_eq!(orbit.len(), size, "orbits must share one size");
        for &(x, y) in orbit {
            assert_eq!(code.perm()[x as usize], y);
            assert!(!seen[x as usize], "point {x} covered twice");
            seen[x as usize] = true;
        }
    }
    assert!(seen.iter().all(|&s| s), "orbits must cover the code");
    assert_eq!(dec.orbits.len() * dec.translations.len(), n);
}
