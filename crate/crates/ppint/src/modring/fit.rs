//! Interpolation over Z_N at the points x = 0..=d.
//!
//! Z_N is not a field, so the Vandermonde system can have zero, one, or many
//! solutions. We solve it completely: reduce modulo each prime power of N,
//! eliminate with minimal-valuation pivoting, enumerate every branch of the
//! back-substitution, and recombine by CRT. Callers verify each candidate
//! against the full function, so a complete candidate set turns "no verified
//! candidate" into a proof of nonexistence at that degree.

use crate::permcheck::factorize;

/// Bound on how many candidate coefficient vectors a single fit may produce.
pub(crate) const DEFAULT_CAP: usize = 4096;

pub(crate) enum FitSolutions {
    /// Every solution of the interpolation system, possibly empty.
    All(Vec<Vec<u64>>),
    /// The branch count exceeded the cap; existence is undecided.
    Truncated,
}

/// All coefficient vectors `c[0..=d]` with `sum c_j x^j == values[x] (mod n)`
/// for `x = 0..values.len()-1`.
pub(crate) fn interpolation_candidates(values: &[u64], n: u64, cap: usize) -> FitSolutions {
    let mut combined: Vec<Vec<u64>> = vec![Vec::new()];
    let mut moduli_done = 1u64;
    for (p, e, pe) in factorize(n) {
        let local = match solve_prime_power(values, p, e, pe, cap) {
            Some(sols) => sols,
            None => return FitSolutions::Truncated,
        };
        if local.is_empty() {
            return FitSolutions::All(Vec::new());
        }
        if combined.len().saturating_mul(local.len()) > cap {
            return FitSolutions::Truncated;
        }
        // CRT-merge this prime power into the partial solutions.
        let mut next = Vec::with_capacity(combined.len() * local.len());
        for base in &combined {
            for sol in &local {
                let merged: Vec<u64> = sol
                    .iter()
                    .enumerate()
                    .map(|(j, &b)| {
                        let a = base.get(j).copied().unwrap_or(0);
                        crt_pair(a, moduli_done, b, pe)
                    })
                    .collect();
                next.push(merged);
            }
        }
        combined = next;
        moduli_done *= pe;
    }
    FitSolutions::All(combined)
}

/// Combines `x == a (mod m)` and `x == b (mod q)` for coprime m, q.
fn crt_pair(a: u64, m: u64, b: u64, q: u64) -> u64 {
    if m == 1 {
        return b % q;
    }
    let m_inv = mod_inverse(m % q, q);
    let diff = (b + q - a % q) % q;
    a + m * ((diff * m_inv) % q)
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // Extended Euclid; callers guarantee gcd(a, m) == 1.
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

fn valuation(mut x: u64, p: u64, e: u32) -> u32 {
    if x == 0 {
        return e;
    }
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Solves the Vandermonde system modulo `pe = p^e`, returning every solution
/// or `None` when the branch count would exceed `cap`.
fn solve_prime_power(values: &[u64], p: u64, e: u32, pe: u64, cap: usize) -> Option<Vec<Vec<u64>>> {
    let vars = values.len();
    let mut rows: Vec<Vec<u64>> = (0..vars as u64)
        .map(|x| {
            let mut row = Vec::with_capacity(vars + 1);
            let mut pow = 1u64 % pe;
            for _ in 0..vars {
                row.push(pow);
                pow = pow * (x % pe) % pe;
            }
            row.push(values[x as usize] % pe);
            row
        })
        .collect();

    // Forward elimination with minimal-valuation pivoting, restricted to
    // rows that are not yet pivots: valuations in a column are totally
    // ordered, so the minimal pivot divides every entry it must clear.
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (col, row)
    let mut row_is_pivot = vec![false; vars];
    let mut col_has_pivot = vec![false; vars];
    for col in 0..vars {
        let pivot_row = (0..vars)
            .filter(|&r| !row_is_pivot[r] && rows[r][col] != 0)
            .min_by_key(|&r| valuation(rows[r][col], p, e));
        let Some(pr) = pivot_row else { continue };
        pivots.push((col, pr));
        row_is_pivot[pr] = true;
        col_has_pivot[col] = true;
        let v = valuation(rows[pr][col], p, e);
        let pv = p.pow(v);
        let unit_inv = mod_inverse(rows[pr][col] / pv % pe, pe);
        let pivot_vals = rows[pr].clone();
        for r in 0..vars {
            if row_is_pivot[r] || rows[r][col] == 0 {
                continue;
            }
            let lambda = rows[r][col] / pv % pe * unit_inv % pe;
            for (cell, &pivot_cell) in rows[r].iter_mut().zip(&pivot_vals) {
                let sub = lambda * pivot_cell % pe;
                *cell = (*cell + pe - sub) % pe;
            }
        }
    }

    // Non-pivot rows now involve only free columns; pivot row i involves its
    // own column, later pivot columns, and free columns.
    let free_cols: Vec<usize> = (0..vars).filter(|&c| !col_has_pivot[c]).collect();
    let mut branch_bound = 1usize;
    for _ in &free_cols {
        branch_bound = branch_bound.saturating_mul(pe as usize);
        if branch_bound > cap {
            return None;
        }
    }

    let mut solutions: Vec<Vec<u64>> = Vec::new();
    let mut free_assign = vec![0u64; free_cols.len()];
    loop {
        let mut assignment = vec![0u64; vars];
        for (fi, &fc) in free_cols.iter().enumerate() {
            assignment[fc] = free_assign[fi];
        }
        let consistent = (0..vars).filter(|&r| !row_is_pivot[r]).all(|r| {
            let mut acc = rows[r][vars];
            for &fc in &free_cols {
                let sub = rows[r][fc] * assignment[fc] % pe;
                acc = (acc + pe - sub) % pe;
            }
            acc == 0
        });
        if consistent
            && !substitute(
                &rows,
                &pivots,
                pivots.len(),
                &mut assignment,
                p,
                e,
                pe,
                cap,
                &mut solutions,
            )
        {
            return None;
        }
        // Odometer over free-column values.
        let mut i = 0;
        loop {
            if i == free_assign.len() {
                return Some(solutions);
            }
            free_assign[i] += 1;
            if free_assign[i] < pe {
                break;
            }
            free_assign[i] = 0;
            i += 1;
        }
    }
}

/// Back-substitutes pivots in reverse order, branching over the `p^v`
/// solutions of each non-unit pivot equation. Returns false on cap overflow.
#[allow(clippy::too_many_arguments)]
fn substitute(
    rows: &[Vec<u64>],
    pivots: &[(usize, usize)],
    remaining: usize,
    assignment: &mut [u64],
    p: u64,
    e: u32,
    pe: u64,
    cap: usize,
    solutions: &mut Vec<Vec<u64>>,
) -> bool {
    if remaining == 0 {
        if solutions.len() >= cap {
            return false;
        }
        solutions.push(assignment.to_vec());
        return true;
    }
    let (col, row) = pivots[remaining - 1];
    let vars = assignment.len();
    // Every other unknown in this row is already assigned: earlier pivot
    // columns were eliminated, later pivots and free columns are set.
    let mut rhs = rows[row][vars];
    for j in 0..vars {
        if j == col || rows[row][j] == 0 {
            continue;
        }
        let sub = rows[row][j] * assignment[j] % pe;
        rhs = (rhs + pe - sub) % pe;
    }
    let a = rows[row][col];
    let v = valuation(a, p, e);
    let pv = p.pow(v);
    if !rhs.is_multiple_of(pv) {
        return true; // dead branch
    }
    let step = pe / pv;
    let base = rhs / pv % step * (mod_inverse(a / pv % pe, pe) % step) % step;
    for t in 0..pv {
        assignment[col] = (base + t * step) % pe;
        if !substitute(
            rows,
            pivots,
            remaining - 1,
            assignment,
            p,
            e,
            pe,
            cap,
            solutions,
        ) {
            return false;
        }
    }
    assignment[col] = 0;
    true
}
