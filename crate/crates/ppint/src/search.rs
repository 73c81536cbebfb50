//! Exhaustive, deterministic, parallel searches over PP coefficient spaces.
//!
//! Two objectives: maximize the spread factor D, or maximize the refined
//! product Omega' = zeta' * ln(D) subject to a spread floor. Workers share
//! only a monotone atomic incumbent used for pruning; every candidate that
//! could still win or tie is evaluated exactly and merged through an
//! associative, commutative reduction, so results are bit-identical for
//! any worker count. Ties are resolved by the smallest f2, then the
//! smallest f1.

use std::sync::atomic::{AtomicU64, Ordering as MemOrdering};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::geometry::{self, InterleaverCode};
use crate::metrics::{self, MetricsReport};
use crate::modring::{gcd, RingPolynomial};
use crate::permcheck;
use crate::Result;

/// What a search maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    MaxD,
    MaxOmegaRefined,
}

/// A candidate space plus objective.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchSpec {
    pub n: u64,
    /// 2 for the standard QPP search; higher degrees need explicit bounds.
    pub degree: usize,
    pub objective: Objective,
    /// Spread floor fraction for `MaxOmegaRefined`; `None` takes the
    /// length-dependent default.
    pub beta: Option<f64>,
    /// Inclusive per-coefficient ranges for coefficients `1..=degree`,
    /// required when `degree > 2`.
    pub coefficient_bounds: Option<Vec<(u64, u64)>>,
}

impl SearchSpec {
    pub fn max_d(n: u64) -> Self {
        SearchSpec {
            n,
            degree: 2,
            objective: Objective::MaxD,
            beta: None,
            coefficient_bounds: None,
        }
    }

    pub fn max_omega(n: u64) -> Self {
        SearchSpec {
            n,
            degree: 2,
            objective: Objective::MaxOmegaRefined,
            beta: None,
            coefficient_bounds: None,
        }
    }

    /// Defaults mirroring the published table: 0.45 up to N = 1600 and
    /// 0.30 above, reflecting that spread matters less at long lengths.
    pub fn default_beta(n: u64) -> f64 {
        if n <= 1600 {
            0.45
        } else {
            0.30
        }
    }

    pub fn effective_beta(&self) -> f64 {
        self.beta.unwrap_or_else(|| Self::default_beta(self.n))
    }
}

/// The deterministic winner of a search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub winner: RingPolynomial,
    pub d: u64,
    pub zeta: u64,
    pub zeta_refined: Option<u64>,
    pub omega_refined: Option<f64>,
    /// Size of the valid candidate space the search ranged over.
    pub candidates_examined: u64,
    /// Number of candidates achieving exactly the optimal objective value.
    pub ties_at_optimum: u64,
}

/// Integer spread floor `floor(beta * sqrt(2N))` used by the Omega'
/// search: candidates must have `D >= omega_floor(n, beta)`.
///
/// The floor applies the fraction beta to the spread upper bound sqrt(2N)
/// and tightens to an integer by flooring, mirroring how the bound itself
/// tightens to `floor(sqrt(2N))` for integer spreads. Flooring rather than
/// ceiling matters at N=40, beta=0.45: the largest achievable spread is
/// exactly 4 = floor(0.45 * sqrt(80)), so a ceiled floor would empty the
/// candidate set.
pub fn omega_floor(n: u64, beta: f64) -> u64 {
    let t = (beta * ((2 * n) as f64).sqrt()).floor() as u64;
    t.max(2)
}

/// Full metric bundle for one candidate; rejects non-permutations with the
/// duplicated output value as evidence.
pub fn evaluate_candidate(poly: &RingPolynomial) -> Result<MetricsReport> {
    metrics::report(poly)
}

/// Runs a search, optionally on a dedicated pool of `workers` threads.
/// Identical specs produce identical results for any worker count.
pub fn run(spec: &SearchSpec, workers: Option<usize>) -> Result<SearchResult> {
    let inner = || match spec.degree {
        0 | 1 => Err(Error::OutOfRange {
            what: "search degree",
            value: spec.degree as u64,
        }),
        2 => run_quadratic(spec),
        _ => run_higher_degree(spec),
    };
    match workers {
        None => inner(),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .expect("worker pool")
            .install(inner),
    }
}

/// Exact minimum Lee distance of the code of `f1*x + f2*x^2 (mod n)`,
/// computed from the orbit representatives `x = 0..zeta` with pair
/// differences updated by additions only. Returns `None` as soon as any
/// pair falls below `abort_below`; such a candidate cannot matter to the
/// caller. Otherwise the exact spread (always at most `cap`) is returned.
fn qpp_min_distance(n: u64, f1: u64, f2: u64, zeta: u64, cap: u64, abort_below: u64) -> Option<u64> {
    if abort_below > cap {
        return None;
    }
    let two_f2 = 2 * f2 % n;
    let half = n / 2;
    let mut best = cap;
    for x in 0..zeta {
        // f(x+d) - f(x) and f(x-d) - f(x), stepped incrementally in d.
        let mut fwd = 0u64;
        let mut fwd_step = (f1 + f2 * ((2 * x + 1) % n)) % n;
        let mut bwd = 0u64;
        let mut bwd_step = (n - (f1 + f2 * ((2 * x + n - 1) % n)) % n) % n;
        let mut delta = 1u64;
        while delta < best && delta <= half {
            fwd = (fwd + fwd_step) % n;
            fwd_step = (fwd_step + two_f2) % n;
            bwd = (bwd + bwd_step) % n;
            bwd_step = (bwd_step + two_f2) % n;
            let d_fwd = delta + fwd.min(n - fwd);
            if d_fwd < abort_below {
                return None;
            }
            if d_fwd < best {
                best = d_fwd;
            }
            if 2 * delta != n {
                let d_bwd = delta + bwd.min(n - bwd);
                if d_bwd < abort_below {
                    return None;
                }
                if d_bwd < best {
                    best = d_bwd;
                }
            }
            delta += 1;
        }
    }
    Some(best)
}

/// f2-side feasibility: permutation conditions that involve only f2, plus
/// irreducible degree.
fn f2_feasible(n: u64, f2: u64, pps: &[(u64, u32, u64)]) -> bool {
    if f2 == 0 || (2 * f2).is_multiple_of(n) {
        return false;
    }
    pps.iter().all(|&(p, e, _)| {
        if p == 2 {
            e == 1 || f2.is_multiple_of(2)
        } else {
            f2.is_multiple_of(p)
        }
    })
}

fn f1_valid(f1: u64, f2: u64, pps: &[(u64, u32, u64)]) -> bool {
    pps.iter().all(|&(p, e, _)| {
        if p == 2 {
            if e == 1 {
                (f1 + f2) % 2 == 1
            } else {
                f1 % 2 == 1
            }
        } else {
            !f1.is_multiple_of(p)
        }
    })
}

/// Distinct disturbance residues `{f2 * x^2 mod n : x = 0..zeta}`.
fn refined_count(n: u64, f2: u64, zeta: u64, scratch: &mut Vec<u64>) -> u64 {
    scratch.clear();
    scratch.extend((0..zeta).map(|x| f2 * (x * x % n) % n));
    scratch.sort_unstable();
    scratch.dedup();
    scratch.len() as u64
}

/// Exact order on objective values `zeta' * ln(D)`: compares `D_a^za` with
/// `D_b^zb`, using floats when they are decisively apart and exact big
/// integers otherwise.
fn cmp_omega(a: (u64, u64), b: (u64, u64)) -> std::cmp::Ordering {
    let ((da, za), (db, zb)) = (a, b);
    if da == db {
        return za.cmp(&zb);
    }
    if za == zb {
        return da.cmp(&db);
    }
    let va = (da as f64).ln() * za as f64;
    let vb = (db as f64).ln() * zb as f64;
    if (va - vb).abs() > 1e-6 * va.abs().max(1.0) {
        return va.partial_cmp(&vb).expect("finite objective values");
    }
    BigUint::from(da)
        .pow(za as u32)
        .cmp(&BigUint::from(db).pow(zb as u32))
}

/// Safety margin for float pruning thresholds; exact comparison settles
/// anything closer than this.
const PRUNE_MARGIN: f64 = 1e-7;

#[derive(Debug, Clone, Copy)]
struct RowBest {
    d: u64,
    zeta_refined: u64,
    f2: u64,
    f1: u64,
    ties: u64,
}

fn merge_rows(a: Option<RowBest>, b: Option<RowBest>, objective: Objective) -> Option<RowBest> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            let ord = match objective {
                Objective::MaxD => x.d.cmp(&y.d),
                Objective::MaxOmegaRefined => {
                    cmp_omega((x.d, x.zeta_refined), (y.d, y.zeta_refined))
                }
            };
            Some(match ord {
                std::cmp::Ordering::Less => y,
                std::cmp::Ordering::Greater => x,
                std::cmp::Ordering::Equal => {
                    let mut w = if (x.f2, x.f1) <= (y.f2, y.f1) { x } else { y };
                    w.ties = x.ties + y.ties;
                    w
                }
            })
        }
    }
}

fn run_quadratic(spec: &SearchSpec) -> Result<SearchResult> {
    let n = spec.n;
    if permcheck::exists_irreducible_qpp(n).is_none() {
        return Err(Error::NoQppExists { n });
    }
    let pps = permcheck::factorize(n);
    let cap = geometry::spread_cap(n);
    let ub_floor = geometry::floor_sqrt_2n(n);
    let floor_t = match spec.objective {
        Objective::MaxD => 0,
        Objective::MaxOmegaRefined => omega_floor(n, spec.effective_beta()),
    };

    let mut rows: Vec<u64> = (1..n).filter(|&f2| f2_feasible(n, f2, &pps)).collect();
    let candidates_examined = rows.len() as u64 * permcheck::unit_count(n);
    if spec.objective == Objective::MaxD {
        // Rows with large gcd(2*f2, N) have few, widely separated orbits and
        // tend to carry the large spreads; fronting them grows the pruning
        // incumbent quickly. Any order yields the same result.
        rows.sort_by_key(|&f2| (std::cmp::Reverse(gcd(2 * f2 % n, n)), f2));
    }

    // Monotone incumbent: best D for MaxD, bits of the best float value for
    // MaxOmegaRefined (non-negative floats order like their bit patterns).
    let incumbent = AtomicU64::new(0);

    let best = rows
        .par_iter()
        .map(|&f2| {
            let zeta = n / gcd(2 * f2 % n, n);
            let mut scratch = Vec::new();
            let zr = match spec.objective {
                Objective::MaxD => 0,
                Objective::MaxOmegaRefined => {
                    let zr = refined_count(n, f2, zeta, &mut scratch);
                    let row_ub = zr as f64 * (ub_floor as f64).ln();
                    let inc = f64::from_bits(incumbent.load(MemOrdering::Relaxed));
                    if row_ub < inc - PRUNE_MARGIN {
                        return None;
                    }
                    zr
                }
            };
            let mut row: Option<RowBest> = None;
            for f1 in 0..n {
                if !f1_valid(f1, f2, &pps) {
                    continue;
                }
                let abort_below = match spec.objective {
                    Objective::MaxD => incumbent.load(MemOrdering::Relaxed),
                    Objective::MaxOmegaRefined => {
                        let inc = f64::from_bits(incumbent.load(MemOrdering::Relaxed));
                        let needed = if inc <= 0.0 {
                            2
                        } else {
                            let raw = ((inc - PRUNE_MARGIN) / zr as f64).exp();
                            if raw > (ub_floor + 1) as f64 {
                                continue; // cannot reach the incumbent
                            }
                            let mut d_need = raw.ceil() as u64;
                            while d_need > 2
                                && zr as f64 * ((d_need - 1) as f64).ln() >= inc - PRUNE_MARGIN
                            {
                                d_need -= 1;
                            }
                            d_need
                        };
                        needed.max(floor_t)
                    }
                };
                let Some(d) = qpp_min_distance(n, f1, f2, zeta, cap, abort_below) else {
                    continue;
                };
                match spec.objective {
                    Objective::MaxD => {
                        incumbent.fetch_max(d, MemOrdering::Relaxed);
                    }
                    Objective::MaxOmegaRefined => {
                        let value = zr as f64 * (d as f64).ln();
                        incumbent.fetch_max(value.to_bits(), MemOrdering::Relaxed);
                    }
                }
                let entry = RowBest {
                    d,
                    zeta_refined: zr,
                    f2,
                    f1,
                    ties: 1,
                };
                row = merge_rows(row, Some(entry), spec.objective);
            }
            row
        })
        .reduce(|| None, |a, b| merge_rows(a, b, spec.objective));

    let Some(win) = best else {
        return Err(Error::NoCandidateMeetsFloor { n, floor: floor_t });
    };
    finish_result(n, &[0, win.f1, win.f2], win.d, win.ties, candidates_examined)
}

fn finish_result(
    n: u64,
    coeffs: &[u64],
    d: u64,
    ties: u64,
    candidates_examined: u64,
) -> Result<SearchResult> {
    let winner = RingPolynomial::new(n, coeffs)?;
    let code = InterleaverCode::from_polynomial(&winner)?;
    let zeta = metrics::zeta(&code);
    let zeta_refined = match metrics::zeta_refined(&winner) {
        Ok(v) => Some(v),
        Err(Error::NonUnitLinearCoefficient { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SearchResult {
        winner,
        d,
        zeta,
        zeta_refined,
        omega_refined: zeta_refined.map(|zr| metrics::omega_refined(d, zr)),
        candidates_examined,
        ties_at_optimum: ties,
    })
}

/// Exploratory search over explicit coefficient ranges for degree > 2.
/// Candidates are validated by the brute-force permutation oracle and the
/// irreducible-degree check; ties are broken by the lexicographically
/// smallest coefficient vector read from the top degree down. Candidates
/// whose linear coefficient is not a unit have no defined zeta' and are
/// skipped under `MaxOmegaRefined`.
fn run_higher_degree(spec: &SearchSpec) -> Result<SearchResult> {
    let n = spec.n;
    let bounds = spec
        .coefficient_bounds
        .as_ref()
        .ok_or(Error::CoefficientBoundsRequired {
            degree: spec.degree,
        })?;
    if bounds.len() != spec.degree {
        return Err(Error::OutOfRange {
            what: "coefficient bound count",
            value: bounds.len() as u64,
        });
    }
    for &(lo, hi) in bounds {
        if lo > hi || hi >= n {
            return Err(Error::OutOfRange {
                what: "coefficient bound",
                value: hi,
            });
        }
    }
    let floor_t = match spec.objective {
        Objective::MaxD => 0,
        Objective::MaxOmegaRefined => omega_floor(n, spec.effective_beta()),
    };

    // Flatten the product space and scan the top coefficient in parallel.
    let (top_lo, top_hi) = bounds[spec.degree - 1];
    let inner_bounds = &bounds[..spec.degree - 1];

    struct HdBest {
        key: Vec<u64>, // coefficients from the top degree down
        d: u64,
        zr: u64,
        coeffs: Vec<u64>,
        ties: u64,
    }
    let examined = AtomicU64::new(0);

    let best = (top_lo..=top_hi)
        .into_par_iter()
        .map(|top| {
            let mut best: Option<HdBest> = None;
            let mut cursor: Vec<u64> = inner_bounds.iter().map(|&(lo, _)| lo).collect();
            loop {
                let mut coeffs = vec![0u64];
                coeffs.extend(cursor.iter().copied());
                coeffs.push(top);
                if let Ok(poly) = RingPolynomial::new(n, &coeffs) {
                    if poly.degree() == spec.degree
                        && permcheck::is_permutation(&poly)
                        && permcheck::is_irreducible_degree(&poly)
                    {
                        examined.fetch_add(1, MemOrdering::Relaxed);
                        let code = InterleaverCode::from_polynomial(&poly)
                            .expect("permutation already verified");
                        let d = geometry::spread_d(&code);
                        let zr = metrics::zeta_refined(&poly).ok();
                        let admissible = match spec.objective {
                            Objective::MaxD => true,
                            Objective::MaxOmegaRefined => d >= floor_t && zr.is_some(),
                        };
                        if admissible {
                            let zr = zr.unwrap_or(0);
                            let key: Vec<u64> = coeffs.iter().rev().copied().collect();
                            let better = match &best {
                                None => Some(true),
                                Some(b) => {
                                    let ord = match spec.objective {
                                        Objective::MaxD => d.cmp(&b.d),
                                        Objective::MaxOmegaRefined => {
                                            cmp_omega((d, zr), (b.d, b.zr))
                                        }
                                    };
                                    match ord {
                                        std::cmp::Ordering::Greater => Some(true),
                                        std::cmp::Ordering::Less => Some(false),
                                        std::cmp::Ordering::Equal => None,
                                    }
                                }
                            };
                            match better {
                                Some(true) => {
                                    best = Some(HdBest {
                                        key,
                                        d,
                                        zr,
                                        coeffs: coeffs.clone(),
                                        ties: 1,
                                    })
                                }
                                Some(false) => {}
                                None => {
                                    let b = best.as_mut().expect("tie against existing best");
                                    b.ties += 1;
                                    if key < b.key {
                                        b.key = key;
                                        b.coeffs = coeffs.clone();
                                        b.d = d;
                                        b.zr = zr;
                                    }
                                }
                            }
                        }
                    }
                }
                // Odometer over the inner coefficients.
                let mut i = 0;
                loop {
                    if i == cursor.len() {
                        return best;
                    }
                    cursor[i] += 1;
                    if cursor[i] <= inner_bounds[i].1 {
                        break;
                    }
                    cursor[i] = inner_bounds[i].0;
                    i += 1;
                }
            }
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (None, x) | (x, None) => x,
                (Some(x), Some(y)) => {
                    let ord = match spec.objective {
                        Objective::MaxD => x.d.cmp(&y.d),
                        Objective::MaxOmegaRefined => cmp_omega((x.d, x.zr), (y.d, y.zr)),
                    };
                    Some(match ord {
                        std::cmp::Ordering::Less => y,
                        std::cmp::Ordering::Greater => x,
                        std::cmp::Ordering::Equal => {
                            let (mut w, l) = if x.key <= y.key { (x, y) } else { (y, x) };
                            w.ties += l.ties;
                            w
                        }
                    })
                }
            },
        );

    let Some(win) = best else {
        return Err(Error::NoCandidateMeetsFloor { n, floor: floor_t });
    };
    finish_result(
        n,
        &win.coeffs,
        win.d,
        win.ties,
        examined.load(MemOrdering::Relaxed),
    )
}
