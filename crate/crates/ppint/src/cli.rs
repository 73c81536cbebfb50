//! Command implementations behind the `ppint` binary.
//!
//! Every command emits one canonical JSON report object on stdout (txt and
//! csv exports emit their raw payload instead). Exit conventions: 0 on
//! success, 1 on a domain failure such as "not a permutation", 2 on usage
//! errors. Identical inputs produce identical payloads; only `timing_ms`
//! varies.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::geometry::{self, InterleaverCode};
use crate::inverse::{self, PolynomialFit};
use crate::metrics;
use crate::modring::{reduce_degree, RingPolynomial};
use crate::permcheck;
use crate::search::{self, SearchSpec};
use crate::{designs, Result};

pub const SCHEMA_VERSION: &str = "1";

/// The single report object every command prints.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: &str, inputs: Value, outputs: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            outputs,
            timing_ms: 0,
        }
    }
}

/// How a finished command should terminate the process.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    DomainFailure,
}

/// Parses the comma-separated constant-first coefficient list `f0,f1,...`.
pub fn parse_coefficients(text: &str) -> std::result::Result<Vec<u64>, String> {
    let coeffs: std::result::Result<Vec<u64>, _> = text
        .split(',')
        .map(|part| part.trim().parse::<u64>())
        .collect();
    coeffs.map_err(|e| format!("invalid coefficient list {text:?}: {e}"))
}

fn poly_json(poly: &RingPolynomial) -> Value {
    json!({
        "modulus": poly.modulus(),
        "coefficients": poly.coefficients(),
    })
}

pub fn run_validate(n: u64, coeffs: &[u64]) -> Result<(Report, ExitStatus)> {
    let poly = RingPolynomial::new(n, coeffs)?;
    let verdict = permcheck::verdict(&poly);
    let reduced = if verdict.is_permutation && verdict.irreducible_degree == Some(false) {
        Some(reduce_degree(&poly))
    } else {
        None
    };
    let outputs = json!({
        "is_permutation": verdict.is_permutation,
        "method": verdict.method,
        "irreducible_degree": verdict.irreducible_degree,
        "reduced": reduced.as_ref().map(poly_json),
    });
    let status = if verdict.is_permutation {
        ExitStatus::Success
    } else {
        ExitStatus::DomainFailure
    };
    Ok((
        Report::new(
            "validate",
            json!({ "n": n, "coefficients": coeffs }),
            outputs,
        ),
        status,
    ))
}

pub fn run_metrics(
    n: u64,
    coeffs: &[u64],
    optimize_f0: bool,
    fit_inverse: Option<usize>,
) -> Result<Report> {
    let poly = RingPolynomial::new(n, coeffs)?;
    let report = search::evaluate_candidate(&poly)?;
    let mut outputs = serde_json::to_value(&report).expect("report serializes");
    if optimize_f0 {
        let (f0, merit) = metrics::optimize_constant(&poly)?;
        outputs["optimized_f0"] = json!({ "f0": f0, "corner_merit": merit });
    }
    if let Some(max_degree) = fit_inverse {
        let fitted = inverse::fit_polynomial_inverse(&poly, max_degree)?;
        outputs["inverse"] = match fitted {
            PolynomialFit::Found(inv) => json!({
                "status": "found",
                "fitted_degree": inv.degree(),
                "polynomial": poly_json(&inv),
            }),
            PolynomialFit::NotFound => json!({ "status": "not_found" }),
            PolynomialFit::Undecided { degree } => {
                json!({ "status": "undecided", "degree": degree })
            }
        };
    }
    Ok(Report::new(
        "metrics",
        json!({
            "n": n,
            "coefficients": coeffs,
            "optimize_f0": optimize_f0,
            "fit_inverse": fit_inverse,
        }),
        outputs,
    ))
}

pub fn run_search_maxd(n: u64, workers: Option<usize>) -> Result<Report> {
    let result = search::run(&SearchSpec::max_d(n), workers)?;
    Ok(Report::new(
        "search-maxd",
        json!({ "n": n, "workers": workers }),
        serde_json::to_value(&result).expect("result serializes"),
    ))
}

pub fn run_search_omega(n: u64, beta: Option<f64>, workers: Option<usize>) -> Result<Report> {
    let mut spec = SearchSpec::max_omega(n);
    spec.beta = beta;
    let effective = spec.effective_beta();
    let floor = search::omega_floor(n, effective);
    let result = search::run(&spec, workers)?;
    let mut outputs = serde_json::to_value(&result).expect("result serializes");
    outputs["beta"] = json!(effective);
    outputs["spread_floor"] = json!(floor);
    Ok(Report::new(
        "search-omega",
        json!({ "n": n, "beta": beta, "workers": workers }),
        outputs,
    ))
}

pub fn run_ms_seq(k: u32) -> Result<Report> {
    let ms = designs::ms_qpp(k)?;
    let poly = &ms.poly;
    let n = poly.modulus();
    let code = InterleaverCode::from_polynomial(poly)?;
    let zeta = metrics::zeta(&code);
    let reps: Vec<u64> = (0..zeta).collect();
    let est = geometry::spread_via_representatives(&code, &reps)?;
    let (_, ub_int) = designs::ub_d(n);
    let zr = match metrics::zeta_refined(poly) {
        Ok(v) => Some(v),
        Err(Error::NonUnitLinearCoefficient { .. }) => None,
        Err(e) => return Err(e),
    };
    let inv = if ms.reducible {
        None
    } else {
        Some(inverse::ms_inverse(k)?)
    };
    let outputs = json!({
        "k": k,
        "n": n,
        "polynomial": poly_json(poly),
        "reducible": ms.reducible,
        "d": est.value,
        "maximum_spread": est.value == ub_int,
        "zeta": zeta,
        "zeta_refined": zr,
        "epsilon": n / zeta,
        "inverse": inv.as_ref().map(poly_json),
    });
    Ok(Report::new("ms-seq", json!({ "k": k }), outputs))
}

pub fn run_bounds(n: u64) -> Result<Report> {
    if n < 2 {
        return Err(Error::InvalidModulus { modulus: n });
    }
    let report = designs::bounds(n);
    Ok(Report::new(
        "bounds",
        json!({ "n": n }),
        serde_json::to_value(&report).expect("bounds serialize"),
    ))
}

pub fn run_orbits(n: u64, coeffs: &[u64]) -> Result<Report> {
    let poly = RingPolynomial::new(n, coeffs)?;
    let code = InterleaverCode::from_polynomial(&poly)?;
    let decomposition = geometry::orbits(&code);
    let outputs = json!({
        "n": n,
        "zeta": decomposition.orbits.len(),
        "epsilon": decomposition.translations.len(),
        "representatives": decomposition.representatives,
        "translations": decomposition.translations,
        "orbits": decomposition.orbits,
    });
    Ok(Report::new(
        "orbits",
        json!({ "n": n, "coefficients": coeffs }),
        outputs,
    ))
}

pub fn run_profile(n: u64, coeffs: &[u64], rep: u64) -> Result<Report> {
    let poly = RingPolynomial::new(n, coeffs)?;
    let code = InterleaverCode::from_polynomial(&poly)?;
    if rep >= n {
        return Err(Error::OutOfRange {
            what: "representative",
            value: rep,
        });
    }
    let profile = geometry::spread_profile(&code, rep);
    let outputs = json!({
        "n": n,
        "x": rep,
        "max_distance": geometry::floor_sqrt_2n(n),
        "local_spread": geometry::local_spread(&code, rep),
        "profile": profile,
    });
    Ok(Report::new(
        "profile",
        json!({ "n": n, "coefficients": coeffs, "rep": rep }),
        outputs,
    ))
}

pub fn run_linear_ms(n: u64) -> Result<Report> {
    let values = designs::linear_ms_enumerate(n)?;
    let outputs = json!({
        "n": n,
        "target_spread": geometry::floor_sqrt_2n(n),
        "count": values.len(),
        "f1_values": values,
    });
    Ok(Report::new("linear-ms", json!({ "n": n }), outputs))
}

pub fn run_scan_existence(n_max: u64) -> Result<Report> {
    let count = permcheck::scan_existence(n_max);
    Ok(Report::new(
        "scan-existence",
        json!({ "n_max": n_max }),
        json!({ "n_max": n_max, "count": count }),
    ))
}

/// Export payload: either raw text for txt/csv or a JSON report.
pub enum ExportPayload {
    Raw(String),
    Json(Box<Report>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Txt,
    Csv,
    Json,
}

pub fn run_export(n: u64, coeffs: &[u64], format: ExportFormat) -> Result<ExportPayload> {
    let poly = RingPolynomial::new(n, coeffs)?;
    // Re-validated on write: a txt/csv export must be a permutation.
    let code = InterleaverCode::from_polynomial(&poly)?;
    let seq = code.perm();
    match format {
        ExportFormat::Txt => {
            let mut out = String::new();
            for v in seq {
                out.push_str(&v.to_string());
                out.push('\n');
            }
            Ok(ExportPayload::Raw(out))
        }
        ExportFormat::Csv => {
            let mut out = String::from("x,fx\n");
            for (x, v) in seq.iter().enumerate() {
                out.push_str(&format!("{x},{v}\n"));
            }
            Ok(ExportPayload::Raw(out))
        }
        ExportFormat::Json => {
            let outputs = json!({
                "n": n,
                "coefficients": coeffs,
                "sequence": seq,
            });
            Ok(ExportPayload::Json(Box::new(Report::new(
                "export",
                json!({ "n": n, "coefficients": coeffs, "format": "json" }),
                outputs,
            ))))
        }
    }
}
