//! Command-line front end for the permutation-polynomial interleaver toolkit.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use ppint::cli::{self, ExitStatus, ExportFormat, ExportPayload, Report};

#[derive(Parser)]
#[command(
    name = "ppint",
    version,
    about = "Construct, validate, and evaluate permutation-polynomial interleavers over Z_N"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether f0,f1,f2,... defines a permutation of Z_N.
    Validate { n: u64, coeffs: String },
    /// Full metric report: D, D_E, zeta, zeta', epsilon, Omega, Omega',
    /// corner merit, entropy.
    Metrics {
        n: u64,
        coeffs: String,
        /// Also search the constant term maximizing the corner merit.
        #[arg(long)]
        optimize_f0: bool,
        /// Also fit an inverse polynomial up to this degree.
        #[arg(long, value_name = "MAXDEG")]
        fit_inverse: Option<usize>,
    },
    /// Exhaustive search for the largest-spread QPP of length N.
    SearchMaxd {
        n: u64,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Exhaustive search maximizing Omega' subject to a spread floor.
    SearchOmega {
        n: u64,
        /// Spread floor fraction; defaults to 0.45 (N <= 1600) or 0.30.
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// The k-th member of the maximum-spread QPP family.
    MsSeq { k: u32 },
    /// Spread upper bounds ub_D and ub_DE for length N.
    Bounds { n: u64 },
    /// Orbit decomposition of the interleaver-code under its isometries.
    Orbits { n: u64, coeffs: String },
    /// Spread profile (distance multiplicities) at one representative.
    Profile {
        n: u64,
        coeffs: String,
        #[arg(long, default_value_t = 0)]
        rep: u64,
    },
    /// All maximum-spread linear interleavers for N = 2n^2.
    LinearMs { n: u64 },
    /// Count lengths in 2..=NMAX admitting an irreducible-degree QPP.
    ScanExistence { n_max: u64 },
    /// Emit the permutation sequence (txt), plot data (csv), or a report (json).
    Export {
        n: u64,
        coeffs: String,
        #[arg(long, value_enum, default_value_t = Format::Txt)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Txt,
    Csv,
    Json,
}

fn parse_coeffs_or_exit(text: &str) -> Result<Vec<u64>, ExitCode> {
    cli::parse_coefficients(text).map_err(|msg| {
        eprintln!("ppint: {msg}");
        ExitCode::from(2)
    })
}

fn print_report(mut report: Report, started: Instant) {
    report.timing_ms = started.elapsed().as_millis() as u64;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = match cli.command {
        Command::Validate { n, coeffs } => {
            let coeffs = match parse_coeffs_or_exit(&coeffs) {
                Ok(c) => c,
                Err(code) => return code,
            };
            match cli::run_validate(n, &coeffs) {
                Ok((report, status)) => {
                    print_report(report, started);
                    return match status {
                        ExitStatus::Success => ExitCode::SUCCESS,
                        ExitStatus::DomainFailure => ExitCode::from(1),
                    };
                }
                Err(e) => Err(e),
            }
        }
        Command::Metrics {
            n,
            coeffs,
            optimize_f0,
            fit_inverse,
        } => {
            let coeffs = match parse_coeffs_or_exit(&coeffs) {
                Ok(c) => c,
                Err(code) => return code,
            };
            cli::run_metrics(n, &coeffs, optimize_f0, fit_inverse)
        }
        Command::SearchMaxd { n, workers } => cli::run_search_maxd(n, workers),
        Command::SearchOmega { n, beta, workers } => cli::run_search_omega(n, beta, workers),
        Command::MsSeq { k } => cli::run_ms_seq(k),
        Command::Bounds { n } => cli::run_bounds(n),
        Command::Orbits { n, coeffs } => match parse_coeffs_or_exit(&coeffs) {
            Ok(c) => cli::run_orbits(n, &c),
            Err(code) => return code,
        },
        Command::Profile { n, coeffs, rep } => match parse_coeffs_or_exit(&coeffs) {
            Ok(c) => cli::run_profile(n, &c, rep),
            Err(code) => return code,
        },
        Command::LinearMs { n } => cli::run_linear_ms(n),
        Command::ScanExistence { n_max } => cli::run_scan_existence(n_max),
        Command::Export { n, coeffs, format } => {
            let coeffs = match parse_coeffs_or_exit(&coeffs) {
                Ok(c) => c,
                Err(code) => return code,
            };
            let format = match format {
                Format::Txt => ExportFormat::Txt,
                Format::Csv => ExportFormat::Csv,
                Format::Json => ExportFormat::Json,
            };
            match cli::run_export(n, &coeffs, format) {
                Ok(ExportPayload::Raw(text)) => {
                    print!("{text}");
                    return ExitCode::SUCCESS;
                }
                Ok(ExportPayload::Json(report)) => {
                    print_report(*report, started);
                    return ExitCode::SUCCESS;
                }
                Err(e) => Err(e),
            }
        }
    };
    match outcome {
        Ok(report) => {
            print_report(report, started);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("ppint: {e}");
            ExitCode::from(1)
        }
    }
}
