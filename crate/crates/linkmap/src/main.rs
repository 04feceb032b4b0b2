//! Thin command-line front end over the linkmap library.
//!
//! Exit codes: 0 success, 1 invalid certificate in strict mode, 2 parse or
//! IO error, 3 verification failure. All output is deterministic for a
//! fixed command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use linkmap::{
    certify_nf, format_records, lambda_sum, run_selftest, surgery_pushoff, verify_certificate,
    window_report, CertificateError, GroupElem, IntersectionRecord, LaurentPoly,
    LinkMapCertificate, Sign, SurgeryConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "linkmap",
    about = "Link-homotopy invariants of two-component link maps in the 4-sphere",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute omega, tau, and the theorem check for a certificate file.
    Invariants {
        /// Path to a certificate JSON file.
        input: PathBuf,
        /// Fail (exit 1) on certificates that violate the parity constraint.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build and verify normal-form certificates for all |n|, |m| <= range.
    CertifyNf {
        #[arg(long, default_value_t = 8)]
        range: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the finite-window relation-lattice diagnostic.
    VerifyWindow {
        #[arg(long, default_value_t = 4)]
        window: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the surgery conservation law on seeded random data.
    SurgeryDemo {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10000)]
        trials: usize,
        /// Push off along the reversed dual arc (partner carries g^-1).
        #[arg(long)]
        inverse_dual: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the full property suite.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10000)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Invariants {
            input,
            strict,
            format,
        } => cmd_invariants(&input, strict, format),
        Command::CertifyNf { range, format } => cmd_certify(range, format),
        Command::VerifyWindow { window, format } => cmd_window(window, format),
        Command::SurgeryDemo {
            seed,
            trials,
            inverse_dual,
            format,
        } => cmd_surgery(seed, trials, inverse_dual, format),
        Command::Selftest {
            seed,
            trials,
            format,
        } => cmd_selftest(seed, trials, format),
    }
}

fn emit_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

fn cmd_invariants(input: &std::path::Path, strict: bool, format: Format) -> ExitCode {
    let cert = match LinkMapCertificate::from_json_file(input) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e @ CertificateError::Invalid { .. }) = cert.validate(strict) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let report = cert.theorem_check();
    match format {
        Format::Json => emit_json(&report),
        Format::Text => {
            println!("label: {}", report.label);
            println!("valid: {}", report.valid);
            println!("omega: {}", report.omega);
            println!("tau_raw: {}", report.tau_raw);
            println!("tau: {}", report.tau);
            println!("phi_tau: {}", report.phi_tau);
            println!("theorem_holds: {}", report.theorem_holds);
        }
    }
    ExitCode::SUCCESS
}

#[derive(Serialize)]
struct CertifySummary {
    range: i64,
    targets: usize,
    verified: usize,
    all_verified: bool,
    failures: Vec<(i64, i64)>,
}

fn cmd_certify(range: i64, format: Format) -> ExitCode {
    let mut verified = 0;
    let mut targets = 0;
    let mut failures = Vec::new();
    for n in -range..=range {
        for m in -range..=range {
            targets += 1;
            let ok = match certify_nf(n, m) {
                Ok(cert) => verify_certificate(&cert),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            if ok {
                verified += 1;
            } else {
                failures.push((n, m));
            }
        }
    }
    let summary = CertifySummary {
        range,
        targets,
        verified,
        all_verified: verified == targets,
        failures,
    };
    match format {
        Format::Json => emit_json(&summary),
        Format::Text => {
            println!("range: {}", summary.range);
            println!("targets: {}", summary.targets);
            println!("verified: {}", summary.verified);
            println!("all_verified: {}", summary.all_verified);
            for (n, m) in &summary.failures {
                println!("failed: ({n},{m})");
            }
        }
    }
    if summary.all_verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn cmd_window(window: i64, format: Format) -> ExitCode {
    let report = match window_report(window) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match format {
        Format::Json => emit_json(&report),
        Format::Text => print!("{report}"),
    }
    if report.soundness && report.independence {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

#[derive(Serialize)]
struct SurgerySummary {
    seed: u64,
    trials: usize,
    convention: &'static str,
    example_input: Vec<IntersectionRecord>,
    example_dual: GroupElem,
    example_output: Vec<IntersectionRecord>,
    example_lambda: LaurentPoly,
    conserved: usize,
    augmentation_zero: usize,
    all_passed: bool,
}

fn cmd_surgery(seed: u64, trials: usize, inverse_dual: bool, format: Format) -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut conserved = 0;
    let mut augmentation_zero = 0;
    let mut example: Option<(Vec<IntersectionRecord>, GroupElem, Vec<IntersectionRecord>)> = None;
    for _ in 0..trials {
        let len = rng.random_range(0..=6);
        let points: Vec<IntersectionRecord> = (0..len)
            .map(|_| {
                let sign = if rng.random_bool(0.5) {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                IntersectionRecord::new(sign, rng.random_range(-10..=10))
            })
            .collect();
        let cfg = SurgeryConfig {
            dual_elem: GroupElem(rng.random_range(-6..=6)),
            inverse_dual,
        };
        let out = surgery_pushoff(&points, &cfg);
        let factor = LaurentPoly::from_terms([(0, 1), (cfg.effective_dual().0, -1)]);
        if lambda_sum(&out) == factor.mul(&lambda_sum(&points)) {
            conserved += 1;
        }
        if lambda_sum(&out).augment() == 0 {
            augmentation_zero += 1;
        }
        if example.is_none() && !points.is_empty() {
            example = Some((points, cfg.dual_elem, out));
        }
    }
    let (example_input, example_dual, example_output) = example.unwrap_or_else(|| {
        let points = vec![IntersectionRecord::new(Sign::Plus, 0)];
        let cfg = SurgeryConfig {
            dual_elem: GroupElem(1),
            inverse_dual,
        };
        let out = surgery_pushoff(&points, &cfg);
        (points, cfg.dual_elem, out)
    });
    let summary = SurgerySummary {
        seed,
        trials,
        convention: if inverse_dual { "inverse-dual" } else { "dual" },
        example_lambda: lambda_sum(&example_output),
        example_input,
        example_dual,
        example_output,
        conserved,
        augmentation_zero,
        all_passed: conserved == trials && augmentation_zero == trials,
    };
    match format {
        Format::Json => emit_json(&summary),
        Format::Text => {
            println!("seed: {}", summary.seed);
            println!("trials: {}", summary.trials);
            println!("convention: {}", summary.convention);
            println!("example_dual: {}", summary.example_dual);
            print!("example_input:\n{}", format_records(&summary.example_input));
            print!(
                "example_output:\n{}",
                format_records(&summary.example_output)
            );
            println!("example_lambda: {}", summary.example_lambda);
            println!("conserved: {}/{}", summary.conserved, summary.trials);
            println!(
                "augmentation_zero: {}/{}",
                summary.augmentation_zero, summary.trials
            );
            println!("all_passed: {}", summary.all_passed);
        }
    }
    if summary.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn cmd_selftest(seed: u64, trials: usize, format: Format) -> ExitCode {
    let report = run_selftest(seed, trials);
    match format {
        Format::Json => emit_json(&report),
        Format::Text => print!("{report}"),
    }
    if report.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}
