use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use hilbert_orbits::algebra::{discriminant_int, UniPoly};
use hilbert_orbits::certify::{certify_group, read_polynomial, GroupModel, Verdict, DEFAULT_TOLERANCE};
use hilbert_orbits::ideals::{dedekind_factor, IdealError};
use hilbert_orbits::number_field::NumberField;
use hilbert_orbits::orbits::{analyze_dataset, generate_worked_example, Dataset};
use hilbert_orbits::verify::{verify_worked_example, report_json_string, Section, VerifyOptions};

const SEED_VAR: &str = "HOL_SEED";

#[derive(Parser)]
#[command(name = "hol", version, about = "Orbits of Hilbert newform eigensystems and Galois group certification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number field data for a defining polynomial.
    Field {
        #[command(subcommand)]
        action: FieldAction,
    },
    /// Orbit analysis of an eigensystem dataset.
    Orbits {
        #[command(subcommand)]
        action: OrbitsAction,
    },
    /// Compare Frobenius cycle types with a candidate Galois group.
    Certify {
        /// File holding the polynomial (JSON array, {"poly": [...]}, or comma-separated coefficients).
        #[arg(long)]
        poly_file: PathBuf,
        /// Candidate group: frobenius:p, dihedral:n, cyclic:n or symmetric:n.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 100_000)]
        max_prime: u64,
        /// Overridden by HOL_SEED when set.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run the checks of the worked example.
    PaperVerify {
        #[arg(long, default_value = "all")]
        section: Section,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        max_prime: u64,
        /// Overridden by HOL_SEED when set.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// The bundled dataset.
    Dataset {
        #[command(subcommand)]
        action: DatasetAction,
    },
}

#[derive(Subcommand)]
enum FieldAction {
    /// Degree, signature, discriminant and irreducibility certificate.
    Info {
        /// Ascending coefficients, comma-separated or as a JSON array.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Primes above p by the Dedekind criterion.
    Factor {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        prime: u64,
    },
}

#[derive(Subcommand)]
enum OrbitsAction {
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Write the JSON report here; otherwise it goes to stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DatasetAction {
    /// Regenerate the bundled dataset deterministically.
    Generate {
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit status with a message for stderr.
enum Failure {
    Check,
    Usage(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn seed_or_env(flag: u64) -> Result<u64, Failure> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("{SEED_VAR}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(flag),
    }
}

fn write_json(path: &Path, v: &Value) -> Outcome {
    let mut s = serde_json::to_string_pretty(v).map_err(usage)?;
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

fn parse_field(poly: &str) -> Result<NumberField, Failure> {
    let f = UniPoly::parse(poly).map_err(usage)?;
    NumberField::new(f).map_err(usage)
}

fn field(action: FieldAction) -> Outcome {
    match action {
        FieldAction::Info { poly } => {
            let k = parse_field(&poly)?;
            let (r1, r2) = k.signature();
            let disc = discriminant_int(k.defining_poly()).map_err(usage)?;
            println!("polynomial: {}", k.defining_poly());
            println!("degree: {}", k.degree());
            println!("signature: ({r1},{r2})");
            println!("discriminant: {disc}");
            println!("certificate: {}", k.certificate());
            Ok(())
        }
        FieldAction::Factor { poly, prime } => {
            let k = parse_field(&poly)?;
            match dedekind_factor(&k, prime) {
                Ok(fp) => {
                    println!("{} prime(s) above {prime}", fp.factors.len());
                    for q in &fp.factors {
                        println!("{q}");
                    }
                    Ok(())
                }
                Err(e @ IdealError::IndexDivisor { .. }) => {
                    eprintln!("IndexDivisor: {e}");
                    Err(Failure::Check)
                }
                Err(e) => Err(usage(e)),
            }
        }
    }
}

fn orbits(action: OrbitsAction) -> Outcome {
    let OrbitsAction::Analyze { input, report } = action;
    let text = fs::read_to_string(&input)?;
    let d = Dataset::parse(&text).map_err(usage)?;
    let a = analyze_dataset(&d);
    match &report {
        Some(p) => write_json(p, &a.report)?,
        None => println!("{}", serde_json::to_string_pretty(&a.report).map_err(usage)?),
    }
    for f in &a.failures {
        eprintln!("FAIL: {f}");
    }
    if report.is_some() {
        println!("{}", if a.passed() { "PASS" } else { "FAIL" });
    }
    if a.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn certify(
    poly_file: PathBuf,
    group: String,
    max_prime: u64,
    seed: u64,
    tolerance: f64,
    report: Option<PathBuf>,
) -> Outcome {
    let seed = seed_or_env(seed)?;
    let f = read_polynomial(&fs::read_to_string(&poly_file)?).map_err(usage)?;
    let g = GroupModel::from_spec(&group).map_err(usage)?;
    let r = certify_group(&f, &g, max_prime, seed, tolerance).map_err(usage)?;
    print!("{}", r.to_text());
    if let Some(p) = report {
        write_json(&p, &r.to_json())?;
    }
    match r.verdict {
        Verdict::Consistent => Ok(()),
        _ => Err(Failure::Check),
    }
}

fn verify(section: Section, report: Option<PathBuf>, max_prime: u64, seed: u64) -> Outcome {
    let opts = VerifyOptions { seed: seed_or_env(seed)?, max_prime, ..VerifyOptions::default() };
    let r = verify_worked_example(section, &opts);
    print!("{}", r.to_text());
    if let Some(p) = report {
        fs::write(p, report_json_string(&r))?;
    }
    if r.has_failures() {
        Err(Failure::Check)
    } else {
        Ok(())
    }
}

fn dataset(action: DatasetAction) -> Outcome {
    let DatasetAction::Generate { out } = action;
    let s = generate_worked_example().map_err(usage)?.to_pretty_string();
    match out {
        Some(p) => fs::write(p, s)?,
        None => print!("{s}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Field { action } => field(action),
        Command::Orbits { action } => orbits(action),
        Command::Certify { poly_file, group, max_prime, seed, tolerance, report } => {
            certify(poly_file, group, max_prime, seed, tolerance, report)
        }
        Command::PaperVerify { section, report, max_prime, seed } => verify(section, report, max_prime, seed),
        Command::Dataset { action } => dataset(action),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
