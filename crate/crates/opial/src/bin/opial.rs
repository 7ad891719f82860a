//! Command-line front end: generate reference sequences, classify them
//! against a set, project points, compute asymptotic centers, and run the
//! verification suite.
//!
//! Exit codes: 0 on success, 1 when a requested check fails, 2 on usage or
//! input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use opial::accenter::asymptotic_center;
use opial::generators::{case_test_points, make_example, random_km_case, ExampleName};
use opial::hilbert::distance_trace;
use opial::io;
use opial::monotonicity::classify;
use opial::verify::run_suite;
use opial::{Result, Tolerance, Vector};

#[derive(Parser)]
#[command(
    name = "opial",
    about = "Finite-truncation analysis of Fejér-type and Opial sequences",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputOpts {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit JSON (default for reports).
    #[arg(long)]
    json: bool,
    /// Emit CSV where the result is a trace or a point list.
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Write a built-in example or a seeded iteration case as JSONL.
    Generate {
        /// Example name (e.g. two_bump_drift, alternating_sign) or "random".
        name: String,
        /// Number of points to generate.
        #[arg(long)]
        horizon: Option<usize>,
        /// Seed for "random" cases.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Classify a sequence within the monotonicity hierarchy.
    Classify {
        /// Sequence file (JSONL).
        #[arg(long)]
        seq: PathBuf,
        /// Set descriptor (JSON); test points are sampled from it.
        #[arg(long)]
        set: PathBuf,
        /// Absolute tolerance for the step inequalities.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Override the declared tail start.
        #[arg(long)]
        tail: Option<usize>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Project every sequence point onto a set; report the distance trace.
    Project {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        set: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Asymptotic center of the declared tail within a set.
    Accenter {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        set: PathBuf,
        /// Duality-gap target for the solver.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        tail: Option<usize>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run the verification scenarios; nonzero exit when any fails.
    Verify {
        /// Run only scenarios whose id contains this substring.
        #[arg(long)]
        only: Option<String>,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn write_output(output: &OutputOpts, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => {
            fs::write(path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn load_seq(path: &Path, tail: Option<usize>) -> Result<opial::SequencePrefix> {
    let seq = io::read_sequence(path)?;
    match tail {
        Some(t) => seq.with_tail_start(t),
        None => Ok(seq),
    }
}

/// Ok(true) = success, Ok(false) = a requested check failed (exit 1).
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Generate {
            name,
            horizon,
            seed,
            output,
        } => {
            let case = if name.eq_ignore_ascii_case("random") {
                random_km_case(seed)?
            } else {
                let ex = ExampleName::parse(&name).ok_or_else(|| {
                    opial::Error::InvalidArgument(format!(
                        "unknown example '{name}'; known: {}, random",
                        ExampleName::ALL.map(|e| e.slug()).join(", ")
                    ))
                })?;
                make_example(ex, horizon.unwrap_or_else(|| ex.default_horizon()), None)?
            };
            if output.csv {
                write_output(&output, &io::points_to_csv(case.seq.points()))?;
            } else if output.json {
                write_output(&output, &io::report_to_json(&case)?)?;
            } else {
                write_output(&output, &io::sequence_to_jsonl_string(&case.seq)?)?;
            }
            Ok(true)
        }
        Command::Classify {
            seq,
            set,
            tol,
            tail,
            output,
        } => {
            let seq = load_seq(&seq, tail)?;
            let set = io::read_set(&set)?;
            let points = case_test_points(&set)?;
            let tol = Tolerance::new(tol, tol)?;
            let report = classify(&seq, &points, tol)?;
            write_output(&output, &io::report_to_json(&report)?)?;
            Ok(true)
        }
        Command::Project { seq, set, output } => {
            let seq = load_seq(&seq, None)?;
            let set = io::read_set(&set)?;
            let mut projected = Vec::with_capacity(seq.len());
            let mut distances = Vec::with_capacity(seq.len());
            for x in seq.points() {
                let r = set.project(x)?;
                projected.push(r.point);
                distances.push(r.distance);
            }
            if output.csv {
                let mut text = io::points_to_csv(&projected);
                text.push('\n');
                text.push_str(&io::trace_to_csv(&distances));
                write_output(&output, &text)?;
            } else {
                #[derive(serde::Serialize)]
                struct ProjectReport {
                    projected: Vec<Vector>,
                    distance_trace: Vec<f64>,
                }
                let report = ProjectReport {
                    projected,
                    distance_trace: distances,
                };
                write_output(&output, &io::report_to_json(&report)?)?;
            }
            Ok(true)
        }
        Command::Accenter {
            seq,
            set,
            tol,
            tail,
            output,
        } => {
            let seq = load_seq(&seq, tail)?;
            let set = io::read_set(&set)?;
            let result = asymptotic_center(&seq, &set, tol)?;
            if output.csv {
                let trace = distance_trace(&seq, &result.center)?;
                write_output(&output, &io::trace_to_csv(&trace))?;
            } else {
                write_output(&output, &io::report_to_json(&result)?)?;
            }
            Ok(true)
        }
        Command::Verify { only, output } => {
            let report = run_suite(only.as_deref())?;
            if report.scenarios.is_empty() {
                return Err(opial::Error::InvalidArgument(
                    "filter matched no scenario".into(),
                ));
            }
            if output.json {
                write_output(&output, &io::report_to_json(&report)?)?;
            } else {
                let mut text = report.traceability_matrix();
                for s in &report.scenarios {
                    if !s.passed {
                        for c in s.checks.iter().filter(|c| !c.passed) {
                            text.push_str(&format!("FAIL {}::{}: {}\n", s.id, c.key, c.detail));
                        }
                    }
                }
                write_output(&output, &text)?;
            }
            Ok(report.all_passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
