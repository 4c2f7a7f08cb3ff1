//! `invmetric`: single distances, sweeps, constant fits and verification
//! suites from the command line.
//!
//! Exit status: 0 success, 1 failed verification, 2 bad input, 3 unsupported
//! request, 4 numerical non-convergence.

mod parse;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use invmetric::bounds::{run_experiment, run_suite, BoundReport, Experiment, Suite, SuiteConfig, DEFAULT_SEED};
use invmetric::distances::{distance, CertifiedValue, DistanceKind};
use invmetric::domains::{Domain, DomainSpec};
use invmetric::Error;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "invmetric", version, about = "Invariant distances on model domains and checks of their boundary estimates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One distance between two points, with their boundary distances.
    Dist(DistArgs),
    /// An experiment table.
    Sweep(SweepArgs),
    /// The fitted constants of a fitting suite.
    Fit(SuiteArgs),
    /// A verification suite; the exit status says whether it passed.
    Verify(SuiteArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Output {
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct DistArgs {
    /// Domain as JSON, e.g. '{"kind":"disc"}'.
    #[arg(long)]
    domain: String,
    /// carath, lempert or bergman.
    #[arg(long, default_value = "carath")]
    kind: String,
    /// `a+bi`, or a JSON array of coordinates.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, allow_hyphen_values = true)]
    w: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    experiment: String,
    /// Length of the sequence.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Domain for boundary-slope.
    #[arg(long)]
    domain: Option<String>,
    /// Distance for boundary-slope.
    #[arg(long)]
    kind: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long)]
    suite: String,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Replaces the suite's slack; must be positive.
    #[arg(long, allow_hyphen_values = true)]
    tol: Option<f64>,
    /// Replaces the suite's built-in domains where it takes one.
    #[arg(long)]
    domain: Option<String>,
    #[command(flatten)]
    output: Output,
}

/// `dist` output: the certified value flattened next to the boundary
/// distances.
#[derive(Serialize)]
struct DistDocument {
    schema: u32,
    kind: &'static str,
    #[serde(flatten)]
    value: CertifiedValue,
    d_z: f64,
    d_w: f64,
}

#[derive(Serialize)]
struct FitDocument<'a> {
    schema: u32,
    suite: &'a str,
    seed: u64,
    passed: bool,
    fitted: &'a [invmetric::bounds::Fitted],
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Unsupported(_) => 3,
        Error::NonConvergence(_) | Error::SelfTestFailure(_) => 4,
        Error::NoFiniteConstant(_) => 1,
        _ => 2,
    }
}

fn domain(json: &str) -> Result<Domain, Error> {
    DomainSpec::from_json(json)?.build()
}

fn emit(out: &Output, text: String) -> Result<(), Error> {
    match &out.out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Parse(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn config(a: &SuiteArgs) -> Result<SuiteConfig, Error> {
    if let Some(t) = a.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Parse(format!("--tol must be positive, got {t}")));
        }
    }
    Ok(SuiteConfig {
        samples: a.samples,
        seed: a.seed,
        tol: a.tol,
        domain: a.domain.as_deref().map(domain).transpose()?,
        kind: None,
    })
}

fn dist(a: &DistArgs) -> Result<bool, Error> {
    let d = domain(&a.domain)?;
    let kind: DistanceKind = a.kind.parse()?;
    let (z, w) = (parse::point(&a.z)?, parse::point(&a.w)?);
    let value = distance(&d, kind, &z, &w)?;
    let doc = DistDocument {
        schema: 1,
        kind: kind.tag(),
        value,
        d_z: d.boundary_distance(&z)?,
        d_w: d.boundary_distance(&w)?,
    };
    let text = match a.output.format {
        Format::Json => json(&doc),
        Format::Csv => {
            let row: Vec<String> = [doc.value.lo, doc.value.hi, doc.value.err, doc.d_z, doc.d_w]
                .iter()
                .map(|x| serde_json::to_string(x).unwrap_or_else(|_| x.to_string()))
                .collect();
            format!("kind,lo,hi,err,d_z,d_w\n{},{}\n", doc.kind, row.join(","))
        }
    };
    emit(&a.output, text)?;
    Ok(true)
}

fn sweep(a: &SweepArgs) -> Result<bool, Error> {
    let exp: Experiment = a.experiment.parse()?;
    let cfg = SuiteConfig {
        samples: a.samples,
        seed: a.seed,
        tol: None,
        domain: a.domain.as_deref().map(domain).transpose()?,
        kind: a.kind.as_deref().map(str::parse).transpose()?,
    };
    let table = run_experiment(exp, &cfg)?;
    let text = match a.output.format {
        Format::Json => {
            let mut s = table.to_json();
            s.push('\n');
            s
        }
        Format::Csv => table.to_csv(),
    };
    emit(&a.output, text)?;
    Ok(true)
}

fn suite(a: &SuiteArgs, fit_only: bool) -> Result<bool, Error> {
    let s: Suite = a.suite.parse()?;
    if fit_only && !s.is_fit() {
        return Err(Error::Unsupported(format!("suite {s} fits no constant; use verify")));
    }
    let report: BoundReport = run_suite(s, &config(a)?)?;
    eprintln!("{s}: {} rows, {} violations, {:.2} s", report.rows.len(), report.violations, report.runtime);
    let passed = report.passed();
    let text = match (fit_only, a.output.format) {
        (false, Format::Json) => {
            let mut t = report.to_json();
            t.push('\n');
            t
        }
        (false, Format::Csv) => report.to_csv(),
        (true, Format::Json) => json(&FitDocument {
            schema: 1,
            suite: s.tag(),
            seed: a.seed,
            passed,
            fitted: &report.fitted,
        }),
        (true, Format::Csv) => {
            let mut t = String::from("name,value\n");
            for f in &report.fitted {
                t.push_str(&format!("{},{}\n", f.name, serde_json::to_string(&f.value).unwrap_or_else(|_| f.value.to_string())));
            }
            t
        }
    };
    emit(&a.output, text)?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Dist(a) => dist(a),
        Command::Sweep(a) => sweep(a),
        Command::Fit(a) => suite(a, true),
        Command::Verify(a) => suite(a, false),
    };
    eprintln!("runtime {:.3} s", start.elapsed().as_secs_f64());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::Parse("x".into())), 2);
        assert_eq!(exit_code(&Error::InvalidDomain("x".into())), 2);
        assert_eq!(exit_code(&Error::Unsupported("x".into())), 3);
        assert_eq!(exit_code(&Error::NonConvergence("x".into())), 4);
        assert_eq!(exit_code(&Error::NoFiniteConstant("x".into())), 1);
    }
}
