//! Command-line interface: evaluation, verification, solving, and the
//! construction round trip, with machine-readable JSON reports.
//!
//! Exit status: 0 when all checks pass (or the evaluation succeeds), 1 on a
//! check failure or an undefined evaluation, 2 on a usage error.

use crate::algebra::{Element, Pseudofield};
use crate::extract::{solve_transitive, ConstructedOracle};
use crate::group::Tuple;
use crate::instances::{make_instance, InstanceKind};
use crate::scalar::{Rat, Scalar};
use crate::verify::{roundtrip_check, run_all_checks, run_all_checks_f64, CheckReport, SampleConfig};
use crate::word::act;
use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "pseudofield",
    about = "Local n-pseudofields, their sharply n-transitive groups, and a verification engine",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Mode {
    Float,
    Rational,
}

#[derive(Args, Debug)]
struct InstanceArgs {
    /// Instance name: affine2, moebius3, semidirect, mikhailichenko,
    /// adversarial2
    #[arg(long)]
    instance: String,
    /// Degree, required for semidirect and mikhailichenko
    #[arg(long)]
    n: Option<usize>,
    /// Scalar arithmetic
    #[arg(long, value_enum, default_value = "float")]
    mode: Mode,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Samples per check
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Seed of the deterministic sample streams
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Residual tolerance (float mode; exact mode ignores it)
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Write the JSON report here instead of standard output
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every verification suite and write a JSON report
    Check(CheckArgs),
    /// Evaluate the action x . [tuple]
    Eval {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Coordinates of the acted-on point (comma-separated)
        #[arg(long)]
        x: String,
        /// Row-major coordinates of the acting tuple (n * dim values)
        #[arg(long)]
        tuple: String,
    },
    /// Solve from . Z = to for the unique tuple Z
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Row-major coordinates of the source tuple
        #[arg(long)]
        from: String,
        /// Row-major coordinates of the target tuple
        #[arg(long)]
        to: String,
    },
    /// Extract the carrier operations back from the constructed group and
    /// compare with the source instance
    Roundtrip(CheckArgs),
}

/// Outcome of a run, mapped to the process exit status by `main`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RunStatus {
    Pass,
    CheckFailure,
    UsageError,
}

impl RunStatus {
    pub fn code(self) -> i32 {
        match self {
            RunStatus::Pass => 0,
            RunStatus::CheckFailure => 1,
            RunStatus::UsageError => 2,
        }
    }
}

pub fn run<W: Write, E: Write>(cli: Cli, out: &mut W, err: &mut E) -> RunStatus {
    match cli.command {
        Command::Check(args) => dispatch_report(args, false, out, err),
        Command::Roundtrip(args) => dispatch_report(args, true, out, err),
        Command::Eval { instance, x, tuple } => match instance.mode {
            Mode::Float => eval_cmd::<f64>(&instance, &x, &tuple, out, err),
            Mode::Rational => eval_cmd::<Rat>(&instance, &x, &tuple, out, err),
        },
        Command::Solve { instance, from, to } => match instance.mode {
            Mode::Float => solve_cmd::<f64>(&instance, &from, &to, out, err),
            Mode::Rational => solve_cmd::<Rat>(&instance, &from, &to, out, err),
        },
    }
}

fn build_instance<S: Scalar>(
    args: &InstanceArgs,
    err: &mut impl Write,
) -> Result<Box<dyn Pseudofield<S>>, RunStatus> {
    let kind = match InstanceKind::parse(&args.instance) {
        Some(k) => k,
        None => {
            let _ = writeln!(err, "error: unknown instance {:?}", args.instance);
            return Err(RunStatus::UsageError);
        }
    };
    if kind.parameterized() != args.n.is_some() {
        let _ = writeln!(
            err,
            "error: --n is {} for {}",
            if kind.parameterized() { "required" } else { "not accepted" },
            kind.name()
        );
        return Err(RunStatus::UsageError);
    }
    make_instance::<S>(kind, args.n).map_err(|msg| {
        let _ = writeln!(err, "error: {msg}");
        RunStatus::UsageError
    })
}

fn dispatch_report<W: Write, E: Write>(
    args: CheckArgs,
    roundtrip: bool,
    out: &mut W,
    err: &mut E,
) -> RunStatus {
    let cfg = SampleConfig::new(args.seed, args.samples).with_tolerance(args.tol);
    let report = match args.instance.mode {
        Mode::Float => {
            let inst = match build_instance::<f64>(&args.instance, err) {
                Ok(i) => i,
                Err(status) => return status,
            };
            if roundtrip {
                roundtrip_check(inst.as_ref(), &cfg)
            } else {
                run_all_checks_f64(inst.as_ref(), &cfg)
            }
        }
        Mode::Rational => {
            let inst = match build_instance::<Rat>(&args.instance, err) {
                Ok(i) => i,
                Err(status) => return status,
            };
            if roundtrip {
                roundtrip_check(inst.as_ref(), &cfg)
            } else {
                run_all_checks(inst.as_ref(), &cfg)
            }
        }
    };
    emit_report(&report, args.report.as_deref(), out, err)
}

fn emit_report<W: Write, E: Write>(
    report: &CheckReport,
    path: Option<&std::path::Path>,
    out: &mut W,
    err: &mut E,
) -> RunStatus {
    let json = report.to_json();
    match path {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &json) {
                let _ = writeln!(err, "error: cannot write report to {}: {e}", p.display());
                return RunStatus::UsageError;
            }
        }
        None => {
            let _ = out.write_all(json.as_bytes());
        }
    }
    if report.pass {
        RunStatus::Pass
    } else {
        RunStatus::CheckFailure
    }
}

/// Significant-digit formatting for float output; exact values print as-is.
fn format_scalar<S: Scalar>(value: &S) -> String {
    if S::EXACT {
        return value.to_string();
    }
    let v = value.to_f64();
    if v == 0.0 {
        return "0".to_string();
    }
    let formatted = format!("{v:.12e}");
    // Round-trip through scientific notation to drop float noise.
    let rounded: f64 = formatted.parse().unwrap_or(v);
    let plain = format!("{rounded}");
    plain
}

fn format_element<S: Scalar>(e: &Element<S>) -> String {
    e.coords()
        .iter()
        .map(format_scalar)
        .collect::<Vec<_>>()
        .join(",")
}

fn format_tuple<S: Scalar>(t: &Tuple<S>) -> String {
    t.entries()
        .iter()
        .map(format_element)
        .collect::<Vec<_>>()
        .join(",")
}

fn eval_cmd<S: Scalar>(
    args: &InstanceArgs,
    x: &str,
    tuple: &str,
    out: &mut impl Write,
    err: &mut impl Write,
) -> RunStatus {
    let inst = match build_instance::<S>(args, err) {
        Ok(i) => i,
        Err(status) => return status,
    };
    let point = match Element::<S>::parse(x, inst.dim()) {
        Ok(p) => p,
        Err(msg) => {
            let _ = writeln!(err, "error: --x: {msg}");
            return RunStatus::UsageError;
        }
    };
    let ys = match Tuple::<S>::parse(tuple, inst.degree(), inst.dim()) {
        Ok(t) => t,
        Err(msg) => {
            let _ = writeln!(err, "error: --tuple: {msg}");
            return RunStatus::UsageError;
        }
    };
    match act(inst.as_ref(), &point, ys.entries()) {
        Ok(v) => {
            let _ = writeln!(out, "{}", format_element(&v));
            RunStatus::Pass
        }
        Err(reason) => {
            let _ = writeln!(err, "undefined: {reason}");
            RunStatus::CheckFailure
        }
    }
}

fn solve_cmd<S: Scalar>(
    args: &InstanceArgs,
    from: &str,
    to: &str,
    out: &mut impl Write,
    err: &mut impl Write,
) -> RunStatus {
    let inst = match build_instance::<S>(args, err) {
        Ok(i) => i,
        Err(status) => return status,
    };
    let parse = |text: &str, what: &str, err: &mut dyn Write| {
        Tuple::<S>::parse(text, inst.degree(), inst.dim()).map_err(|msg| {
            let _ = writeln!(err, "error: --{what}: {msg}");
            RunStatus::UsageError
        })
    };
    let from = match parse(from, "from", err) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let to = match parse(to, "to", err) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let oracle = ConstructedOracle::new(inst.as_ref());
    match solve_transitive(&oracle, &from, &to) {
        Ok(z) => {
            let _ = writeln!(out, "{}", format_tuple(&z));
            RunStatus::Pass
        }
        Err(reason) => {
            let _ = writeln!(err, "undefined: {reason}");
            RunStatus::CheckFailure
        }
    }
}
