//! Deterministic JSON report emission. Field order is fixed by struct
//! declaration order, every float is rendered with 17 significant digits,
//! and negative zero is flushed, so identical inputs and flags produce
//! byte-identical reports.

use std::fmt;

use num_complex::Complex;
use serde::Serialize;
use serde_json::value::RawValue;
use teichcurve_core::Error as CoreError;

/// Command failure carrying the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or malformed input: exit code 2.
    Input(String),
    /// Structurally valid input on which the computation degenerates:
    /// exit code 3.
    Degenerate(String),
    /// A covering-map branch could not be tracked: exit code 4.
    Branch(String),
    /// A report check failed its tolerance: exit code 1. The report has
    /// already been printed.
    Verification,
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification => 1,
            Failure::Input(_) => 2,
            Failure::Degenerate(_) => 3,
            Failure::Branch(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(msg) | Failure::Degenerate(msg) | Failure::Branch(msg) => {
                write!(f, "{}", msg)
            }
            Failure::Verification => write!(f, "one or more checks failed; see the report"),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::DegenerateInput(_) => Failure::Degenerate(e.to_string()),
            CoreError::BranchAmbiguity(_) => Failure::Branch(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Renders a float with 17 significant digits; negative zero prints as
/// zero so algebraically identical results agree byte-for-byte.
pub fn sig17(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.16e}", x)
}

/// A float as a raw JSON number token in the fixed 17-digit format;
/// non-finite values (which no check ever passes) render as null.
pub fn num(x: f64) -> Box<RawValue> {
    let token = if x.is_finite() {
        sig17(x)
    } else {
        "null".to_string()
    };
    RawValue::from_string(token).expect("fixed-format float is a valid JSON token")
}

/// A complex value as a [re, im] pair of fixed-format numbers.
pub fn pair(z: Complex<f64>) -> [Box<RawValue>; 2] {
    [num(z.re), num(z.im)]
}

/// Input file echo: the path as given plus a digest of the bytes read.
#[derive(Serialize)]
pub struct InputEcho {
    pub path: String,
    pub sha256: String,
}

/// One tolerance verdict; `pass` is `value <= tolerance`.
#[derive(Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: Box<RawValue>,
    pub tolerance: Box<RawValue>,
    pub pass: bool,
}

pub fn check(name: &'static str, value: f64, tolerance: f64) -> Check {
    Check {
        name,
        value: num(value),
        tolerance: num(tolerance),
        pass: value <= tolerance,
    }
}

/// The report envelope shared by every subcommand.
#[derive(Serialize)]
pub struct Report<P: Serialize, R: Serialize> {
    pub command: &'static str,
    pub inputs: Vec<InputEcho>,
    pub parameters: P,
    pub results: R,
    pub checks: Vec<Check>,
    pub verdict: &'static str,
}

/// Prints the report to stdout and converts a FAIL verdict into the
/// verification exit code.
pub fn emit<P: Serialize, R: Serialize>(
    command: &'static str,
    inputs: Vec<InputEcho>,
    parameters: P,
    results: R,
    checks: Vec<Check>,
) -> Result<(), Failure> {
    let pass = checks.iter().all(|c| c.pass);
    let report = Report {
        command,
        inputs,
        parameters,
        results,
        checks,
        verdict: if pass { "PASS" } else { "FAIL" },
    };
    let body = serde_json::to_string_pretty(&report).expect("report structs serialize");
    println!("{}", body);
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
