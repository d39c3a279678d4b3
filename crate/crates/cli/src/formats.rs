//! On-disk formats: a minimal JSON schema for coefficient lists and a
//! two-column CSV for sampled maps. Both round-trip doubles exactly.

use std::fs;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use teichcurve_core::series::CuspFormCoeffs;

use crate::report::{Failure, InputEcho};

type C64 = Complex<f64>;

pub const MODEL_UHP_CUSP: &str = "uhp-cusp";
pub const MODEL_DISC_TAYLOR: &str = "disc-taylor";
pub const MODEL_CIRCLE_FIELD: &str = "circle-field";

/// Coefficient list with a model tag: "uhp-cusp" holds α_1..α_N
/// (start_index 1), "circle-field" holds c_{-N}..c_N (start_index -N),
/// "disc-taylor" holds β_2..β_N (start_index 2) with the puncture
/// velocity in `a`.
#[derive(Debug, Serialize, Deserialize)]
pub struct CoeffsFile {
    pub model: String,
    pub start_index: i64,
    pub coefficients: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<[f64; 2]>,
}

fn read_bytes(path: &Path) -> Result<(Vec<u8>, InputEcho), Failure> {
    let bytes = fs::read(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {}", path.display(), e)))?;
    let echo = InputEcho {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    };
    Ok((bytes, echo))
}

/// Reads and validates a coefficient file, returning it with the input
/// echo for the report.
pub fn read_coeffs(path: &Path) -> Result<(CoeffsFile, InputEcho), Failure> {
    let (bytes, echo) = read_bytes(path)?;
    let file: CoeffsFile = serde_json::from_slice(&bytes)
        .map_err(|e| Failure::Input(format!("cannot parse {}: {}", path.display(), e)))?;
    match file.model.as_str() {
        MODEL_UHP_CUSP => {
            if file.start_index != 1 {
                return Err(Failure::Input(format!(
                    "uhp-cusp coefficients start at index 1, got {}",
                    file.start_index
                )));
            }
        }
        MODEL_CIRCLE_FIELD => {
            let n = file.coefficients.len() as i64;
            if file.start_index != -(n - 1) / 2 || n % 2 == 0 {
                return Err(Failure::Input(format!(
                    "circle-field coefficients must list c_-N..c_N, got {} entries starting at {}",
                    n, file.start_index
                )));
            }
        }
        MODEL_DISC_TAYLOR => {
            if file.start_index != 2 {
                return Err(Failure::Input(format!(
                    "disc-taylor coefficients start at index 2, got {}",
                    file.start_index
                )));
            }
        }
        other => {
            return Err(Failure::Input(format!(
                "unknown model {:?}; expected uhp-cusp, disc-taylor, or circle-field",
                other
            )));
        }
    }
    Ok((file, echo))
}

/// Interprets a coefficient file as a cusp form; every analysis command
/// starts from this model.
pub fn cusp_form(file: &CoeffsFile) -> Result<CuspFormCoeffs<f64>, Failure> {
    if file.model != MODEL_UHP_CUSP {
        return Err(Failure::Input(format!(
            "this command needs an uhp-cusp coefficient file, got model {:?}",
            file.model
        )));
    }
    let coeffs: Vec<C64> = file
        .coefficients
        .iter()
        .map(|&[re, im]| Complex::new(re, im))
        .collect();
    Ok(CuspFormCoeffs::new(coeffs))
}

/// Writes a coefficient file as pretty-printed JSON.
pub fn write_coeffs(path: &Path, file: &CoeffsFile) -> Result<(), Failure> {
    let body = serde_json::to_string_pretty(file).expect("coefficient file serializes");
    fs::write(path, body + "\n")
        .map_err(|e| Failure::Input(format!("cannot write {}: {}", path.display(), e)))
}

/// Reads a sampled map as two-column CSV with header "x,y".
pub fn read_map_csv(path: &Path) -> Result<(Vec<f64>, Vec<f64>, InputEcho), Failure> {
    let (bytes, echo) = read_bytes(path)?;
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::Input(format!("{} is not UTF-8 text", path.display())))?;
    let mut lines = text.lines();
    match lines.next().map(str::trim) {
        Some("x,y") => {}
        other => {
            return Err(Failure::Input(format!(
                "{} must start with the header \"x,y\", got {:?}",
                path.display(),
                other.unwrap_or("")
            )));
        }
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (k, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut cols = line.split(',');
        let parse = |field: Option<&str>| -> Result<f64, Failure> {
            field
                .map(str::trim)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| {
                    Failure::Input(format!(
                        "{} row {}: expected two comma-separated numbers, got {:?}",
                        path.display(),
                        k + 2,
                        line
                    ))
                })
        };
        xs.push(parse(cols.next())?);
        ys.push(parse(cols.next())?);
        if cols.next().is_some() {
            return Err(Failure::Input(format!(
                "{} row {}: expected exactly two columns",
                path.display(),
                k + 2
            )));
        }
    }
    Ok((xs, ys, echo))
}

/// Writes a sampled map as two-column CSV; floats use the shortest
/// round-trip representation.
pub fn write_map_csv(path: &Path, xs: &[f64], ys: &[f64]) -> Result<(), Failure> {
    let mut body = String::with_capacity(16 * xs.len() + 4);
    body.push_str("x,y\n");
    for (x, y) in xs.iter().zip(ys) {
        body.push_str(&format!("{},{}\n", x, y));
    }
    fs::write(path, body)
        .map_err(|e| Failure::Input(format!("cannot write {}: {}", path.display(), e)))
}
