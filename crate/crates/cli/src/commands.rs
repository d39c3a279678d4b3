//! One function per subcommand. Each reads its inputs, runs the
//! corresponding core routines, prints a deterministic report, and maps
//! failures onto the stable exit-code contract.

use std::path::Path;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::value::RawValue;
use teichcurve_core::beltrami::{HarmonicBeltramiDisc, HarmonicBeltramiUhp};
use teichcurve_core::circle_maps::{
    lift_homomorphism_residual, qs_ratio_circle, SampledCircleMap, SampledLineMap,
};
use teichcurve_core::metrics::{metric_report, QuadratureSpec};
use teichcurve_core::transforms::{beta_c_consistency, circle_field, curve_tangent};
use teichcurve_core::variation::{
    chain_residual, dbar_residual_disc, dbar_residual_uhp, mobius_match,
};

use crate::formats::{
    cusp_form, read_coeffs, read_map_csv, write_coeffs, write_map_csv, CoeffsFile,
    MODEL_CIRCLE_FIELD, MODEL_DISC_TAYLOR,
};
use crate::report::{check, emit, num, pair, Check, Failure};

type C64 = Complex<f64>;

const RATIO_TARGET: f64 = 2.0 * std::f64::consts::PI / 3.0;
const DBAR_FLOOR: f64 = 1e-10;
const DBAR_BAND_HALF_WIDTH: f64 = 0.5;
const CHAIN_TOL: f64 = 1e-9;
const MATCH_TOL: f64 = 1e-9;
const ROTATION_REAL_TOL: f64 = 1e-14;
const MODE_SUM_TOL: f64 = 1e-12;
const BETA_C_TOL: f64 = 1e-14;
const ROUND_TRIP_TOL: f64 = 1e-12;
const TRANSLATION_TOL: f64 = 1e-12;
const HOM_TOL: f64 = 1e-9;

/// RNG seed for probe generation: TEICHCURVE_SEED if set, else 42.
pub fn probe_seed() -> Result<u64, Failure> {
    match std::env::var("TEICHCURVE_SEED") {
        Ok(text) => text.trim().parse().map_err(|_| {
            Failure::Input(format!(
                "TEICHCURVE_SEED must be an unsigned integer, got {:?}",
                text
            ))
        }),
        Err(_) => Ok(42),
    }
}

pub fn ratio_check(
    coeffs: &Path,
    ymax: f64,
    nx: usize,
    ny: usize,
    tol: f64,
) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Params {
        ymax: Box<RawValue>,
        nx: usize,
        ny: usize,
        tol: Box<RawValue>,
    }
    #[derive(Serialize)]
    struct Results {
        tz_closed: [Box<RawValue>; 2],
        tz_quadrature: [Box<RawValue>; 2],
        tail_bound: Box<RawValue>,
        vk: Box<RawValue>,
        ratio: Box<RawValue>,
        ratio_error: Box<RawValue>,
    }

    let (file, echo) = read_coeffs(coeffs)?;
    let phi = cusp_form(&file)?;
    let spec = QuadratureSpec::new(ymax, nx, ny)?;
    let metrics = metric_report(&phi, &spec)?;
    let ratio_error = (metrics.ratio - RATIO_TARGET).abs();

    emit(
        "ratio-check",
        vec![echo],
        Params {
            ymax: num(ymax),
            nx,
            ny,
            tol: num(tol),
        },
        Results {
            tz_closed: pair(metrics.tz_closed),
            tz_quadrature: pair(metrics.tz_quadrature),
            tail_bound: num(metrics.tail_bound),
            vk: num(metrics.vk),
            ratio: num(metrics.ratio),
            ratio_error: num(ratio_error),
        },
        vec![check("ratio-matches-two-pi-thirds", ratio_error, tol)],
    )
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum Target {
    Circle,
    Curve,
}

pub fn derivative_map(coeffs: &Path, target: Target, out: &Path) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Params {
        target: &'static str,
        out: String,
    }
    #[derive(Serialize)]
    struct Results {
        output_model: &'static str,
        output_coefficients: usize,
        mode_sum_residual: Box<RawValue>,
        beta_c_residual: Box<RawValue>,
    }

    let (file, echo) = read_coeffs(coeffs)?;
    let phi = cusp_form(&file)?;
    let field = circle_field(&phi);
    let tangent = curve_tangent(&phi);

    let scale: f64 = field.c0().abs()
        + field
            .positive_modes()
            .iter()
            .map(|c| 2.0 * c.norm())
            .sum::<f64>();
    let mode_sum_residual = field.sum().norm() / (1.0 + scale);
    let beta_c_residual = beta_c_consistency(&phi);

    let (target_name, out_file) = match target {
        Target::Circle => (
            "circle",
            CoeffsFile {
                model: MODEL_CIRCLE_FIELD.to_string(),
                start_index: -(field.order() as i64),
                coefficients: field.to_full().iter().map(|c| [c.re, c.im]).collect(),
                a: None,
            },
        ),
        Target::Curve => (
            "curve",
            CoeffsFile {
                model: MODEL_DISC_TAYLOR.to_string(),
                start_index: 2,
                coefficients: tangent.betas().iter().map(|b| [b.re, b.im]).collect(),
                a: Some([tangent.a.re, tangent.a.im]),
            },
        ),
    };
    let output_coefficients = out_file.coefficients.len();
    write_coeffs(out, &out_file)?;

    emit(
        "derivative-map",
        vec![echo],
        Params {
            target: target_name,
            out: out.display().to_string(),
        },
        Results {
            output_model: match target {
                Target::Circle => MODEL_CIRCLE_FIELD,
                Target::Curve => MODEL_DISC_TAYLOR,
            },
            output_coefficients,
            mode_sum_residual: num(mode_sum_residual),
            beta_c_residual: num(beta_c_residual),
        },
        vec![
            check(
                "mode-sum-relative-residual",
                mode_sum_residual,
                MODE_SUM_TOL,
            ),
            check("beta-c-consistency", beta_c_residual, BETA_C_TOL),
        ],
    )
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum Suite {
    Dbar,
    Chain,
    MoebiusMatch,
    All,
}

#[derive(Serialize)]
struct DbarModelResults {
    points_checked: usize,
    worst_residual: Box<RawValue>,
    worst_residual_halved: Box<RawValue>,
    worst_order_deviation: Box<RawValue>,
}

/// Worst second-order deviation |r(h)/r(h/2) - 4| over the supplied
/// residual pairs, ignoring pairs already at the rounding floor.
fn order_scan(pairs: &[(f64, f64)]) -> (DbarModelResults, f64) {
    let mut checked = 0usize;
    let mut worst = 0.0f64;
    let mut worst_h = 0.0f64;
    let mut worst_half = 0.0f64;
    for &(r, r_half) in pairs {
        worst_h = worst_h.max(r);
        worst_half = worst_half.max(r_half);
        if r_half >= DBAR_FLOOR {
            checked += 1;
            worst = worst.max((r / r_half - 4.0).abs());
        }
    }
    let results = DbarModelResults {
        points_checked: checked,
        worst_residual: num(worst_h),
        worst_residual_halved: num(worst_half),
        worst_order_deviation: num(worst),
    };
    (results, worst)
}

pub fn verify(coeffs: &Path, suite: Suite, h: f64, grid: usize, seed: u64) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Params {
        suite: &'static str,
        h: Box<RawValue>,
        grid: usize,
        seed: u64,
    }
    #[derive(Serialize)]
    struct ChainResults {
        grid: usize,
        worst_residual: Box<RawValue>,
    }
    #[derive(Serialize)]
    struct MatchResults {
        grid: usize,
        max_residual: Box<RawValue>,
        a1: [Box<RawValue>; 2],
    }
    #[derive(Serialize)]
    struct Results {
        #[serde(skip_serializing_if = "Option::is_none")]
        dbar_uhp: Option<DbarModelResults>,
        #[serde(skip_serializing_if = "Option::is_none")]
        dbar_disc: Option<DbarModelResults>,
        #[serde(skip_serializing_if = "Option::is_none")]
        chain: Option<ChainResults>,
        #[serde(skip_serializing_if = "Option::is_none")]
        moebius_match: Option<MatchResults>,
    }

    let (file, echo) = read_coeffs(coeffs)?;
    let phi = cusp_form(&file)?;
    if grid == 0 {
        return Err(Failure::Input("--grid must be positive".to_string()));
    }

    let (run_dbar, run_chain, run_match) = match suite {
        Suite::Dbar => (true, false, false),
        Suite::Chain => (false, true, false),
        Suite::MoebiusMatch => (false, false, true),
        Suite::All => (true, true, true),
    };
    let mut results = Results {
        dbar_uhp: None,
        dbar_disc: None,
        chain: None,
        moebius_match: None,
    };
    let mut checks: Vec<Check> = Vec::new();

    if run_dbar {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = HarmonicBeltramiUhp::new(phi.clone());
        let lam = HarmonicBeltramiDisc::from_betas(curve_tangent(&phi).betas());
        let mut uhp_pairs = Vec::new();
        let mut disc_pairs = Vec::new();
        for _ in 0..20 {
            let z = C64::new(rng.gen::<f64>(), 0.3 + 1.2 * rng.gen::<f64>());
            uhp_pairs.push((
                dbar_residual_uhp(&mu, z, h)?,
                dbar_residual_uhp(&mu, z, h / 2.0)?,
            ));
            let r = 0.85 * rng.gen::<f64>().sqrt();
            let theta = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
            let zd = C64::from_polar(r, theta);
            if zd.norm() + h < 1.0 {
                disc_pairs.push((
                    dbar_residual_disc(&lam, zd, h)?,
                    dbar_residual_disc(&lam, zd, h / 2.0)?,
                ));
            }
        }
        let (uhp, uhp_deviation) = order_scan(&uhp_pairs);
        let (disc, disc_deviation) = order_scan(&disc_pairs);
        checks.push(check(
            "uhp-dbar-order-deviation",
            uhp_deviation,
            DBAR_BAND_HALF_WIDTH,
        ));
        checks.push(check(
            "disc-dbar-order-deviation",
            disc_deviation,
            DBAR_BAND_HALF_WIDTH,
        ));
        results.dbar_uhp = Some(uhp);
        results.dbar_disc = Some(disc);
    }

    if run_chain {
        let mut worst = 0.0f64;
        for k in 0..grid {
            let x = k as f64 / grid as f64;
            worst = worst.max(chain_residual(&phi, x)?);
        }
        checks.push(check("chain-identity", worst, CHAIN_TOL));
        results.chain = Some(ChainResults {
            grid,
            worst_residual: num(worst),
        });
    }

    if run_match {
        let matched = mobius_match(&phi, grid)?;
        checks.push(check(
            "moebius-match-residual",
            matched.max_residual,
            MATCH_TOL,
        ));
        checks.push(check(
            "rotation-rate-real-part",
            matched.a1.re.abs(),
            ROTATION_REAL_TOL,
        ));
        results.moebius_match = Some(MatchResults {
            grid,
            max_residual: num(matched.max_residual),
            a1: pair(matched.a1),
        });
    }

    emit(
        "verify",
        vec![echo],
        Params {
            suite: match suite {
                Suite::Dbar => "dbar",
                Suite::Chain => "chain",
                Suite::MoebiusMatch => "moebius-match",
                Suite::All => "all",
            },
            h: num(h),
            grid,
            seed,
        },
        results,
        checks,
    )
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum LiftMode {
    Lift,
    Descend,
    Roundtrip,
    HomCheck,
}

pub fn lift(
    map: &Path,
    map2: Option<&Path>,
    mode: LiftMode,
    out: Option<&Path>,
) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Params {
        mode: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        out: Option<String>,
    }
    #[derive(Serialize)]
    struct Results {
        input_samples: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        output_samples: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        translation_deviation: Option<Box<RawValue>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        round_trip_deviation: Option<Box<RawValue>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        homomorphism_grid: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        homomorphism_residual: Option<Box<RawValue>>,
    }

    let mode_name = match mode {
        LiftMode::Lift => "lift",
        LiftMode::Descend => "descend",
        LiftMode::Roundtrip => "roundtrip",
        LiftMode::HomCheck => "hom-check",
    };
    let require_out = || -> Result<&Path, Failure> {
        out.ok_or_else(|| Failure::Input(format!("--out is required for mode {}", mode_name)))
    };
    let params = Params {
        mode: mode_name,
        out: out.map(|p| p.display().to_string()),
    };

    let (xs, ys, echo) = read_map_csv(map)?;
    let input_samples = xs.len();
    let mut inputs = vec![echo];
    let mut results = Results {
        input_samples,
        output_samples: None,
        translation_deviation: None,
        round_trip_deviation: None,
        homomorphism_grid: None,
        homomorphism_residual: None,
    };
    let mut checks: Vec<Check> = Vec::new();

    match mode {
        LiftMode::Lift => {
            let lifted = SampledCircleMap::new(xs, ys)?.lift()?;
            let translation = lifted
                .xs()
                .iter()
                .take(input_samples)
                .map(|&x| (lifted.eval(x + 1.0) - (lifted.eval(x) + 1.0)).abs())
                .fold(0.0f64, f64::max);
            write_map_csv(require_out()?, lifted.xs(), lifted.us())?;
            results.output_samples = Some(lifted.xs().len());
            results.translation_deviation = Some(num(translation));
            checks.push(check(
                "translation-equivariance",
                translation,
                TRANSLATION_TOL,
            ));
        }
        LiftMode::Descend => {
            let circle = SampledLineMap::new(xs, ys)?.descend()?;
            write_map_csv(require_out()?, circle.xs(), circle.ys())?;
            results.output_samples = Some(circle.xs().len());
        }
        LiftMode::Roundtrip => {
            let circle = SampledCircleMap::new(xs, ys.clone())?;
            let back = circle.lift()?.descend()?;
            let deviation = back
                .ys()
                .iter()
                .zip(&ys)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            write_map_csv(require_out()?, back.xs(), back.ys())?;
            results.output_samples = Some(back.xs().len());
            results.round_trip_deviation = Some(num(deviation));
            checks.push(check("round-trip-exact", deviation, ROUND_TRIP_TOL));
        }
        LiftMode::HomCheck => {
            let second =
                map2.ok_or_else(|| Failure::Input("mode hom-check requires --map2".to_string()))?;
            let (xs2, ys2, echo2) = read_map_csv(second)?;
            inputs.push(echo2);
            let eta1 = SampledCircleMap::new(xs, ys)?;
            let eta2 = SampledCircleMap::new(xs2, ys2)?;
            let grid = input_samples;
            let residual = lift_homomorphism_residual(&eta1, &eta2, grid)?;
            results.homomorphism_grid = Some(grid);
            results.homomorphism_residual = Some(num(residual));
            checks.push(check("lift-homomorphism", residual, HOM_TOL));
        }
    }

    emit("lift", inputs, params, results, checks)
}

pub fn qs_check(map: &Path, probes: usize, seed: u64) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Params {
        probes: usize,
        seed: u64,
    }
    #[derive(Serialize)]
    struct Results {
        samples: usize,
        distortion: Box<RawValue>,
    }

    if probes == 0 {
        return Err(Failure::Input("--probes must be positive".to_string()));
    }
    let (xs, ys, echo) = read_map_csv(map)?;
    let samples = xs.len();
    let circle = SampledCircleMap::new(xs, ys)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<(f64, f64)> = (0..probes)
        .map(|_| (rng.gen::<f64>(), 0.01 + 0.23 * rng.gen::<f64>()))
        .collect();
    let distortion = qs_ratio_circle(&circle, &points)?;

    emit(
        "qs-check",
        vec![echo],
        Params { probes, seed },
        Results {
            samples,
            distortion: num(distortion),
        },
        Vec::new(),
    )
}
