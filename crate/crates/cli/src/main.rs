//! `teichcurve`: batch verification of truncated cusp-form identities.
//!
//! Every subcommand reads coefficient JSON or sampled-map CSV, prints one
//! deterministic JSON report to stdout, and exits with a stable code:
//! 0 pass, 1 verification fail, 2 input error, 3 degenerate input,
//! 4 branch ambiguity.

mod commands;
mod formats;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{LiftMode, Suite, Target};
use report::Failure;

#[derive(Parser)]
#[command(name = "teichcurve", version)]
#[command(
    about = "Verification toolkit for cusp-form variations of the universal Teichmueller curve"
)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Compare the Velling-Kirillov and Takhtajan-Zograf norms of one form
    RatioCheck {
        /// Coefficient file (model uhp-cusp)
        #[arg(long)]
        coeffs: PathBuf,

        /// Quadrature cutoff height
        #[arg(long, default_value_t = 10.0)]
        ymax: f64,

        /// Horizontal quadrature points
        #[arg(long, default_value_t = 64)]
        nx: usize,

        /// Vertical quadrature points
        #[arg(long, default_value_t = 512)]
        ny: usize,

        /// Tolerance on |ratio - 2pi/3|
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },

    /// Map cusp-form coefficients to a boundary field or a curve tangent
    DerivativeMap {
        /// Coefficient file (model uhp-cusp)
        #[arg(long)]
        coeffs: PathBuf,

        /// Output model: circle (c_n) or curve (beta_n plus a)
        #[arg(long, value_enum)]
        target: Target,

        /// Destination for the emitted coefficient file
        #[arg(long)]
        out: PathBuf,
    },

    /// Run a residual suite against one form
    Verify {
        /// Coefficient file (model uhp-cusp)
        #[arg(long)]
        coeffs: PathBuf,

        /// Which residuals to run
        #[arg(long, value_enum)]
        suite: Suite,

        /// Finite-difference step for the dbar suite
        #[arg(long, default_value_t = 1e-3)]
        h: f64,

        /// Boundary grid size for the chain and moebius-match suites
        #[arg(long, default_value_t = 128)]
        grid: usize,
    },

    /// Lift, descend, round-trip, or homomorphism-check sampled circle maps
    Lift {
        /// Sampled map CSV (header "x,y")
        #[arg(long)]
        map: PathBuf,

        /// Second sampled map, required by mode hom-check
        #[arg(long)]
        map2: Option<PathBuf>,

        /// What to do with the map(s)
        #[arg(long, value_enum)]
        mode: LiftMode,

        /// Destination CSV for modes that emit samples
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Estimate the quasisymmetric distortion of a sampled circle map
    QsCheck {
        /// Sampled map CSV (header "x,y")
        #[arg(long)]
        map: PathBuf,

        /// Number of random probe pairs
        #[arg(long, default_value_t = 1000)]
        probes: usize,
    },
}

fn run(command: Commands) -> Result<(), Failure> {
    match command {
        Commands::RatioCheck {
            coeffs,
            ymax,
            nx,
            ny,
            tol,
        } => commands::ratio_check(&coeffs, ymax, nx, ny, tol),
        Commands::DerivativeMap {
            coeffs,
            target,
            out,
        } => commands::derivative_map(&coeffs, target, &out),
        Commands::Verify {
            coeffs,
            suite,
            h,
            grid,
        } => commands::verify(&coeffs, suite, h, grid, commands::probe_seed()?),
        Commands::Lift {
            map,
            map2,
            mode,
            out,
        } => commands::lift(&map, map2.as_deref(), mode, out.as_deref()),
        Commands::QsCheck { map, probes } => {
            commands::qs_check(&map, probes, commands::probe_seed()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure);
            ExitCode::from(failure.exit_code())
        }
    }
}
