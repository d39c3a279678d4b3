//! Numerical kernel for boundary deformations of the disc and the
//! punctured disc: truncated cusp forms on the upper half-plane, the
//! harmonic Beltrami differentials they induce, first-order variation
//! fields and their boundary restrictions, sampled circle maps with
//! lifts and composition, and the Takhtajan-Zograf / Velling-Kirillov
//! pairings with their exact ratio.
//!
//! Everything is generic over the scalar through [`scalar::Real`]
//! (`f32` and `f64` both work); the `*64` aliases below fix the common
//! double-precision choice.
//!
//! # Example
//!
//! ```
//! use teichcurve_core::{CuspFormCoeffs64, Complex64};
//! use teichcurve_core::metrics::vk_tz_ratio;
//!
//! let phi = CuspFormCoeffs64::new(vec![Complex64::new(1.0, -2.0)]);
//! let ratio = vk_tz_ratio(&phi).unwrap();
//! assert!((ratio - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-12);
//! ```

// Validation guards are written as negated comparisons (`!(x > 0)`)
// on purpose: they must reject NaN, which every plain comparison
// accepts silently.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod beltrami;
pub mod circle_maps;
pub mod error;
pub mod metrics;
mod quad;
pub mod scalar;
pub mod series;
pub mod transforms;
pub mod variation;

pub use error::{Error, Result};

/// Double-precision complex scalar.
pub type Complex64 = num_complex::Complex<f64>;

/// Double-precision truncated cusp form.
pub type CuspFormCoeffs64 = series::CuspFormCoeffs<f64>;

/// Double-precision periodic potential.
pub type PeriodicPotential64 = series::PeriodicPotential<f64>;

/// Double-precision disc Taylor series.
pub type DiscTaylorCoeffs64 = series::DiscTaylorCoeffs<f64>;

/// Double-precision harmonic Beltrami differential on the half-plane.
pub type HarmonicBeltramiUhp64 = beltrami::HarmonicBeltramiUhp<f64>;

/// Double-precision harmonic Beltrami differential on the disc.
pub type HarmonicBeltramiDisc64 = beltrami::HarmonicBeltramiDisc<f64>;

/// Double-precision boundary vector field on the circle.
pub type CircleVectorField64 = transforms::CircleVectorField<f64>;

/// Double-precision disc-model tangent data.
pub type CurveTangent64 = transforms::CurveTangent<f64>;

/// Double-precision variation field on the half-plane.
pub type UhpVariationField64 = variation::UhpVariationField<f64>;

/// Double-precision variation field on the disc.
pub type DiscVariationField64 = variation::DiscVariationField<f64>;

/// Double-precision disc automorphism fixing 1.
pub type MoebiusDisc64 = circle_maps::MoebiusDisc<f64>;

/// Double-precision sampled circle map.
pub type SampledCircleMap64 = circle_maps::SampledCircleMap<f64>;

/// Double-precision sampled line map.
pub type SampledLineMap64 = circle_maps::SampledLineMap<f64>;

/// Double-precision quadrature grid.
pub type QuadratureSpec64 = metrics::QuadratureSpec<f64>;

/// Double-precision metric comparison report.
pub type MetricReport64 = metrics::MetricReport<f64>;
