//! Takhtajan-Zograf and Velling-Kirillov pairings for truncated cusp
//! forms, with two independent routes to the former: a closed form in
//! the Fourier coefficients and a direct quadrature of the defining
//! double integral over one period of the half-plane.
//!
//! Inner products conjugate their first argument. In the closed form
//! the pairing is (3/32π⁵) Σ conj(α_n) α'_n / n⁵; the quadrature
//! integrates 4 y⁴ conj(φ₁(z)) φ₂(z) over [0,1] × (0, y_max), which
//! reproduces the same value because ∫₀^∞ 4y⁴ e^{-4πny} dy = 3/(32π⁵n⁵).

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::quad::gauss_legendre;
use crate::scalar::{from_f64, from_usize, Real};
use crate::series::CuspFormCoeffs;
use crate::transforms::{circle_field, CircleVectorField};

/// Discretization of the half-plane pairing integral: Gauss-Legendre in
/// y on (0, y_max) and equispaced averaging in x over one period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<R: Real> {
    y_max: R,
    nx: usize,
    ny: usize,
}

impl<R: Real> QuadratureSpec<R> {
    /// Validates and stores the grid: y_max must be positive and finite,
    /// and both directions need at least 4 points.
    pub fn new(y_max: R, nx: usize, ny: usize) -> Result<Self> {
        if !(y_max > R::zero()) || !y_max.is_finite() {
            return Err(Error::InvalidInput(format!(
                "y_max must be positive and finite, got {}",
                y_max
            )));
        }
        if nx < 4 || ny < 4 {
            return Err(Error::InvalidInput(format!(
                "grid needs at least 4 points per direction, got nx = {}, ny = {}",
                nx, ny
            )));
        }
        Ok(Self { y_max, nx, ny })
    }

    /// Height of the truncated integration strip.
    pub fn y_max(&self) -> R {
        self.y_max
    }

    /// Equispaced x points per period.
    pub fn nx(&self) -> usize {
        self.nx
    }

    /// Gauss-Legendre points in y.
    pub fn ny(&self) -> usize {
        self.ny
    }
}

/// Takhtajan-Zograf pairing in closed form:
/// (3/32π⁵) Σ conj(α_n) α'_n / n⁵ over the common truncation order.
pub fn tz_inner<R: Real>(phi1: &CuspFormCoeffs<R>, phi2: &CuspFormCoeffs<R>) -> Complex<R> {
    let pi = R::PI();
    let pi5 = pi * pi * pi * pi * pi;
    let scale = from_f64::<R>(3.0) / (from_f64::<R>(32.0) * pi5);
    let order = phi1.order().min(phi2.order());
    let mut sum: Complex<R> = Complex::zero();
    for n in 1..=order {
        let nf = from_usize::<R>(n);
        let n5 = nf * nf * nf * nf * nf;
        sum += (phi1.coeff(n).conj() * phi2.coeff(n)).unscale(n5);
    }
    sum.scale(scale)
}

/// Result of the quadrature route: the integral over the truncated strip
/// and a rigorous bound on the discarded tail above y_max.
#[derive(Debug, Clone, PartialEq)]
pub struct TzQuadrature<R: Real> {
    /// Value of ∬ 4y⁴ conj(φ₁) φ₂ over [0,1] × (0, y_max).
    pub value: Complex<R>,
    /// Upper bound on the modulus of the integral over [0,1] × (y_max, ∞).
    pub tail_bound: R,
}

/// Integrates the pairing density over one period of the strip.
///
/// The x average is exact for truncated series once nx exceeds the
/// largest mode gap, so the error budget is the y rule plus the tail.
pub fn tz_quadrature<R: Real>(
    phi1: &CuspFormCoeffs<R>,
    phi2: &CuspFormCoeffs<R>,
    spec: &QuadratureSpec<R>,
) -> Result<TzQuadrature<R>> {
    let four = from_f64::<R>(4.0);
    let half_len = spec.y_max * from_f64::<R>(0.5);
    let (nodes, weights) = gauss_legendre::<R>(spec.ny);
    let nxf = from_usize::<R>(spec.nx);

    let mut acc: Complex<R> = Complex::zero();
    for (t, w) in nodes.iter().zip(weights.iter()) {
        let y = half_len * (*t + R::one());
        let y4 = y * y * y * y;
        let mut row: Complex<R> = Complex::zero();
        for k in 0..spec.nx {
            let x = from_usize::<R>(k) / nxf;
            let z = Complex::new(x, y);
            row += phi1.eval(z)?.conj() * phi2.eval(z)?;
        }
        acc += row.scale(four * y4 * *w);
    }
    let value = acc.scale(half_len / nxf);

    Ok(TzQuadrature {
        value,
        tail_bound: tz_tail_bound(phi1, phi2, spec.y_max),
    })
}

/// Bound on |∬_{y > y_max} 4y⁴ conj(φ₁) φ₂| from integrating each mode's
/// envelope: ∫_Y^∞ 4y⁴ e^{-ay} dy with a = 4πn.
fn tz_tail_bound<R: Real>(phi1: &CuspFormCoeffs<R>, phi2: &CuspFormCoeffs<R>, y_max: R) -> R {
    let four = from_f64::<R>(4.0);
    let order = phi1.order().min(phi2.order());
    let mut total = R::zero();
    for n in 1..=order {
        let weight = phi1.coeff(n).norm() * phi2.coeff(n).norm();
        if weight == R::zero() {
            continue;
        }
        let a = four * R::PI() * from_usize::<R>(n);
        let y = y_max;
        let y2 = y * y;
        let poly = y2 * y2 / a
            + four * y2 * y / (a * a)
            + from_f64::<R>(12.0) * y2 / (a * a * a)
            + from_f64::<R>(24.0) * y / (a * a * a * a)
            + from_f64::<R>(24.0) / (a * a * a * a * a);
        total += weight * four * (-a * y).exp() * poly;
    }
    total
}

/// Velling-Kirillov squared norm Σ_{n>=1} n |c_n|² of a boundary field.
pub fn vk_norm_sq<R: Real>(field: &CircleVectorField<R>) -> R {
    let mut sum = R::zero();
    for (j, c) in field.positive_modes().iter().enumerate() {
        sum += from_usize::<R>(j + 1) * c.norm_sqr();
    }
    sum
}

/// Velling-Kirillov pairing Σ_{n>=1} n c_n conj(c'_n), the sesquilinear
/// extension of the squared norm (conjugate-linear in the second
/// argument).
pub fn vk_inner<R: Real>(f1: &CircleVectorField<R>, f2: &CircleVectorField<R>) -> Complex<R> {
    let order = f1.order().min(f2.order());
    let mut sum: Complex<R> = Complex::zero();
    for n in 1..=order {
        sum += (f1.coeff(n as i64) * f2.coeff(n as i64).conj()).scale(from_usize::<R>(n));
    }
    sum
}

/// Ratio of the Velling-Kirillov squared norm of the induced boundary
/// field to the Takhtajan-Zograf squared norm of the form; 2π/3 for
/// every nonzero truncated cusp form.
pub fn vk_tz_ratio<R: Real>(phi: &CuspFormCoeffs<R>) -> Result<R> {
    if phi.is_zero() {
        return Err(Error::DegenerateInput(
            "the ratio is undefined for the zero form".to_string(),
        ));
    }
    let tz = tz_inner(phi, phi).re;
    let vk = vk_norm_sq(&circle_field(phi));
    Ok(vk / tz)
}

/// Partial sums Σ_{n<=k} |α_n|² n^{-s} for k = 1..=k_max; their growth
/// diagnoses whether the coefficients sit inside the weighted sequence
/// space at exponent s.
pub fn decay_partial_sums<R: Real>(phi: &CuspFormCoeffs<R>, s: R, k_max: usize) -> Result<Vec<R>> {
    if k_max == 0 || k_max > phi.order() {
        return Err(Error::InvalidInput(format!(
            "k_max must lie in 1..={}, got {}",
            phi.order(),
            k_max
        )));
    }
    let mut out = Vec::with_capacity(k_max);
    let mut running = R::zero();
    for n in 1..=k_max {
        let nf = from_usize::<R>(n);
        running += phi.coeff(n).norm_sqr() * nf.powf(-s);
        out.push(running);
    }
    Ok(out)
}

/// Both metric routes plus the cross-model ratio for one cusp form.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport<R: Real> {
    /// Takhtajan-Zograf pairing of the form with itself via the
    /// coefficient closed form; real up to rounding.
    pub tz_closed: Complex<R>,
    /// The same quantity via strip quadrature.
    pub tz_quadrature: Complex<R>,
    /// Tail bound attached to the quadrature route.
    pub tail_bound: R,
    /// Velling-Kirillov squared norm of the induced boundary field.
    pub vk: R,
    /// vk / Re(tz_closed); equals 2π/3 in exact arithmetic.
    pub ratio: R,
}

/// Evaluates both routes and the ratio; fails on the zero form, where
/// the ratio degenerates.
pub fn metric_report<R: Real>(
    phi: &CuspFormCoeffs<R>,
    spec: &QuadratureSpec<R>,
) -> Result<MetricReport<R>> {
    if phi.is_zero() {
        return Err(Error::DegenerateInput(
            "metric comparison is undefined for the zero form".to_string(),
        ));
    }
    let tz_closed = tz_inner(phi, phi);
    let quad = tz_quadrature(phi, phi, spec)?;
    let vk = vk_norm_sq(&circle_field(phi));
    Ok(MetricReport {
        tz_closed,
        tz_quadrature: quad.value,
        tail_bound: quad.tail_bound,
        vk,
        ratio: vk / tz_closed.re,
    })
}
