//! Harmonic Beltrami differentials on the upper half-plane and the unit
//! disc, plus the pushdown of a periodic differential through the
//! exponential covering of the punctured disc.
//!
//! On the half-plane the differential attached to a cusp form φ is
//! μ(z) = -2 y² conj(φ(z)); on the disc the differential attached to a
//! tangent coefficient vector (β_n) is λ(z) = -((1-|z|²)²/2) conj(φ_λ(z))
//! with φ_λ(z) = Σ_{n>=2} (n³-n) β_n z^{n-2}.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{from_f64, from_usize, two_pi, Real};
use crate::series::{
    require_closed_disc, require_upper_half_plane, CuspFormCoeffs, DiscTaylorCoeffs,
};

/// Harmonic Beltrami differential μ(z) = -2 y² conj(φ(z)) on the open
/// upper half-plane.
#[derive(Debug, Clone)]
pub struct HarmonicBeltramiUhp<R: Real> {
    phi: CuspFormCoeffs<R>,
}

impl<R: Real> HarmonicBeltramiUhp<R> {
    /// Wraps a cusp form, logging a warning when the sup-norm bound
    /// (2/e²π²) Σ |α_n| / n² exceeds 1.
    pub fn new(phi: CuspFormCoeffs<R>) -> Self {
        let bound = Self::sup_norm_bound(&phi);
        if bound > R::one() {
            log::warn!(
                "harmonic Beltrami sup-norm bound {} exceeds 1; the differential may leave the unit ball",
                bound
            );
        }
        Self { phi }
    }

    /// Upper bound (2/e²π²) Σ |α_n| / n² on sup |μ|, from maximizing
    /// 2 y² e^{-2πny} mode by mode.
    pub fn sup_norm_bound(phi: &CuspFormCoeffs<R>) -> R {
        let pi = R::PI();
        let e = R::one().exp();
        let scale = from_f64::<R>(2.0) / (e * e * pi * pi);
        let mut sum = R::zero();
        for (j, alpha) in phi.coeffs().iter().enumerate() {
            let n = from_usize::<R>(j + 1);
            sum += alpha.norm() / (n * n);
        }
        scale * sum
    }

    /// The underlying cusp form.
    pub fn phi(&self) -> &CuspFormCoeffs<R> {
        &self.phi
    }

    /// Evaluates μ at an interior point (Im z > 0).
    pub fn eval(&self, z: Complex<R>) -> Result<Complex<R>> {
        require_upper_half_plane(z, false, "the open upper half-plane")?;
        let y = z.im;
        Ok(self.phi.eval(z)?.conj().scale(-(y * y + y * y)))
    }

    /// Pushes the periodic differential down the covering
    /// p(z) = e^{2πiz} of the punctured disc:
    /// ν(w) = μ(z) p'(z) / conj(p'(z)) at z = log(w)/(2πi).
    pub fn pushdown(&self, w: Complex<R>) -> Result<Complex<R>> {
        let r2 = w.norm_sqr();
        if !(r2 > R::zero() && r2 < R::one()) {
            return Err(Error::OutsideDomain {
                domain: "the punctured open unit disc",
                point: format!("{}", w),
            });
        }
        let z = w.ln() / (Complex::i() * two_pi::<R>());
        let pprime = Complex::i().scale(two_pi::<R>()) * w;
        Ok(self.eval(z)? * (pprime / pprime.conj()))
    }
}

/// Harmonic Beltrami differential λ(z) = -((1-|z|²)²/2) conj(φ_λ(z)) on
/// the closed unit disc; the quadratic factor makes it vanish on the
/// boundary circle.
#[derive(Debug, Clone)]
pub struct HarmonicBeltramiDisc<R: Real> {
    betas: Vec<Complex<R>>,
    phi_lambda: DiscTaylorCoeffs<R>,
}

impl<R: Real> HarmonicBeltramiDisc<R> {
    /// Builds λ from tangent coefficients β_2..β_{N}; the evaluation
    /// polynomial φ_λ(z) = Σ (n³-n) β_n z^{n-2} is derived once here.
    pub fn from_betas(betas: &[Complex<R>]) -> Self {
        let coeffs = betas
            .iter()
            .enumerate()
            .map(|(j, beta)| {
                let n = from_usize::<R>(j + 2);
                beta.scale(n * n * n - n)
            })
            .collect();
        Self {
            betas: betas.to_vec(),
            phi_lambda: DiscTaylorCoeffs::new(0, coeffs),
        }
    }

    /// The tangent coefficients β_2.., exactly as supplied.
    pub fn betas(&self) -> &[Complex<R>] {
        &self.betas
    }

    /// The polynomial φ_λ with λ = -((1-|z|²)²/2) conj(φ_λ).
    pub fn phi_lambda(&self) -> &DiscTaylorCoeffs<R> {
        &self.phi_lambda
    }

    /// True when every coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.phi_lambda.is_zero()
    }

    /// Evaluates λ on the closed unit disc (|z| <= 1).
    ///
    /// Points within rounding slack of the unit circle take the boundary
    /// factor to be identically zero, so boundary samples return exactly
    /// zero instead of the square of a representation error.
    pub fn eval(&self, z: Complex<R>) -> Result<Complex<R>> {
        require_closed_disc(z, "the closed unit disc")?;
        let factor = R::one() - z.norm_sqr();
        let slack = from_f64::<R>(8.0) * R::epsilon();
        if factor.abs() <= slack {
            return Ok(Complex::zero());
        }
        let half = from_f64::<R>(0.5);
        Ok(self
            .phi_lambda
            .eval_deriv(z, 0)?
            .conj()
            .scale(-factor * factor * half))
    }
}
