//! First-order variation fields of quasiconformal deformations: the
//! periodic field ẇ on the closed upper half-plane solving ∂z̄ ẇ = μ, the
//! disc field ω̇ solving ∂z̄ ω̇ = λ, the exponential-covering chain rule
//! linking them, and the Möbius correction matching the two models on the
//! boundary circle.

use num_complex::Complex;
use num_traits::Zero;

use crate::beltrami::{HarmonicBeltramiDisc, HarmonicBeltramiUhp};
use crate::error::{Error, Result};
use crate::scalar::{from_f64, two_pi, Real};
use crate::series::{
    require_closed_disc, require_upper_half_plane, CuspFormCoeffs, DiscTaylorCoeffs,
    PeriodicPotential,
};
use crate::transforms::{circle_field, curve_tangent};

/// Periodic variation field on the closed upper half-plane,
///
/// ẇ(z) = ((z-z̄)²/2) conj(Φ''(z)) + (z-z̄) conj(Φ'(z)) + conj(Φ(z)) + Φ(z)
///        + c + conj(c),   c = -Φ(0),
///
/// normalized so that ẇ(0) = 0; Φ is the third antiderivative of the
/// cusp form and ∂z̄ ẇ = -2 y² conj(φ) pointwise.
#[derive(Debug, Clone)]
pub struct UhpVariationField<R: Real> {
    potential: PeriodicPotential<R>,
    const_term: Complex<R>,
}

impl<R: Real> UhpVariationField<R> {
    /// Builds the field for a cusp form.
    pub fn new(phi: &CuspFormCoeffs<R>) -> Result<Self> {
        let potential = phi.third_antiderivative();
        let const_term = -potential.eval_deriv(Complex::zero(), 0)?;
        Ok(Self {
            potential,
            const_term,
        })
    }

    /// The third antiderivative Φ driving the field.
    pub fn potential(&self) -> &PeriodicPotential<R> {
        &self.potential
    }

    /// Evaluates ẇ(z) for Im z >= 0.
    pub fn eval(&self, z: Complex<R>) -> Result<Complex<R>> {
        require_upper_half_plane(z, true, "the closed upper half-plane")?;
        let p0 = self.potential.eval_deriv(z, 0)?;
        let p1 = self.potential.eval_deriv(z, 1)?;
        let p2 = self.potential.eval_deriv(z, 2)?;
        let d = z - z.conj();
        let half = from_f64::<R>(0.5);
        Ok((d * d * p2.conj()).scale(half)
            + d * p1.conj()
            + p0.conj()
            + p0
            + self.const_term
            + self.const_term.conj())
    }
}

/// Variation field on the closed unit disc,
///
/// ω̇(z) = -((1-|z|²)²/2) conj(Φ''(z)) - z(1-|z|²) conj(Φ'(z))
///         - z² conj(Φ(z)) + Φ(z) + a_1 z,
///
/// with Φ(z) = Σ_{n>=2} β_n z^{n+1} and a purely imaginary a_1; it solves
/// ∂z̄ ω̇ = λ for the harmonic Beltrami differential built from the same
/// β_n, and restricts on |z| = 1 to
/// -Σ conj(β_n) z^{1-n} + a_1 z + Σ β_n z^{n+1}.
#[derive(Debug, Clone)]
pub struct DiscVariationField<R: Real> {
    potential: DiscTaylorCoeffs<R>,
    a1_im: R,
}

impl<R: Real> DiscVariationField<R> {
    /// Builds the field from β_2..β_N and the imaginary part of a_1.
    pub fn from_betas(betas: &[Complex<R>], a1_im: R) -> Self {
        Self {
            potential: DiscTaylorCoeffs::new(3, betas.to_vec()),
            a1_im,
        }
    }

    /// The rotational coefficient a_1 (purely imaginary).
    pub fn a1(&self) -> Complex<R> {
        Complex::new(R::zero(), self.a1_im)
    }

    /// The potential Φ(z) = Σ β_n z^{n+1}.
    pub fn potential(&self) -> &DiscTaylorCoeffs<R> {
        &self.potential
    }

    /// Evaluates ω̇(z) for |z| <= 1.
    pub fn eval(&self, z: Complex<R>) -> Result<Complex<R>> {
        require_closed_disc(z, "the closed unit disc")?;
        let p0 = self.potential.eval_deriv(z, 0)?;
        let p1 = self.potential.eval_deriv(z, 1)?;
        let p2 = self.potential.eval_deriv(z, 2)?;
        let half = from_f64::<R>(0.5);
        let factor = R::one() - z.norm_sqr();
        Ok(-p2.conj().scale(factor * factor * half)
            - (z * p1.conj()).scale(factor)
            - z * z * p0.conj()
            + p0
            + Complex::new(R::zero(), self.a1_im) * z)
    }

    /// Boundary restriction at z = e^{iθ} in closed form:
    /// -Σ conj(β_n) z^{1-n} + a_1 z + Σ β_n z^{n+1}.
    pub fn boundary_value(&self, theta: R) -> Complex<R> {
        let z = Complex::from_polar(R::one(), theta);
        let zc = z.conj();
        let mut acc = Complex::new(R::zero(), self.a1_im) * z;
        let betas = self.potential.coeffs();
        let mut zpow = z * z; // z^{n+1} at n = 2 after the first multiply
        let mut zcpow = zc; // conj(z)^{n-1} = z^{1-n} at n = 2
        for beta in betas {
            zpow *= z;
            acc += beta * zpow - beta.conj() * zcpow;
            zcpow *= zc;
        }
        acc
    }
}

/// Second-order Wirtinger stencil for ∂f/∂z̄ at z with step h:
/// ((f(z+h) - f(z-h)) + i (f(z+ih) - f(z-ih))) / 4h.
fn central_dbar<R, F>(f: F, z: Complex<R>, h: R) -> Result<Complex<R>>
where
    R: Real,
    F: Fn(Complex<R>) -> Result<Complex<R>>,
{
    let re = Complex::new(h, R::zero());
    let im = Complex::new(R::zero(), h);
    let fx = f(z + re)? - f(z - re)?;
    let fy = f(z + im)? - f(z - im)?;
    let four = from_f64::<R>(4.0);
    Ok((fx + Complex::<R>::i() * fy).unscale(four * h))
}

/// |FD ∂z̄ ẇ - μ| at z for the half-plane model; the stencil needs
/// Im z > h so all four sample points stay in the domain.
pub fn dbar_residual_uhp<R: Real>(mu: &HarmonicBeltramiUhp<R>, z: Complex<R>, h: R) -> Result<R> {
    if !(h > R::zero()) {
        return Err(Error::InvalidInput(format!(
            "step must be positive, got {}",
            h
        )));
    }
    if !(z.im - h > R::zero()) {
        return Err(Error::OutsideDomain {
            domain: "points with Im z > h",
            point: format!("{}", z),
        });
    }
    let field = UhpVariationField::new(mu.phi())?;
    let fd = central_dbar(|p| field.eval(p), z, h)?;
    Ok((fd - mu.eval(z)?).norm())
}

/// |FD ∂z̄ ω̇ - λ| at z for the disc model; the stencil needs
/// |z| + h < 1.
pub fn dbar_residual_disc<R: Real>(
    lam: &HarmonicBeltramiDisc<R>,
    z: Complex<R>,
    h: R,
) -> Result<R> {
    if !(h > R::zero()) {
        return Err(Error::InvalidInput(format!(
            "step must be positive, got {}",
            h
        )));
    }
    if !(z.norm() + h < R::one()) {
        return Err(Error::OutsideDomain {
            domain: "points with |z| + h < 1",
            point: format!("{}", z),
        });
    }
    let field = DiscVariationField::from_betas(lam.betas(), R::zero());
    let fd = central_dbar(|p| field.eval(p), z, h)?;
    Ok((fd - lam.eval(z)?).norm())
}

/// Residual of the covering chain rule v̇(p(x)) = p'(x) ẇ(x) at a real
/// point x, where p(x) = e^{2πix} and v̇ is the boundary field induced by
/// the same cusp form, evaluated at θ = 2πx.
pub fn chain_residual<R: Real>(phi: &CuspFormCoeffs<R>, x: R) -> Result<R> {
    let field = UhpVariationField::new(phi)?;
    let z = Complex::new(x, R::zero());
    let wdot = field.eval(z)?;
    let pprime = Complex::i().scale(two_pi::<R>()) * (Complex::i() * two_pi::<R>() * z).exp();
    let lhs = pprime * wdot;

    let vdot = circle_field(phi).vector_value(two_pi::<R>() * x);
    Ok((lhs - vdot).norm())
}

/// Rotational coefficient a_1 = i c_0 - a + conj(a) fixing the Möbius
/// correction; purely imaginary by construction.
pub fn derive_a1<R: Real>(phi: &CuspFormCoeffs<R>) -> Complex<R> {
    let c0 = circle_field(phi).c0();
    let a = curve_tangent(phi).a;
    Complex::new(R::zero(), c0) + (a.conj() - a)
}

/// Outcome of comparing the Möbius-corrected disc field against the
/// pushed-down boundary field on sample points of the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusMatch<R: Real> {
    /// Largest pointwise deviation over the sampled circle points.
    pub max_residual: R,
    /// Rotational coefficient used in the corrected field.
    pub a1: Complex<R>,
}

/// Compares the corrected disc field -a + (a-ā)z + āz² + ω̇(z) against
/// the boundary tangent vector i z Σ c_n z^n at `samples` equispaced
/// points of the unit circle.
pub fn mobius_match<R: Real>(phi: &CuspFormCoeffs<R>, samples: usize) -> Result<MobiusMatch<R>> {
    if samples == 0 {
        return Err(Error::InvalidInput(
            "sample count must be positive".to_string(),
        ));
    }
    let tangent = curve_tangent(phi);
    let a = tangent.a;
    let a1 = derive_a1(phi);
    let omega = DiscVariationField::from_betas(tangent.betas(), a1.im);
    let circle = circle_field(phi);

    let mut worst = R::zero();
    for k in 0..samples {
        let theta = two_pi::<R>() * crate::scalar::from_usize::<R>(k)
            / crate::scalar::from_usize::<R>(samples);
        let z = Complex::from_polar(R::one(), theta);
        let corrected = -a + (a - a.conj()) * z + a.conj() * z * z + omega.eval(z)?;
        let dev = (corrected - circle.vector_value(theta)).norm();
        if dev > worst {
            worst = dev;
        }
    }
    Ok(MobiusMatch {
        max_residual: worst,
        a1,
    })
}
