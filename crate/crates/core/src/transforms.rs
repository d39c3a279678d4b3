//! Coefficient transforms between cusp forms, boundary vector fields on
//! the circle, and tangent data on the disc model.
//!
//! A cusp form with coefficients α_n induces the boundary vector field
//! Σ c_n e^{inθ} ∂/∂θ with c_n = (i/4π²) α_n / n³ for n >= 1,
//! c_{-n} = conj(c_n), and c_0 = Im(Σ α_n/n³) / 2π²; the matching disc
//! tangent has coefficients β_n = i c_n and Möbius part a = -conj(α_1)/4π².

use num_complex::Complex;
use num_traits::Zero;

use crate::beltrami::HarmonicBeltramiDisc;
use crate::error::{Error, Result};
use crate::scalar::{from_f64, from_usize, Real};
use crate::series::CuspFormCoeffs;

/// Real vector field v(θ) = Σ_{|n| <= N} c_n e^{inθ} on the unit circle,
/// stored through c_0 (real) and c_1..c_N with c_{-n} = conj(c_n).
#[derive(Debug, Clone, PartialEq)]
pub struct CircleVectorField<R: Real> {
    c0: R,
    pos: Vec<Complex<R>>,
}

impl<R: Real> CircleVectorField<R> {
    /// Builds a field from its constant mode and positive modes.
    pub fn new(c0: R, pos: Vec<Complex<R>>) -> Self {
        Self { c0, pos }
    }

    /// Builds a field from the full coefficient list c_{-N}..c_N, checking
    /// the reality constraints c_0 ∈ R and c_{-n} = conj(c_n).
    pub fn from_full(coeffs: &[Complex<R>]) -> Result<Self> {
        if coeffs.len().is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "a symmetric coefficient list has odd length, got {}",
                coeffs.len()
            )));
        }
        let order = coeffs.len() / 2;
        let tol = from_f64::<R>(64.0) * R::epsilon();
        let scale_of = |c: &Complex<R>| R::one() + c.norm();
        let c0 = coeffs[order];
        if c0.im.abs() > tol * scale_of(&c0) {
            return Err(Error::InvalidInput(format!(
                "constant mode must be real, got {}",
                c0
            )));
        }
        let mut pos = Vec::with_capacity(order);
        for n in 1..=order {
            let cp = coeffs[order + n];
            let cm = coeffs[order - n];
            let diff = cm - cp.conj();
            if diff.norm() > tol * scale_of(&cp) {
                return Err(Error::InvalidInput(format!(
                    "mode -{} must conjugate mode {}: {} vs {}",
                    n, n, cm, cp
                )));
            }
            pos.push(cp);
        }
        Ok(Self { c0: c0.re, pos })
    }

    /// Highest mode N.
    pub fn order(&self) -> usize {
        self.pos.len()
    }

    /// The constant mode c_0.
    pub fn c0(&self) -> R {
        self.c0
    }

    /// Coefficient c_n for any integer n; zero beyond the order.
    pub fn coeff(&self, n: i64) -> Complex<R> {
        if n == 0 {
            return Complex::new(self.c0, R::zero());
        }
        let k = n.unsigned_abs() as usize;
        if k > self.pos.len() {
            return Complex::zero();
        }
        if n > 0 {
            self.pos[k - 1]
        } else {
            self.pos[k - 1].conj()
        }
    }

    /// Positive modes c_1..c_N.
    pub fn positive_modes(&self) -> &[Complex<R>] {
        &self.pos
    }

    /// Sum Σ c_n over all modes; real for a real field.
    pub fn sum(&self) -> Complex<R> {
        let mut acc = Complex::new(self.c0, R::zero());
        for cp in &self.pos {
            acc += cp + cp.conj();
        }
        acc
    }

    /// Evaluates Σ c_n e^{inθ}; exactly real up to the symmetric
    /// summation c_n e^{inθ} + conj(c_n e^{inθ}).
    pub fn value(&self, theta: R) -> R {
        let w = Complex::from_polar(R::one(), theta);
        let mut acc = self.c0;
        let mut wn = Complex::new(R::one(), R::zero());
        for cp in &self.pos {
            wn *= w;
            let term = cp * wn;
            acc += term.re + term.re;
        }
        acc
    }

    /// The field as a tangent vector at the boundary point e^{iθ}:
    /// i e^{iθ} Σ c_n e^{inθ}, i.e. the mode sum rotated into the
    /// direction tangent to the circle.
    pub fn vector_value(&self, theta: R) -> Complex<R> {
        let w = Complex::from_polar(R::one(), theta);
        (Complex::<R>::i() * w).scale(self.value(theta))
    }

    /// Full coefficient list c_{-N}..c_N.
    pub fn to_full(&self) -> Vec<Complex<R>> {
        let order = self.pos.len();
        let mut out = Vec::with_capacity(2 * order + 1);
        for n in (1..=order).rev() {
            out.push(self.pos[n - 1].conj());
        }
        out.push(Complex::new(self.c0, R::zero()));
        for n in 1..=order {
            out.push(self.pos[n - 1]);
        }
        out
    }
}

/// Tangent data in the disc model: the harmonic Beltrami differential
/// carrying the series coefficients β_2..β_N and the Möbius coefficient a.
#[derive(Debug, Clone)]
pub struct CurveTangent<R: Real> {
    /// Differential λ built from the tangent series coefficients.
    pub lambda: HarmonicBeltramiDisc<R>,
    /// Coefficient of the infinitesimal Möbius motion -a + (a-ā)z + āz².
    pub a: Complex<R>,
}

impl<R: Real> CurveTangent<R> {
    /// Series coefficients β_2..β_N carried by the differential.
    pub fn betas(&self) -> &[Complex<R>] {
        self.lambda.betas()
    }
}

/// Boundary vector field induced by a cusp form:
/// c_n = (i/4π²) α_n / n³ for n >= 1 and c_0 = Im(Σ α_n/n³) / 2π².
pub fn circle_field<R: Real>(phi: &CuspFormCoeffs<R>) -> CircleVectorField<R> {
    let pi = R::PI();
    let four_pi2 = from_f64::<R>(4.0) * pi * pi;
    let mut s: Complex<R> = Complex::zero();
    let mut pos = Vec::with_capacity(phi.order());
    for (j, alpha) in phi.coeffs().iter().enumerate() {
        let n = from_usize::<R>(j + 1);
        let n3 = n * n * n;
        s += alpha.unscale(n3);
        // One rounding in the division, then an exact rotation by i, so
        // the disc-model identity β_n = i c_n holds without error.
        pos.push(Complex::<R>::i() * alpha.unscale(four_pi2 * n3));
    }
    let c0 = s.im / (pi * pi + pi * pi);
    CircleVectorField::new(c0, pos)
}

/// Disc-model tangent induced by a cusp form: β_n = -α_n / 4π²n³ and
/// a = -conj(α_1)/4π².
pub fn curve_tangent<R: Real>(phi: &CuspFormCoeffs<R>) -> CurveTangent<R> {
    let pi = R::PI();
    let four_pi2 = from_f64::<R>(4.0) * pi * pi;
    let a = -phi.coeff(1).conj().unscale(four_pi2);
    let order = phi.order();
    let mut betas = Vec::new();
    if order >= 2 {
        betas.reserve(order - 1);
        for n in 2..=order {
            let nf = from_usize::<R>(n);
            // Associate the divisor exactly as `circle_field` does so
            // that β_n = i c_n survives in floating point.
            let n3 = nf * nf * nf;
            betas.push(-phi.coeff(n).unscale(four_pi2 * n3));
        }
    }
    CurveTangent {
        lambda: HarmonicBeltramiDisc::from_betas(&betas),
        a,
    }
}

/// Largest relative defect in the identity β_n = i c_n between tangent
/// coefficients and a boundary field built from the same cusp form.
pub fn beta_c_residual<R: Real>(betas: &[Complex<R>], field: &CircleVectorField<R>) -> R {
    let mut worst = R::zero();
    for (j, beta) in betas.iter().enumerate() {
        let n = (j + 2) as i64;
        let expected = Complex::<R>::i() * field.coeff(n);
        let denom = R::one() + expected.norm();
        let rel = (beta - expected).norm() / denom;
        if rel > worst {
            worst = rel;
        }
    }
    worst
}

/// Runs both coefficient transforms on one cusp form and reports the
/// worst relative defect in β_n = i c_n; zero in floating point because
/// both sides share their rounding.
pub fn beta_c_consistency<R: Real>(phi: &CuspFormCoeffs<R>) -> R {
    beta_c_residual(curve_tangent(phi).betas(), &circle_field(phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    type C64 = Complex<f64>;

    fn c(re: f64, im: f64) -> C64 {
        Complex::new(re, im)
    }

    fn assert_close(a: C64, b: C64, tol: f64) {
        assert!(
            (a - b).norm() <= tol * (1.0 + b.norm()),
            "{} != {} (tol {})",
            a,
            b,
            tol
        );
    }

    #[test]
    fn unit_normalized_mode_gives_c1_equal_i() {
        // α_1 = 4π² makes c_1 = i exactly up to rounding in π².
        let pi = std::f64::consts::PI;
        let phi = CuspFormCoeffs::new(vec![c(4.0 * pi * pi, 0.0)]);
        let field = circle_field(&phi);
        assert_close(field.coeff(1), c(0.0, 1.0), 1e-15);
        assert_close(field.coeff(-1), c(0.0, -1.0), 1e-15);
        // Σ α_n/n³ = 4π² is real, so c_0 = 0.
        assert_eq!(field.c0(), 0.0);
    }

    #[test]
    fn purely_imaginary_mode_feeds_the_constant() {
        // α_2 = 8π² i: S = 4π²i/8 scaled, c_0 = Im(S)/2π² and c_2 follow by hand.
        let pi = std::f64::consts::PI;
        let phi = CuspFormCoeffs::new(vec![C64::zero(), c(0.0, 8.0 * pi * pi)]);
        let field = circle_field(&phi);
        // S = 8π²i/8 = π²i, c_0 = π²/2π² = 1/2.
        assert!((field.c0() - 0.5).abs() < 1e-15);
        // c_2 = (i/4π²)(8π²i)/8 = i·i/4 = -1/4.
        assert_close(field.coeff(2), c(-0.25, 0.0), 1e-15);
        assert_close(field.coeff(-2), c(-0.25, 0.0), 1e-15);
    }

    #[test]
    fn field_value_matches_mode_sum_by_hand() {
        // c_0 = 1/2, c_2 = c_{-2} = -1/4: v(θ) = 1/2 - (1/2)cos 2θ; v(π/2) = 1.
        let field = CircleVectorField::new(0.5, vec![C64::zero(), c(-0.25, 0.0)]);
        let got = field.value(std::f64::consts::FRAC_PI_2);
        assert!((got - 1.0).abs() < 1e-15);
        assert!(field.value(0.0).abs() < 1e-15);
    }

    #[test]
    fn coefficients_beyond_the_order_are_zero() {
        let field = CircleVectorField::new(0.1, vec![c(1.0, 2.0)]);
        assert_eq!(field.coeff(2), C64::zero());
        assert_eq!(field.coeff(-5), C64::zero());
    }

    #[test]
    fn full_list_round_trips() {
        let field = CircleVectorField::new(-0.3, vec![c(1.0, 2.0), c(0.0, -0.5)]);
        let full = field.to_full();
        assert_eq!(full.len(), 5);
        let back = CircleVectorField::from_full(&full).unwrap();
        assert_eq!(back, field);
    }

    #[test]
    fn from_full_rejects_broken_symmetry() {
        // c_{-1} != conj(c_1).
        let bad = vec![c(1.0, 1.0), C64::zero(), c(1.0, 2.0)];
        assert!(matches!(
            CircleVectorField::from_full(&bad),
            Err(Error::InvalidInput(_))
        ));
        // Complex constant mode.
        let bad = vec![c(1.0, -2.0), c(0.0, 0.5), c(1.0, 2.0)];
        assert!(matches!(
            CircleVectorField::from_full(&bad),
            Err(Error::InvalidInput(_))
        ));
        // Even length.
        let bad = vec![c(1.0, 0.0), c(2.0, 0.0)];
        assert!(matches!(
            CircleVectorField::from_full(&bad),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn tangent_mobius_coefficient_conjugates_alpha_one() {
        let pi = std::f64::consts::PI;
        let phi = CuspFormCoeffs::new(vec![c(4.0 * pi * pi, -8.0 * pi * pi)]);
        let t = curve_tangent(&phi);
        assert_close(t.a, c(-1.0, -2.0), 1e-15);
        assert!(t.betas().is_empty());
        assert!(t.lambda.is_zero());
    }

    #[test]
    fn alpha_one_zero_gives_a_exactly_zero() {
        let phi = CuspFormCoeffs::new(vec![C64::zero(), c(3.0, -1.0)]);
        let t = curve_tangent(&phi);
        assert_eq!(t.a, C64::zero());
        assert_eq!(t.betas().len(), 1);
    }

    #[test]
    fn betas_are_i_times_field_coefficients_bitwise() {
        let phi = CuspFormCoeffs::new(vec![c(2.3, -1.1), c(-0.4, 0.9), c(7.7, 0.2), c(0.0, -5.0)]);
        let t = curve_tangent(&phi);
        let field = circle_field(&phi);
        for (j, beta) in t.betas().iter().enumerate() {
            let n = (j + 2) as i64;
            assert_eq!(*beta, Complex::<f64>::i() * field.coeff(n));
        }
        assert_eq!(beta_c_consistency(&phi), 0.0);
    }

    #[test]
    fn residual_detects_a_perturbed_beta() {
        let phi = CuspFormCoeffs::new(vec![c(1.0, 0.0), c(2.0, 1.0)]);
        let t = curve_tangent(&phi);
        let mut betas = t.betas().to_vec();
        betas[0] += c(1e-6, 0.0);
        let field = circle_field(&phi);
        assert!(beta_c_residual(&betas, &field) > 1e-7);
    }

    #[test]
    fn tangent_differential_from_alpha_two() {
        // α_2 = 1: β_2 = -1/32π², so λ(z) = 3 (1-|z|²)² / 32π².
        let pi = std::f64::consts::PI;
        let phi = CuspFormCoeffs::new(vec![C64::zero(), c(1.0, 0.0)]);
        let t = curve_tangent(&phi);
        assert_close(t.betas()[0], c(-1.0 / (32.0 * pi * pi), 0.0), 1e-16);
        let z = c(0.5, -0.2);
        let factor = 1.0 - z.norm_sqr();
        let expected = 3.0 * factor * factor / (32.0 * pi * pi);
        assert_close(t.lambda.eval(z).unwrap(), c(expected, 0.0), 1e-15);
    }

    #[test]
    fn vector_value_rotates_the_mode_sum() {
        // c_1 = i, c_{-1} = -i, c_0 = 0: the mode sum at θ is
        // i e^{iθ} - i e^{-iθ} = -2 sin θ, so the tangent vector is
        // -2 sin(θ) i e^{iθ}: zero at θ = 0 and 2 at θ = π/2.
        let field = CircleVectorField::new(0.0, vec![c(0.0, 1.0)]);
        assert_close(field.vector_value(0.0), C64::zero(), 1e-15);
        assert_close(
            field.vector_value(std::f64::consts::FRAC_PI_2),
            c(2.0, 0.0),
            1e-15,
        );
        // Direct summation oracle at an incommensurate angle.
        let theta = 0.7;
        let by_hand = (Complex::<f64>::i() * C64::from_polar(1.0, theta))
            * (c(0.0, 1.0) * C64::from_polar(1.0, theta)
                + c(0.0, -1.0) * C64::from_polar(1.0, -theta));
        assert_close(field.vector_value(theta), by_hand, 1e-15);
    }

    #[test]
    fn real_coefficients_make_the_constant_mode_vanish_exactly() {
        let phi = CuspFormCoeffs::new(vec![c(1.5, 0.0), c(-2.0, 0.0), c(0.25, 0.0)]);
        let field = circle_field(&phi);
        assert_eq!(field.c0(), 0.0);
    }

    #[test]
    fn field_sum_is_real_for_symmetric_modes() {
        let field = CircleVectorField::new(0.7, vec![c(1.0, -3.0), c(0.2, 0.4)]);
        let s = field.sum();
        assert_eq!(s.im, 0.0);
        assert!((s.re - (0.7 + 2.0 * 1.0 + 2.0 * 0.2)).abs() < 1e-15);
    }
}
