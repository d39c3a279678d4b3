//! Truncated series: cusp-form Fourier coefficients on the closed upper
//! half-plane, their normalized third antiderivatives, and Taylor
//! coefficients on the closed unit disc.
//!
//! Evaluation is Horner summation over a fixed coefficient order, so
//! identical inputs produce bit-identical outputs.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{from_f64, from_usize, two_pi, Real};

/// Checks membership in the upper half-plane (closed or open).
pub(crate) fn require_upper_half_plane<R: Real>(
    z: Complex<R>,
    closed: bool,
    domain: &'static str,
) -> Result<()> {
    let inside = if closed {
        z.im >= R::zero()
    } else {
        z.im > R::zero()
    };
    if inside {
        Ok(())
    } else {
        Err(Error::OutsideDomain {
            domain,
            point: format!("{}", z),
        })
    }
}

/// Checks |z| <= 1 with a few ulps of slack for boundary points built from
/// trigonometric functions.
pub(crate) fn require_closed_disc<R: Real>(z: Complex<R>, domain: &'static str) -> Result<()> {
    let slack = from_f64::<R>(8.0) * R::epsilon();
    if z.norm_sqr() <= R::one() + slack {
        Ok(())
    } else {
        Err(Error::OutsideDomain {
            domain,
            point: format!("{}", z),
        })
    }
}

/// Fourier coefficients α_1..α_N of a truncated cusp form
/// φ(z) = Σ_{n=1}^{N} α_n e^{2πinz} on the closed upper half-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct CuspFormCoeffs<R: Real> {
    coeffs: Vec<Complex<R>>,
}

impl<R: Real> CuspFormCoeffs<R> {
    /// Builds a cusp form from α_1..α_N (position j holds α_{j+1}).
    pub fn new(coeffs: Vec<Complex<R>>) -> Self {
        Self { coeffs }
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient α_n; zero outside 1..=N.
    pub fn coeff(&self, n: usize) -> Complex<R> {
        if n >= 1 && n <= self.coeffs.len() {
            self.coeffs[n - 1]
        } else {
            Complex::zero()
        }
    }

    /// All coefficients in index order.
    pub fn coeffs(&self) -> &[Complex<R>] {
        &self.coeffs
    }

    /// True when every coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Evaluates φ(z); boundary points (Im z = 0) are allowed.
    pub fn eval(&self, z: Complex<R>) -> Result<Complex<R>> {
        require_upper_half_plane(z, true, "the closed upper half-plane")?;
        let q = (Complex::i() * two_pi::<R>() * z).exp();
        Ok(horner_q(&self.coeffs, q))
    }

    /// Coefficients of Φ(z) = (i/8π³) Σ (α_n/n³) e^{2πinz}, normalized so
    /// that Φ''' = φ term-wise.
    pub fn third_antiderivative(&self) -> PeriodicPotential<R> {
        let pi = R::PI();
        let scale = (from_f64::<R>(8.0) * pi * pi * pi).recip();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, alpha)| {
                let n = from_usize::<R>(j + 1);
                alpha * Complex::new(R::zero(), scale / (n * n * n))
            })
            .collect();
        PeriodicPotential { coeffs }
    }
}

/// Horner evaluation of Σ_{n>=1} c_n q^n with a fixed coefficient order.
fn horner_q<R: Real>(coeffs: &[Complex<R>], q: Complex<R>) -> Complex<R> {
    let mut acc: Complex<R> = Complex::zero();
    for c in coeffs.iter().rev() {
        acc = acc * q + c;
    }
    acc * q
}

/// Coefficients b_1..b_N of a periodic holomorphic potential
/// Σ_{n>=1} b_n e^{2πinz}; differentiation acts term-wise as
/// multiplication by (2πin)^k.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicPotential<R: Real> {
    coeffs: Vec<Complex<R>>,
}

impl<R: Real> PeriodicPotential<R> {
    /// Builds a potential from b_1..b_N.
    pub fn new(coeffs: Vec<Complex<R>>) -> Self {
        Self { coeffs }
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// All coefficients in index order.
    pub fn coeffs(&self) -> &[Complex<R>] {
        &self.coeffs
    }

    /// Evaluates the k-th derivative, k <= 3, at z with Im z >= 0.
    pub fn eval_deriv(&self, z: Complex<R>, order: u32) -> Result<Complex<R>> {
        if order > 3 {
            return Err(Error::UnsupportedOrder(order));
        }
        require_upper_half_plane(z, true, "the closed upper half-plane")?;
        let q = (Complex::i() * two_pi::<R>() * z).exp();
        let mut acc: Complex<R> = Complex::zero();
        for (j, b) in self.coeffs.iter().enumerate().rev() {
            let omega = Complex::new(R::zero(), two_pi::<R>() * from_usize::<R>(j + 1));
            acc = acc * q + b * omega.powu(order);
        }
        Ok(acc * q)
    }
}

/// Taylor coefficients of Σ_j c_j z^{start+j} on the closed unit disc.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscTaylorCoeffs<R: Real> {
    start: usize,
    coeffs: Vec<Complex<R>>,
}

impl<R: Real> DiscTaylorCoeffs<R> {
    /// Builds the series with lowest power `start` and coefficients in
    /// ascending power order.
    pub fn new(start: usize, coeffs: Vec<Complex<R>>) -> Self {
        Self { start, coeffs }
    }

    /// Lowest power in the series.
    pub fn start(&self) -> usize {
        self.start
    }

    /// Coefficients in ascending power order.
    pub fn coeffs(&self) -> &[Complex<R>] {
        &self.coeffs
    }

    /// True when every coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Evaluates the k-th derivative, k <= 3, at z with |z| <= 1.
    pub fn eval_deriv(&self, z: Complex<R>, order: u32) -> Result<Complex<R>> {
        if order > 3 {
            return Err(Error::UnsupportedOrder(order));
        }
        require_closed_disc(z, "the closed unit disc")?;
        let k = order as usize;
        // Terms with power below k differentiate to zero.
        let jmin = k.saturating_sub(self.start);
        if jmin >= self.coeffs.len() {
            return Ok(Complex::zero());
        }
        let mut acc: Complex<R> = Complex::zero();
        for j in (jmin..self.coeffs.len()).rev() {
            acc = acc * z + self.coeffs[j].scale(falling_factorial::<R>(self.start + j, k));
        }
        let low = (self.start + jmin - k) as u32;
        Ok(acc * z.powu(low))
    }
}

/// p (p-1) ... (p-k+1) as a scalar.
fn falling_factorial<R: Real>(p: usize, k: usize) -> R {
    let mut f = R::one();
    for i in 0..k {
        f *= from_usize::<R>(p - i);
    }
    f
}
