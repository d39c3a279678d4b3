//! Orientation-preserving circle maps fixing the point 1: disc
//! automorphisms normalized at 1, sampled boundary maps, their lifts to
//! increasing maps of the line commuting with x ↦ x + 1, composition,
//! and quasisymmetry diagnostics.
//!
//! Angles are stored as fractions of a full turn, so a circle map is a
//! set of pairs (x_k, y_k) in [0,1) with e^{2πi x} ↦ e^{2πi y}, and a
//! lift is a piecewise-linear increasing bijection of [0,1] extended by
//! u(x + 1) = u(x) + 1.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, two_pi, Real};

/// Disc automorphism fixing 1 with zero at w:
/// σ_w(ζ) = (1 - w̄)(ζ - w) / ((1 - w)(1 - ζ w̄)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusDisc<R: Real> {
    w: Complex<R>,
}

impl<R: Real> MoebiusDisc<R> {
    /// Builds the automorphism sending w to 0; requires |w| < 1.
    pub fn new(w: Complex<R>) -> Result<Self> {
        if !(w.norm_sqr() < R::one()) {
            return Err(Error::OutsideDomain {
                domain: "the open unit disc",
                point: format!("{}", w),
            });
        }
        Ok(Self { w })
    }

    /// The zero of the automorphism.
    pub fn w(&self) -> Complex<R> {
        self.w
    }

    /// Applies σ_w anywhere away from the pole 1/w̄. The two factors of
    /// the quotient coincide at ζ = 1, so σ_w(1) = 1 without rounding,
    /// and the closed disc maps into the closed disc.
    pub fn apply(&self, zeta: Complex<R>) -> Result<Complex<R>> {
        let one = Complex::new(R::one(), R::zero());
        let num = (one - self.w.conj()) * (zeta - self.w);
        let den = (one - self.w) * (one - zeta * self.w.conj());
        if den.is_zero() {
            return Err(Error::OutsideDomain {
                domain: "the plane minus the automorphism pole",
                point: format!("{}", zeta),
            });
        }
        Ok(num / den)
    }

    /// Applies σ_w⁻¹: with k = (1 - w̄)/(1 - w) the inverse is
    /// η ↦ (η + k w) / (k + η w̄), with its own pole at -k/w̄.
    pub fn apply_inverse(&self, eta: Complex<R>) -> Result<Complex<R>> {
        let one = Complex::new(R::one(), R::zero());
        let k = (one - self.w.conj()) / (one - self.w);
        let den = k + eta * self.w.conj();
        if den.is_zero() {
            return Err(Error::OutsideDomain {
                domain: "the plane minus the automorphism pole",
                point: format!("{}", eta),
            });
        }
        Ok((eta + k * self.w) / den)
    }

    /// Samples the boundary action at `count` equispaced points
    /// x_k = k/count, returning the induced circle map.
    pub fn boundary_samples(&self, count: usize) -> Result<SampledCircleMap<R>> {
        if count < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 samples, got {}",
                count
            )));
        }
        let mut xs = Vec::with_capacity(count);
        let mut ys = Vec::with_capacity(count);
        for k in 0..count {
            let x = from_usize::<R>(k) / from_usize::<R>(count);
            let zeta = Complex::from_polar(R::one(), two_pi::<R>() * x);
            let eta = self.apply(zeta)?;
            let mut y = eta.arg() / two_pi::<R>();
            if y < R::zero() {
                y += R::one();
            }
            if y >= R::one() {
                y -= R::one();
            }
            // Flush a negative zero from atan2 to plain zero.
            y += R::zero();
            xs.push(x);
            ys.push(y);
        }
        SampledCircleMap::new(xs, ys)
    }
}

/// Circle map fixing 1, given by angle-fraction samples (x_k, y_k) with
/// x strictly increasing from exactly 0 and every y in [0,1).
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCircleMap<R: Real> {
    xs: Vec<R>,
    ys: Vec<R>,
}

impl<R: Real> SampledCircleMap<R> {
    /// Validates and stores the samples. The first pair must be exactly
    /// (0, 0): every map here fixes the point 1.
    pub fn new(xs: Vec<R>, ys: Vec<R>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::InvalidInput(format!(
                "{} abscissae vs {} ordinates",
                xs.len(),
                ys.len()
            )));
        }
        if xs.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 samples, got {}",
                xs.len()
            )));
        }
        if !(xs[0] == R::zero() && ys[0] == R::zero()) {
            return Err(Error::InvalidInput(format!(
                "the first sample must be (0, 0), got ({}, {})",
                xs[0], ys[0]
            )));
        }
        for pair in xs.windows(2) {
            if !(pair[1] > pair[0]) {
                return Err(Error::InvalidInput(format!(
                    "abscissae must increase strictly, got {} then {}",
                    pair[0], pair[1]
                )));
            }
        }
        if !(*xs.last().unwrap() < R::one()) {
            return Err(Error::InvalidInput(format!(
                "abscissae must stay below 1, got {}",
                xs.last().unwrap()
            )));
        }
        for y in &ys {
            if !(*y >= R::zero() && *y < R::one()) {
                return Err(Error::InvalidInput(format!(
                    "ordinates must lie in [0,1), got {}",
                    y
                )));
            }
        }
        Ok(Self { xs, ys })
    }

    /// Sample abscissae.
    pub fn xs(&self) -> &[R] {
        &self.xs
    }

    /// Sample ordinates.
    pub fn ys(&self) -> &[R] {
        &self.ys
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    /// True when the map has no samples (never, after validation).
    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Lifts the map to an increasing bijection of [0,1].
    ///
    /// Each step must advance by a forward arc strictly between 0 and
    /// 1/2: a zero arc breaks injectivity, an arc of 1/2 or more leaves
    /// the branch choice ambiguous at this sampling density, and any
    /// wrap past angle 1 makes the winding exceed one turn. A final node
    /// (1, 1) closes the lift.
    pub fn lift(&self) -> Result<SampledLineMap<R>> {
        let half = R::one() / (R::one() + R::one());
        let mut wraps = 0usize;
        let n = self.xs.len();
        for k in 1..n {
            let raw = self.ys[k] - self.ys[k - 1];
            if raw == R::zero() {
                return Err(Error::InvalidMap(format!(
                    "repeated ordinate {} at samples {} and {}",
                    self.ys[k],
                    k - 1,
                    k
                )));
            }
            let arc = if raw < R::zero() {
                wraps += 1;
                raw + R::one()
            } else {
                raw
            };
            if arc >= half {
                return Err(Error::BranchAmbiguity(format!(
                    "forward arc {} between samples {} and {} reaches 1/2",
                    arc,
                    k - 1,
                    k
                )));
            }
        }
        if wraps != 0 {
            return Err(Error::InvalidMap(format!(
                "ordinates wrap {} times before the closing arc; the map cannot have degree one",
                wraps
            )));
        }
        let closing = R::one() - self.ys[n - 1];
        if closing >= half {
            return Err(Error::BranchAmbiguity(format!(
                "closing arc {} from the last sample back to 1 reaches 1/2",
                closing
            )));
        }
        let mut xs = self.xs.clone();
        let mut us = self.ys.clone();
        xs.push(R::one());
        us.push(R::one());
        SampledLineMap::new(xs, us)
    }
}

/// Increasing piecewise-linear bijection of [0,1] with u(0) = 0 and
/// u(1) = 1, extended to the line by u(x + 1) = u(x) + 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledLineMap<R: Real> {
    xs: Vec<R>,
    us: Vec<R>,
}

impl<R: Real> SampledLineMap<R> {
    /// Validates and stores the nodes: both columns strictly increasing,
    /// endpoints exactly (0,0) and (1,1).
    pub fn new(xs: Vec<R>, us: Vec<R>) -> Result<Self> {
        if xs.len() != us.len() {
            return Err(Error::InvalidInput(format!(
                "{} abscissae vs {} ordinates",
                xs.len(),
                us.len()
            )));
        }
        if xs.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 nodes, got {}",
                xs.len()
            )));
        }
        if !(xs[0] == R::zero() && us[0] == R::zero()) {
            return Err(Error::InvalidInput(format!(
                "the first node must be (0, 0), got ({}, {})",
                xs[0], us[0]
            )));
        }
        if !(*xs.last().unwrap() == R::one() && *us.last().unwrap() == R::one()) {
            return Err(Error::InvalidInput(format!(
                "the last node must be (1, 1), got ({}, {})",
                xs.last().unwrap(),
                us.last().unwrap()
            )));
        }
        for pair in xs.windows(2) {
            if !(pair[1] > pair[0]) {
                return Err(Error::InvalidInput(format!(
                    "abscissae must increase strictly, got {} then {}",
                    pair[0], pair[1]
                )));
            }
        }
        for pair in us.windows(2) {
            if !(pair[1] > pair[0]) {
                return Err(Error::InvalidMap(format!(
                    "ordinates must increase strictly, got {} then {}",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(Self { xs, us })
    }

    /// Node abscissae.
    pub fn xs(&self) -> &[R] {
        &self.xs
    }

    /// Node ordinates.
    pub fn us(&self) -> &[R] {
        &self.us
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    /// True when the map has no nodes (never, after validation).
    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Evaluates the map anywhere on the line through the periodic
    /// extension; node abscissae return their stored ordinates without
    /// interpolation rounding.
    pub fn eval(&self, x: R) -> R {
        let shift = x.floor();
        let frac = x - shift;
        if frac >= R::one() {
            // x was a negative number so tiny that x - floor(x) rounded
            // up to 1; the value there is the next integer.
            return shift + R::one();
        }
        let j = match self
            .xs
            .binary_search_by(|v| v.partial_cmp(&frac).expect("node ordering is total"))
        {
            Ok(exact) => return self.us[exact] + shift,
            Err(ins) => ins - 1,
        };
        let x0 = self.xs[j];
        let x1 = self.xs[j + 1];
        let u0 = self.us[j];
        let u1 = self.us[j + 1];
        u0 + (frac - x0) * (u1 - u0) / (x1 - x0) + shift
    }

    /// Forgets the lift back to a circle map by dropping the closing
    /// node; inverse of `SampledCircleMap::lift` sample for sample.
    pub fn descend(&self) -> Result<SampledCircleMap<R>> {
        let n = self.xs.len();
        SampledCircleMap::new(self.xs[..n - 1].to_vec(), self.us[..n - 1].to_vec())
    }
}

/// Composite circle map η₁ ∘ η₂ sampled on η₂'s abscissae: each y is
/// η₂'s ordinate pushed through the lift of η₁.
pub fn compose<R: Real>(
    eta1: &SampledCircleMap<R>,
    eta2: &SampledCircleMap<R>,
) -> Result<SampledCircleMap<R>> {
    let l1 = eta1.lift()?;
    let ys = eta2.ys().iter().map(|y| l1.eval(*y)).collect();
    SampledCircleMap::new(eta2.xs().to_vec(), ys)
}

/// Largest defect |lift(η₁∘η₂)(x) - lift(η₁)(lift(η₂)(x))| over the
/// probe grid x_j = j/grid; the lift functor is a homomorphism, so this
/// vanishes up to interpolation error.
pub fn lift_homomorphism_residual<R: Real>(
    eta1: &SampledCircleMap<R>,
    eta2: &SampledCircleMap<R>,
    grid: usize,
) -> Result<R> {
    if grid == 0 {
        return Err(Error::InvalidInput(
            "probe grid must be nonempty".to_string(),
        ));
    }
    let lc = compose(eta1, eta2)?.lift()?;
    let l1 = eta1.lift()?;
    let l2 = eta2.lift()?;
    let mut worst = R::zero();
    for j in 0..grid {
        let x = from_usize::<R>(j) / from_usize::<R>(grid);
        let dev = (lc.eval(x) - l1.eval(l2.eval(x))).abs();
        if dev > worst {
            worst = dev;
        }
    }
    Ok(worst)
}

/// Largest two-sided distortion max(ρ, 1/ρ) of
/// ρ(x, t) = (u(x+t) - u(x)) / (u(x) - u(x-t)) over the probes; equals 1
/// for the identity and grows with the quasisymmetry of the map.
pub fn qs_ratio_line<R: Real>(map: &SampledLineMap<R>, probes: &[(R, R)]) -> Result<R> {
    let mut worst = R::one();
    for (x, t) in probes {
        if !(*t > R::zero()) {
            return Err(Error::InvalidInput(format!(
                "probe offsets must be positive, got {}",
                t
            )));
        }
        let upper = map.eval(*x + *t) - map.eval(*x);
        let lower = map.eval(*x) - map.eval(*x - *t);
        if !(upper > R::zero() && lower > R::zero()) {
            return Err(Error::InvalidMap(format!(
                "flat difference quotient at x = {}, t = {}",
                x, t
            )));
        }
        let rho = upper / lower;
        let two_sided = if rho > R::one() { rho } else { rho.recip() };
        if two_sided > worst {
            worst = two_sided;
        }
    }
    Ok(worst)
}

/// Circle version of the distortion scan: probes must satisfy
/// 0 < t < 1/4 so both comparison arcs stay inside a half-circle.
pub fn qs_ratio_circle<R: Real>(map: &SampledCircleMap<R>, probes: &[(R, R)]) -> Result<R> {
    let quarter = R::one() / from_usize::<R>(4);
    for (_, t) in probes {
        if !(*t > R::zero() && *t < quarter) {
            return Err(Error::InvalidInput(format!(
                "circle probe offsets must lie in (0, 1/4), got {}",
                t
            )));
        }
    }
    qs_ratio_line(&map.lift()?, probes)
}

#[cfg(test)]
mod tests {
    use super::*;

    type C64 = Complex<f64>;

    fn c(re: f64, im: f64) -> C64 {
        Complex::new(re, im)
    }

    fn identity_map(n: usize) -> SampledCircleMap<f64> {
        let xs: Vec<f64> = (0..n).map(|k| k as f64 / n as f64).collect();
        SampledCircleMap::new(xs.clone(), xs).unwrap()
    }

    #[test]
    fn automorphism_fixes_one_bitwise() {
        for w in [c(0.3, 0.0), c(-0.2, 0.45), c(0.0, -0.499)] {
            let m = MoebiusDisc::new(w).unwrap();
            assert_eq!(m.apply(c(1.0, 0.0)).unwrap(), c(1.0, 0.0));
        }
    }

    #[test]
    fn automorphism_sends_w_to_zero() {
        let w = c(0.25, -0.4);
        let m = MoebiusDisc::new(w).unwrap();
        assert!(m.apply(w).unwrap().norm() < 1e-16);
    }

    #[test]
    fn automorphism_preserves_the_circle() {
        let m = MoebiusDisc::new(c(0.3, 0.4)).unwrap();
        for k in 0..12 {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 12.0;
            let z = C64::from_polar(1.0, theta);
            let image = m.apply(z).unwrap();
            assert!((image.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn inverse_round_trips() {
        let m = MoebiusDisc::new(c(-0.35, 0.2)).unwrap();
        for z in [c(0.1, 0.7), c(-0.5, -0.3), c(0.99, 0.0), c(0.0, 0.0)] {
            let there = m.apply(z).unwrap();
            let back = m.apply_inverse(there).unwrap();
            assert!((back - z).norm() < 1e-14, "{} -> {} -> {}", z, there, back);
        }
    }

    #[test]
    fn unit_modulus_zero_is_rejected() {
        assert!(matches!(
            MoebiusDisc::new(c(1.0, 0.0)),
            Err(Error::OutsideDomain { .. })
        ));
    }

    #[test]
    fn pole_is_rejected_and_neighbors_evaluate() {
        // w = 0.5: the pole of σ_w sits at 1/w̄ = 2.
        let m = MoebiusDisc::new(c(0.5, 0.0)).unwrap();
        assert!(matches!(
            m.apply(c(2.0, 0.0)),
            Err(Error::OutsideDomain { .. })
        ));
        // Away from the pole the formula extends beyond the disc.
        assert!(m.apply(c(3.0, 0.0)).unwrap().is_finite());
        assert!(m.apply_inverse(c(-4.0, 0.0)).unwrap().is_finite());
    }

    #[test]
    fn boundary_samples_start_at_the_fixed_point() {
        let m = MoebiusDisc::new(c(0.3, -0.1)).unwrap();
        let map = m.boundary_samples(32).unwrap();
        assert_eq!(map.len(), 32);
        assert_eq!(map.xs()[0], 0.0);
        assert_eq!(map.ys()[0], 0.0);
        assert!(map.ys()[0].is_sign_positive());
    }

    #[test]
    fn identity_automorphism_samples_the_identity() {
        let m = MoebiusDisc::new(c(0.0, 0.0)).unwrap();
        let map = m.boundary_samples(16).unwrap();
        for (x, y) in map.xs().iter().zip(map.ys().iter()) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn sample_validation_rejects_bad_input() {
        // Mismatched lengths.
        assert!(SampledCircleMap::new(vec![0.0, 0.5], vec![0.0]).is_err());
        // Wrong base point.
        assert!(SampledCircleMap::new(vec![0.1, 0.5], vec![0.1, 0.5]).is_err());
        assert!(SampledCircleMap::new(vec![0.0, 0.5], vec![0.2, 0.5]).is_err());
        // Non-increasing abscissae.
        assert!(SampledCircleMap::new(vec![0.0, 0.5, 0.5], vec![0.0, 0.2, 0.4]).is_err());
        // Abscissa at 1.
        assert!(SampledCircleMap::new(vec![0.0, 1.0], vec![0.0, 0.5]).is_err());
        // Ordinate out of range.
        assert!(SampledCircleMap::new(vec![0.0, 0.5], vec![0.0, 1.0]).is_err());
    }

    #[test]
    fn lift_of_a_valid_map_copies_the_ordinates() {
        let m = MoebiusDisc::new(c(0.2, 0.3)).unwrap();
        let map = m.boundary_samples(64).unwrap();
        let lift = map.lift().unwrap();
        assert_eq!(lift.len(), 65);
        for k in 0..64 {
            assert_eq!(lift.us()[k], map.ys()[k]);
            assert_eq!(lift.xs()[k], map.xs()[k]);
        }
        assert_eq!(lift.xs()[64], 1.0);
        assert_eq!(lift.us()[64], 1.0);
    }

    #[test]
    fn lift_rejects_degenerate_and_wrapping_maps() {
        let degenerate =
            SampledCircleMap::new(vec![0.0, 0.25, 0.5, 0.75], vec![0.0, 0.3, 0.3, 0.6]).unwrap();
        assert!(matches!(degenerate.lift(), Err(Error::InvalidMap(_))));

        let winding =
            SampledCircleMap::new(vec![0.0, 0.25, 0.5, 0.75], vec![0.0, 0.4, 0.8, 0.2]).unwrap();
        assert!(matches!(winding.lift(), Err(Error::InvalidMap(_))));

        let ambiguous =
            SampledCircleMap::new(vec![0.0, 0.25, 0.5, 0.75], vec![0.0, 0.6, 0.7, 0.8]).unwrap();
        assert!(matches!(ambiguous.lift(), Err(Error::BranchAmbiguity(_))));

        let sparse = SampledCircleMap::new(vec![0.0, 0.33, 0.66], vec![0.0, 0.2, 0.4]).unwrap();
        assert!(matches!(sparse.lift(), Err(Error::BranchAmbiguity(_))));
    }

    #[test]
    fn lift_descend_round_trips_bitwise() {
        let m = MoebiusDisc::new(c(-0.15, 0.35)).unwrap();
        let map = m.boundary_samples(48).unwrap();
        let back = map.lift().unwrap().descend().unwrap();
        assert_eq!(back, map);
    }

    #[test]
    fn lift_value_of_a_reference_automorphism() {
        // σ_{0.3} sampled at 10⁴ points; x = 0.25 is the node k = 2500,
        // where the lift equals the unwrapped boundary angle. The
        // reference value comes from high-precision evaluation of
        // arg σ_{0.3}(i) / 2π.
        let m = MoebiusDisc::new(c(0.3, 0.0)).unwrap();
        let lift = m.boundary_samples(10_000).unwrap().lift().unwrap();
        let got = lift.eval(0.25);
        assert!(
            (got - 0.34277357907774234).abs() < 1e-13,
            "u(0.25) = {:.17}",
            got
        );
    }

    #[test]
    fn perturbed_identity_descends_and_relifts_to_itself() {
        // u(x) = x + 0.1 sin(2πx)/2π is increasing with u' ∈ [0.9, 1.1];
        // the endpoint node is pinned to (1, 1) exactly.
        let n = 64;
        let mut xs: Vec<f64> = (0..n).map(|k| k as f64 / n as f64).collect();
        let mut us: Vec<f64> = xs
            .iter()
            .map(|x| {
                let t = 2.0 * std::f64::consts::PI * x;
                x + 0.1 * t.sin() / (2.0 * std::f64::consts::PI)
            })
            .collect();
        xs.push(1.0);
        us.push(1.0);
        let line = SampledLineMap::new(xs, us).unwrap();
        let again = line.descend().unwrap().lift().unwrap();
        assert_eq!(again, line);
    }

    #[test]
    fn homomorphism_residual_reference_pair() {
        let m1 = MoebiusDisc::new(c(0.2, 0.0)).unwrap();
        let m2 = MoebiusDisc::new(c(0.0, 0.1)).unwrap();
        let n = 10_000;
        let eta1 = m1.boundary_samples(n).unwrap();
        let eta2 = m2.boundary_samples(n).unwrap();
        let residual = lift_homomorphism_residual(&eta1, &eta2, n).unwrap();
        assert!(residual <= 1e-9, "residual {}", residual);
    }

    #[test]
    fn composing_with_the_identity_changes_nothing() {
        let m = MoebiusDisc::new(c(0.3, -0.25)).unwrap();
        let n = 512;
        let eta = m.boundary_samples(n).unwrap();
        let id = identity_map(n);
        let residual = lift_homomorphism_residual(&eta, &id, n).unwrap();
        assert_eq!(residual, 0.0);
        let residual = lift_homomorphism_residual(&id, &eta, n).unwrap();
        assert_eq!(residual, 0.0);
    }

    #[test]
    fn eval_interpolates_and_translates() {
        let lift = identity_map(8).lift().unwrap();
        assert_eq!(lift.eval(0.0), 0.0);
        assert_eq!(lift.eval(1.0), 1.0);
        assert_eq!(lift.eval(0.375), 0.375);
        // Periodic extension: u(x + 1) = u(x) + 1.
        assert!((lift.eval(1.3) - 1.3).abs() < 1e-15);
        assert!((lift.eval(-0.25) - (-0.25)).abs() < 1e-15);
    }

    #[test]
    fn eval_returns_node_values_without_rounding() {
        let m = MoebiusDisc::new(c(0.4, 0.1)).unwrap();
        let map = m.boundary_samples(32).unwrap();
        let lift = map.lift().unwrap();
        for k in 0..32 {
            let x = k as f64 / 32.0;
            assert_eq!(lift.eval(x), map.ys()[k]);
        }
    }

    #[test]
    fn line_map_validation_rejects_bad_nodes() {
        assert!(SampledLineMap::new(vec![0.0, 1.0], vec![0.0, 0.9]).is_err());
        assert!(SampledLineMap::new(vec![0.0, 0.9], vec![0.0, 1.0]).is_err());
        assert!(matches!(
            SampledLineMap::new(vec![0.0, 0.5, 1.0], vec![0.0, 0.0, 1.0]),
            Err(Error::InvalidMap(_))
        ));
        assert!(SampledLineMap::new(vec![0.0], vec![0.0]).is_err());
    }

    #[test]
    fn composition_matches_the_closed_form_automorphism() {
        let w1 = c(0.3, -0.2);
        let w2 = c(-0.1, 0.25);
        let m1 = MoebiusDisc::new(w1).unwrap();
        let m2 = MoebiusDisc::new(w2).unwrap();
        let n = 1024;
        let composite = compose(
            &m1.boundary_samples(n).unwrap(),
            &m2.boundary_samples(n).unwrap(),
        )
        .unwrap();
        // σ_{w1} ∘ σ_{w2} fixes 1 and sends σ_{w2}⁻¹(w1) to 0, so it is
        // the automorphism with that zero.
        let w3 = m2.apply_inverse(w1).unwrap();
        let direct = MoebiusDisc::new(w3).unwrap().boundary_samples(n).unwrap();
        let mut worst: f64 = 0.0;
        for k in 0..n {
            worst = worst.max((composite.ys()[k] - direct.ys()[k]).abs());
        }
        assert!(worst < 1e-5, "composite deviates by {}", worst);
    }

    #[test]
    fn homomorphism_residual_vanishes_on_the_sampling_grid() {
        let m1 = MoebiusDisc::new(c(0.2, 0.2)).unwrap();
        let m2 = MoebiusDisc::new(c(-0.3, 0.1)).unwrap();
        let n = 256;
        let eta1 = m1.boundary_samples(n).unwrap();
        let eta2 = m2.boundary_samples(n).unwrap();
        let residual = lift_homomorphism_residual(&eta1, &eta2, n).unwrap();
        assert_eq!(residual, 0.0);
    }

    #[test]
    fn homomorphism_residual_is_small_off_the_grid() {
        let m1 = MoebiusDisc::new(c(0.2, 0.2)).unwrap();
        let m2 = MoebiusDisc::new(c(-0.3, 0.1)).unwrap();
        let n = 4096;
        let eta1 = m1.boundary_samples(n).unwrap();
        let eta2 = m2.boundary_samples(n).unwrap();
        let residual = lift_homomorphism_residual(&eta1, &eta2, 3 * n / 2).unwrap();
        assert!(residual < 1e-7, "residual {}", residual);
    }

    #[test]
    fn identity_has_unit_distortion() {
        let lift = identity_map(16).lift().unwrap();
        let probes = [(0.3, 0.1), (0.9, 0.2), (-0.4, 0.05)];
        let ratio = qs_ratio_line(&lift, &probes).unwrap();
        assert!((ratio - 1.0).abs() < 1e-12, "ratio {}", ratio);
    }

    #[test]
    fn automorphism_distortion_is_bounded_and_nontrivial() {
        let m = MoebiusDisc::new(c(0.5, 0.0)).unwrap();
        let map = m.boundary_samples(512).unwrap();
        let probes: Vec<(f64, f64)> = (0..64)
            .map(|k| (k as f64 / 64.0, 0.01 + 0.2 * (k as f64 / 64.0)))
            .collect();
        let ratio = qs_ratio_circle(&map, &probes).unwrap();
        assert!(ratio > 1.0);
        // |σ'| ranges over [(1-|w|)/(1+|w|), (1+|w|)/(1-|w|)] = [1/3, 3],
        // so no difference quotient pair can exceed 9.
        assert!(ratio < 9.0 + 1e-9, "ratio {}", ratio);
    }

    #[test]
    fn distortion_estimate_is_stable_under_probe_refinement() {
        use rand::{Rng, SeedableRng};
        let m = MoebiusDisc::new(c(0.3, 0.0)).unwrap();
        let map = m.boundary_samples(10_000).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let probes: Vec<(f64, f64)> = (0..4000)
            .map(|_| (rng.gen::<f64>(), 0.01 + 0.23 * rng.gen::<f64>()))
            .collect();
        let coarse = qs_ratio_circle(&map, &probes[..1000]).unwrap();
        let fine = qs_ratio_circle(&map, &probes).unwrap();
        assert!(coarse > 1.0);
        // The estimate is a running maximum, so refining a nested probe
        // set can only raise it; stability means it barely does.
        assert!(fine >= coarse);
        assert!(
            fine - coarse <= 0.01 * coarse,
            "coarse {} vs fine {}",
            coarse,
            fine
        );
    }

    #[test]
    fn qs_probes_are_validated() {
        let lift = identity_map(8).lift().unwrap();
        assert!(matches!(
            qs_ratio_line(&lift, &[(0.1, 0.0)]),
            Err(Error::InvalidInput(_))
        ));
        let map = identity_map(8);
        assert!(matches!(
            qs_ratio_circle(&map, &[(0.1, 0.3)]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn single_precision_lift_round_trips() {
        let m = MoebiusDisc::<f32>::new(Complex::new(0.2f32, -0.1)).unwrap();
        let map = m.boundary_samples(32).unwrap();
        let back = map.lift().unwrap().descend().unwrap();
        assert_eq!(back, map);
    }
}
