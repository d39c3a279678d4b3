//! Gauss-Legendre nodes and weights on [-1, 1], computed by Newton
//! iteration on the three-term Legendre recurrence.

use crate::scalar::{from_f64, from_usize, Real};

/// Legendre polynomial value and derivative at x via the recurrence
/// (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
fn legendre_pair<R: Real>(n: usize, x: R) -> (R, R) {
    let mut p_prev = R::one();
    let mut p = x;
    for k in 1..n {
        let kf = from_usize::<R>(k);
        let p_next = ((kf + kf + R::one()) * x * p - kf * p_prev) / (kf + R::one());
        p_prev = p;
        p = p_next;
    }
    let nf = from_usize::<R>(n);
    let deriv = nf * (x * p - p_prev) / (x * x - R::one());
    (p, deriv)
}

/// Nodes (ascending) and weights of the n-point Gauss-Legendre rule on
/// [-1, 1].
pub(crate) fn gauss_legendre<R: Real>(n: usize) -> (Vec<R>, Vec<R>) {
    assert!(n >= 1, "a quadrature rule needs at least one node");
    let mut nodes = vec![R::zero(); n];
    let mut weights = vec![R::zero(); n];
    let two = from_f64::<R>(2.0);
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, accurate enough for Newton from the start.
        let guess = (R::PI() * (from_usize::<R>(i) + from_f64::<R>(0.75))
            / (from_usize::<R>(n) + from_f64::<R>(0.5)))
        .cos();
        let mut x = guess;
        let mut deriv = R::one();
        for _ in 0..100 {
            let (p, d) = legendre_pair(n, x);
            deriv = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= R::epsilon() {
                break;
            }
        }
        let w = two / ((R::one() - x * x) * deriv * deriv);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    if !n.is_multiple_of(2) {
        // The middle node is exactly zero by symmetry.
        nodes[n / 2] = R::zero();
        let (_, d) = legendre_pair(n, R::zero());
        weights[n / 2] = two / (d * d);
    }
    (nodes, weights)
}
