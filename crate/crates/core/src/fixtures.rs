//! Reference curves used by the examples and tests.

use crate::curve::{CurveSpec, Frequency, TrigSeries, TrigTerm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn term(num: i64, den: i64, cos: f64, sin: f64) -> TrigTerm {
    TrigTerm::new(Frequency::new(num, den), cos, sin)
}

/// `t ↦ (cos t, sin t)`.
pub fn unit_circle() -> CurveSpec {
    CurveSpec::fourier(
        TrigSeries::new(0.0, vec![term(1, 1, 1.0, 0.0)]),
        TrigSeries::new(0.0, vec![term(1, 1, 0.0, 1.0)]),
    )
}

/// `t ↦ (a cos t, b sin t)`.
pub fn ellipse(a: f64, b: f64) -> CurveSpec {
    CurveSpec::fourier(
        TrigSeries::new(0.0, vec![term(1, 1, a, 0.0)]),
        TrigSeries::new(0.0, vec![term(1, 1, 0.0, b)]),
    )
}

/// The 2-rosette with support function `14 + 3 cos(3t/2) + 0.2 sin(5t/2)`.
pub fn two_rosette() -> CurveSpec {
    CurveSpec::support(TrigSeries::new(14.0, vec![term(3, 2, 3.0, 0.0), term(5, 2, 0.0, 0.2)]))
}

/// Convex oval with support function `1 + ε cos 3t`.
pub fn trefoil_oval(eps: f64) -> CurveSpec {
    CurveSpec::support(TrigSeries::new(1.0, vec![term(3, 1, eps, 0.0)]))
}

/// `z = e^{it} + a e^{2it}`: two inflexions for `1/4 < a < 1/2`, perturbed
/// by `e^{3it}/100` so that no symmetry survives.
pub fn bean(a: f64) -> CurveSpec {
    CurveSpec::fourier(
        TrigSeries::new(0.0, vec![term(1, 1, 1.0, 0.0), term(2, 1, a, 0.0), term(3, 1, 0.0, 0.01)]),
        TrigSeries::new(0.0, vec![term(1, 1, 0.0, 1.0), term(2, 1, 0.0, a), term(3, 1, 0.01, 0.0)]),
    )
}

/// `z = e^{it} + 0.15 e^{3it}` plus a small `e^{2it}` term: four inflexions.
pub fn four_inflexion() -> CurveSpec {
    CurveSpec::fourier(
        TrigSeries::new(0.0, vec![term(1, 1, 1.0, 0.0), term(3, 1, 0.15, 0.0), term(2, 1, 0.02, 0.01)]),
        TrigSeries::new(0.0, vec![term(1, 1, 0.0, 1.0), term(3, 1, 0.0, 0.15), term(2, 1, -0.01, 0.02)]),
    )
}

/// `z = e^{it} + e^{2it}/4`: curvature touches zero at `t = π`.
pub fn undulation() -> CurveSpec {
    CurveSpec::fourier(
        TrigSeries::new(0.0, vec![term(1, 1, 1.0, 0.0), term(2, 1, 0.25, 0.0)]),
        TrigSeries::new(0.0, vec![term(1, 1, 0.0, 1.0), term(2, 1, 0.0, 0.25)]),
    )
}

/// `z = e^{it} + e^{2it}/2`: stationary at `t = π`.
pub fn cardioid_like() -> CurveSpec {
    CurveSpec::fourier(
        TrigSeries::new(0.0, vec![term(1, 1, 1.0, 0.0), term(2, 1, 0.5, 0.0)]),
        TrigSeries::new(0.0, vec![term(1, 1, 0.0, 1.0), term(2, 1, 0.0, 0.5)]),
    )
}

/// Random n-rosette: support `14 + Σₖ aₖ cos(kt/n) + bₖ sin(kt/n)` for
/// `k = 1..=2n+1` with coefficients uniform in `[-0.3, 0.3]`. Frequencies
/// equal to 1 are skipped (they only translate the curve).
pub fn random_rosette(n: i64, seed: u64) -> CurveSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for k in 1..=(2 * n + 1) {
        let (a, b) = (rng.gen_range(-0.3..=0.3), rng.gen_range(-0.3..=0.3));
        let f = Frequency::new(k, n);
        if f != Frequency::from_integer(1) {
            terms.push(TrigTerm::new(f, a, b));
        }
    }
    CurveSpec::support(TrigSeries::new(14.0, terms))
}
