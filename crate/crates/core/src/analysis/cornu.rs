use std::f64::consts::PI;

use crate::physics::PhysicalContext;
use crate::specialfn::fresnel;

/// Dimensionless Cornu coordinate θ = √(m/πħt)·(ħk_eff t/m − x).
///
/// θ = 0 at the classical front x = ħk_eff t/m and grows behind it.
pub fn cornu_theta(x: f64, t: f64, k_eff: f64, context: &PhysicalContext) -> f64 {
    let scale = (PI * context.hbar() * t / context.mass()).sqrt();
    (context.velocity(k_eff) * t - x) / scale
}

/// Near-limit density 2[S(θ)² + C(θ)²], zero for θ ≤ 0 (behind the wall).
pub fn universal_enhanced(theta: f64) -> f64 {
    if !(theta > 0.0) {
        return 0.0;
    }
    let (c, s) = fresnel(theta);
    2.0 * (s * s + c * c)
}

/// Sudden-removal density ½{[S(θ)+½]² + [C(θ)+½]²}.
pub fn universal_ordinary(theta: f64) -> f64 {
    let (c, s) = fresnel(theta);
    0.5 * ((s + 0.5).powi(2) + (c + 0.5).powi(2))
}

/// Global maximum of [`universal_enhanced`] as (θ, value).
pub fn enhanced_peak() -> (f64, f64) {
    maximize(universal_enhanced, 0.0, 4.0)
}

/// Global maximum of [`universal_ordinary`] as (θ, value).
pub fn ordinary_peak() -> (f64, f64) {
    maximize(universal_ordinary, -1.0, 4.0)
}

/// Coarse scan for the best sample, then golden-section refinement.
fn maximize(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    const SAMPLES: usize = 4000;
    let h = (hi - lo) / SAMPLES as f64;
    let best = (0..=SAMPLES)
        .map(|i| lo + h * i as f64)
        .max_by(|a, b| f(*a).total_cmp(&f(*b)))
        .unwrap_or(lo);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (best - h, best + h);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    while (b - a).abs() > 1e-13 * (1.0 + best.abs()) {
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn theta_vanishes_at_the_front_and_changes_sign() {
        let ctx = PhysicalContext::rb87();
        let (t, k) = (0.01, ctx.wavenumber(0.01));
        let front = ctx.velocity(k) * t;
        assert!(cornu_theta(front, t, k, &ctx).abs() < 1e-12);
        assert!(cornu_theta(front - 1e-6, t, k, &ctx) > 0.0);
        assert!(cornu_theta(front + 1e-6, t, k, &ctx) < 0.0);
    }

    #[test]
    fn limits() {
        assert_eq!(universal_enhanced(0.0), 0.0);
        assert_eq!(universal_enhanced(-3.0), 0.0);
        assert!((universal_enhanced(1e6) - 1.0).abs() < 1e-6);
        assert!(universal_ordinary(-1e6) < 1e-12);
        assert!((universal_ordinary(1e6) - 1.0).abs() < 1e-6);
        assert!((universal_ordinary(0.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn peak_values() {
        let (theta, enhanced) = enhanced_peak();
        assert!((theta - 1.209_378).abs() < 1e-5);
        assert!((enhanced - 1.801_416_353_860_4).abs() < 1e-11);
        let (_, ordinary) = ordinary_peak();
        assert!((ordinary - 1.370_442_919_7).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn curves_stay_within_fresnel_envelope(theta in 1.0f64..1e3) {
            for f in [universal_enhanced, universal_ordinary] {
                let y = f(theta);
                prop_assert!((0.0..=2.0).contains(&y));
                // |C−½|, |S−½| ≤ 1/(πθ)
                let e = 1.0 / (PI * theta);
                prop_assert!((y - 1.0).abs() <= 4.0 * e + 4.0 * e * e + 1e-12);
            }
        }
    }
}
