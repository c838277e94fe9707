//! Fresnel integrals C(θ) = ∫₀^θ cos(πt²/2) dt and S(θ) = ∫₀^θ sin(πt²/2) dt.
//!
//! Evaluated through the complex error function,
//! C + iS = (1+i)/2 · erf((√π/2)(1-i)θ) = (1+i)/2 · [1 - e^{iπθ²/2} w((√π/2)(1+i)θ)],
//! so the Faddeeva kernel is the only accuracy-critical routine.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::ddouble::DoubleDouble;
use super::faddeeva::faddeeva;

const HALF_SQRT_PI: f64 = 0.886_226_925_452_758;

/// Returns `(C(θ), S(θ))`. Both are odd in θ and tend to 1/2 as θ → ∞.
pub fn fresnel(theta: f64) -> (f64, f64) {
    if theta == 0.0 || !theta.is_finite() {
        return match theta {
            t if t == f64::INFINITY => (0.5, 0.5),
            t if t == f64::NEG_INFINITY => (-0.5, -0.5),
            t => (t, t),
        };
    }
    let sign = theta.signum();
    let t = theta.abs();
    let arg = Complex64::new(HALF_SQRT_PI * t, HALF_SQRT_PI * t);
    // Upper half-plane argument: never overflows.
    let w = faddeeva(arg).expect("first-quadrant Faddeeva argument");
    let erf = Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, half_pi_square_phase(t)) * w;
    let cs = Complex64::new(0.5, 0.5) * erf;
    (sign * cs.re, sign * cs.im)
}

/// πθ²/2 reduced modulo 2π, with θ² carried to double-double precision so
/// the reduction stays accurate for large θ.
fn half_pi_square_phase(theta: f64) -> f64 {
    let sq = DoubleDouble::square_of(theta);
    // πθ²/2 mod 2π  ⇔  (θ² mod 4)·π/2
    let reduced = sq.hi % 4.0 + sq.lo;
    FRAC_PI_2 * reduced
}

/// Direct power series for C and S, used as an independent cross-check for
/// moderate arguments (|θ| ≲ 3; cancellation grows like e^{πθ²/2} beyond).
pub fn fresnel_series(theta: f64) -> (f64, f64) {
    let x = theta;
    let x2 = x * x;
    let a = PI / 2.0 * x2;
    // Accumulate u_n = (iπx²/2)^n / n! · x / (2n+1): C = Σ Re, S = Σ Im.
    let mut power = Complex64::new(x, 0.0);
    let mut c = 0.0;
    let mut s = 0.0;
    for n in 0..200u32 {
        let term = power / f64::from(2 * n + 1);
        c += term.re;
        s += term.im;
        if term.norm() < 1e-18 * (c.abs() + s.abs()).max(f64::MIN_POSITIVE) && n > 2 {
            break;
        }
        power = power * Complex64::new(0.0, a) / f64::from(n + 1);
    }
    (c, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn at_zero() {
        assert_eq!(fresnel(0.0), (0.0, 0.0));
    }

    #[test]
    fn at_one_against_high_precision_values() {
        // C(1), S(1) to 30 digits
        let (c, s) = fresnel(1.0);
        assert!((c - 0.779_893_400_376_822_829_474_206_413_653).abs() < 1e-14);
        assert!((s - 0.438_259_147_390_354_766_076_756_696_625).abs() < 1e-14);
    }

    #[test]
    fn large_argument_envelope() {
        for t in [10.0, 25.0, 100.0, 1e4] {
            let (c, s) = fresnel(t);
            let env = 1.0 / (PI * t);
            assert!((c - 0.5).abs() <= env * 1.0001, "C({t})");
            assert!((s - 0.5).abs() <= env * 1.0001, "S({t})");
        }
        let (c, s) = fresnel(10.0);
        assert!((c - 0.5).abs() <= 0.04 && (s - 0.5).abs() <= 0.04);
    }

    #[test]
    fn infinities() {
        assert_eq!(fresnel(f64::INFINITY), (0.5, 0.5));
        assert_eq!(fresnel(f64::NEG_INFINITY), (-0.5, -0.5));
    }

    proptest! {
        #[test]
        fn odd_parity(t in 0.0f64..50.0) {
            let (c, s) = fresnel(t);
            let (cm, sm) = fresnel(-t);
            prop_assert_eq!(cm, -c);
            prop_assert_eq!(sm, -s);
        }

        #[test]
        fn erf_route_matches_power_series(t in -3.0f64..3.0) {
            let (c, s) = fresnel(t);
            let (cs, ss) = fresnel_series(t);
            prop_assert!((c - cs).abs() < 1e-10 && (s - ss).abs() < 1e-10);
        }
    }
}
