//! The Faddeeva function w(z) = e^{-z²} erfc(-iz) and the complex erfc.
//!
//! Upper half-plane evaluation is split into three regions:
//!
//! * `|z| < 2`: Maclaurin series in double precision,
//!   `w(z) = e^{-z²} + (2iz/√π) Σ (-2z²)^m / (2m+1)!!`.
//! * `|z| ≥ 6` or `Im z ≥ 2.5`: Laplace continued fraction
//!   `w(z) = (i/√π) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...))))`, evaluated
//!   bottom-up with a term count that shrinks with `|z|`.
//! * the remaining near-axis annulus: the same Maclaurin series summed in
//!   double-double arithmetic. The terms reach `e^{|z|²}` in magnitude, so
//!   double precision alone would lose up to 16 digits there; the continued
//!   fraction converges too slowly near the real axis.
//!
//! The lower half-plane uses `w(z) = 2 e^{-z²} - w(-z)`.

use std::f64::consts::FRAC_2_SQRT_PI;

use num_complex::Complex64;

use super::ddouble::{ComplexDD, DoubleDouble};
use crate::error::{Error, Result};

const FRAC_1_SQRT_PI: f64 = 0.5 * FRAC_2_SQRT_PI;

/// Largest argument of `exp` that stays finite.
const EXP_ARG_MAX: f64 = 709.78;

const SERIES_RADIUS: f64 = 2.0;
const FRACTION_RADIUS: f64 = 6.0;
const FRACTION_MIN_IMAG: f64 = 2.5;

/// Which evaluation scheme [`faddeeva`] uses for an upper half-plane argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaddeevaRegion {
    Series,
    ExtendedSeries,
    ContinuedFraction,
}

/// Region selection for `Im z ≥ 0`.
pub fn region(z: Complex64) -> FaddeevaRegion {
    let r = z.norm();
    if r >= FRACTION_RADIUS || z.im >= FRACTION_MIN_IMAG {
        FaddeevaRegion::ContinuedFraction
    } else if r < SERIES_RADIUS {
        FaddeevaRegion::Series
    } else {
        FaddeevaRegion::ExtendedSeries
    }
}

/// Faddeeva function w(z) = e^{-z²} erfc(-iz).
///
/// Fails with [`Error::Overflow`] when `e^{-z²}` is not representable, which
/// only happens deep in the lower half-plane.
pub fn faddeeva(z: Complex64) -> Result<Complex64> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("faddeeva argument must be finite, got {z}")));
    }
    if z.im >= 0.0 {
        return Ok(upper_half_plane(z));
    }
    let gauss = exp_neg_square(z).ok_or(Error::Overflow("faddeeva"))?;
    Ok(2.0 * gauss - upper_half_plane(-z))
}

/// Complementary error function of a complex argument, erfc(z) = e^{-z²} w(iz).
pub fn erfc_complex(z: Complex64) -> Result<Complex64> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("erfc argument must be finite, got {z}")));
    }
    if z.re >= 0.0 {
        // iz lies in the closed upper half-plane.
        let gauss = exp_neg_square(z).ok_or(Error::Overflow("erfc"))?;
        Ok(gauss * upper_half_plane(Complex64::i() * z))
    } else {
        let reflected = erfc_complex(-z)?;
        Ok(Complex64::new(2.0, 0.0) - reflected)
    }
}

/// e^{-z²}, or `None` if it overflows.
pub(crate) fn exp_neg_square(z: Complex64) -> Option<Complex64> {
    let re = (z.im - z.re) * (z.im + z.re);
    if re > EXP_ARG_MAX {
        return None;
    }
    let im = -2.0 * z.re * z.im;
    Some(Complex64::from_polar(re.exp(), im))
}

fn upper_half_plane(z: Complex64) -> Complex64 {
    match region(z) {
        FaddeevaRegion::Series => maclaurin(z),
        FaddeevaRegion::ExtendedSeries => maclaurin_extended(z),
        FaddeevaRegion::ContinuedFraction => {
            let w = continued_fraction(z);
            if z.im == 0.0 {
                // Re w(x) = e^{-x²} exactly on the real axis.
                Complex64::new((-z.re * z.re).exp(), w.im)
            } else {
                w
            }
        }
    }
}

fn fraction_terms(r: f64) -> usize {
    (4.0 + 120.0 / r).ceil() as usize
}

fn continued_fraction(z: Complex64) -> Complex64 {
    let mut tail = Complex64::new(0.0, 0.0);
    for n in (1..=fraction_terms(z.norm())).rev() {
        tail = (0.5 * n as f64) / (z - tail);
    }
    Complex64::new(0.0, FRAC_1_SQRT_PI) / (z - tail)
}

fn maclaurin(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let ratio = -2.0 * z2;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut m = 1u32;
    loop {
        term = term * ratio / f64::from(2 * m + 1);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() || m > 200 {
            break;
        }
        m += 1;
    }
    (-z2).exp() + Complex64::new(0.0, FRAC_2_SQRT_PI) * z * sum
}

fn maclaurin_extended(z: Complex64) -> Complex64 {
    let x2 = DoubleDouble::square_of(z.re);
    let y2 = DoubleDouble::square_of(z.im);
    let xy = DoubleDouble::product_of(z.re, z.im);
    // -2z² = -2(x² - y²) - 4ixy
    let ratio = ComplexDD {
        re: (x2 + -y2).mul_f64(-2.0),
        im: xy.mul_f64(-4.0),
    };
    let peak_index = z.norm_sqr();
    let mut term = ComplexDD::ONE;
    let mut sum = ComplexDD::ONE;
    let mut m = 1u32;
    loop {
        term = (term * ratio).div_f64(f64::from(2 * m + 1));
        sum = sum + term;
        if (f64::from(m) > peak_index && term.norm_approx() <= 1e-33 * sum.norm_approx())
            || m > 400
        {
            break;
        }
        m += 1;
    }
    let sum = Complex64::new(sum.re.to_f64(), sum.im.to_f64());
    let gauss = exp_neg_square(z).expect("bounded argument in the annulus");
    gauss + Complex64::new(0.0, FRAC_2_SQRT_PI) * z * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn origin() {
        assert_eq!(faddeeva(Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn imaginary_unit() {
        // e * erfc(1), 30-digit reference
        let w = faddeeva(Complex64::new(0.0, 1.0)).unwrap();
        assert!(rel(w, Complex64::new(0.427_583_576_155_807_004_410_750_344_491, 0.0)) < 1e-14);
        assert!(w.im.abs() < 1e-16);
    }

    #[test]
    fn erfc_values() {
        assert_eq!(erfc_complex(Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(1.0, 0.0));
        let e1 = erfc_complex(Complex64::new(1.0, 0.0)).unwrap();
        assert!(rel(e1, Complex64::new(0.157_299_207_050_285_130_658_779_364_917, 0.0)) < 1e-14);
        let em1 = erfc_complex(Complex64::new(-1.0, 0.0)).unwrap();
        assert!((em1.re - (2.0 - 0.157_299_207_050_285_13)).abs() < 1e-15);
    }

    #[test]
    fn regions_are_all_reachable() {
        assert_eq!(region(Complex64::new(1.0, 0.5)), FaddeevaRegion::Series);
        assert_eq!(region(Complex64::new(4.0, 0.5)), FaddeevaRegion::ExtendedSeries);
        assert_eq!(region(Complex64::new(4.0, 3.0)), FaddeevaRegion::ContinuedFraction);
        assert_eq!(region(Complex64::new(7.0, 0.0)), FaddeevaRegion::ContinuedFraction);
    }

    #[test]
    fn deep_lower_half_plane_overflows() {
        assert_eq!(faddeeva(Complex64::new(0.0, -30.0)), Err(Error::Overflow("faddeeva")));
        assert!(faddeeva(Complex64::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn real_axis_real_part_is_gaussian() {
        for x in [0.5, 2.5, 5.0, 7.0, 12.0] {
            let w = faddeeva(Complex64::new(x, 0.0)).unwrap();
            assert!((w.re - (-x * x as f64).exp()).abs() <= 1e-15 * (-x * x as f64).exp().max(1e-300) + 1e-16);
        }
    }

    #[test]
    fn neighbouring_schemes_agree_on_region_boundaries() {
        // Both schemes adjacent to a boundary, evaluated at the same point.
        for angle in [0.0, 0.1, 0.3, 0.6, 1.0] {
            let dir = Complex64::from_polar(1.0, angle);
            let z = dir * SERIES_RADIUS;
            assert!(rel(maclaurin(z), maclaurin_extended(z)) < 1e-13, "r=2, angle={angle}");
            let z = dir * FRACTION_RADIUS;
            if z.im < FRACTION_MIN_IMAG {
                let (a, b) = (maclaurin_extended(z), continued_fraction(z));
                assert!(rel(a, b) < 1e-13, "r=6, angle={angle}: {}", rel(a, b));
            }
        }
        for x in [2.5, 3.0, 4.0, 5.0] {
            let z = Complex64::new(x, FRACTION_MIN_IMAG);
            let (a, b) = (maclaurin_extended(z), continued_fraction(z));
            assert!(rel(a, b) < 1e-13, "Im=2.5, x={x}: {}", rel(a, b));
        }
    }

    proptest! {
        #[test]
        fn reflection_identity(r in 0.0f64..5.0, angle in -std::f64::consts::PI..std::f64::consts::PI) {
            let z = Complex64::from_polar(r, angle);
            let sum = faddeeva(z).unwrap() + faddeeva(-z).unwrap();
            let expected = 2.0 * exp_neg_square(z).unwrap();
            let scale = expected.norm().max(faddeeva(z).unwrap().norm());
            prop_assert!((sum - expected).norm() <= 1e-12 * scale);
        }

        #[test]
        fn erfc_odd_symmetry(x in -4.0f64..4.0, y in -4.0f64..4.0) {
            let z = Complex64::new(x, y);
            let sum = erfc_complex(z).unwrap() + erfc_complex(-z).unwrap();
            let scale = erfc_complex(z).unwrap().norm().max(2.0);
            prop_assert!((sum - Complex64::new(2.0, 0.0)).norm() <= 1e-12 * scale);
        }

        #[test]
        fn conjugate_symmetry(x in -8.0f64..8.0, y in 0.0f64..8.0) {
            // w(-conj z) = conj w(z)
            let z = Complex64::new(x, y);
            let a = faddeeva(Complex64::new(-x, y)).unwrap();
            let b = faddeeva(z).unwrap().conj();
            prop_assert!(rel(a, b) < 1e-13);
        }
    }
}
