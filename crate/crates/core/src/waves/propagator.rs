//! Free-particle and moving-wall propagators.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::physics::PhysicalContext;

/// Free-particle propagator
/// K₀(x,t|x',t') = [m / 2πiħ(t−t')]^{1/2} e^{im(x−x')²/2ħ(t−t')}.
pub fn propagator_free(
    x: f64,
    t: f64,
    x_src: f64,
    t_src: f64,
    context: &PhysicalContext,
) -> Result<Complex64> {
    let tau = t - t_src;
    if !(tau > 0.0) {
        return Err(Error::Domain(format!(
            "propagator needs t > t' (got t = {t}, t' = {t_src})"
        )));
    }
    Ok(free_kernel(x - x_src, tau, context))
}

/// K₀ for displacement `dx` over elapsed time `tau > 0`.
pub(crate) fn free_kernel(dx: f64, tau: f64, context: &PhysicalContext) -> Complex64 {
    let sigma = context.spread_length(tau);
    let u = dx / sigma;
    // √(m/2πiħτ) = e^{−iπ/4} / √(2π) σ
    let amplitude = 1.0 / ((2.0 * PI).sqrt() * sigma);
    Complex64::from_polar(amplitude, 0.5 * u * u - 0.25 * PI)
}

/// Propagator for a wall moving as x_m = vt, built from an image source in
/// the co-moving frame and a Galilean phase:
///
/// K = e^{i(m/ħ)[v(x−vt) − v(x'−vt') + v²(t−t')/2]}
///     · [K₀(x−vt, t | x'−vt', t') − K₀(x−vt, t | −x'+vt', t')].
///
/// Both points must lie on the physical side of the wall.
pub fn propagator_moving_wall(
    x: f64,
    t: f64,
    x_src: f64,
    t_src: f64,
    velocity: f64,
    context: &PhysicalContext,
) -> Result<Complex64> {
    let tau = t - t_src;
    if !(tau > 0.0) {
        return Err(Error::Domain(format!(
            "propagator needs t > t' (got t = {t}, t' = {t_src})"
        )));
    }
    let y = x - velocity * t;
    let y_src = x_src - velocity * t_src;
    if y > 0.0 || y_src > 0.0 {
        return Err(Error::Domain(format!(
            "both points must satisfy x <= vt (x - vt = {y:e}, x' - vt' = {y_src:e})"
        )));
    }
    let q = context.wavenumber(velocity);
    let galilean = Complex64::from_polar(1.0, q * (y - y_src + 0.5 * velocity * tau));
    let image = free_kernel(y - y_src, tau, context) - free_kernel(y + y_src, tau, context);
    Ok(galilean * image)
}
