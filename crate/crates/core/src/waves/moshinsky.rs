//! The Moshinsky function M(x, k, t) and its large-|z| expansion.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::physics::PhysicalContext;
use crate::specialfn::ddouble::DoubleDouble;
use crate::specialfn::{faddeeva, gamma_half};

/// Arguments of the Moshinsky function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoshinskyArgs {
    pub x: f64,
    /// Signed wavenumber.
    pub k: f64,
    /// Elapsed time, strictly positive.
    pub t: f64,
    pub context: PhysicalContext,
}

impl MoshinskyArgs {
    pub fn new(x: f64, k: f64, t: f64, context: PhysicalContext) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!(
                "Moshinsky function needs t > 0 (got {t}); use the initial state at t = 0"
            )));
        }
        if !(x.is_finite() && k.is_finite()) {
            return Err(Error::Domain("Moshinsky arguments must be finite".into()));
        }
        Ok(Self { x, k, t, context })
    }

    /// Real scale s with z = (1+i)/2 · s, s = √(ħt/m)(k − mx/ħt).
    ///
    /// `s > 0` is the classical side x < ħkt/m.
    pub fn scaled_offset(&self) -> f64 {
        let sigma = self.context.spread_length(self.t);
        self.k * sigma - self.x / sigma
    }

    /// z = (1+i)/2 · √(ħt/m) (k − mx/ħt).
    pub fn z(&self) -> Complex64 {
        let half = 0.5 * self.scaled_offset();
        Complex64::new(half, half)
    }

    /// Quadratic phase m x² / 2ħt.
    fn chirp_phase(&self) -> f64 {
        let u = self.x / self.context.spread_length(self.t);
        0.5 * u * u
    }

    /// Phase of the plane wave e^{ikx − iħk²t/2m}, reduced to [−π, π].
    ///
    /// The phase reaches 1e5 rad for fast atoms, so it is accumulated in
    /// double-double to keep e^{iφ} accurate to rounding for exact inputs.
    fn plane_wave_phase(&self) -> f64 {
        let c = &self.context;
        let spread = DoubleDouble::product_of(c.hbar(), self.t).div_f64(c.mass());
        let dispersion = (spread * DoubleDouble::square_of(self.k)).mul_f64(0.5);
        (DoubleDouble::product_of(self.k, self.x) + -dispersion).reduce_angle()
    }

    /// On the classical side of the front (x ≤ ħkt/m).
    pub fn in_classical_region(&self) -> bool {
        self.scaled_offset() >= 0.0
    }
}

/// M(x,k,t) = e^{imx²/2ħt}/2 · w(−z).
///
/// On the classical side −z lies in the third quadrant; there the reflection
/// w(−z) = 2e^{−z²} − w(z) is applied analytically, and the Gaussian factor
/// combines with the chirp into the plane wave e^{ikx − iħk²t/2m}. Both
/// branches therefore only evaluate w on the first-quadrant ray, and the
/// plane wave is formed from its own (small) phase instead of the difference
/// of two large ones.
pub fn moshinsky(args: &MoshinskyArgs) -> Result<Complex64> {
    let s = args.scaled_offset();
    let chirp = Complex64::from_polar(1.0, args.chirp_phase());
    let ray = Complex64::new(0.5 * s.abs(), 0.5 * s.abs());
    let w = faddeeva(ray)?;
    if s > 0.0 {
        Ok(Complex64::from_polar(1.0, args.plane_wave_phase()) - 0.5 * chirp * w)
    } else {
        Ok(0.5 * chirp * w)
    }
}

/// Convenience form of [`moshinsky`] for already-validated arguments.
pub(crate) fn moshinsky_at(x: f64, k: f64, t: f64, context: &PhysicalContext) -> Result<Complex64> {
    moshinsky(&MoshinskyArgs { x, k, t, context: *context })
}

/// Result of the large-|z| expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticValue {
    pub value: Complex64,
    pub in_classical_region: bool,
    /// Highest series index actually summed.
    pub terms_used: u32,
}

/// Smallest |z| accepted by [`moshinsky_asymptotic`].
pub const ASYMPTOTIC_MIN_ABS_Z: f64 = 2.0;

/// Large-|z| expansion
/// M ∼ Θ(v_k t − x) e^{ikx − iħk²t/2m} + e^{imx²/2ħt}/(2πi) Σₙ Γ(n+½)/z^{2n+1}.
///
/// The divergent series is cut at min(`n_max`, ⌊|z|²⌋), the index of its
/// smallest term.
pub fn moshinsky_asymptotic(args: &MoshinskyArgs, n_max: u32) -> Result<AsymptoticValue> {
    let z = args.z();
    let abs_z = z.norm();
    if abs_z < ASYMPTOTIC_MIN_ABS_Z {
        return Err(Error::Domain(format!(
            "asymptotic expansion needs |z| >= {ASYMPTOTIC_MIN_ABS_Z}, got |z| = {abs_z:.3e}"
        )));
    }
    let optimal = (abs_z * abs_z).floor().min(f64::from(u32::MAX)) as u32;
    let last = n_max.min(optimal);

    let inv_z2 = (z * z).inv();
    let mut power = z.inv();
    let mut series = Complex64::new(0.0, 0.0);
    for n in 0..=last {
        series += gamma_half(n)? * power;
        power *= inv_z2;
    }
    let prefactor = Complex64::from_polar(1.0, args.chirp_phase()) / Complex64::new(0.0, 2.0 * PI);
    let mut value = prefactor * series;
    let classical = args.in_classical_region();
    if classical {
        value += Complex64::from_polar(1.0, args.plane_wave_phase());
    }
    Ok(AsymptoticValue { value, in_classical_region: classical, terms_used: last })
}
