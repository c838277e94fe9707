//! Physical constants, lab-unit conversion and scenario parameters.
//!
//! Everything inside the library is SI. Lab units (cm/s, ms, μm) only appear
//! at the command-line boundary and go through [`LabUnit`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Reduced Planck constant in J·s (CODATA 2018, exact in the SI redefinition).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Mass of an ⁸⁷Rb atom in kg, used for every Rb computation in this crate.
pub const RB87_MASS: f64 = 1.443_160_60e-25;

/// Compiled-in species table: (label, mass in kg).
pub const SPECIES: &[(&str, f64)] = &[
    ("rb87", RB87_MASS),
    ("na23", 3.817_540_2e-26),
    ("cs133", 2.206_946_5e-25),
    ("he4", 6.646_477_3e-27),
    ("neutron", 1.674_927_5e-27),
];

/// Fundamental constants plus the mass of the beam species.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalContext {
    hbar: f64,
    mass: f64,
    species_label: &'static str,
}

impl PhysicalContext {
    pub fn new(hbar: f64, mass: f64, species_label: &'static str) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidParameter(format!("hbar must be positive, got {hbar}")));
        }
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidParameter(format!("mass must be positive, got {mass}")));
        }
        Ok(Self { hbar, mass, species_label })
    }

    /// The default species, ⁸⁷Rb.
    pub fn rb87() -> Self {
        Self { hbar: HBAR, mass: RB87_MASS, species_label: "rb87" }
    }

    /// Looks up a compiled-in species by label (case-insensitive).
    pub fn species(label: &str) -> Result<Self> {
        let wanted = label.to_ascii_lowercase();
        SPECIES
            .iter()
            .find(|(name, _)| *name == wanted)
            .map(|&(name, mass)| Self { hbar: HBAR, mass, species_label: name })
            .ok_or_else(|| {
                let known: Vec<_> = SPECIES.iter().map(|(n, _)| *n).collect();
                Error::InvalidParameter(format!(
                    "unknown species `{label}` (known: {})",
                    known.join(", ")
                ))
            })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn species_label(&self) -> &'static str {
        self.species_label
    }

    /// m/ħ in s/m².
    pub fn mass_over_hbar(&self) -> f64 {
        self.mass / self.hbar
    }

    /// Wavenumber of a particle moving at `velocity`: k = m v / ħ.
    pub fn wavenumber(&self, velocity: f64) -> f64 {
        self.mass * velocity / self.hbar
    }

    /// Velocity of a plane wave with wavenumber `k`: v = ħ k / m.
    pub fn velocity(&self, k: f64) -> f64 {
        self.hbar * k / self.mass
    }

    /// Free-spreading length √(ħt/m). Sets the width of every diffraction fringe.
    pub fn spread_length(&self, t: f64) -> f64 {
        (self.hbar * t / self.mass).sqrt()
    }
}

impl Default for PhysicalContext {
    fn default() -> Self {
        Self::rb87()
    }
}

/// Trajectory of the reflecting wall for t > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MirrorLaw {
    /// The wall stays at the origin.
    Static,
    /// The wall moves as x_m = v t.
    Moving { velocity: f64 },
    /// The wall disappears at t = 0 (the infinite-velocity limit).
    SuddenRemoval,
}

impl MirrorLaw {
    pub fn moving(velocity: f64) -> Result<Self> {
        if !velocity.is_finite() {
            return Err(Error::InvalidParameter(
                "mirror velocity must be finite; use SuddenRemoval for the infinite limit".into(),
            ));
        }
        Ok(Self::Moving { velocity })
    }

    /// Wall velocity, with `Static` as v = 0 and `None` for sudden removal.
    pub fn velocity(&self) -> Option<f64> {
        match *self {
            Self::Static => Some(0.0),
            Self::Moving { velocity } => Some(velocity),
            Self::SuddenRemoval => None,
        }
    }

    /// Wall position at time `t`, `None` once the wall is gone.
    pub fn position(&self, t: f64) -> Option<f64> {
        self.velocity().map(|v| v * t)
    }
}

impl fmt::Display for MirrorLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Static => write!(f, "static"),
            Self::Moving { velocity } => write!(f, "moving(v={velocity:e} m/s)"),
            Self::SuddenRemoval => write!(f, "sudden-removal"),
        }
    }
}

/// A monochromatic beam, a mirror law and an evaluation time.
///
/// The beam velocity is always derived from `k`; it is never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    context: PhysicalContext,
    k: f64,
    mirror: MirrorLaw,
    time: f64,
}

impl Scenario {
    pub fn new(context: PhysicalContext, k: f64, mirror: MirrorLaw, time: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidParameter(format!("wavenumber must be positive, got {k}")));
        }
        if !(time.is_finite() && time >= 0.0) {
            return Err(Error::InvalidParameter(format!("time must be non-negative, got {time}")));
        }
        if let MirrorLaw::Moving { velocity } = mirror {
            MirrorLaw::moving(velocity)?;
        }
        Ok(Self { context, k, mirror, time })
    }

    /// Builds a scenario from a beam velocity instead of a wavenumber.
    pub fn from_beam_velocity(
        context: PhysicalContext,
        beam_velocity: f64,
        mirror: MirrorLaw,
        time: f64,
    ) -> Result<Self> {
        Self::new(context, context.wavenumber(beam_velocity), mirror, time)
    }

    pub fn context(&self) -> &PhysicalContext {
        &self.context
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn mirror(&self) -> MirrorLaw {
        self.mirror
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn with_time(&self, time: f64) -> Result<Self> {
        Self::new(self.context, self.k, self.mirror, time)
    }

    pub fn with_mirror(&self, mirror: MirrorLaw) -> Result<Self> {
        Self::new(self.context, self.k, mirror, self.time)
    }

    /// v_k = ħk/m.
    pub fn beam_velocity(&self) -> f64 {
        self.context.velocity(self.k)
    }

    /// Mirror position at the evaluation time, `None` after sudden removal.
    pub fn mirror_position(&self) -> Option<f64> {
        self.mirror.position(self.time)
    }
}

/// Free function form of [`Scenario::beam_velocity`].
pub fn beam_velocity(s: &Scenario) -> f64 {
    s.beam_velocity()
}

/// Units accepted at the lab boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabUnit {
    CentimetrePerSecond,
    Millisecond,
    Micrometre,
    PerMetre,
    Second,
    Metre,
}

impl LabUnit {
    /// Number of lab units in one SI unit.
    fn per_si(self) -> f64 {
        match self {
            Self::CentimetrePerSecond => 1e2,
            Self::Millisecond => 1e3,
            Self::Micrometre => 1e6,
            Self::PerMetre | Self::Second | Self::Metre => 1.0,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Self::CentimetrePerSecond => "cm/s",
            Self::Millisecond => "ms",
            Self::Micrometre => "um",
            Self::PerMetre => "1/m",
            Self::Second => "s",
            Self::Metre => "m",
        }
    }
}

impl FromStr for LabUnit {
    type Err = Error;

    fn from_str(tag: &str) -> Result<Self> {
        match tag.trim() {
            "cm/s" => Ok(Self::CentimetrePerSecond),
            "ms" => Ok(Self::Millisecond),
            "μm" | "µm" | "um" => Ok(Self::Micrometre),
            "1/m" => Ok(Self::PerMetre),
            "s" => Ok(Self::Second),
            "m" => Ok(Self::Metre),
            other => Err(Error::UnknownUnit(other.to_string())),
        }
    }
}

impl fmt::Display for LabUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Converts a lab-unit value to SI.
pub fn to_si(value: f64, unit: LabUnit) -> f64 {
    value / unit.per_si()
}

/// Converts an SI value to the given lab unit.
pub fn from_si(value: f64, unit: LabUnit) -> f64 {
    value * unit.per_si()
}

/// [`to_si`] with a textual unit tag.
pub fn to_si_tagged(value: f64, tag: &str) -> Result<f64> {
    Ok(to_si(value, tag.parse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decimal_scalings() {
        assert_eq!(to_si_tagged(1.0, "cm/s").unwrap(), 0.01);
        assert_eq!(to_si_tagged(5.0, "ms").unwrap(), 0.005);
        assert_eq!(to_si_tagged(0.0, "μm").unwrap(), 0.0);
        assert_eq!(to_si_tagged(3.5, "1/m").unwrap(), 3.5);
        assert_eq!(to_si_tagged(2.0, "s").unwrap(), 2.0);
    }

    #[test]
    fn unknown_unit_is_rejected() {
        assert_eq!(to_si_tagged(1.0, "furlong"), Err(Error::UnknownUnit("furlong".into())));
    }

    #[test]
    fn beam_velocity_from_wavenumber() {
        let ctx = PhysicalContext::rb87();
        let k = ctx.mass() * 0.01 / ctx.hbar();
        let s = Scenario::new(ctx, k, MirrorLaw::Static, 1e-3).unwrap();
        assert!((beam_velocity(&s) - 0.01).abs() < 1e-17);

        let doubled = Scenario::new(ctx, 2.0 * k, MirrorLaw::Static, 1e-3).unwrap();
        assert!((doubled.beam_velocity() - 2.0 * s.beam_velocity()).abs() < 1e-17);
    }

    #[test]
    fn rb87_wavenumber_at_one_cm_per_s() {
        // k = m v / ħ = 1.44316060e-25 * 0.01 / 1.054571817e-34
        let k = PhysicalContext::rb87().wavenumber(0.01);
        assert!((k - 1.368_480_151_598_817_3e7).abs() / k < 1e-14);
        assert!((k - 1.369e7).abs() / 1.369e7 < 1e-3);
    }

    #[test]
    fn scenario_validation() {
        let ctx = PhysicalContext::rb87();
        assert!(Scenario::new(ctx, 0.0, MirrorLaw::Static, 1.0).is_err());
        assert!(Scenario::new(ctx, 1.0, MirrorLaw::Static, -1.0).is_err());
        assert!(Scenario::new(ctx, 1.0, MirrorLaw::Moving { velocity: f64::INFINITY }, 1.0).is_err());
        assert!(Scenario::new(ctx, 1.0, MirrorLaw::Moving { velocity: -0.3 }, 0.0).is_ok());
        assert!(PhysicalContext::new(-1.0, 1.0, "x").is_err());
        assert!(PhysicalContext::new(1.0, 0.0, "x").is_err());
    }

    #[test]
    fn species_lookup() {
        assert_eq!(PhysicalContext::species("Rb87").unwrap(), PhysicalContext::rb87());
        assert!(PhysicalContext::species("unobtainium").is_err());
    }

    proptest! {
        #[test]
        fn lab_round_trip_within_one_ulp(x in -1e6f64..1e6) {
            for unit in [LabUnit::CentimetrePerSecond, LabUnit::Millisecond, LabUnit::Micrometre, LabUnit::Metre] {
                let back = from_si(to_si(x, unit), unit);
                prop_assert!((back - x).abs() <= f64::EPSILON * x.abs());
            }
        }

        #[test]
        fn velocity_wavenumber_round_trip(v in 1e-4f64..1.0) {
            let ctx = PhysicalContext::rb87();
            let s = Scenario::from_beam_velocity(ctx, v, MirrorLaw::SuddenRemoval, 1e-3).unwrap();
            let k_back = s.beam_velocity() * ctx.mass() / ctx.hbar();
            prop_assert!((k_back - s.k()).abs() <= 4.0 * f64::EPSILON * s.k());
        }
    }
}
