//! Closed-form wavefunctions for the standing-wave initial state.

use num_complex::Complex64;

use super::moshinsky::moshinsky_at;
use crate::error::{Error, Result};
use crate::physics::{MirrorLaw, PhysicalContext, Scenario};

/// Standing wave in front of a wall at the origin: 2i sin(kx) for x < 0.
pub fn initial_state(x: f64, k: f64) -> Complex64 {
    if x < 0.0 {
        Complex64::new(0.0, 2.0 * (k * x).sin())
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// Wavefunction after the wall is removed at t = 0:
/// ψ = M(x,k,t) − M(x,−k,t).
pub fn psi_sudden(x: f64, t: f64, k: f64, context: &PhysicalContext) -> Result<Complex64> {
    check_time(t)?;
    Ok(moshinsky_at(x, k, t, context)? - moshinsky_at(x, -k, t, context)?)
}

/// The four Moshinsky terms of the moving-wall solution.
///
/// `m1..m4` are M(x−vt, k−q), M(x−vt, −k−q), M(vt−x, k−q), M(vt−x, −k−q)
/// with q = mv/ħ, and ψ = prefactor · (m1 − m2 − m3 + m4) on the physical
/// side of the wall. The individual terms are kept for diagnostics and are
/// evaluated formally behind the wall as well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveComponents {
    pub m1: Complex64,
    pub m2: Complex64,
    pub m3: Complex64,
    pub m4: Complex64,
    /// Galilean phase e^{i(qx − qvt/2)}.
    pub prefactor: Complex64,
    pub psi: Complex64,
    pub behind_wall: bool,
}

impl WaveComponents {
    pub fn density(&self) -> f64 {
        self.psi.norm_sqr()
    }
}

/// Moving-wall wavefunction with its four Moshinsky components.
pub fn psi_moving(x: f64, scenario: &Scenario) -> Result<WaveComponents> {
    let v = wall_velocity(scenario)?;
    let t = scenario.time();
    check_time(t)?;
    let ctx = scenario.context();
    let q = ctx.wavenumber(v);
    let k = scenario.k();
    let rel = x - v * t;

    let m1 = moshinsky_at(rel, k - q, t, ctx)?;
    let m2 = moshinsky_at(rel, -k - q, t, ctx)?;
    let m3 = moshinsky_at(-rel, k - q, t, ctx)?;
    let m4 = moshinsky_at(-rel, -k - q, t, ctx)?;
    let prefactor = galilean_phase(x, t, q, v);
    let behind_wall = rel > 0.0;
    let psi = if behind_wall {
        Complex64::new(0.0, 0.0)
    } else {
        // Paired so the wall node cancels exactly.
        prefactor * ((m1 - m3) - (m2 - m4))
    };
    Ok(WaveComponents { m1, m2, m3, m4, prefactor, psi, behind_wall })
}

/// Near-limit form v → v_k, where the first and third terms dominate:
/// ψ ≈ e^{i(qx − qvt/2)} [M(x−vt, 0, t) − M(vt−x, 0, t)].
pub fn psi_near_limit(x: f64, scenario: &Scenario) -> Result<Complex64> {
    let v = wall_velocity(scenario)?;
    let t = scenario.time();
    check_time(t)?;
    let rel = x - v * t;
    if rel > 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let ctx = scenario.context();
    let q = ctx.wavenumber(v);
    let pair = moshinsky_at(rel, 0.0, t, ctx)? - moshinsky_at(-rel, 0.0, t, ctx)?;
    Ok(galilean_phase(x, t, q, v) * pair)
}

/// Wavefunction for any mirror law, including the initial state at t = 0.
pub fn wavefunction(x: f64, scenario: &Scenario) -> Result<Complex64> {
    let t = scenario.time();
    if t == 0.0 {
        return Ok(initial_state(x, scenario.k()));
    }
    match scenario.mirror() {
        MirrorLaw::SuddenRemoval => psi_sudden(x, t, scenario.k(), scenario.context()),
        MirrorLaw::Static | MirrorLaw::Moving { .. } => Ok(psi_moving(x, scenario)?.psi),
    }
}

fn galilean_phase(x: f64, t: f64, q: f64, v: f64) -> Complex64 {
    Complex64::from_polar(1.0, q * (x - 0.5 * v * t))
}

fn wall_velocity(scenario: &Scenario) -> Result<f64> {
    scenario.mirror().velocity().ok_or_else(|| {
        Error::InvalidParameter("moving-wall solution needs a finite mirror velocity".into())
    })
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("evolved wavefunction needs t > 0, got {t}")))
    }
}

/// Classical landmarks at the evaluation time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoints {
    /// x₋ = −v_k t, the trailing edge of the stream reflected before t = 0.
    pub x_minus: f64,
    /// x₊ = (2v − v_k)t, the leading edge of the newly reflected stream.
    /// Absent after sudden removal.
    pub x_plus: Option<f64>,
    /// Wall position vt, absent after sudden removal.
    pub x_mirror: Option<f64>,
    /// v_k t, where the undisturbed incident front would be.
    pub x_front: f64,
}

/// Classical stream region of a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StreamRegion {
    /// Incident plus old reflected stream.
    Standing,
    /// Incident stream only.
    Incident,
    /// Incident plus newly reflected stream.
    Reflected,
    /// No classical particles.
    Empty,
    /// Behind the wall.
    Forbidden,
}

impl StreamRegion {
    pub fn label(self) -> &'static str {
        match self {
            Self::Standing => "standing",
            Self::Incident => "incident",
            Self::Reflected => "reflected",
            Self::Empty => "empty",
            Self::Forbidden => "forbidden",
        }
    }
}

pub fn critical_points(scenario: &Scenario) -> CriticalPoints {
    let t = scenario.time();
    let vk = scenario.beam_velocity();
    let v = scenario.mirror().velocity();
    CriticalPoints {
        x_minus: -vk * t,
        x_plus: v.map(|v| (2.0 * v - vk) * t),
        x_mirror: v.map(|v| v * t),
        x_front: vk * t,
    }
}

impl CriticalPoints {
    /// Number of classical streams at `x`.
    pub fn stream_count(&self, x: f64) -> u32 {
        if self.x_mirror.is_some_and(|m| x > m) {
            return 0;
        }
        let before_wall = |x: f64| self.x_mirror.map_or(true, |m| x < m);
        let incident = u32::from(x < self.x_front && before_wall(x));
        let old_reflected = u32::from(x <= self.x_minus);
        let new_reflected = match (self.x_plus, self.x_mirror) {
            (Some(p), Some(m)) => u32::from(x > p && x < m),
            _ => 0,
        };
        incident + old_reflected + new_reflected
    }

    pub fn region(&self, x: f64) -> StreamRegion {
        if self.x_mirror.is_some_and(|m| x > m) {
            return StreamRegion::Forbidden;
        }
        match self.stream_count(x) {
            0 => StreamRegion::Empty,
            1 => StreamRegion::Incident,
            _ if x <= self.x_minus => StreamRegion::Standing,
            _ => StreamRegion::Reflected,
        }
    }
}

/// Classical density: one unit per stream present at `x`.
///
/// At t = 0 this is the standing-wave average, 2 in front of the wall.
pub fn classical_density(x: f64, scenario: &Scenario) -> f64 {
    if scenario.time() == 0.0 {
        return if x < 0.0 { 2.0 } else { 0.0 };
    }
    f64::from(critical_points(scenario).stream_count(x))
}
