use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::physics::Scenario;

/// Spatial discretisation of the kinetic energy on the grid oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpatialScheme {
    /// Sine-basis (Dirichlet) spectral derivative.
    Spectral,
    /// Three-point finite-difference Laplacian.
    FiniteDifference,
}

/// How the Crank–Nicolson steps are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stepping {
    /// In the sine eigenbasis: each mode picks up the n-step Cayley phase in
    /// closed form.
    Diagonal,
    /// Step by step with a tridiagonal solve (finite differences only).
    Tridiagonal,
}

/// Treatment of the initial state beyond the truncation window in the
/// quadrature oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailTreatment {
    /// Support cut to [−L, 0]; the missing tail is only estimated.
    Truncate,
    /// The tail (−∞, −L] is integrated along x' = −L − u e^{iπ/4}, u ≥ 0.
    ContourClosure,
}

/// Parameters of both numerical oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Grid box length L in the wall frame: y ∈ [−L, 0] (or [−L, L] without a wall).
    pub domain_length: f64,
    /// Interior grid points N.
    pub grid_points: usize,
    pub time_step: f64,
    /// Quadrature support [−L_q, 0].
    pub truncation_window: f64,
    /// Lab-frame (x_lo, x_hi) where results are reported.
    pub comparison_window: (f64, f64),
    pub scheme: SpatialScheme,
    pub stepping: Stepping,
    pub tail: TailTreatment,
    /// Largest acceptable estimated quadrature error (density units).
    pub tolerance: f64,
}

/// Largest kinetic phase per time step on the grid.
pub const MAX_STEP_PHASE: f64 = 0.1;

impl OracleConfig {
    /// Suggested configuration for `scenario` on the lab-frame `window`.
    pub fn suggested(scenario: &Scenario, window: (f64, f64)) -> Result<Self> {
        check_window(window)?;
        if !(scenario.time() > 0.0) {
            return Err(Error::InvalidParameter("oracles need t > 0".into()));
        }
        let g = Geometry::new(scenario, window);
        let scheme = SpatialScheme::Spectral;
        let h = suggested_spacing(scenario, scheme);
        // The far wall launches an edge wave whose tail moves at every speed the
        // grid can carry, so the margin follows the fastest grid mode, not the beam.
        let grid_reach = 1.25 * max_group_speed(scenario, h, scheme) * g.t + 10.0 * g.sigma;
        let extent = match g.wall {
            Some(_) => g.far_extent(),
            None => g.far_extent().max(g.right_extent()),
        };
        let needed = extent + g.reach().max(grid_reach);
        // Round the cell count up and stretch the box rather than shrink h.
        let cells = (g.box_length(needed) / h).ceil().max(32.0) as usize;
        let cells = cells.next_power_of_two();
        let box_length = cells as f64 * h;
        let domain_length = if g.wall.is_some() { box_length } else { 0.5 * box_length };
        let grid_points = cells - 1;
        let time_step = suggested_step(scenario, box_length, grid_points, scheme);
        Ok(Self {
            domain_length,
            grid_points,
            time_step,
            truncation_window: g.far_extent() + (g.vk + g.v.abs()) * g.t + 50.0 * g.sigma,
            comparison_window: window,
            scheme,
            stepping: Stepping::Diagonal,
            tail: TailTreatment::ContourClosure,
            tolerance: 1e-4,
        })
    }

    /// Checks the grid-oracle guards.
    pub fn check_grid(&self, scenario: &Scenario) -> Result<()> {
        check_window(self.comparison_window)?;
        let g = Geometry::new(scenario, self.comparison_window);
        let suggest = || self.suggestion(scenario);
        if !(self.domain_length.is_finite() && self.domain_length > 0.0) {
            return Err(Error::OracleConfig {
                reason: format!("domain length must be positive, got {:e} m", self.domain_length),
                suggestion: suggest(),
            });
        }
        let clearance = self.domain_length - g.far_extent();
        if clearance <= g.reach() {
            return Err(Error::OracleConfig {
                reason: format!(
                    "causality guard: the far wall is {clearance:.3e} m from the window, \
                     but boundary effects travel {:.3e} m",
                    g.reach()
                ),
                suggestion: suggest(),
            });
        }
        if g.wall.is_none() && self.domain_length - g.right_extent() <= g.reach() {
            return Err(Error::OracleConfig {
                reason: "causality guard: the right wall is too close to the window".into(),
                suggestion: suggest(),
            });
        }
        if self.grid_points < 16 {
            return Err(Error::OracleConfig {
                reason: format!("{} grid points are too few", self.grid_points),
                suggestion: suggest(),
            });
        }
        if !(self.time_step > 0.0 && self.time_step.is_finite()) {
            return Err(Error::OracleConfig {
                reason: format!("time step must be positive, got {:e}", self.time_step),
                suggestion: suggest(),
            });
        }
        let phase = max_mode_frequency(scenario, g.box_length(self.domain_length), self.grid_points, self.scheme)
            * self.time_step;
        if phase >= MAX_STEP_PHASE {
            return Err(Error::OracleConfig {
                reason: format!("kinetic phase per step {phase:.3} rad exceeds {MAX_STEP_PHASE} rad"),
                suggestion: suggest(),
            });
        }
        if self.stepping == Stepping::Tridiagonal && self.scheme == SpatialScheme::Spectral {
            return Err(Error::OracleConfig {
                reason: "tridiagonal stepping needs the finite-difference scheme".into(),
                suggestion: "use diagonal stepping or the finite-difference scheme".into(),
            });
        }
        Ok(())
    }

    /// Checks the quadrature-oracle guards.
    pub fn check_quadrature(&self, scenario: &Scenario) -> Result<()> {
        check_window(self.comparison_window)?;
        if !(self.truncation_window >= 0.0 && self.truncation_window.is_finite()) {
            return Err(Error::OracleConfig {
                reason: format!("truncation window must be non-negative, got {:e}", self.truncation_window),
                suggestion: self.suggestion(scenario),
            });
        }
        if self.tail == TailTreatment::ContourClosure {
            let g = Geometry::new(scenario, self.comparison_window);
            // The rotated tail decays only if every point sees the cut beyond
            // the distance its fastest component travels.
            let needed = g.far_extent() + (g.vk + g.v.abs()) * g.t + 5.0 * g.sigma;
            if self.truncation_window < needed {
                return Err(Error::OracleConfig {
                    reason: format!(
                        "contour closure needs a truncation window of at least {needed:.3e} m, got {:.3e} m",
                        self.truncation_window
                    ),
                    suggestion: self.suggestion(scenario),
                });
            }
        }
        Ok(())
    }

    fn suggestion(&self, scenario: &Scenario) -> String {
        match Self::suggested(scenario, self.comparison_window) {
            Ok(s) => format!(
                "L = {:.4e} m, N = {}, dt = {:.4e} s, truncation window = {:.4e} m",
                s.domain_length, s.grid_points, s.time_step, s.truncation_window
            ),
            Err(e) => e.to_string(),
        }
    }

    /// Key/value pairs for report headers.
    pub fn entries(&self) -> Vec<(String, String)> {
        vec![
            ("domain_length_m".into(), format!("{:.12e}", self.domain_length)),
            ("grid_points".into(), self.grid_points.to_string()),
            ("time_step_s".into(), format!("{:.12e}", self.time_step)),
            ("truncation_window_m".into(), format!("{:.12e}", self.truncation_window)),
            ("window_lo_m".into(), format!("{:.12e}", self.comparison_window.0)),
            ("window_hi_m".into(), format!("{:.12e}", self.comparison_window.1)),
            ("scheme".into(), self.scheme.to_string()),
            ("stepping".into(), self.stepping.to_string()),
            ("tail".into(), self.tail.to_string()),
            ("tolerance".into(), format!("{:.12e}", self.tolerance)),
        ]
    }
}

impl fmt::Display for SpatialScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Spectral => "spectral",
            Self::FiniteDifference => "finite-difference",
        })
    }
}

impl fmt::Display for Stepping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Diagonal => "diagonal",
            Self::Tridiagonal => "tridiagonal",
        })
    }
}

impl fmt::Display for TailTreatment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Truncate => "truncate",
            Self::ContourClosure => "contour-closure",
        })
    }
}

fn check_window(window: (f64, f64)) -> Result<()> {
    if window.0.is_finite() && window.1.is_finite() && window.0 < window.1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "comparison window must satisfy x_lo < x_hi, got ({:e}, {:e})",
            window.0, window.1
        )))
    }
}

/// Window geometry in the frame where the wall (if any) is at rest.
struct Geometry {
    vk: f64,
    v: f64,
    t: f64,
    sigma: f64,
    wall: Option<f64>,
    y_lo: f64,
    y_hi: f64,
}

impl Geometry {
    fn new(scenario: &Scenario, window: (f64, f64)) -> Self {
        let t = scenario.time();
        let v = scenario.mirror().velocity();
        let shift = v.unwrap_or(0.0) * t;
        Self {
            vk: scenario.beam_velocity(),
            v: v.unwrap_or(0.0),
            t,
            sigma: scenario.context().spread_length(t),
            wall: v,
            y_lo: window.0 - shift,
            y_hi: window.1 - shift,
        }
    }

    /// Distance from the origin to the left end of the window.
    fn far_extent(&self) -> f64 {
        (-self.y_lo).max(0.0)
    }

    fn right_extent(&self) -> f64 {
        self.y_hi.max(0.0)
    }

    /// How far disturbances from a box wall can travel: (v_k + |v|)t + 10σ.
    fn reach(&self) -> f64 {
        (self.vk + self.v.abs()) * self.t + 10.0 * self.sigma
    }

    /// Length of the grid box.
    fn box_length(&self, domain_length: f64) -> f64 {
        if self.wall.is_some() {
            domain_length
        } else {
            2.0 * domain_length
        }
    }
}

/// Highest angular frequency ħκ²/2m represented on the grid.
pub(crate) fn max_mode_frequency(scenario: &Scenario, box_length: f64, n: usize, scheme: SpatialScheme) -> f64 {
    let ctx = scenario.context();
    let h = box_length / (n as f64 + 1.0);
    let kappa2 = match scheme {
        SpatialScheme::Spectral => (PI / h).powi(2),
        SpatialScheme::FiniteDifference => 4.0 / (h * h),
    };
    0.5 * ctx.hbar() / ctx.mass() * kappa2
}

fn suggested_spacing(scenario: &Scenario, scheme: SpatialScheme) -> f64 {
    let q = scenario.mirror().velocity().map_or(0.0, |v| scenario.context().wavenumber(v).abs());
    let k_max = scenario.k() + q;
    match scheme {
        SpatialScheme::Spectral => PI / (8.0 * k_max),
        SpatialScheme::FiniteDifference => PI / (64.0 * k_max),
    }
}

/// Largest group velocity of a grid mode at spacing `h`.
fn max_group_speed(scenario: &Scenario, h: f64, scheme: SpatialScheme) -> f64 {
    let ctx = scenario.context();
    let kappa = match scheme {
        SpatialScheme::Spectral => PI / h,
        // dω/dκ = (ħ/m) sin(κh)/h peaks at κh = π/2.
        SpatialScheme::FiniteDifference => 1.0 / h,
    };
    ctx.hbar() / ctx.mass() * kappa
}

fn suggested_step(scenario: &Scenario, box_length: f64, n: usize, scheme: SpatialScheme) -> f64 {
    let t = scenario.time();
    let ctx = scenario.context();
    let q = scenario.mirror().velocity().map_or(0.0, |v| ctx.wavenumber(v).abs());
    let k_max = scenario.k() + q;
    let omega = 0.5 * ctx.hbar() / ctx.mass() * k_max * k_max;
    // Cayley phase error per step is (ω dt)³/12; keep the accumulated error
    // of the fastest physical mode near 1e-7 rad. Diagonal stepping costs the
    // same for any step count.
    let accurate = (12.0e-7 / (t * omega.powi(3))).sqrt();
    let stable = 0.5 * MAX_STEP_PHASE / max_mode_frequency(scenario, box_length, n, scheme);
    let dt = accurate.min(stable);
    t / (t / dt).ceil()
}
