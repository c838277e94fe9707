use std::f64::consts::PI;

use super::profile::{linspace, profile, DensityProfile};
use crate::error::{Error, Result};
use crate::physics::{MirrorLaw, Scenario};

/// Main fringe next to the matter-wave front.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeStats {
    pub p_max: f64,
    pub p_min: f64,
    pub x_peak: f64,
    pub x_min: f64,
    /// (p_max − p_min)/(p_max + p_min).
    pub visibility: f64,
    /// Twice the peak-to-minimum distance.
    pub fringe_width: f64,
}

impl FringeStats {
    fn new(p_max: f64, p_min: f64, x_peak: f64, x_min: f64) -> Result<Self> {
        let p_min = p_min.max(0.0);
        if !(p_max > p_min) {
            return Err(Error::Analysis(format!(
                "degenerate fringe: peak {p_max} is not above minimum {p_min}"
            )));
        }
        Ok(Self {
            p_max,
            p_min,
            x_peak,
            x_min,
            visibility: (p_max - p_min) / (p_max + p_min),
            fringe_width: 2.0 * (x_peak - x_min).abs(),
        })
    }
}

/// Fraction of the profile maximum that marks the edge of the front.
const FRONT_LEVEL: f64 = 0.25;

/// Finds the main fringe: scanning left from the front (bounded by the wall),
/// the first local maximum and the first local minimum behind it, both refined
/// by parabolic interpolation.
pub fn main_fringe(p: &DensityProfile) -> Result<FringeStats> {
    let (xs, d) = (&p.xs, &p.densities);
    if xs.len() < 5 {
        return Err(Error::Analysis("profile too short for fringe detection".into()));
    }
    let mut right = xs.len() - 1;
    if let Some(xm) = p.scenario.mirror_position() {
        right = xs.iter().rposition(|&x| x <= xm).ok_or_else(|| {
            Error::Analysis("the whole profile lies behind the wall".into())
        })?;
    }
    let level = FRONT_LEVEL * d[..=right].iter().cloned().fold(0.0, f64::max);
    if level <= 0.0 {
        return Err(Error::Analysis("profile vanishes in front of the wall".into()));
    }

    let mut j = right;
    while j > 0 && d[j] < level {
        j -= 1;
    }
    // Climb to the first local maximum; strict comparisons keep plateaus on
    // the side nearest the front.
    while j > 0 && d[j - 1] > d[j] {
        j -= 1;
    }
    let peak = j;
    if peak == 0 || peak == xs.len() - 1 {
        return Err(Error::Analysis(
            "no local maximum resolved behind the front (grid too short or too coarse)".into(),
        ));
    }
    while j > 0 && d[j - 1] < d[j] {
        j -= 1;
    }
    let trough = j;
    if trough == 0 {
        return Err(Error::Analysis(
            "no local minimum behind the main peak (extend the grid to the left)".into(),
        ));
    }

    let (x_peak, p_max) = parabolic_vertex(xs, d, peak);
    let (x_min, p_min) = parabolic_vertex(xs, d, trough);
    let stats = FringeStats::new(p_max, p_min, x_peak, x_min)?;

    let spacing = local_spacing(xs, peak).max(local_spacing(xs, trough));
    if spacing > stats.fringe_width / 20.0 {
        return Err(Error::Analysis(format!(
            "grid spacing {spacing:.3e} m does not resolve a fringe of width {:.3e} m",
            stats.fringe_width
        )));
    }
    Ok(stats)
}

fn local_spacing(xs: &[f64], i: usize) -> f64 {
    (xs[i] - xs[i - 1]).max(xs[i + 1] - xs[i])
}

/// Vertex of the parabola through points i−1, i, i+1; falls back to the
/// sample itself when the fit is flat or the vertex leaves the bracket.
pub(crate) fn parabolic_vertex(xs: &[f64], d: &[f64], i: usize) -> (f64, f64) {
    let (x0, x1, x2) = (xs[i - 1], xs[i], xs[i + 1]);
    let (y0, y1, y2) = (d[i - 1], d[i], d[i + 1]);
    let s01 = (y1 - y0) / (x1 - x0);
    let s12 = (y2 - y1) / (x2 - x1);
    let a = (s12 - s01) / (x2 - x0);
    if a == 0.0 || !a.is_finite() {
        return (x1, y1);
    }
    // y = y1 + s·(x − x1) + a(x − x1)², with s the slope at x1
    let s = s01 + a * (x1 - x0);
    let dx = -s / (2.0 * a);
    let xv = x1 + dx;
    if !(xv > x0 && xv < x2) {
        return (x1, y1);
    }
    (xv, y1 + s * dx + a * dx * dx)
}

/// Default number of grid points per fringe scale in [`front_grid`].
pub const POINTS_PER_FRINGE: usize = 200;

/// Grid around the main fringe: ends at the wall (or a few spreading lengths
/// past the front) and reaches 12 spreading lengths behind it, with
/// `points_per_fringe` points per fringe scale.
pub fn front_grid(scenario: &Scenario, points_per_fringe: usize) -> Result<Vec<f64>> {
    let t = scenario.time();
    if !(t > 0.0) {
        return Err(Error::InvalidParameter("front grid needs t > 0".into()));
    }
    let ctx = scenario.context();
    let sigma = ctx.spread_length(t);
    let vk = scenario.beam_velocity();
    let mut scale = (PI * ctx.hbar() * t / ctx.mass()).sqrt();
    let (lo, hi) = match scenario.mirror() {
        MirrorLaw::SuddenRemoval => (vk * t - 12.0 * sigma, vk * t + 6.0 * sigma),
        MirrorLaw::Static | MirrorLaw::Moving { .. } => {
            let v = scenario.mirror().velocity().unwrap_or(0.0);
            let xm = v * t;
            if v < vk {
                // Standing wave of the incident and reflected streams near the wall.
                let period = PI / (scenario.k() - ctx.wavenumber(v));
                scale = scale.min(period);
                (xm - (12.0 * sigma).max(3.0 * period), xm)
            } else {
                let hi = xm.min(vk * t + 6.0 * sigma);
                (hi.min(vk * t) - 12.0 * sigma, hi)
            }
        }
    };
    let h = scale / points_per_fringe.max(20) as f64;
    let n = ((hi - lo) / h).ceil() as usize + 1;
    Ok(linspace(lo, hi, n))
}

/// Fringe widths at several times and the fitted power-law exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthScaling {
    /// (t, δx) pairs.
    pub samples: Vec<(f64, f64)>,
    /// Least-squares slope of ln δx against ln t.
    pub exponent: f64,
}

pub fn fringe_width_scaling(scenario: &Scenario, times: &[f64]) -> Result<WidthScaling> {
    if times.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "width scaling needs at least 3 times, got {}",
            times.len()
        )));
    }
    if let Some(t) = times.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        return Err(Error::InvalidParameter(format!("times must be positive, got {t}")));
    }
    let samples = times
        .iter()
        .map(|&t| {
            let s = scenario.with_time(t)?;
            let grid = front_grid(&s, POINTS_PER_FRINGE)?;
            Ok((t, main_fringe(&profile(&s, &grid)?)?.fringe_width))
        })
        .collect::<Result<Vec<_>>>()?;
    let logs: Vec<(f64, f64)> = samples.iter().map(|&(t, w)| (t.ln(), w.ln())).collect();
    Ok(WidthScaling { exponent: slope(&logs), samples })
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
