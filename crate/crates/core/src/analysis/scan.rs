use rayon::prelude::*;

use super::fringe::{front_grid, main_fringe, parabolic_vertex, FringeStats, POINTS_PER_FRINGE};
use super::profile::{linspace, profile};
use crate::error::{Error, Result};
use crate::physics::{MirrorLaw, Scenario};
use crate::waves::wavefunction;

/// Fringe statistics for one mirror velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub v_over_vk: f64,
    pub p_max: f64,
    pub visibility: f64,
    pub fringe: FringeStats,
}

/// Main fringe of the closed-form solution located on [`front_grid`], with
/// both extrema re-evaluated on a ten times finer local grid.
pub fn main_fringe_refined(scenario: &Scenario, points_per_fringe: usize) -> Result<FringeStats> {
    let grid = front_grid(scenario, points_per_fringe)?;
    let h = grid[1] - grid[0];
    let coarse = main_fringe(&profile(scenario, &grid)?)?;
    let (x_peak, p_max) = refine_extremum(scenario, coarse.x_peak, h, true)?;
    let (x_min, p_min) = refine_extremum(scenario, coarse.x_min, h, false)?;
    let p_min = p_min.max(0.0);
    Ok(FringeStats {
        p_max,
        p_min,
        x_peak,
        x_min,
        visibility: (p_max - p_min) / (p_max + p_min),
        fringe_width: 2.0 * (x_peak - x_min).abs(),
    })
}

fn refine_extremum(scenario: &Scenario, x0: f64, h: f64, maximum: bool) -> Result<(f64, f64)> {
    let mut xs = linspace(x0 - 2.0 * h, x0 + 2.0 * h, 41);
    if let Some(xm) = scenario.mirror_position() {
        xs.retain(|&x| x <= xm);
    }
    let d = xs
        .iter()
        .map(|&x| wavefunction(x, scenario).map(|p| p.norm_sqr()))
        .collect::<Result<Vec<_>>>()?;
    let key = |v: f64| if maximum { v } else { -v };
    let i = (0..d.len())
        .max_by(|&a, &b| key(d[a]).total_cmp(&key(d[b])))
        .ok_or_else(|| Error::Analysis("empty refinement window".into()))?;
    if i == 0 || i + 1 == d.len() {
        return Ok((xs[i], d[i]));
    }
    Ok(parabolic_vertex(&xs, &d, i))
}

/// Main-fringe peak and visibility for each mirror velocity v = ratio · v_k.
///
/// The template fixes the species, k and t; its mirror law is replaced.
/// Ratios are evaluated in parallel and returned in input order.
pub fn enhancement_scan(v_over_vk: &[f64], template: &Scenario) -> Result<Vec<ScanPoint>> {
    if let Some(r) = v_over_vk.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
        return Err(Error::InvalidParameter(format!("velocity ratios must be positive, got {r}")));
    }
    if !(template.time() > 0.0) {
        return Err(Error::InvalidParameter("enhancement scan needs t > 0".into()));
    }
    let vk = template.beam_velocity();
    v_over_vk
        .par_iter()
        .map(|&ratio| {
            let s = template.with_mirror(MirrorLaw::moving(ratio * vk)?)?;
            let fringe = main_fringe_refined(&s, POINTS_PER_FRINGE)?;
            Ok(ScanPoint {
                v_over_vk: ratio,
                p_max: fringe.p_max,
                visibility: fringe.visibility,
                fringe,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::PhysicalContext;

    fn template(vk: f64, t: f64) -> Scenario {
        Scenario::from_beam_velocity(PhysicalContext::rb87(), vk, MirrorLaw::Static, t).unwrap()
    }

    #[test]
    fn rejects_non_positive_ratios() {
        assert!(enhancement_scan(&[1.5, 0.0], &template(0.01, 0.01)).is_err());
        assert!(enhancement_scan(&[-1.0], &template(0.01, 0.01)).is_err());
    }

    #[test]
    fn peak_grows_toward_the_critical_velocity() {
        let scan = enhancement_scan(&[4.0, 2.0, 1.2, 1.02, 1.0], &template(0.01, 0.01)).unwrap();
        assert!(scan.windows(2).all(|w| w[1].p_max > w[0].p_max));
        assert!(scan[4].p_max > 1.79 && scan[4].p_max < 1.82, "{}", scan[4].p_max);
    }

    #[test]
    fn fast_mirror_reaches_sudden_removal_peak() {
        // Slow, well-resolved beam so the −k term is negligible at the front.
        let scan = enhancement_scan(&[1e3], &template(0.02, 0.1)).unwrap();
        assert!((scan[0].p_max - 1.37).abs() < 5e-3, "{}", scan[0].p_max);
    }

    #[test]
    fn slow_mirror_fringes_reach_full_visibility() {
        let scan = enhancement_scan(&[0.8], &template(0.01, 0.01)).unwrap();
        assert!(scan[0].visibility >= 0.999, "{}", scan[0].visibility);
    }
}
