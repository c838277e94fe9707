use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::physics::{MirrorLaw, Scenario};
use crate::waves::{psi_moving, wavefunction, WaveComponents};

/// Density |ψ(x, t)|² sampled on an increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub scenario: Scenario,
    pub xs: Vec<f64>,
    pub densities: Vec<f64>,
    /// Per-point Moshinsky terms, only for moving or static walls.
    pub components: Option<Vec<WaveComponents>>,
}

impl DensityProfile {
    /// Wraps externally computed densities (e.g. from an oracle).
    pub fn from_parts(scenario: Scenario, xs: Vec<f64>, densities: Vec<f64>) -> Result<Self> {
        check_grid(&xs)?;
        if densities.len() != xs.len() {
            return Err(Error::InvalidParameter(format!(
                "{} densities for {} grid points",
                densities.len(),
                xs.len()
            )));
        }
        if let Some(bad) = densities.iter().find(|d| !(**d >= 0.0)) {
            return Err(Error::InvalidParameter(format!("density must be non-negative, got {bad}")));
        }
        Ok(Self { scenario, xs, densities, components: None })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Same profile with every density multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.densities.iter_mut().for_each(|d| *d *= factor);
        out
    }
}

/// Evaluates the closed-form density on `xs`, in parallel.
pub fn profile(scenario: &Scenario, xs: &[f64]) -> Result<DensityProfile> {
    check_grid(xs)?;
    check_time(scenario)?;
    let densities = xs
        .par_iter()
        .map(|&x| wavefunction(x, scenario).map(|psi| psi.norm_sqr()))
        .collect::<Result<Vec<_>>>()?;
    Ok(DensityProfile { scenario: *scenario, xs: xs.to_vec(), densities, components: None })
}

/// As [`profile`], additionally keeping the four Moshinsky terms per point.
pub fn profile_with_components(scenario: &Scenario, xs: &[f64]) -> Result<DensityProfile> {
    check_grid(xs)?;
    check_time(scenario)?;
    if scenario.mirror() == MirrorLaw::SuddenRemoval {
        return Err(Error::InvalidParameter(
            "component breakdown needs a wall; sudden removal has two terms only".into(),
        ));
    }
    let components = xs
        .par_iter()
        .map(|&x| psi_moving(x, scenario))
        .collect::<Result<Vec<_>>>()?;
    let densities = components.iter().map(WaveComponents::density).collect();
    Ok(DensityProfile {
        scenario: *scenario,
        xs: xs.to_vec(),
        densities,
        components: Some(components),
    })
}

/// `n ≥ 2` equally spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n).map(|i| if i == n - 1 { hi } else { lo + step * i as f64 }).collect()
        }
    }
}

pub(crate) fn check_grid(xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::InvalidParameter("grid is empty".into()));
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("grid contains non-finite positions".into()));
    }
    if let Some(i) = xs.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(format!(
            "grid must be strictly increasing (index {i}: {} then {})",
            xs[i],
            xs[i + 1]
        )));
    }
    Ok(())
}

fn check_time(scenario: &Scenario) -> Result<()> {
    if scenario.time() > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter("density profiles need t > 0".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::PhysicalContext;

    fn moving(v: f64, t: f64) -> Scenario {
        let ctx = PhysicalContext::rb87();
        Scenario::new(ctx, ctx.wavenumber(0.01), MirrorLaw::Moving { velocity: v }, t).unwrap()
    }

    #[test]
    fn rejects_bad_grids() {
        let s = moving(0.015, 5e-3);
        assert!(profile(&s, &[]).is_err());
        assert!(profile(&s, &[1e-6, 0.0]).is_err());
        assert!(profile(&s, &[0.0, 0.0]).is_err());
        assert!(profile(&s.with_time(0.0).unwrap(), &[0.0]).is_err());
    }

    #[test]
    fn forbidden_grid_is_all_zero() {
        let s = moving(0.015, 5e-3);
        let xs = linspace(80e-6, 120e-6, 50);
        let p = profile(&s, &xs).unwrap();
        assert!(p.densities.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn standing_wave_far_behind_the_front() {
        let s = moving(0.015, 5e-3);
        let k = s.k();
        let xs = linspace(-400e-6, -399e-6, 40);
        let p = profile(&s, &xs).unwrap();
        for (x, d) in xs.iter().zip(&p.densities) {
            let expected = 4.0 * (k * x).sin().powi(2);
            assert!((d - expected).abs() < 1e-2, "x = {x}: {d} vs {expected}");
        }
    }

    #[test]
    fn components_match_density() {
        let s = moving(0.015, 5e-3);
        let xs = linspace(-60e-6, 80e-6, 30);
        let a = profile(&s, &xs).unwrap();
        let b = profile_with_components(&s, &xs).unwrap();
        assert_eq!(a.densities, b.densities);
        assert_eq!(b.components.unwrap().len(), 30);
        let sudden = s.with_mirror(MirrorLaw::SuddenRemoval).unwrap();
        assert!(profile_with_components(&sudden, &xs).is_err());
    }

    #[test]
    fn linspace_endpoints() {
        let g = linspace(-1.0, 2.0, 4);
        assert_eq!(g, vec![-1.0, 0.0, 1.0, 2.0]);
        assert_eq!(linspace(3.0, 4.0, 1), vec![3.0]);
    }
}
