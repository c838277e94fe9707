use std::collections::BTreeMap;

use crate::analysis::DensityProfile;
use crate::error::{Error, Result};
use crate::waves::{critical_points, StreamRegion};

/// Error statistics restricted to one classical region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionStats {
    pub region: StreamRegion,
    pub points: usize,
    pub max_abs_err: f64,
    pub rms_err: f64,
}

/// Pointwise comparison of two density profiles on the same grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub max_abs_err: f64,
    pub rms_err: f64,
    /// Position of the largest deviation.
    pub worst_x: f64,
    pub regions: Vec<RegionStats>,
}

pub fn compare(a: &DensityProfile, b: &DensityProfile) -> Result<Comparison> {
    if a.xs.len() != b.xs.len() {
        return Err(Error::GridMismatch(format!("{} vs {} points", a.xs.len(), b.xs.len())));
    }
    if let Some(i) = a.xs.iter().zip(&b.xs).position(|(x, y)| x != y) {
        return Err(Error::GridMismatch(format!(
            "position {i} differs: {:e} vs {:e}",
            a.xs[i], b.xs[i]
        )));
    }
    if a.xs.is_empty() {
        return Err(Error::GridMismatch("empty profiles".into()));
    }
    let cp = critical_points(&a.scenario);
    let mut worst = (0.0, a.xs[0]);
    let mut sq = 0.0;
    let mut per_region: BTreeMap<StreamRegion, (usize, f64, f64)> = BTreeMap::new();
    for ((x, da), db) in a.xs.iter().zip(&a.densities).zip(&b.densities) {
        let err = (da - db).abs();
        if err > worst.0 {
            worst = (err, *x);
        }
        sq += err * err;
        let entry = per_region.entry(cp.region(*x)).or_insert((0, 0.0, 0.0));
        entry.0 += 1;
        entry.1 = entry.1.max(err);
        entry.2 += err * err;
    }
    let regions = per_region
        .into_iter()
        .map(|(region, (points, max, sq))| RegionStats {
            region,
            points,
            max_abs_err: max,
            rms_err: (sq / points as f64).sqrt(),
        })
        .collect();
    Ok(Comparison {
        max_abs_err: worst.0,
        rms_err: (sq / a.xs.len() as f64).sqrt(),
        worst_x: worst.1,
        regions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{linspace, profile};
    use crate::physics::{MirrorLaw, PhysicalContext, Scenario};

    fn sample() -> DensityProfile {
        let ctx = PhysicalContext::rb87();
        let s = Scenario::from_beam_velocity(ctx, 0.01, MirrorLaw::Moving { velocity: 0.008 }, 0.01).unwrap();
        profile(&s, &linspace(-150e-6, 90e-6, 200)).unwrap()
    }

    #[test]
    fn identical_profiles() {
        let p = sample();
        let c = compare(&p, &p).unwrap();
        assert_eq!((c.max_abs_err, c.rms_err), (0.0, 0.0));
        let labels: Vec<_> = c.regions.iter().map(|r| r.region).collect();
        assert!(labels.contains(&StreamRegion::Standing));
        assert!(labels.contains(&StreamRegion::Forbidden));
        assert_eq!(c.regions.iter().map(|r| r.points).sum::<usize>(), 200);
    }

    #[test]
    fn single_point_difference() {
        let a = sample();
        let mut b = a.clone();
        b.densities[17] += 1e-3;
        let c = compare(&a, &b).unwrap();
        assert!((c.max_abs_err - 1e-3).abs() < 1e-15);
        assert_eq!(c.worst_x, a.xs[17]);
    }

    #[test]
    fn grid_mismatch() {
        let a = sample();
        let mut b = a.clone();
        b.xs[3] += 1e-12;
        assert!(matches!(compare(&a, &b), Err(Error::GridMismatch(_))));
        b.xs.pop();
        b.densities.pop();
        assert!(matches!(compare(&a, &b), Err(Error::GridMismatch(_))));
    }
}
