//! Grid evolution in the frame where the wall is at rest.
//!
//! The lab wavefunction and the wall-frame state φ(y, t) are related by
//! ψ(x, t) = e^{i(qx − qvt/2)} φ(x − vt, t), q = mv/ħ, so φ obeys the free
//! Schrödinger equation with a static Dirichlet wall at y = 0. The initial
//! state 2i sin(ky)e^{−iqy} is evolved on y ∈ [−L, 0] (or [−L, L] after
//! sudden removal) with Crank–Nicolson steps. The spectral scheme starts from
//! the exact sine coefficients of the initial state; sampling it would alias
//! the kink at the wall (or at the origin after sudden removal) into slow modes.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::config::{OracleConfig, SpatialScheme, Stepping};
use super::dst::Dst1;
use crate::analysis::DensityProfile;
use crate::error::{Error, Result};
use crate::physics::Scenario;
use crate::waves::initial_state;

/// Largest tolerated relative change of the norm.
pub const NORM_DRIFT_LIMIT: f64 = 1e-8;

/// Output of [`evolve_grid`].
#[derive(Debug, Clone)]
pub struct GridRun {
    /// Lab-frame densities on the grid points inside the comparison window.
    pub profile: DensityProfile,
    pub psi: Vec<Complex64>,
    pub norm_drift: f64,
    pub steps: u64,
    pub config: OracleConfig,
}

pub fn evolve_grid(scenario: &Scenario, config: &OracleConfig) -> Result<GridRun> {
    config.check_grid(scenario)?;
    let t = scenario.time();
    let ctx = scenario.context();
    let v = scenario.mirror().velocity();
    let (left, right) = match v {
        Some(_) => (-config.domain_length, 0.0),
        None => (-config.domain_length, config.domain_length),
    };
    let v = v.unwrap_or(0.0);
    let q = ctx.wavenumber(v);
    let n = config.grid_points;
    let h = (right - left) / (n as f64 + 1.0);
    let ys: Vec<f64> = (1..=n).map(|j| left + h * j as f64).collect();

    let box_length = right - left;
    let steps = (t / config.time_step).ceil().max(1.0) as u64;
    let dt = t / steps as f64;
    let hbar_over_2m = 0.5 * ctx.hbar() / ctx.mass();
    let mut dst = Dst1::new(n);
    let (mut phi, norm0) = match config.scheme {
        SpatialScheme::Spectral => {
            let coefficients = projected_coefficients(scenario.k(), q, config.domain_length, box_length, n);
            let mut initial = coefficients.clone();
            dst.apply_inverse(&mut initial);
            (coefficients, norm(&initial))
        }
        SpatialScheme::FiniteDifference => {
            let sampled: Vec<Complex64> = ys
                .iter()
                .map(|&y| {
                    let psi0 = initial_state(y, scenario.k());
                    if q == 0.0 {
                        psi0
                    } else {
                        psi0 * Complex64::from_polar(1.0, -q * y)
                    }
                })
                .collect();
            let n0 = norm(&sampled);
            (sampled, n0)
        }
    };

    match config.stepping {
        Stepping::Diagonal => {
            if config.scheme == SpatialScheme::FiniteDifference {
                dst.apply(&mut phi);
            }
            for (idx, c) in phi.iter_mut().enumerate() {
                let mode = (idx + 1) as f64;
                let lambda = match config.scheme {
                    SpatialScheme::Spectral => (PI * mode / box_length).powi(2),
                    SpatialScheme::FiniteDifference => 2.0 / (h * h) * (1.0 - (PI * mode / (n as f64 + 1.0)).cos()),
                };
                let omega = hbar_over_2m * lambda;
                // One Cayley step multiplies the mode by (1 − iωdt/2)/(1 + iωdt/2).
                let phase = -2.0 * (0.5 * omega * dt).atan() * steps as f64;
                *c *= Complex64::from_polar(1.0, phase);
            }
            dst.apply_inverse(&mut phi);
        }
        Stepping::Tridiagonal => {
            crank_nicolson_steps(&mut phi, hbar_over_2m * dt / (2.0 * h * h), steps);
        }
    }

    let norm1 = norm(&phi);
    let norm_drift = ((norm1 - norm0) / norm0).abs();
    if !(norm_drift <= NORM_DRIFT_LIMIT) {
        return Err(Error::Numerical(format!(
            "grid norm drifted by {norm_drift:.3e} (limit {NORM_DRIFT_LIMIT:e})"
        )));
    }

    let (x_lo, x_hi) = config.comparison_window;
    let shift = v * t;
    let mut xs = Vec::new();
    let mut psi = Vec::new();
    for (y, value) in ys.iter().zip(&phi) {
        let x = y + shift;
        if x < x_lo || x > x_hi {
            continue;
        }
        xs.push(x);
        psi.push(if q == 0.0 {
            *value
        } else {
            value * Complex64::from_polar(1.0, q * (x - 0.5 * shift))
        });
    }
    if xs.is_empty() {
        return Err(Error::OracleConfig {
            reason: "no grid point falls inside the comparison window".into(),
            suggestion: "widen the window or refine the grid".into(),
        });
    }
    let densities = psi.iter().map(|p| p.norm_sqr()).collect();
    Ok(GridRun {
        profile: DensityProfile::from_parts(*scenario, xs, densities)?,
        psi,
        norm_drift,
        steps,
        config: *config,
    })
}

/// Sine-series coefficients of e^{i(k−q)y} − e^{−i(k+q)y} on [−L, 0] (zero
/// elsewhere in the box of length B) for the modes sin(πm(y + L)/B),
/// m = 1..N, scaled so that the inverse DST synthesises the series at the nodes.
fn projected_coefficients(k: f64, q: f64, length: f64, box_length: f64, n: usize) -> Vec<Complex64> {
    // ∫₀^L e^{ibu} du
    let e = |b: f64| {
        let half = 0.5 * b * length;
        let sinc = if half == 0.0 { 1.0 } else { half.sin() / half };
        Complex64::from_polar(length * sinc, half)
    };
    let waves = [(1.0, k - q), (-1.0, -(k + q))];
    let scale = 2.0 / box_length * 0.5 * (n as f64 + 1.0);
    (1..=n)
        .map(|m| {
            let kappa = PI * m as f64 / box_length;
            let mut c = Complex64::new(0.0, 0.0);
            for (sign, a) in waves {
                // ∫_{−L}^{0} e^{iay} sin(κ(y + L)) dy with u = y + L
                let integral = Complex64::from_polar(1.0, -a * length) * (e(a + kappa) - e(a - kappa))
                    / Complex64::new(0.0, 2.0);
                c += sign * integral;
            }
            scale * c
        })
        .collect()
}

fn norm(phi: &[Complex64]) -> f64 {
    phi.iter().map(|c| c.norm_sqr()).sum()
}

/// `steps` Crank–Nicolson steps of iφ_t = −(ħ/2m) φ_yy with the three-point
/// Laplacian, r = (ħ/2m)·dt/(2h²):
/// (1 + 2ir)φⱼⁿ⁺¹ − ir(φⱼ₊₁ⁿ⁺¹ + φⱼ₋₁ⁿ⁺¹) = (1 − 2ir)φⱼⁿ + ir(φⱼ₊₁ⁿ + φⱼ₋₁ⁿ).
fn crank_nicolson_steps(phi: &mut [Complex64], r: f64, steps: u64) {
    let n = phi.len();
    let ir = Complex64::new(0.0, r);
    let diag = Complex64::new(1.0, 2.0 * r);
    let off = -ir;
    // The matrix is constant, so the forward-elimination factors are too.
    let mut factor = vec![Complex64::new(0.0, 0.0); n];
    let mut pivot = vec![Complex64::new(0.0, 0.0); n];
    pivot[0] = diag;
    for j in 1..n {
        factor[j] = off / pivot[j - 1];
        pivot[j] = diag - factor[j] * off;
    }
    let rhs_diag = Complex64::new(1.0, -2.0 * r);
    let mut rhs = vec![Complex64::new(0.0, 0.0); n];
    for _ in 0..steps {
        for j in 0..n {
            let left = if j > 0 { phi[j - 1] } else { Complex64::new(0.0, 0.0) };
            let right = if j + 1 < n { phi[j + 1] } else { Complex64::new(0.0, 0.0) };
            rhs[j] = rhs_diag * phi[j] + ir * (left + right);
        }
        for j in 1..n {
            let prev = rhs[j - 1];
            rhs[j] -= factor[j] * prev;
        }
        phi[n - 1] = rhs[n - 1] / pivot[n - 1];
        for j in (0..n - 1).rev() {
            phi[j] = (rhs[j] - off * phi[j + 1]) / pivot[j];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::profile;
    use crate::oracle::config::max_mode_frequency;
    use crate::oracle::{compare, MAX_STEP_PHASE};
    use crate::physics::{MirrorLaw, PhysicalContext};

    fn small(v: f64, t: f64) -> Scenario {
        // 1 mm/s beam: short wavelengths stay cheap on a finite-difference grid.
        let ctx = PhysicalContext::rb87();
        Scenario::from_beam_velocity(ctx, 1e-3, MirrorLaw::Moving { velocity: v }, t).unwrap()
    }

    #[test]
    fn static_wall_keeps_the_standing_wave() {
        let ctx = PhysicalContext::rb87();
        let s = Scenario::from_beam_velocity(ctx, 0.01, MirrorLaw::Static, 2e-3).unwrap();
        let window = (-30e-6, 0.0);
        let config = OracleConfig::suggested(&s, window).unwrap();
        let run = evolve_grid(&s, &config).unwrap();
        let k = s.k();
        let worst = run
            .profile
            .xs
            .iter()
            .zip(&run.profile.densities)
            .map(|(x, d)| (d - 4.0 * (k * x).sin().powi(2)).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-3, "{worst}");
        assert!(run.norm_drift <= 1e-12);
    }

    #[test]
    fn sudden_removal_matches_the_closed_form() {
        let ctx = PhysicalContext::rb87();
        let s = Scenario::from_beam_velocity(ctx, 0.01, MirrorLaw::SuddenRemoval, 2e-3).unwrap();
        let vt = s.beam_velocity() * s.time();
        let config = OracleConfig::suggested(&s, (-1.5 * vt, 1.1 * vt)).unwrap();
        let run = evolve_grid(&s, &config).unwrap();
        let exact = profile(&s, &run.profile.xs).unwrap();
        let err = compare(&run.profile, &exact).unwrap().max_abs_err;
        assert!(err < 1e-4, "{err}");
    }

    #[test]
    fn zero_velocity_is_bitwise_the_static_run() {
        let a = small(0.0, 2e-3);
        let b = a.with_mirror(MirrorLaw::Static).unwrap();
        let config = OracleConfig::suggested(&a, (-4e-6, 0.0)).unwrap();
        let ra = evolve_grid(&a, &config).unwrap();
        let rb = evolve_grid(&b, &config).unwrap();
        assert_eq!(ra.psi, rb.psi);
        assert_eq!(ra.profile.xs, rb.profile.xs);
    }

    #[test]
    fn causality_guard_rejects_short_boxes() {
        let s = small(0.5e-3, 2e-3);
        let mut config = OracleConfig::suggested(&s, (-2e-6, 1e-6)).unwrap();
        config.domain_length = 5e-6;
        assert!(matches!(evolve_grid(&s, &config), Err(Error::OracleConfig { .. })));
    }

    #[test]
    fn step_phase_guard() {
        let s = small(0.5e-3, 2e-3);
        let mut config = OracleConfig::suggested(&s, (-2e-6, 1e-6)).unwrap();
        config.time_step = 1e-3;
        let err = evolve_grid(&s, &config).unwrap_err();
        assert!(err.to_string().contains("phase per step"), "{err}");
    }

    /// Finite-difference grid on a 150 µm box with the largest step the phase guard allows.
    fn fd_config(s: &Scenario, window: (f64, f64), n: usize, stepping: Stepping) -> OracleConfig {
        let mut c = OracleConfig::suggested(s, window).unwrap();
        c.domain_length = 150e-6;
        c.grid_points = n;
        let omega = max_mode_frequency(s, c.domain_length, n, SpatialScheme::FiniteDifference);
        c.time_step = 0.5 * MAX_STEP_PHASE / omega;
        c.scheme = SpatialScheme::FiniteDifference;
        c.stepping = stepping;
        c
    }

    #[test]
    fn tridiagonal_steps_match_closed_form() {
        let s = small(0.5e-3, 1e-3);
        let window = (-3e-6, 0.5e-6);
        let a = evolve_grid(&s, &fd_config(&s, window, 2047, Stepping::Tridiagonal)).unwrap();
        let b = evolve_grid(&s, &fd_config(&s, window, 2047, Stepping::Diagonal)).unwrap();
        let diff = a.psi.iter().zip(&b.psi).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        assert!(diff < 1e-9, "{diff}");
        assert!(a.norm_drift < 1e-10);
    }

    #[test]
    fn finite_difference_converges_to_the_analytic_solution() {
        let s = small(0.5e-3, 2e-3);
        let window = (-3e-6, 1e-6);
        let mut errors = Vec::new();
        for n in [2047, 4095, 8191] {
            let run = evolve_grid(&s, &fd_config(&s, window, n, Stepping::Diagonal)).unwrap();
            let exact = profile(&s, &run.profile.xs).unwrap();
            errors.push(compare(&run.profile, &exact).unwrap().max_abs_err);
        }
        assert!(errors[0] / errors[1] >= 2.0 && errors[1] / errors[2] >= 2.0, "{errors:?}");
        assert!(errors[2] < 1e-3, "{errors:?}");
    }
}
