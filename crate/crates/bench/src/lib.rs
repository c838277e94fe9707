//! Scenarios shared by the benchmarks.

use mirrorwave_core::analysis::linspace;
use mirrorwave_core::{MirrorLaw, PhysicalContext, Scenario};

/// v_k = 1 cm/s, v = 0.8 cm/s, t = 10 ms.
pub fn figure5_moving() -> Scenario {
    scenario(MirrorLaw::Moving { velocity: 0.008 }, 0.01)
}

/// v_k = 1 cm/s after sudden removal, t = 10 ms.
pub fn figure5_sudden() -> Scenario {
    scenario(MirrorLaw::SuddenRemoval, 0.01)
}

/// v_k = 1 cm/s with the mirror moving at the beam velocity, t = 10 ms.
pub fn near_limit() -> Scenario {
    scenario(MirrorLaw::Moving { velocity: 0.01 }, 0.01)
}

fn scenario(mirror: MirrorLaw, t: f64) -> Scenario {
    Scenario::from_beam_velocity(PhysicalContext::rb87(), 0.01, mirror, t).expect("valid scenario")
}

/// Default figure grid [−1.5 v_k t, 1.1 max(v, v_k) t] with `n` points.
pub fn default_grid(s: &Scenario, n: usize) -> Vec<f64> {
    let vk = s.beam_velocity();
    let reach = s.mirror().velocity().map_or(vk, |v| v.max(vk));
    linspace(-1.5 * vk * s.time(), 1.1 * reach * s.time(), n)
}
