//! Analytic solutions: the Moshinsky function, propagators and the
//! wavefunctions built from them.

mod moshinsky;
mod propagator;
mod solutions;

pub use moshinsky::{
    moshinsky, moshinsky_asymptotic, AsymptoticValue, MoshinskyArgs, ASYMPTOTIC_MIN_ABS_Z,
};
pub use propagator::{propagator_free, propagator_moving_wall};
pub use solutions::{
    classical_density, critical_points, initial_state, psi_moving, psi_near_limit, psi_sudden,
    wavefunction, CriticalPoints, StreamRegion, WaveComponents,
};

