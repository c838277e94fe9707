//! Numerical cross-checks of the closed-form solutions: grid evolution in the
//! wall frame and direct quadrature of the propagator integral.

mod compare;
mod config;
mod dst;
mod grid;
mod quadrature;

pub use compare::{compare, Comparison, RegionStats};
pub use config::{OracleConfig, SpatialScheme, Stepping, TailTreatment, MAX_STEP_PHASE};
pub use grid::{evolve_grid, GridRun, NORM_DRIFT_LIMIT};
pub use quadrature::{evolve_quadrature, QuadratureRun};
