//! Density profiles, fringe statistics and the universal Cornu-spiral curves.

mod cornu;
mod fringe;
mod profile;
mod scan;

pub use cornu::{cornu_theta, enhanced_peak, ordinary_peak, universal_enhanced, universal_ordinary};
pub use fringe::{
    front_grid, fringe_width_scaling, main_fringe, FringeStats, WidthScaling, POINTS_PER_FRINGE,
};
pub use profile::{linspace, profile, profile_with_components, DensityProfile};
pub use scan::{enhancement_scan, main_fringe_refined, ScanPoint};

pub(crate) use profile::check_grid;
