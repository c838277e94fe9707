//! Atomic matter waves reflected by a receding mirror.
//!
//! A monochromatic beam forms a standing wave in front of a wall; at t = 0 the
//! wall either starts moving at constant velocity or is removed. This crate
//! evaluates the resulting wavefunctions in closed form through the Moshinsky
//! function, characterises the diffraction fringes near the wave front and
//! cross-checks both against direct numerical evolution.
//!
//! All quantities are SI. See [`physics::LabUnit`] for the lab units used at
//! the command-line boundary.

pub mod error;
pub mod physics;
pub mod table;
pub mod specialfn;
pub mod analysis;
pub mod oracle;
pub mod waves;

pub use error::{Error, Result};
pub use physics::{MirrorLaw, PhysicalContext, Scenario};
