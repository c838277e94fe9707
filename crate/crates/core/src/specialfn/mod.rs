//! Complex special functions: Faddeeva w(z), complex erfc, Fresnel integrals
//! and half-integer Gamma values.

pub(crate) mod ddouble;
mod faddeeva;
mod fresnel;
mod gamma;

pub use faddeeva::{erfc_complex, faddeeva, region, FaddeevaRegion};
pub use fresnel::{fresnel, fresnel_series};
pub use gamma::gamma_half;

