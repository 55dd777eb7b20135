//! Radial smearing profiles and their enclosed mass and potential.

mod derived;
mod profile;
mod tabulated;

pub use derived::{derive, ProfileDerived};
pub use profile::{sub_gaussian_alpha, CollapseWeight, ProfileKind, RadialProfile};
pub use tabulated::MonotoneCubic;

use crate::error::Result;

/// Gaussian profile of the given scale.
pub fn make_gaussian(scale: f64) -> Result<RadialProfile> {
    RadialProfile::gaussian(scale)
}

/// Sub-Gaussian profile with exponent `p`.
pub fn make_sub_gaussian(p: f64, scale: f64) -> Result<RadialProfile> {
    RadialProfile::sub_gaussian(p, scale)
}

/// Compact quartic profile with support `3·scale`.
pub fn make_compact_quartic(scale: f64) -> Result<RadialProfile> {
    RadialProfile::compact_quartic(scale)
}

/// Uniform ball of radius `√5·scale`.
pub fn make_uniform_ball(scale: f64) -> Result<RadialProfile> {
    RadialProfile::uniform_ball(scale)
}

#[cfg(test)]
mod tests;
