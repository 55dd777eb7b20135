//! Collapse and feedback heating functionals.
//!
//! Every quadrature here runs on copies of the profiles rescaled to unit
//! reference length; results are mapped back with the functional's length
//! power.

pub(crate) mod feedback;
mod points;
mod two_particle;

pub use feedback::{
    grav_functional_i0, i0_gauss_gauss_closed, i0_gauss_optimal_closed, i0_gauss_optimal_literal,
    ln_i0_gauss_gauss_closed, ln_i0_gauss_optimal_closed, macro_feedback_functional, pair_grav_functional,
};
pub use points::{
    newtonian_work_flux, point_config_heating, point_config_heating_with_rng, DiffStat, PointConfig, PointHeating, G_NEWTON};
pub use two_particle::two_particle_psl;

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{Estimate, QuadratureSpec};
use crate::smearing::RadialProfile;

/// How a functional value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Adaptive quadrature (or Monte Carlo for point configurations).
    Quadrature,
    /// Closed-form expression.
    ClosedForm,
}

/// Value of a functional with its provenance and error bar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalResult {
    /// Value in units of length^`length_power`.
    pub value: f64,
    /// How the value was computed.
    pub method: Method,
    /// Non-negative absolute error estimate.
    pub error_estimate: f64,
    /// Power of length carried by `value`.
    pub length_power: i32,
}

impl FunctionalResult {
    pub(crate) fn from_estimate(est: Estimate, length_power: i32, scale: f64) -> Self {
        let f = libm::pow(scale, length_power as f64);
        FunctionalResult {
            value: est.value * f,
            method: Method::Quadrature,
            error_estimate: est.error.abs() * f,
            length_power,
        }
    }

    /// Result of a closed-form evaluation.
    pub fn closed(value: f64, length_power: i32) -> Self {
        FunctionalResult {
            value,
            method: Method::ClosedForm,
            error_estimate: 0.0,
            length_power,
        }
    }
}

/// Relative-only tolerances: values such as the optimal-profile feedback at
/// large `r_G/r_C` sit far below any fixed absolute floor.
pub(crate) fn spec() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 1e-12,
        abs_tol: 0.0,
        max_subdivisions: 4000,
        ..QuadratureSpec::with_scale(1.0)
    }
}

fn reject_edge_jump(g: &RadialProfile) -> Result<()> {
    if g.has_edge_discontinuity() {
        Err(Error::SingularProfile("density jumps at its support edge; the gradient functional diverges"))
    } else {
        Ok(())
    }
}

/// Dirichlet energy `I[√g] = ½ ∫ |∇√g|² = (π/2) ∫ r² g'²/g dr`, in
/// length⁻².
pub fn dirichlet_energy(g: &RadialProfile) -> Result<FunctionalResult> {
    reject_edge_jump(g)?;
    let u = g.unit();
    let est = u.integrate_radial(|r| 0.5 * PI * r * r * u.grad_sq_over_density(r), &spec())?;
    if !est.value.is_finite() {
        return Err(Error::SingularProfile("g'²/g is not integrable"));
    }
    Ok(FunctionalResult::from_estimate(est, -2, g.scale()))
}

/// `I_{r_C} = ⅛ ∫ |∇g|² = (π/2) ∫ r² g'² dr`, in length⁻⁵.
pub fn grad_sq_functional(g: &RadialProfile) -> Result<FunctionalResult> {
    reject_edge_jump(g)?;
    let u = g.unit();
    let est = u.integrate_radial(
        |r| {
            let d = u.derivative(r);
            0.5 * PI * r * r * d * d
        },
        &spec(),
    )?;
    Ok(FunctionalResult::from_estimate(est, -5, g.scale()))
}

#[cfg(test)]
mod tests;
