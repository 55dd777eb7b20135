use core::f64::consts::PI;

use super::{reject_edge_jump, spec, FunctionalResult};
use crate::error::{Error, Result};
use crate::numerics::{self, cos, exp, sqrt};
use crate::smearing::RadialProfile;

/// Collapse heating `I_N` of two point particles of masses `m1`, `m2` at
/// separation `d`, sharing the profile `g`, in length⁻².
///
/// With `x` measured from one particle, the contribution of that particle is
/// weighted by its share `m_j g_j/μ` of the total smeared mass density; the
/// double integral runs over `r = |x|` and the angle to the separation axis.
pub fn two_particle_psl(g: &RadialProfile, m1: f64, m2: f64, d: f64) -> Result<FunctionalResult> {
    if !(m1 > 0.0 && m2 > 0.0) || !m1.is_finite() || !m2.is_finite() {
        return Err(Error::Domain("masses must be positive"));
    }
    if !(d >= 0.0) || !d.is_finite() {
        return Err(Error::Domain("separation must be non-negative and finite"));
    }
    reject_edge_jump(g)?;
    let u = g.unit();
    let du = d / g.scale();
    // Share of particle `a` at a point where ln g_b − ln g_a = delta.
    let share = |ma: f64, mb: f64, delta: f64| -> f64 {
        if delta == f64::NEG_INFINITY {
            1.0
        } else if delta > 700.0 {
            0.0
        } else {
            ma / (ma + mb * exp(delta))
        }
    };
    let mut breaks = u.breakpoints();
    if du > 0.0 {
        breaks.push(du);
    }
    let est = numerics::integrate_polar(
        |r, theta| {
            let base = u.grad_sq_over_density(r);
            if base == 0.0 {
                return 0.0;
            }
            let rt = sqrt(r * r + du * du + 2.0 * r * du * cos(theta));
            let delta = u.ln_density(rt) - u.ln_density(r);
            0.25 * PI * libm::sin(theta) * r * r * base * (share(m1, m2, delta) + share(m2, m1, delta))
        },
        &breaks,
        &spec_polar(),
    )?;
    Ok(FunctionalResult::from_estimate(est, -2, g.scale()))
}

fn spec_polar() -> numerics::QuadratureSpec {
    numerics::QuadratureSpec {
        rel_tol: 1e-9,
        ..spec()
    }
}
