//! Variationally optimal feedback profiles and the counter-example searches.

mod counterexample;
mod curves;
mod perturbation;

pub use counterexample::{gpsl_counterexample, GpslCounterexample};
pub use curves::{psl_counterexample_search, ratio_curve, PslSearch, RatioPoint};
pub use perturbation::{optimality_perturbation_check, PerturbationReport};

use crate::error::{Error, Result};
use crate::numerics::{self, dawson, exp, sqrt, QuadratureSpec, RootSpec};
use crate::smearing::{CollapseWeight, RadialProfile};

/// An optimal feedback profile with its support radius.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalFeedbackSolution {
    /// The profile, with scale `r_G`.
    pub profile: RadialProfile,
    /// Support radius `R`.
    pub support_radius: f64,
    /// `R²/2r_C²`; `None` for a constant collapse weight, which has no `r_C`.
    pub y: Option<f64>,
    /// Residual of the equation fixing `R`, in the units it was solved in.
    pub residual: f64,
}

/// `2y − 2 + 3/y − 3D(√y)/y^{3/2}`, equal to `3(r_G/r_C)²` at the optimum.
pub fn support_equation_lhs(y: f64) -> f64 {
    if y < 1.0 {
        // 1.2y − 3 Σ_{n≥3} (−1)^n 2^n y^{n−1}/(2n+1)!!
        let mut term = -8.0 * y * y / 105.0;
        let mut sum = 0.0;
        let mut n = 3;
        loop {
            sum += term;
            if term.abs() <= f64::EPSILON * sum.abs() || n > 200 {
                break;
            }
            n += 1;
            term *= -2.0 * y / (2 * n + 1) as f64;
        }
        1.2 * y - 3.0 * sum
    } else {
        let s = sqrt(y);
        2.0 * y - 2.0 + 3.0 / y - 3.0 * dawson(s) / (y * s)
    }
}

/// Solves for `y = R²/2r_C²` of the Gaussian-case optimum and returns
/// `(y, R)`.
pub fn solve_support_radius(r_g: f64, r_c: f64) -> Result<(f64, f64)> {
    if !(r_g > 0.0 && r_c > 0.0) || !r_g.is_finite() || !r_c.is_finite() {
        return Err(Error::Domain("r_G and r_C must be positive and finite"));
    }
    let rho2 = (r_g / r_c) * (r_g / r_c);
    let target = 3.0 * rho2;
    let f = |y: f64| support_equation_lhs(y) - target;
    let guess = if rho2 < 1.0 { 2.5 * rho2 } else { 1.5 * rho2 };
    let floor = (1e-3 * guess).min(1e-6);
    let ceiling = 1e3 * rho2 + 10.0;
    let (mut lo, mut hi) = (0.5 * guess, 2.0 * guess);
    while f(lo) > 0.0 {
        lo *= 0.5;
        if lo < floor {
            return Err(Error::NotBracketed { lo, hi });
        }
    }
    while f(hi) < 0.0 {
        hi *= 2.0;
        if hi > ceiling {
            return Err(Error::NotBracketed { lo, hi });
        }
    }
    let spec = RootSpec {
        tol: 1e-15 * guess,
        ..RootSpec::new(lo, hi)
    };
    let y = numerics::find_root(f, &spec)?;
    Ok((y, r_c * sqrt(2.0 * y)))
}

/// Feedback profile minimising `I₀` against a Gaussian collapse profile of
/// width `r_c`, at feedback length `r_g`.
pub fn optimal_feedback_gaussian_case(r_c: f64, r_g: f64) -> Result<OptimalFeedbackSolution> {
    let (y, radius) = solve_support_radius(r_g, r_c)?;
    let residual = support_equation_lhs(y) - 3.0 * (r_g / r_c) * (r_g / r_c);
    Ok(OptimalFeedbackSolution {
        profile: RadialProfile::optimal_gaussian(r_c, r_g, y)?,
        support_radius: radius,
        y: Some(y),
        residual,
    })
}

fn quad_spec() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 1e-13,
        abs_tol: 0.0,
        ..QuadratureSpec::default()
    }
}

/// `R² − 2∫₀^R r Q(r) dr − 3r_G²` for `Q(r) = (r/R)³ w(R)/w(r)`, in units
/// where the weight's own scale is one.
fn variance_residual(weight: &CollapseWeight, radius: f64, r_g: f64) -> Result<f64> {
    let ln_edge = weight.ln_value(radius);
    if !ln_edge.is_finite() {
        return Err(Error::SingularProfile("collapse weight vanishes inside the candidate support"));
    }
    let r3 = radius * radius * radius;
    let est = numerics::integrate(
        |r| {
            let r2 = r * r;
            r2 * r2 / r3 * exp(ln_edge - weight.ln_value(r))
        },
        0.0,
        radius,
        &quad_spec(),
    )?;
    Ok(radius * radius - 2.0 * est.value - 3.0 * r_g * r_g)
}

/// Feedback profile minimising `I₀` against an arbitrary collapse weight:
/// `g(r) = w(R)/(4πR³) · (3 − r w'/w)/w(r)` on `r ≤ R`, with `R` fixed by the
/// variance constraint.
pub fn optimal_feedback_general(weight: &CollapseWeight, r_g: f64) -> Result<OptimalFeedbackSolution> {
    if !(r_g > 0.0) || !r_g.is_finite() {
        return Err(Error::Domain("r_G must be positive and finite"));
    }
    // Work in units of the collapse scale, or of r_G for a constant weight.
    let unit = match weight {
        CollapseWeight::Profile(p) => p.scale(),
        CollapseWeight::Constant => r_g,
    };
    let w = match weight {
        CollapseWeight::Profile(p) => CollapseWeight::Profile(alloc::boxed::Box::new(p.unit())),
        CollapseWeight::Constant => CollapseWeight::Constant,
    };
    let rg = r_g / unit;
    let f = |radius: f64| variance_residual(&w, radius, rg);
    // The optimum lies between √3 r_G and √5 r_G for decreasing weights.
    let (mut lo, mut hi) = (1.5 * rg, 2.5 * rg);
    let mut steps = 0;
    while f(lo)? > 0.0 {
        lo *= 0.7;
        steps += 1;
        if steps > 60 {
            return Err(Error::NotBracketed { lo, hi });
        }
    }
    while f(hi)? < 0.0 {
        hi *= 1.5;
        steps += 1;
        if steps > 60 {
            return Err(Error::NotBracketed { lo, hi });
        }
    }
    // The residual is only available fallibly; record the first failure.
    let failure = core::cell::RefCell::new(None);
    let radius = numerics::find_root(
        |r| match f(r) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        &RootSpec {
            tol: 1e-14 * rg,
            ..RootSpec::new(lo, hi)
        },
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let radius = radius?;
    let residual = f(radius)?;
    let profile = RadialProfile::optimal_general(w, rg, radius)?.rescaled(unit);
    let y = match weight {
        CollapseWeight::Profile(_) => Some(radius * radius / 2.0),
        CollapseWeight::Constant => None,
    };
    Ok(OptimalFeedbackSolution {
        profile,
        support_radius: radius * unit,
        y,
        residual,
    })
}
