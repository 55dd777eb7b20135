use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::functionals::feedback::ln_pair_weight;
use crate::numerics::{self, exp, log_add_exp, QuadratureSpec, RootSpec};
use crate::smearing::{derive, ProfileDerived, RadialProfile};

/// Feedback heating `I₀ + I(z)` of a collapse profile paired with a copy
/// displaced by `z`, for the optimum that knows about `z` and for the
/// ordinary (`z = 0`) optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GpslCounterexample {
    /// Heating with the `z`-aware optimal profile, length⁻⁴.
    pub z_optimal: f64,
    /// Heating with the `z = 0` optimal profile, length⁻⁴.
    pub z0_optimal: f64,
    /// Support radius of the `z`-aware optimum.
    pub radius_z: f64,
    /// Support radius of the `z = 0` optimum.
    pub radius_0: f64,
    /// Whether the `z`-aware `Q` is non-decreasing and bounded by one, i.e.
    /// describes a genuine density.
    pub admissible: bool,
}

struct Weights<'a> {
    c: &'a RadialProfile,
    cd: &'a ProfileDerived,
    z: f64,
    with_pair: bool,
}

impl Weights<'_> {
    fn ln_w(&self, r: f64) -> f64 {
        let w0 = ln_pair_weight(self.c, self.cd, 0.0, r);
        if self.with_pair {
            log_add_exp(w0, ln_pair_weight(self.c, self.cd, self.z, r))
        } else {
            w0
        }
    }

    fn q(&self, radius: f64, ln_edge: f64, r: f64) -> f64 {
        if r >= radius {
            1.0
        } else if r == 0.0 {
            0.0
        } else {
            r / radius * exp(ln_edge - self.ln_w(r))
        }
    }
}

fn spec() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 1e-12,
        abs_tol: 0.0,
        max_subdivisions: 4000,
        ..QuadratureSpec::with_scale(1.0)
    }
}

fn breaks_below(z: f64, radius: f64) -> Vec<f64> {
    let mut pts = alloc::vec![0.0];
    for b in [1.0, z, z - 1.0, z + 1.0] {
        if b > 0.0 && b < radius {
            pts.push(b);
        }
    }
    pts.push(radius);
    pts
}

/// `R² − 2 ∫₀^R r Q dr − 3 r_G²`.
fn residual(w: &Weights, radius: f64, r_g: f64) -> Result<f64> {
    let ln_edge = w.ln_w(radius);
    let est = numerics::integrate_with_breaks(|r| r * w.q(radius, ln_edge, r), &breaks_below(w.z, radius), &spec())?;
    Ok(radius * radius - 2.0 * est.value - 3.0 * r_g * r_g)
}

fn solve_radius(w: &Weights, r_g: f64) -> Result<f64> {
    let (mut lo, mut hi) = (r_g, 3.0 * r_g);
    let mut steps = 0;
    while residual(w, lo, r_g)? > 0.0 {
        lo *= 0.7;
        steps += 1;
        if steps > 60 {
            return Err(Error::NotBracketed { lo, hi });
        }
    }
    while residual(w, hi, r_g)? < 0.0 {
        hi *= 1.5;
        steps += 1;
        if steps > 60 {
            return Err(Error::NotBracketed { lo, hi });
        }
    }
    let failure = core::cell::RefCell::new(None);
    let root = numerics::find_root(
        |r| {
            residual(w, r, r_g).unwrap_or_else(|e| {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            })
        },
        &RootSpec {
            tol: 1e-13 * r_g,
            ..RootSpec::new(lo, hi)
        },
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    root
}

/// `∫ W Q² dr` with `W` the full (pair-aware) weight and `Q` built from
/// `shape` with support `radius`.
fn cost(full: &Weights, shape: &Weights, radius: f64) -> Result<f64> {
    let ln_edge = shape.ln_w(radius);
    let inside = numerics::integrate_with_breaks(
        |r| {
            let q = shape.q(radius, ln_edge, r);
            if q == 0.0 {
                0.0
            } else {
                exp(full.ln_w(r) + 2.0 * crate::numerics::log(q))
            }
        },
        &breaks_below(full.z, radius),
        &spec(),
    )?;
    let outside = numerics::integrate_to_infinity(|r| exp(full.ln_w(r)), radius, &[full.z, full.z + 1.0], &spec())?;
    Ok(inside.value + outside.value)
}

/// Compares the `z`-aware optimal feedback profile, `Q(r) = (r/R) W(R)/W(r)`
/// with `W = w₀ + w_z`, against the ordinary optimum on the objective
/// `I₀ + I(z)`. Both radii are fixed by the same variance constraint.
pub fn gpsl_counterexample(g_c: &RadialProfile, r_g: f64, z: f64) -> Result<GpslCounterexample> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::Domain("z must be non-negative and finite"));
    }
    if !(r_g > 0.0) || !r_g.is_finite() {
        return Err(Error::Domain("r_G must be positive and finite"));
    }
    let rc = g_c.scale();
    let c = g_c.unit();
    let cd = derive(&c)?;
    let (rg, zu) = (r_g / rc, z / rc);
    let full = Weights {
        c: &c,
        cd: &cd,
        z: zu,
        with_pair: true,
    };
    let plain = Weights {
        c: &c,
        cd: &cd,
        z: zu,
        with_pair: false,
    };
    let radius_z = solve_radius(&full, rg)?;
    let radius_0 = solve_radius(&plain, rg)?;
    let z_optimal = cost(&full, &full, radius_z)?;
    let z0_optimal = cost(&full, &plain, radius_0)?;

    let ln_edge = full.ln_w(radius_z);
    let mut admissible = true;
    let mut prev = 0.0;
    for i in 1..=400 {
        let q = full.q(radius_z, ln_edge, radius_z * i as f64 / 400.0);
        if q < prev - 1e-12 || q > 1.0 + 1e-12 {
            admissible = false;
        }
        prev = q;
    }
    let s4 = rc * rc * rc * rc;
    Ok(GpslCounterexample {
        z_optimal: z_optimal / s4,
        z0_optimal: z0_optimal / s4,
        radius_z: radius_z * rc,
        radius_0: radius_0 * rc,
        admissible,
    })
}
