use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use super::{spec, FunctionalResult};
use crate::error::{Error, Result};
use crate::numerics::{self, atan, dawson, erfcx, exp, log, sqrt};
use crate::smearing::{derive, ProfileDerived, ProfileKind, RadialProfile};

fn merged_breaks(a: &RadialProfile, b: &RadialProfile, extra: &[f64]) -> Vec<f64> {
    let mut pts = a.breakpoints();
    pts.extend(b.breakpoints());
    pts.extend(extra.iter().copied().filter(|x| *x > 0.0 && x.is_finite()));
    if let Some(r) = b.support_radius() {
        // Optimal feedback profiles peak sharply against a Gaussian just
        // inside their edge.
        let w = 1.0 / r.max(1.0);
        pts.extend([r - 4.0 * w, r - w, r - 0.25 * w, r + w].iter().filter(|x| **x > 0.0));
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// `I₀ = ½ ∫ g_C |∇f_G|² = 2π ∫ g_C(r) Q_G(r)²/r² dr`, in length⁻⁴.
///
/// Evaluated in units of the collapse length `r_C`.
pub fn grav_functional_i0(g_c: &RadialProfile, g_g: &RadialProfile) -> Result<FunctionalResult> {
    let rc = g_c.scale();
    let c = g_c.unit();
    let gg = g_g.rescaled(1.0 / rc);
    let q = derive(&gg)?;
    let breaks = merged_breaks(&c, &gg, &[]);
    let est = numerics::integrate_radial(
        |r| {
            if r == 0.0 {
                return 0.0;
            }
            let qq = q.enclosed_mass(r);
            2.0 * PI * c.density(r) * qq * qq / (r * r)
        },
        &breaks,
        &spec(),
    )?;
    Ok(FunctionalResult::from_estimate(est, -4, rc))
}

/// `r_C⁴ I₀` for Gaussian collapse and feedback profiles, `η = r_C/r_G`.
///
/// Equal to `½[1 + (2/π)(η²/s − 2 arctan s)]` with `s = √(1+2η²)`, evaluated
/// as `(2/π)[v/(1−v²) − arctan v]`, `v = (s−1)/(s+1)`, which has no
/// cancellation as `η → 0`.
pub fn i0_gauss_gauss_closed(eta: f64) -> Result<f64> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::Domain("eta must be positive and finite"));
    }
    let s = sqrt(1.0 + 2.0 * eta * eta);
    let v = 2.0 * eta * eta / ((s + 1.0) * (s + 1.0));
    let bracket = if v < 0.3 {
        // Σ_{k≥1} v^{2k+1} (1 − (−1)^k/(2k+1))
        let v2 = v * v;
        let mut pow = v * v2;
        let mut sum = 0.0;
        for k in 1..200 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let term = pow * (1.0 - sign / (2 * k + 1) as f64);
            sum += term;
            if term < f64::EPSILON * sum {
                break;
            }
            pow *= v2;
        }
        sum
    } else {
        v / (1.0 - v * v) - atan(v)
    };
    Ok(2.0 / PI * bracket)
}

/// Natural log of [`i0_gauss_gauss_closed`].
pub fn ln_i0_gauss_gauss_closed(eta: f64) -> Result<f64> {
    Ok(log(i0_gauss_gauss_closed(eta)?))
}

fn check_y(y: f64) -> Result<()> {
    if y > 0.0 && y.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain("y must be positive and finite"))
    }
}

/// `r_C⁴ I₀` for a Gaussian collapse profile against the optimal feedback
/// profile with support `R = r_C √(2y)`, written literally:
///
/// `½[erf√y + 3e^{−2y} erfi√y/(8y³) + e^{−y}(−3/(4y^{5/2}) + 1/(2y^{3/2}) + 1/√y)/√π − 1]`.
///
/// The `e^{−2y} erfi` product is formed through Dawson's function so that
/// the expression stays finite, but the bracket still cancels to a few
/// digits once `y` exceeds ~15 and for small `y`. Use
/// [`i0_gauss_optimal_closed`] for values.
pub fn i0_gauss_optimal_literal(y: f64) -> Result<f64> {
    check_y(y)?;
    let s = sqrt(y);
    let erfi_term = exp(-y) * 2.0 / sqrt(PI) * dawson(s);
    let poly = -3.0 / (4.0 * y * y * s) + 1.0 / (2.0 * y * s) + 1.0 / s;
    Ok(0.5 * (numerics::erf(s) + 3.0 * erfi_term / (8.0 * y * y * y) + exp(-y) * poly / sqrt(PI) - 1.0))
}

/// `ln(√(2π) e^{y} r_C⁴ I₀)` for the optimal profile, the well-conditioned
/// core of [`i0_gauss_optimal_closed`].
fn optimal_core(y: f64) -> f64 {
    let a = sqrt(2.0 * y);
    let s = sqrt(y);
    // (a³ − 3a + 3√2 D(√y)) / (2y)³
    let edge = if y < 0.5 {
        // Leading orders cancel; sum 3√2 Σ_{n≥2} (−1)^n 2^n y^{n+½}/(2n+1)!!
        let mut term = 4.0 * y * y * s / 15.0;
        let mut sum = 0.0;
        let mut n = 2;
        loop {
            sum += term;
            if term.abs() < f64::EPSILON * sum.abs() || n > 200 {
                break;
            }
            n += 1;
            term *= -2.0 * y / (2 * n + 1) as f64;
        }
        3.0 * SQRT_2 * sum / (8.0 * y * y * y)
    } else {
        (a * a * a - 3.0 * a + 3.0 * SQRT_2 * dawson(s)) / (8.0 * y * y * y)
    };
    // J(a) = 1/a − √(π/2) erfcx(a/√2)
    let j = if a >= 8.0 {
        let inv2 = 1.0 / (a * a);
        let mut term = 1.0 / (a * a * a);
        let mut sum = 0.0;
        let mut k = 1;
        loop {
            sum += term;
            let next = -term * (2 * k + 1) as f64 * inv2;
            if next.abs() < f64::EPSILON * sum.abs() || next.abs() >= term.abs() || k > 60 {
                break;
            }
            term = next;
            k += 1;
        }
        sum
    } else {
        1.0 / a - sqrt(PI / 2.0) * erfcx(s)
    };
    edge + j
}

/// `r_C⁴ I₀` for a Gaussian collapse profile against the optimal feedback
/// profile, in a cancellation-free arrangement of the literal form.
pub fn i0_gauss_optimal_closed(y: f64) -> Result<f64> {
    Ok(exp(ln_i0_gauss_optimal_closed(y)?))
}

/// Natural log of [`i0_gauss_optimal_closed`]; finite for every `y > 0`.
pub fn ln_i0_gauss_optimal_closed(y: f64) -> Result<f64> {
    check_y(y)?;
    Ok(-y - 0.5 * log(2.0 * PI) + log(optimal_core(y)))
}

/// `I_{r_G} = 2π ∫ Q(r)²/r² dr`, the macroscopic-body feedback functional,
/// in length⁻¹.
pub fn macro_feedback_functional(g_g: &RadialProfile) -> Result<FunctionalResult> {
    let u = g_g.unit();
    let q = derive(&u)?;
    // Q → 1 leaves a 1/r² tail; integrate it exactly beyond `edge`.
    let edge = u.support_radius().unwrap_or(8.0);
    let mut pts = alloc::vec![0.0];
    pts.extend(u.breakpoints().into_iter().filter(|&b| b < edge));
    pts.push(edge);
    let inner = numerics::integrate_with_breaks(
        |r| {
            if r == 0.0 {
                return 0.0;
            }
            let qq = q.enclosed_mass(r);
            qq * qq / (r * r)
        },
        &pts,
        &spec(),
    )?;
    let outer = if u.support_radius().is_some() {
        numerics::Estimate { value: 0.0, error: 0.0 }
    } else {
        numerics::integrate_to_infinity(
            |r| {
                let qq = q.enclosed_mass(r);
                (qq * qq - 1.0) / (r * r)
            },
            edge,
            &[],
            // the tail is ~1e-15 of the total; only an absolute floor is meaningful
            &numerics::QuadratureSpec { abs_tol: 1e-16, ..spec() },
        )?
    };
    let est = numerics::Estimate {
        value: 2.0 * PI * (inner.value + outer.value + 1.0 / edge),
        error: 2.0 * PI * (inner.error + outer.error),
    };
    Ok(FunctionalResult::from_estimate(est, -1, g_g.scale()))
}

/// `w_d(r) = π/(d r³) ∫_{|d−r|}^{d+r} s g_C(s) ds`, the angular average of
/// the displaced collapse profile, as a natural log.
pub(crate) fn ln_pair_weight(c: &RadialProfile, cd: &ProfileDerived, d: f64, r: f64) -> f64 {
    if r == 0.0 {
        return f64::NEG_INFINITY;
    }
    if d == 0.0 {
        return log(2.0 * PI) + c.ln_density(r) - 2.0 * log(r);
    }
    if c.kind() == ProfileKind::Gaussian {
        // (π/r²)(2π)^{-3/2} 2 e^{-(d²+r²)/2} sinh(dr)/(dr)
        let x = d * r;
        let ln_shc = if x < 1e-3 {
            log(1.0 + x * x / 6.0)
        } else {
            x + log(-libm::expm1(-2.0 * x) / (2.0 * x))
        };
        return log(2.0 * PI / (r * r)) - 1.5 * log(2.0 * PI) - 0.5 * (d * d + r * r) + ln_shc;
    }
    let lo = (d - r).abs();
    let hi = d + r;
    let inner = if hi - lo > 0.1 {
        (cd.outer_moment(lo) - cd.outer_moment(hi)) / (4.0 * PI)
    } else {
        numerics::integrate(|s| s * c.density(s), lo, hi, &spec())
            .map(|e| e.value)
            .unwrap_or(f64::NAN)
    };
    log(PI * inner.max(0.0) / (d * r * r * r))
}

fn pair_weight(c: &RadialProfile, cd: &ProfileDerived, d: f64, r: f64) -> f64 {
    exp(ln_pair_weight(c, cd, d, r))
}

/// `I^{(G)}(d) = ½ ∫ g_C(d + z) |∇f_G(z)|² d³z = ∫ w_d(r) Q_G(r)² dr`, the
/// feedback functional for a collapse centre displaced by `d` from the
/// feedback centre, in length⁻⁴.
pub fn pair_grav_functional(g_c: &RadialProfile, g_g: &RadialProfile, d: f64) -> Result<FunctionalResult> {
    if !(d >= 0.0) || !d.is_finite() {
        return Err(Error::Domain("separation must be non-negative and finite"));
    }
    if d == 0.0 {
        return grav_functional_i0(g_c, g_g);
    }
    let rc = g_c.scale();
    let c = g_c.unit();
    let cd = derive(&c)?;
    let gg = g_g.rescaled(1.0 / rc);
    let q = derive(&gg)?;
    let du = d / rc;
    let mut extra = alloc::vec![du];
    for b in c.breakpoints() {
        extra.push(du + b);
        extra.push((du - b).abs());
    }
    let breaks = merged_breaks(&c, &gg, &extra);
    let est = numerics::integrate_radial(
        |r| {
            let qq = q.enclosed_mass(r);
            pair_weight(&c, &cd, du, r) * qq * qq
        },
        &breaks,
        &spec(),
    )?;
    Ok(FunctionalResult::from_estimate(est, -4, rc))
}
