use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::solve_support_radius;
use crate::error::{Error, Result};
use crate::numerics::{self, exp, QuadratureSpec};
use crate::smearing::RadialProfile;

/// Outcome of perturbing the Gaussian-case optimal `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationReport {
    /// Optimal `r_C⁴ I₀`.
    pub base: f64,
    /// Change of `r_C⁴ I₀` under each perturbation.
    pub deltas: Vec<f64>,
    /// The part of each change linear in the amplitude.
    pub first_order: Vec<f64>,
    /// Amplitude actually used for each perturbation.
    pub amplitudes: Vec<f64>,
    /// Quadrature tolerance each change is judged against.
    pub tolerance: f64,
    /// True when no change falls below `-tolerance`.
    pub passed: bool,
}

// Cubic B-spline with unit peak, supported on [lo, hi].
fn bump(lo: f64, hi: f64, r: f64) -> f64 {
    let u = 4.0 * (r - 0.5 * (lo + hi)).abs() / (hi - lo);
    if u < 1.0 {
        1.0 - 1.5 * u * u + 0.75 * u * u * u
    } else if u < 2.0 {
        0.25 * (2.0 - u) * (2.0 - u) * (2.0 - u)
    } else {
        0.0
    }
}

/// Perturbs the optimal enclosed-mass function `Q` of the Gaussian case,
/// `Q → Q + εφ` with `φ(0) = φ(R) = 0` and `∫ rφ dr = 0`, so that the
/// normalisation and variance are kept, and records the change of `I₀`.
///
/// `φ` is a difference of two cubic bumps on random sub-intervals of the
/// support; `ε` starts at `amplitude` and is halved until `Q + εφ` stays
/// non-decreasing.
pub fn optimality_perturbation_check(
    r_c: f64,
    r_g: f64,
    count: usize,
    amplitude: f64,
    seed: u64,
) -> Result<PerturbationReport> {
    if !(amplitude > 0.0) {
        return Err(Error::Domain("perturbation amplitude must be positive"));
    }
    let (y, radius) = solve_support_radius(r_g / r_c, 1.0)?;
    let g_c = RadialProfile::gaussian(1.0)?;
    let q = |r: f64| {
        let t = r / radius;
        t * t * t * exp(0.5 * (r * r - radius * radius))
    };
    let spec = QuadratureSpec {
        rel_tol: 1e-12,
        abs_tol: 1e-16,
        ..QuadratureSpec::default()
    };
    let i0 = |f: &dyn Fn(f64) -> f64| -> Result<numerics::Estimate> {
        numerics::integrate_with_breaks(
            |r| if r == 0.0 { 0.0 } else { 2.0 * PI * g_c.density(r) * f(r) / (r * r) },
            &[0.0, 0.5 * radius, radius],
            &spec,
        )
    };
    let base = crate::functionals::i0_gauss_optimal_closed(y)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deltas = Vec::with_capacity(count);
    let mut first_order = Vec::with_capacity(count);
    let mut amplitudes = Vec::with_capacity(count);
    let mut worst_err: f64 = 0.0;
    for _ in 0..count {
        let mut interval = || {
            let a = radius * rng.random_range(0.15..0.75);
            let w = radius * rng.random_range(0.1..0.25);
            (a, (a + w).min(0.97 * radius))
        };
        let (a1, b1) = interval();
        let (a2, b2) = interval();
        let m1 = numerics::integrate(|r| r * bump(a1, b1, r), a1, b1, &spec)?.value;
        let m2 = numerics::integrate(|r| r * bump(a2, b2, r), a2, b2, &spec)?.value;
        let kappa = m1 / m2;
        let phi = move |r: f64| bump(a1, b1, r) - kappa * bump(a2, b2, r);
        let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
        let mut eps = sign * amplitude;
        // keep Q + εφ non-decreasing
        for _ in 0..60 {
            let mut prev = 0.0;
            let ok = (1..=2000).all(|i| {
                let r = radius * i as f64 / 2000.0;
                let v = q(r) + eps * phi(r);
                let fine = v >= prev;
                prev = v;
                fine
            });
            if ok {
                break;
            }
            eps *= 0.5;
        }
        let lin = i0(&|r| 2.0 * eps * q(r) * phi(r))?;
        let quad = i0(&|r| eps * eps * phi(r) * phi(r))?;
        worst_err = worst_err.max(lin.error + quad.error);
        first_order.push(lin.value);
        deltas.push(lin.value + quad.value);
        amplitudes.push(eps);
    }
    let tolerance = worst_err.max(1e-12 * base);
    let passed = deltas.iter().all(|&d| d >= -tolerance);
    Ok(PerturbationReport {
        base,
        deltas,
        first_order,
        amplitudes,
        tolerance,
        passed,
    })
}
