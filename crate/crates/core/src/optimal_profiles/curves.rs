use alloc::vec::Vec;
use core::f64::consts::LN_10;

use super::solve_support_radius;
use crate::error::{Error, Result};
use crate::functionals::{ln_i0_gauss_gauss_closed, ln_i0_gauss_optimal_closed, two_particle_psl};
use crate::smearing::RadialProfile;

/// One point of the Gaussian-over-optimal feedback heating ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioPoint {
    /// `r_G/r_C`.
    pub r_g_over_r_c: f64,
    /// Support parameter `y` of the optimal profile.
    pub y: f64,
    /// `log10(I₀[Gaussian]/I₀[optimal])`.
    pub log10_ratio: f64,
}

/// Ratio of the Gaussian to the optimal feedback functional along a grid
/// of `r_G/r_C`, formed from the closed forms in the log domain.
pub fn ratio_curve(grid: &[f64]) -> Result<Vec<RatioPoint>> {
    grid.iter()
        .map(|&rho| {
            if !(rho > 0.0) || !rho.is_finite() {
                return Err(Error::Domain("r_G/r_C grid must be positive"));
            }
            let (y, _) = solve_support_radius(rho, 1.0)?;
            let ln = ln_i0_gauss_gauss_closed(1.0 / rho)? - ln_i0_gauss_optimal_closed(y)?;
            Ok(RatioPoint {
                r_g_over_r_c: rho,
                y,
                log10_ratio: ln / LN_10,
            })
        })
        .collect()
}

/// Two-particle collapse heating over sub-Gaussian exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct PslSearch {
    /// `(p, I_N)` rows in grid order.
    pub rows: Vec<(f64, f64)>,
    /// Exponent with the smallest heating.
    pub argmin_p: f64,
    /// The smallest heating.
    pub min_value: f64,
}

/// Evaluates the two-particle collapse heating for sub-Gaussian profiles of
/// width `r_c` over `p_grid` and reports the minimiser.
pub fn psl_counterexample_search(r_c: f64, m1: f64, m2: f64, d: f64, p_grid: &[f64]) -> Result<PslSearch> {
    if p_grid.is_empty() {
        return Err(Error::Domain("exponent grid is empty"));
    }
    let mut rows = Vec::with_capacity(p_grid.len());
    for &p in p_grid {
        let g = RadialProfile::sub_gaussian(p, r_c)?;
        rows.push((p, two_particle_psl(&g, m1, m2, d)?.value));
    }
    let (argmin_p, min_value) = rows
        .iter()
        .copied()
        .fold((f64::NAN, f64::INFINITY), |best, row| if row.1 < best.1 { row } else { best });
    Ok(PslSearch {
        rows,
        argmin_p,
        min_value,
    })
}
