//! Bounds on the collapse rate from the thermal emission of neutron stars.
//!
//! A star is only allowed at `λ` if its spontaneous heating does not exceed
//! its radiated power: `aλ² − Pλ + c ≤ 0`, with `a` from the collapse term
//! of the star as a macroscopic body and `c` from its feedback term.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::functionals::{grad_sq_functional, macro_feedback_functional};
use crate::numerics::{exp, log, sqrt};
use crate::regimes::{PhysicalConstants, MAX_LENGTH};
use crate::smearing::RadialProfile;

/// Observed neutron-star data.
#[derive(Debug, Clone, PartialEq)]
pub struct NeutronStar {
    /// Catalogue name.
    pub name: String,
    /// Radius `L` in m.
    pub radius: f64,
    /// Mass in kg.
    pub mass: f64,
    /// Surface temperature in K.
    pub temperature: f64,
    /// Radiated power to use instead of the black-body estimate, in W.
    pub radiation_power_override: Option<f64>,
}

impl NeutronStar {
    /// Validated star.
    pub fn new(name: &str, radius: f64, mass: f64, temperature: f64) -> Result<Self> {
        for v in [radius, mass, temperature] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain("star radius, mass and temperature must be positive"));
            }
        }
        Ok(NeutronStar {
            name: name.into(),
            radius,
            mass,
            temperature,
            radiation_power_override: None,
        })
    }

    /// PSR J2144–3933: 13 km, 1.4 M☉, 4.2×10⁴ K.
    pub fn j2144(k: &PhysicalConstants) -> Self {
        Self::new("PSR J2144-3933", 1.3e4, 1.4 * k.m_sun, 4.2e4).expect("catalogue values are valid")
    }

    /// PSR J1840–1419: 10 km, 1 M☉, 2.8×10⁵ K.
    pub fn j1840(k: &PhysicalConstants) -> Self {
        Self::new("PSR J1840-1419", 1.0e4, k.m_sun, 2.8e5).expect("catalogue values are valid")
    }

    /// Volume of the star.
    pub fn volume(&self) -> f64 {
        4.0 / 3.0 * PI * self.radius * self.radius * self.radius
    }
}

/// Published radiated powers of the two catalogue stars, in W.
pub const J2144_PUBLISHED_POWER: f64 = 3.75e20;
/// See [`J2144_PUBLISHED_POWER`].
pub const J1840_PUBLISHED_POWER: f64 = 4.38e23;

/// Black-body power `4πL²σT⁴`, or the override when present.
pub fn radiated_power(star: &NeutronStar, k: &PhysicalConstants) -> f64 {
    if let Some(p) = star.radiation_power_override {
        return p;
    }
    let t2 = star.temperature * star.temperature;
    4.0 * PI * star.radius * star.radius * k.sigma_sb * t2 * t2
}

/// Radial mass-density model of a star.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityKind {
    /// Constant density, the smallest `∫μ²` at fixed mass and volume.
    Uniform,
    /// Tolman VII, `μ = (5/2) μ̄ (1 − r²/L²)`.
    TolmanVii,
}

/// A density model with the mass and radius it describes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityProfile {
    /// Model.
    pub kind: DensityKind,
    /// Total mass in kg.
    pub mass: f64,
    /// Radius in m.
    pub radius: f64,
}

impl DensityProfile {
    /// Mass density at radius `r`.
    pub fn density(&self, r: f64) -> f64 {
        if r > self.radius {
            return 0.0;
        }
        let mean = self.mass / (4.0 / 3.0 * PI * self.radius * self.radius * self.radius);
        match self.kind {
            DensityKind::Uniform => mean,
            DensityKind::TolmanVii => 2.5 * mean * (1.0 - (r / self.radius) * (r / self.radius)),
        }
    }

    /// `∫μ²` relative to the uniform value `M²/V`.
    pub fn sq_factor(&self) -> f64 {
        match self.kind {
            DensityKind::Uniform => 1.0,
            DensityKind::TolmanVii => 10.0 / 7.0,
        }
    }
}

/// `∫ μ² d³x` in kg² m⁻³.
pub fn density_sq_integral(profile: &DensityProfile) -> Result<f64> {
    if !(profile.mass > 0.0 && profile.radius > 0.0) {
        return Err(Error::Domain("density profile needs positive mass and radius"));
    }
    let v = 4.0 / 3.0 * PI * profile.radius * profile.radius * profile.radius;
    Ok(profile.sq_factor() * profile.mass * profile.mass / v)
}

/// Which smearing profiles enter the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileChoice {
    /// Compact quartic collapse and uniform-ball feedback, the profiles that
    /// minimise macroscopic heating.
    Optimal,
    /// Gaussian collapse and feedback.
    Gaussian,
}

/// Source of the dimensionless coefficients of `a` and `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientMode {
    /// Evaluate the functionals: `(4π/3) r_C⁵ I_{r_C}` and `(3/4π) r_G I_{r_G}`.
    Runtime,
    /// The two-digit values 0.012 and 0.80 (optimal profiles only).
    Rounded,
}

/// Options of [`lambda_bounds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsSetup {
    /// Smearing profiles.
    pub profiles: ProfileChoice,
    /// Coefficient source.
    pub mode: CoefficientMode,
    /// Stellar density model in the feedback term.
    pub density: DensityKind,
}

impl Default for BoundsSetup {
    fn default() -> Self {
        BoundsSetup {
            profiles: ProfileChoice::Optimal,
            mode: CoefficientMode::Runtime,
            density: DensityKind::Uniform,
        }
    }
}

/// Dimensionless prefactors `k_C`, `k_G` of `a = k_C ℏ²L³/(m₀r_C⁵)` and
/// `c = k_G G²m₀M²/(L³r_G)` (before the density factor).
pub fn bound_coefficients(profiles: ProfileChoice, mode: CoefficientMode) -> Result<(f64, f64)> {
    match (profiles, mode) {
        (ProfileChoice::Optimal, CoefficientMode::Rounded) => Ok((0.012, 0.80)),
        (ProfileChoice::Gaussian, CoefficientMode::Rounded) => {
            Err(Error::Domain("rounded coefficients exist only for the optimal profiles"))
        }
        (choice, CoefficientMode::Runtime) => {
            let (gc, gg) = match choice {
                ProfileChoice::Optimal => (RadialProfile::compact_quartic(1.0)?, RadialProfile::uniform_ball(1.0)?),
                ProfileChoice::Gaussian => (RadialProfile::gaussian(1.0)?, RadialProfile::gaussian(1.0)?),
            };
            let kc = 4.0 * PI / 3.0 * grad_sq_functional(&gc)?.value;
            let kg = 3.0 / (4.0 * PI) * macro_feedback_functional(&gg)?.value;
            Ok((kc, kg))
        }
    }
}

/// Allowed interval of `λ`, or none at all.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExactBounds {
    /// `λ₋ ≤ λ ≤ λ₊`, in s⁻¹.
    Allowed {
        /// Lower root.
        lower: f64,
        /// Upper root.
        upper: f64,
    },
    /// The heating exceeds the radiated power for every `λ`.
    Excluded,
}

/// Exact and approximate bounds at one `(r_C, r_G)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaBounds {
    /// Roots of the quadratic.
    pub exact: ExactBounds,
    /// `0.064 G²m₀M²/(σT⁴L⁵r_G)`.
    pub approx_lower: f64,
    /// `1047.2 m₀σT⁴r_C⁵/(ℏ²L)`.
    pub approx_upper: f64,
    /// Quadratic coefficient `a`.
    pub a: f64,
    /// Radiated power `P`.
    pub p: f64,
    /// Constant term `c`.
    pub c: f64,
}

impl LambdaBounds {
    /// `|aλ² − Pλ + c|` at `λ`, relative to the largest of its terms.
    pub fn relative_residual(&self, lambda: f64) -> f64 {
        let t = [self.a * lambda * lambda, self.p * lambda, self.c];
        (t[0] - t[1] + t[2]).abs() / t.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

fn check_length(v: f64) -> Result<()> {
    if v > 0.0 && v <= MAX_LENGTH {
        Ok(())
    } else {
        Err(Error::Domain("lengths must lie in (0, 1e-4 m]"))
    }
}

/// Solves `aλ² − Pλ + c ≤ 0` for the star at `(r_C, r_G)`.
pub fn lambda_bounds(
    star: &NeutronStar,
    r_c: f64,
    r_g: f64,
    setup: &BoundsSetup,
    k: &PhysicalConstants,
) -> Result<LambdaBounds> {
    let (kc, kg) = bound_coefficients(setup.profiles, setup.mode)?;
    lambda_bounds_with(star, r_c, r_g, kc, kg, setup.density, k)
}

fn lambda_bounds_with(
    star: &NeutronStar,
    r_c: f64,
    r_g: f64,
    kc: f64,
    kg: f64,
    density: DensityKind,
    k: &PhysicalConstants,
) -> Result<LambdaBounds> {
    check_length(r_c)?;
    check_length(r_g)?;
    let l = star.radius;
    let l3 = l * l * l;
    let rc5 = r_c * r_c * r_c * r_c * r_c;
    let dens = DensityProfile {
        kind: density,
        mass: star.mass,
        radius: l,
    };
    let a = kc * k.hbar * k.hbar / k.m0 * l3 / rc5;
    let c = kg * dens.sq_factor() * k.g * k.g * k.m0 * star.mass * star.mass / (l3 * r_g);
    let p = radiated_power(star, k);
    let q = 4.0 * a * c / (p * p);
    let exact = if q > 1.0 {
        ExactBounds::Excluded
    } else {
        let s = 1.0 + sqrt(1.0 - q);
        ExactBounds::Allowed {
            lower: 2.0 * c / (p * s),
            upper: p * s / (2.0 * a),
        }
    };
    let t2 = star.temperature * star.temperature;
    let st4 = k.sigma_sb * t2 * t2;
    let l5 = l3 * l * l;
    Ok(LambdaBounds {
        exact,
        approx_lower: 0.064 * k.g * k.g * k.m0 * star.mass * star.mass / (st4 * l5 * r_g),
        approx_upper: 1047.2 * k.m0 * st4 * rc5 / (k.hbar * k.hbar * l),
        a,
        p,
        c,
    })
}

/// Which length a grid sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridAxis {
    /// Sweep `r_C` at fixed `r_G`.
    RC,
    /// Sweep `r_G` at fixed `r_C`.
    RG,
}

/// One grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    /// The swept length, in m.
    pub length: f64,
    /// Bounds at this point.
    pub bounds: LambdaBounds,
}

/// Bounds of one star along one axis.
#[derive(Debug, Clone, PartialEq)]
pub struct ExclusionGrid {
    /// Star name.
    pub star: String,
    /// Swept axis.
    pub axis: GridAxis,
    /// Value of the other length, in m.
    pub fixed_length: f64,
    /// Rows in grid order.
    pub rows: Vec<GridRow>,
}

/// Bounds of `star` along `grid`, holding the other length at
/// `fixed_length`.
pub fn exclusion_grid(
    star: &NeutronStar,
    axis: GridAxis,
    grid: &[f64],
    fixed_length: f64,
    setup: &BoundsSetup,
    k: &PhysicalConstants,
) -> Result<ExclusionGrid> {
    let (kc, kg) = bound_coefficients(setup.profiles, setup.mode)?;
    let rows = grid
        .iter()
        .map(|&x| {
            let (rc, rg) = match axis {
                GridAxis::RC => (x, fixed_length),
                GridAxis::RG => (fixed_length, x),
            };
            Ok(GridRow {
                length: x,
                bounds: lambda_bounds_with(star, rc, rg, kc, kg, setup.density, k)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExclusionGrid {
        star: star.name.clone(),
        axis,
        fixed_length,
        rows,
    })
}

/// An externally supplied upper bound `λ(r_C)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlayCurve {
    /// Source label.
    pub label: String,
    /// `(r_C, λ_upper)` points sorted by `r_C`.
    pub points: Vec<(f64, f64)>,
}

impl OverlayCurve {
    /// Validates and sorts the points.
    pub fn new(label: &str, mut points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::MalformedInput(alloc::format!("overlay '{label}' has no points")));
        }
        if points.iter().any(|&(r, l)| !(r > 0.0 && l > 0.0) || !r.is_finite() || !l.is_finite()) {
            return Err(Error::MalformedInput(alloc::format!(
                "overlay '{label}' has non-positive or non-finite values"
            )));
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::MalformedInput(alloc::format!("overlay '{label}' repeats an r_C value")));
        }
        Ok(OverlayCurve {
            label: label.into(),
            points,
        })
    }

    /// Log-log interpolation; `None` outside the covered range.
    pub fn value_at(&self, r_c: f64) -> Option<f64> {
        let pts = &self.points;
        if r_c < pts[0].0 || r_c > pts[pts.len() - 1].0 {
            return None;
        }
        if pts.len() == 1 {
            return Some(pts[0].1);
        }
        let i = pts.partition_point(|p| p.0 <= r_c).clamp(1, pts.len() - 1);
        let (x0, y0) = pts[i - 1];
        let (x1, y1) = pts[i];
        let t = (log(r_c) - log(x0)) / (log(x1) - log(x0));
        Some(exp(log(y0) + t * (log(y1) - log(y0))))
    }
}

/// Label of the internal bound in merged rows.
pub const INTERNAL_LABEL: &str = "internal";

/// One row of a merged upper-bound table.
#[derive(Debug, Clone, PartialEq)]
pub struct MergedRow {
    /// `r_C` in m.
    pub r_c: f64,
    /// Internal `λ₊`, absent where the point is excluded.
    pub internal_upper: Option<f64>,
    /// Internal `λ₋` at the grid's fixed `r_G`.
    pub internal_lower: Option<f64>,
    /// Tightest upper bound, if any source constrains this point.
    pub merged_upper: Option<f64>,
    /// Label of the source giving `merged_upper`.
    pub source: String,
}

/// Pointwise minimum of the internal `λ₊(r_C)` and the overlay curves.
pub fn merge_external_bounds(grid: &ExclusionGrid, overlays: &[OverlayCurve]) -> Result<Vec<MergedRow>> {
    if grid.axis != GridAxis::RC {
        return Err(Error::Domain("overlay curves are functions of r_C; merge needs an r_C grid"));
    }
    Ok(grid
        .rows
        .iter()
        .map(|row| {
            let (upper, lower) = match row.bounds.exact {
                ExactBounds::Allowed { lower, upper } => (Some(upper), Some(lower)),
                ExactBounds::Excluded => (None, None),
            };
            let mut best: Option<(f64, &str)> = upper.map(|u| (u, INTERNAL_LABEL));
            for o in overlays {
                if let Some(v) = o.value_at(row.length) {
                    if best.map_or(true, |(b, _)| v < b) {
                        best = Some((v, o.label.as_str()));
                    }
                }
            }
            MergedRow {
                r_c: row.length,
                internal_upper: upper,
                internal_lower: lower,
                merged_upper: best.map(|b| b.0),
                source: best.map_or(String::new(), |b| b.1.into()),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn k() -> PhysicalConstants {
        PhysicalConstants::reproduction()
    }

    #[test]
    fn published_powers() {
        let p1 = radiated_power(&NeutronStar::j2144(&k()), &k());
        let p2 = radiated_power(&NeutronStar::j1840(&k()), &k());
        assert!((p1 / J2144_PUBLISHED_POWER - 1.0).abs() < 0.02);
        assert!((p2 / J1840_PUBLISHED_POWER - 1.0).abs() < 0.03);
        let mut cold = NeutronStar::j1840(&k());
        cold.temperature = 1e-30;
        assert!(radiated_power(&cold, &k()) < 1e-100);
        cold.radiation_power_override = Some(5.0);
        assert_eq!(radiated_power(&cold, &k()), 5.0);
    }

    #[test]
    fn tolman_factor() {
        let u = DensityProfile {
            kind: DensityKind::Uniform,
            mass: 2.0,
            radius: 3.0,
        };
        let t = DensityProfile {
            kind: DensityKind::TolmanVii,
            ..u
        };
        let r = density_sq_integral(&t).unwrap() / density_sq_integral(&u).unwrap();
        assert_relative_eq!(r, 10.0 / 7.0, max_relative = 1e-15);
        // polynomial moments by quadrature
        let spec = crate::numerics::QuadratureSpec::default();
        let mass = crate::numerics::integrate(|x| 4.0 * PI * x * x * t.density(x), 0.0, 3.0, &spec).unwrap();
        assert_relative_eq!(mass.value, 2.0, max_relative = 1e-12);
        let sq = crate::numerics::integrate(|x| 4.0 * PI * x * x * t.density(x) * t.density(x), 0.0, 3.0, &spec)
            .unwrap();
        assert_relative_eq!(sq.value, density_sq_integral(&t).unwrap(), max_relative = 1e-12);
        let u2 = DensityProfile { mass: 4.0, ..u };
        assert_relative_eq!(density_sq_integral(&u2).unwrap(), 4.0 * density_sq_integral(&u).unwrap());
    }

    #[test]
    fn runtime_coefficients() {
        let (kc, kg) = bound_coefficients(ProfileChoice::Optimal, CoefficientMode::Runtime).unwrap();
        assert_relative_eq!(kc, 35.0 / 2916.0, max_relative = 1e-10);
        assert_relative_eq!(kg, 9.0 / (5.0 * libm::sqrt(5.0)), max_relative = 1e-10);
        assert!(bound_coefficients(ProfileChoice::Gaussian, CoefficientMode::Rounded).is_err());
    }

    #[test]
    fn benchmark_bounds() {
        let s = NeutronStar::j2144(&k());
        let b = lambda_bounds(&s, 1e-7, 1e-7, &BoundsSetup::default(), &k()).unwrap();
        assert_relative_eq!(b.approx_upper, 2.11e16, max_relative = 5e-3);
        assert_relative_eq!(b.approx_lower, 5.71e-13, max_relative = 5e-3);
        let ExactBounds::Allowed { lower, upper } = b.exact else {
            panic!("expected real roots")
        };
        assert!(lower < upper);
        assert!(b.relative_residual(lower) < 1e-10);
        assert!(b.relative_residual(upper) < 1e-10);
        assert!((upper / b.approx_upper - 1.0).abs() < 1e-3);
        assert!((lower / b.approx_lower - 1.0).abs() < 1e-3);
    }

    #[test]
    fn excluded_when_discriminant_negative() {
        let mut s = NeutronStar::j2144(&k());
        s.radiation_power_override = Some(1e-20);
        let b = lambda_bounds(&s, 1e-7, 1e-7, &BoundsSetup::default(), &k()).unwrap();
        assert_eq!(b.exact, ExactBounds::Excluded);
    }

    #[test]
    fn grid_slopes_and_dominance() {
        let grid: Vec<f64> = (0..9).map(|i| libm::pow(10.0, -8.0 + 0.5 * i as f64)).collect();
        let set = BoundsSetup::default();
        let a = exclusion_grid(&NeutronStar::j2144(&k()), GridAxis::RC, &grid, 1e-7, &set, &k()).unwrap();
        let b = exclusion_grid(&NeutronStar::j1840(&k()), GridAxis::RC, &grid, 1e-7, &set, &k()).unwrap();
        for (x, y) in a.rows.iter().zip(b.rows.iter()) {
            let (ExactBounds::Allowed { lower: la, upper: ua }, ExactBounds::Allowed { lower: lb, upper: ub }) =
                (x.bounds.exact, y.bounds.exact)
            else {
                panic!("expected real roots")
            };
            assert!(la > lb && ua < ub);
        }
        let slope = (log(a.rows[8].bounds.approx_upper) - log(a.rows[0].bounds.approx_upper))
            / (log(grid[8]) - log(grid[0]));
        assert_relative_eq!(slope, 5.0, max_relative = 1e-12);
        let g = exclusion_grid(&NeutronStar::j2144(&k()), GridAxis::RG, &grid, 1e-7, &set, &k()).unwrap();
        let slope = (log(g.rows[8].bounds.approx_lower) - log(g.rows[0].bounds.approx_lower))
            / (log(grid[8]) - log(grid[0]));
        assert_relative_eq!(slope, -1.0, max_relative = 1e-12);
        assert!(exclusion_grid(&NeutronStar::j2144(&k()), GridAxis::RC, &[2e-4], 1e-7, &set, &k()).is_err());
    }

    #[test]
    fn overlay_merge() {
        let grid = [1e-8, 1e-7, 1e-6];
        let g = exclusion_grid(&NeutronStar::j2144(&k()), GridAxis::RC, &grid, 1e-7, &BoundsSetup::default(), &k())
            .unwrap();
        let plain = merge_external_bounds(&g, &[]).unwrap();
        for (m, r) in plain.iter().zip(g.rows.iter()) {
            assert_eq!(m.source, INTERNAL_LABEL);
            if let ExactBounds::Allowed { upper, .. } = r.bounds.exact {
                assert_eq!(m.merged_upper, Some(upper));
            }
        }
        let tight = OverlayCurve::new("tight", alloc::vec![(1e-9, 1e-30), (1e-5, 1e-30)]).unwrap();
        let merged = merge_external_bounds(&g, &[tight]).unwrap();
        assert!(merged
            .iter()
            .all(|m| (m.merged_upper.unwrap() / 1e-30 - 1.0).abs() < 1e-12 && m.source == "tight"));
        // crossing: a curve through the internal value at the middle point
        let mid = match g.rows[1].bounds.exact {
            ExactBounds::Allowed { upper, .. } => upper,
            ExactBounds::Excluded => unreachable!(),
        };
        let cross = OverlayCurve::new("cross", alloc::vec![(1e-8, mid), (1e-6, mid)]).unwrap();
        let merged = merge_external_bounds(&g, &[cross]).unwrap();
        assert_eq!(merged[0].source, INTERNAL_LABEL);
        assert_eq!(merged[2].source, "cross");
        assert_relative_eq!(merged[1].merged_upper.unwrap(), mid, max_relative = 1e-12);
        assert!(OverlayCurve::new("bad", alloc::vec![]).is_err());
        assert!(OverlayCurve::new("bad", alloc::vec![(1.0, -1.0)]).is_err());
    }

    #[test]
    fn overlay_interpolation_is_log_log() {
        let o = OverlayCurve::new("x", alloc::vec![(1.0, 1.0), (100.0, 1e4)]).unwrap();
        assert_relative_eq!(o.value_at(10.0).unwrap(), 100.0, max_relative = 1e-12);
        assert_eq!(o.value_at(1000.0), None);
    }
}
