//! Physical heating rates in the isolated-particle and macroscopic limits,
//! the cosmological comparison quantities and the multi-particle sandwich
//! report.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::functionals::{
    dirichlet_energy, grad_sq_functional, grav_functional_i0, macro_feedback_functional,
    point_config_heating_with_rng, DiffStat, PointConfig, PointHeating,
};
use crate::numerics::{pow, sqrt};
use crate::smearing::RadialProfile;

/// Physical constants in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Newton's constant.
    pub g: f64,
    /// Reduced Planck constant.
    pub hbar: f64,
    /// Reference mass of the collapse term (the proton mass).
    pub m0: f64,
    /// Neutron mass.
    pub m_neutron: f64,
    /// Boltzmann constant.
    pub k_b: f64,
    /// Stefan–Boltzmann constant.
    pub sigma_sb: f64,
    /// Solar mass.
    pub m_sun: f64,
    /// Speed of light.
    pub c: f64,
    /// Elementary charge, for eV conversions.
    pub e: f64,
}

/// Stefan–Boltzmann constant rounded to two digits, as used for the
/// published neutron-star powers.
pub const SIGMA_SB_ROUNDED: f64 = 5.6e-8;
/// Stefan–Boltzmann constant, CODATA 2018.
pub const SIGMA_SB_CODATA: f64 = 5.670_374_419e-8;

impl PhysicalConstants {
    /// CODATA 2018 values with the rounded Stefan–Boltzmann constant, which
    /// reproduces the published stellar powers.
    pub const fn reproduction() -> Self {
        PhysicalConstants {
            g: crate::functionals::G_NEWTON,
            hbar: 1.054_571_817e-34,
            m0: 1.672_621_923_69e-27,
            m_neutron: 1.674_927_498_04e-27,
            k_b: 1.380_649e-23,
            sigma_sb: SIGMA_SB_ROUNDED,
            m_sun: 1.988e30,
            c: 299_792_458.0,
            e: 1.602_176_634e-19,
        }
    }

    /// CODATA 2018 throughout.
    pub const fn codata() -> Self {
        PhysicalConstants {
            sigma_sb: SIGMA_SB_CODATA,
            ..Self::reproduction()
        }
    }

    /// Checks every constant is positive and finite.
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.g,
            self.hbar,
            self.m0,
            self.m_neutron,
            self.k_b,
            self.sigma_sb,
            self.m_sun,
            self.c,
            self.e,
        ];
        if all.iter().all(|v| *v > 0.0 && v.is_finite()) {
            Ok(())
        } else {
            Err(Error::Domain("physical constants must be positive and finite"))
        }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::reproduction()
    }
}

/// Upper limit on `r_C` and `r_G` from short-distance tests of Newton's law.
pub const MAX_LENGTH: f64 = 1e-4;

/// Collapse rate, lengths and profiles of the model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    /// Collapse rate `λ` in s⁻¹.
    pub lambda: f64,
    /// Collapse length `r_C` in m.
    pub r_c: f64,
    /// Feedback length `r_G` in m.
    pub r_g: f64,
    /// Collapse profile, scale `r_C`.
    pub g_c: RadialProfile,
    /// Feedback profile, scale `r_G`.
    pub g_g: RadialProfile,
}

impl ModelParams {
    /// Gaussian profiles with lengths capped at [`MAX_LENGTH`].
    pub fn gaussian(lambda: f64, r_c: f64, r_g: f64) -> Result<Self> {
        Self::new(lambda, RadialProfile::gaussian(r_c)?, RadialProfile::gaussian(r_g)?)
    }

    /// Arbitrary profiles with lengths capped at [`MAX_LENGTH`].
    pub fn new(lambda: f64, g_c: RadialProfile, g_g: RadialProfile) -> Result<Self> {
        if g_c.scale() > MAX_LENGTH || g_g.scale() > MAX_LENGTH {
            return Err(Error::Domain("r_C and r_G are limited to 1e-4 m"));
        }
        Self::uncapped(lambda, g_c, g_g)
    }

    /// As [`ModelParams::new`] without the length cap.
    pub fn uncapped(lambda: f64, g_c: RadialProfile, g_g: RadialProfile) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Domain("lambda must be positive and finite"));
        }
        Ok(ModelParams {
            lambda,
            r_c: g_c.scale(),
            r_g: g_g.scale(),
            g_c,
            g_g,
        })
    }
}

/// Collapse and feedback contributions to a heating rate, in W.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatingTerms {
    /// Collapse (PSL) heating.
    pub psl: f64,
    /// Gravitational-feedback heating.
    pub grav: f64,
}

impl HeatingTerms {
    /// Sum of both terms.
    pub fn total(&self) -> f64 {
        self.psl + self.grav
    }
}

fn check_mass(m: f64) -> Result<()> {
    if m > 0.0 && m.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain("mass must be positive and finite"))
    }
}

/// Heating of an isolated particle of mass `m`:
/// `psl = λℏ²/m₀ · I[√g_C]`, `grav = G²m₀/λ · m² · I₀`.
pub fn isolated_particle_rate(params: &ModelParams, k: &PhysicalConstants, m: f64) -> Result<HeatingTerms> {
    check_mass(m)?;
    let i = dirichlet_energy(&params.g_c)?.value;
    let i0 = grav_functional_i0(&params.g_c, &params.g_g)?.value;
    Ok(HeatingTerms {
        psl: params.lambda * k.hbar * k.hbar / k.m0 * i,
        grav: k.g * k.g * k.m0 / params.lambda * m * m * i0,
    })
}

/// Order-of-magnitude ratio of collapse to feedback heating,
/// `λ² r_C² ℏ² / (m₀² G² m²)`, without functional prefactors.
pub fn contributions_ratio(params: &ModelParams, k: &PhysicalConstants, m: f64) -> Result<f64> {
    check_mass(m)?;
    let num = params.lambda * params.r_c * k.hbar;
    let den = k.m0 * k.g * m;
    Ok(num * num / (den * den))
}

/// Heating of a macroscopic body of volume `volume` whose mass density
/// satisfies `∫ μ² = density_sq_integral`:
/// `psl = λℏ²/m₀ · V · I_{r_C}`, `grav = G²m₀/λ · I_{r_G} · ∫μ²`.
pub fn macro_body_rate(
    params: &ModelParams,
    k: &PhysicalConstants,
    volume: f64,
    density_sq_integral: f64,
) -> Result<HeatingTerms> {
    if !(volume > 0.0) || !(density_sq_integral >= 0.0) {
        return Err(Error::Domain("volume must be positive and ∫μ² non-negative"));
    }
    let i_rc = grad_sq_functional(&params.g_c)?.value;
    let i_rg = macro_feedback_functional(&params.g_g)?.value;
    Ok(HeatingTerms {
        psl: params.lambda * k.hbar * k.hbar / k.m0 * volume * i_rc,
        grav: k.g * k.g * k.m0 / params.lambda * i_rg * density_sq_integral,
    })
}

/// Collapse heating of `n_m·V` isolated particles over that of the same
/// particles bound in a macroscopic body of number density `n_m`; equals
/// `16π^{3/2} n_M r_C³` for a Gaussian profile.
pub fn isolated_over_macro(g_c: &RadialProfile, n_m: f64) -> Result<f64> {
    if !(n_m > 0.0) {
        return Err(Error::Domain("number density must be positive"));
    }
    Ok(n_m * dirichlet_energy(g_c)?.value / grad_sq_functional(g_c)?.value)
}

/// A mass in kilograms and in eV/c².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassValue {
    /// Kilograms.
    pub kg: f64,
    /// Electron-volts over c².
    pub ev: f64,
}

/// Smallest dark-matter particle mass whose typical spacing
/// `(m/ρ)^{1/3}` does not fall below `d_min`: `ρ·d_min³`.
pub fn dark_matter_min_mass(rho_dm: f64, d_min: f64, k: &PhysicalConstants) -> Result<MassValue> {
    if !(rho_dm > 0.0 && d_min > 0.0) {
        return Err(Error::Domain("density and spacing must be positive"));
    }
    let kg = rho_dm * d_min * d_min * d_min;
    Ok(MassValue {
        kg,
        ev: kg * k.c * k.c / k.e,
    })
}

/// Mean spacing `n^{-1/3}` of particles at number density `n`.
pub fn mean_spacing(n: f64) -> Result<f64> {
    if !(n > 0.0) {
        return Err(Error::Domain("number density must be positive"));
    }
    Ok(pow(n, -1.0 / 3.0))
}

/// Thermal de Broglie wavelength `√(2πℏ²/(m k_B T))`.
pub fn thermal_de_broglie(m: f64, t: f64, k: &PhysicalConstants) -> Result<f64> {
    if !(m > 0.0 && t > 0.0) {
        return Err(Error::Domain("mass and temperature must be positive"));
    }
    Ok(sqrt(2.0 * PI * k.hbar * k.hbar / (m * k.k_b * t)))
}

/// Number of standard errors an inequality may be violated by before it
/// counts as failed.
pub const SANDWICH_SIGMAS: f64 = 3.0;

/// Verdicts for one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichRow {
    /// Position of the configuration in the suite.
    pub index: usize,
    /// Number of particles.
    pub n: usize,
    /// The Monte Carlo functionals.
    pub heating: PointHeating,
    /// `I_CoM ≤ I_N`.
    pub com_le_n: bool,
    /// `I_N ≤ N·I[√g]`.
    pub n_le_nsingle: bool,
    /// `I_CoM ≤ I[√g]`.
    pub com_le_single: bool,
    /// `I_N ≥ I[√g]`, a conjecture that is reported but not required.
    pub conjecture: bool,
}

impl SandwichRow {
    /// All three required inequalities hold.
    pub fn passed(&self) -> bool {
        self.com_le_n && self.n_le_nsingle && self.com_le_single
    }
}

/// Verdicts for a suite of configurations.
#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport {
    /// One row per configuration, in input order.
    pub rows: Vec<SandwichRow>,
}

impl SandwichReport {
    /// Assembles a report, sorting rows by index.
    pub fn from_rows(mut rows: Vec<SandwichRow>) -> Self {
        rows.sort_by_key(|r| r.index);
        SandwichReport { rows }
    }

    /// Every configuration passed.
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(SandwichRow::passed)
    }

    /// Number of failing configurations.
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.passed()).count()
    }

    /// Number of configurations where the conjectured `I_N ≥ I[√g]` fails.
    pub fn conjecture_violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.conjecture).count()
    }
}

/// Generator for configuration `index` of a suite seeded with `seed`.
pub fn stream_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn holds(d: &DiffStat) -> bool {
    d.holds(SANDWICH_SIGMAS)
}

/// Evaluates one configuration of a sandwich suite on its own stream.
pub fn sandwich_row(
    g: &RadialProfile,
    config: &PointConfig,
    index: usize,
    mc_samples: usize,
    seed: u64,
) -> Result<SandwichRow> {
    let mut rng = stream_rng(seed, index);
    let h = point_config_heating_with_rng(g, config, mc_samples, &mut rng)?;
    Ok(SandwichRow {
        index,
        n: config.len(),
        heating: h,
        com_le_n: holds(&h.n_minus_com),
        n_le_nsingle: holds(&h.nsingle_minus_n),
        com_le_single: holds(&h.single_minus_com),
        conjecture: holds(&h.n_minus_single),
    })
}

/// Checks `I_CoM ≤ I_N ≤ N·I[√g]` and `I_CoM ≤ I[√g]` on every
/// configuration.
pub fn sandwich_report(
    g: &RadialProfile,
    configs: &[PointConfig],
    mc_samples: usize,
    seed: u64,
) -> Result<SandwichReport> {
    let rows = configs
        .iter()
        .enumerate()
        .map(|(i, c)| sandwich_row(g, c, i, mc_samples, seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(SandwichReport::from_rows(rows))
}

/// Random configurations of 1 to `max_n` particles with masses uniform in
/// `[1, 10]` and positions uniform in a cube of half-width `5·scale`.
pub fn random_configs(count: usize, max_n: usize, scale: f64, seed: u64) -> Result<Vec<PointConfig>> {
    if max_n == 0 {
        return Err(Error::Domain("max_n must be at least one"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=max_n);
            let mut positions = Vec::with_capacity(n);
            let mut masses = Vec::with_capacity(n);
            for _ in 0..n {
                let mut p = [0.0; 3];
                for v in &mut p {
                    *v = rng.random_range(-5.0..5.0) * scale;
                }
                positions.push(p);
                masses.push(rng.random_range(1.0..10.0));
            }
            PointConfig::new(positions, masses)
        })
        .collect()
}
