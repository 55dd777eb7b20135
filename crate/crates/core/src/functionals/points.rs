use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{dirichlet_energy, reject_edge_jump, FunctionalResult, Method};
use crate::error::{Error, Result};
use crate::numerics::{exp, log, sqrt};
use crate::smearing::{derive, ProfileDerived, ProfileKind, RadialProfile};

/// Newton's constant, CODATA 2018, in m³ kg⁻¹ s⁻².
pub const G_NEWTON: f64 = 6.674_30e-11;

/// Point particles with optional velocities.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig {
    /// Particle positions.
    pub positions: Vec<[f64; 3]>,
    /// Particle masses, all positive.
    pub masses: Vec<f64>,
    /// Particle velocities, required for the work flux.
    pub velocities: Option<Vec<[f64; 3]>>,
}

impl PointConfig {
    /// Static configuration.
    pub fn new(positions: Vec<[f64; 3]>, masses: Vec<f64>) -> Result<Self> {
        let c = PointConfig {
            positions,
            masses,
            velocities: None,
        };
        c.validate()?;
        Ok(c)
    }

    /// Attaches velocities, one per particle.
    pub fn with_velocities(mut self, velocities: Vec<[f64; 3]>) -> Result<Self> {
        if velocities.len() != self.positions.len() {
            return Err(Error::DegenerateConfig("one velocity per particle is required"));
        }
        if velocities.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::DegenerateConfig("non-finite velocity"));
        }
        self.velocities = Some(velocities);
        Ok(self)
    }

    /// Number of particles.
    pub fn len(&self) -> usize {
        self.masses.len()
    }

    /// True for an empty configuration (never produced by [`PointConfig::new`]).
    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    /// Sum of the masses.
    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    fn validate(&self) -> Result<()> {
        if self.masses.is_empty() {
            return Err(Error::DegenerateConfig("configuration has no particles"));
        }
        if self.masses.len() != self.positions.len() {
            return Err(Error::DegenerateConfig("one mass per position is required"));
        }
        if self.masses.iter().any(|&m| !(m > 0.0) || !m.is_finite()) {
            return Err(Error::DegenerateConfig("masses must be positive and finite"));
        }
        if self.positions.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::DegenerateConfig("non-finite position"));
        }
        Ok(())
    }
}

/// Mean and standard error of a paired Monte Carlo difference
/// `upper − lower`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffStat {
    /// Sample mean of the difference.
    pub mean: f64,
    /// Standard error of the mean.
    pub std_error: f64,
}

impl DiffStat {
    /// True when `upper ≥ lower` is not contradicted beyond `k` standard
    /// errors.
    pub fn holds(&self, k: f64) -> bool {
        self.mean >= -k * self.std_error
    }
}

/// Heating functionals of a point configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointHeating {
    /// Collapse heating of the configuration, `I_N`.
    pub i_n: FunctionalResult,
    /// Centre-of-mass heating, `I_CoM`.
    pub i_com: FunctionalResult,
    /// `N · I[√g]` from the single-particle functional.
    pub n_single: FunctionalResult,
    /// Monte Carlo estimate of `I[√g]` from the same samples.
    pub single_mc: FunctionalResult,
    /// `I_N − I_CoM`.
    pub n_minus_com: DiffStat,
    /// `N·I[√g] − I_N`.
    pub nsingle_minus_n: DiffStat,
    /// `I[√g] − I_CoM`.
    pub single_minus_com: DiffStat,
    /// `I_N − I[√g]`; non-negative by conjecture only.
    pub n_minus_single: DiffStat,
    /// Number of samples drawn (zero for the analytic single-particle case).
    pub samples: usize,
}

#[derive(Default, Clone, Copy)]
struct Acc {
    sum: f64,
    sum_sq: f64,
}

impl Acc {
    fn push(&mut self, v: f64) {
        self.sum += v;
        self.sum_sq += v * v;
    }

    fn stat(&self, n: usize) -> DiffStat {
        let nf = n as f64;
        let mean = self.sum / nf;
        let var = ((self.sum_sq / nf - mean * mean) * nf / (nf - 1.0)).max(0.0);
        DiffStat {
            mean,
            std_error: sqrt(var / nf),
        }
    }
}

fn mc_result(s: DiffStat) -> FunctionalResult {
    FunctionalResult {
        value: s.mean,
        method: Method::Quadrature,
        error_estimate: s.std_error,
        length_power: -2,
    }
}

/// Samples `|x|` from the radial profile.
fn sample_offset<R: Rng + ?Sized>(g: &RadialProfile, derived: &ProfileDerived, rng: &mut R) -> Result<[f64; 3]> {
    let n = [
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
    ];
    if g.kind() == ProfileKind::Gaussian {
        let s = g.scale();
        return Ok([n[0] * s, n[1] * s, n[2] * s]);
    }
    let len = sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    let r = derived.radius_for_mass(rng.random::<f64>())?;
    Ok([n[0] / len * r, n[1] / len * r, n[2] / len * r])
}

/// Monte Carlo evaluation of `I_N`, `I_CoM` and `N·I[√g]` for point
/// particles smeared by `g`, seeded deterministically.
///
/// Samples are drawn from the mass-weighted mixture of the smeared
/// particles; every inequality between the three is reported as a paired
/// difference on the same samples.
pub fn point_config_heating(
    g: &RadialProfile,
    config: &PointConfig,
    mc_samples: usize,
    seed: u64,
) -> Result<PointHeating> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    point_config_heating_with_rng(g, config, mc_samples, &mut rng)
}

/// As [`point_config_heating`] with a caller-supplied generator.
pub fn point_config_heating_with_rng<R: Rng + ?Sized>(
    g: &RadialProfile,
    config: &PointConfig,
    mc_samples: usize,
    rng: &mut R,
) -> Result<PointHeating> {
    config.validate()?;
    reject_edge_jump(g)?;
    let single = dirichlet_energy(g)?;
    let n = config.len();
    let n_single = FunctionalResult {
        value: n as f64 * single.value,
        error_estimate: n as f64 * single.error_estimate,
        ..single
    };
    if n == 1 {
        let zero = DiffStat {
            mean: 0.0,
            std_error: 0.0,
        };
        return Ok(PointHeating {
            i_n: single,
            i_com: single,
            n_single,
            single_mc: single,
            n_minus_com: zero,
            nsingle_minus_n: zero,
            single_minus_com: zero,
            n_minus_single: zero,
            samples: 0,
        });
    }
    if mc_samples < 2 {
        return Err(Error::Domain("at least two Monte Carlo samples are required"));
    }
    let derived = derive(g)?;
    let total = config.total_mass();
    let ln_m: Vec<f64> = config.masses.iter().map(|&m| log(m)).collect();
    let mut cumulative = Vec::with_capacity(n);
    let mut acc = 0.0;
    for &m in &config.masses {
        acc += m / total;
        cumulative.push(acc);
    }
    let mut lng = alloc::vec![0.0; n];
    let mut dl = alloc::vec![0.0; n];
    let mut dir = alloc::vec![[0.0; 3]; n];
    let (mut a_n, mut a_com, mut a_s) = (Acc::default(), Acc::default(), Acc::default());
    let (mut d_nc, mut d_ns, mut d_sc, mut d_n1) = (Acc::default(), Acc::default(), Acc::default(), Acc::default());
    for _ in 0..mc_samples {
        let u: f64 = rng.random();
        let k = cumulative.iter().position(|&c| u < c).unwrap_or(n - 1);
        let off = sample_offset(g, &derived, rng)?;
        let y = config.positions[k];
        let x = [y[0] + off[0], y[1] + off[1], y[2] + off[2]];
        let mut ln_mu = f64::NEG_INFINITY;
        for j in 0..n {
            let p = config.positions[j];
            let v = [x[0] - p[0], x[1] - p[1], x[2] - p[2]];
            let d = sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            lng[j] = g.ln_density(d);
            dl[j] = if lng[j] == f64::NEG_INFINITY { 0.0 } else { g.dlog_density(d) };
            dir[j] = if d > 0.0 { [v[0] / d, v[1] / d, v[2] / d] } else { [0.0; 3] };
            ln_mu = crate::numerics::log_add_exp(ln_mu, ln_m[j] + lng[j]);
        }
        let (mut sn, mut ss) = (0.0, 0.0);
        let mut grad = [0.0; 3];
        for j in 0..n {
            if lng[j] == f64::NEG_INFINITY {
                continue;
            }
            let w = exp(ln_m[j] + lng[j] - ln_mu);
            let d2 = dl[j] * dl[j];
            sn += w * w * d2 / config.masses[j];
            ss += w * d2;
            for a in 0..3 {
                grad[a] += w * dl[j] * dir[j][a];
            }
        }
        let v_n = total * sn / 8.0;
        let v_com = (grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2]) / 8.0;
        let v_s = ss / 8.0;
        a_n.push(v_n);
        a_com.push(v_com);
        a_s.push(v_s);
        d_nc.push(v_n - v_com);
        d_ns.push(n as f64 * v_s - v_n);
        d_sc.push(v_s - v_com);
        d_n1.push(v_n - v_s);
    }
    Ok(PointHeating {
        i_n: mc_result(a_n.stat(mc_samples)),
        i_com: mc_result(a_com.stat(mc_samples)),
        n_single,
        single_mc: mc_result(a_s.stat(mc_samples)),
        n_minus_com: d_nc.stat(mc_samples),
        nsingle_minus_n: d_ns.stat(mc_samples),
        single_minus_com: d_sc.stat(mc_samples),
        n_minus_single: d_n1.stat(mc_samples),
        samples: mc_samples,
    })
}

/// Rate of work done by mutual Newtonian attraction,
/// `Σ_j F_j·v_j = −dV/dt`, in watts for SI inputs.
pub fn newtonian_work_flux(config: &PointConfig) -> Result<f64> {
    config.validate()?;
    let v = config
        .velocities
        .as_ref()
        .ok_or(Error::DegenerateConfig("work flux needs velocities"))?;
    let n = config.len();
    let mut flux = 0.0;
    for j in 0..n {
        let mut f = [0.0; 3];
        for k in 0..n {
            if k == j {
                continue;
            }
            let (a, b) = (config.positions[k], config.positions[j]);
            let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
            let r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
            if r2 == 0.0 {
                return Err(Error::CoincidentPoints { i: j.min(k), j: j.max(k) });
            }
            let s = G_NEWTON * config.masses[k] * config.masses[j] / (r2 * sqrt(r2));
            for a in 0..3 {
                f[a] += s * d[a];
            }
        }
        flux += f[0] * v[j][0] + f[1] * v[j][1] + f[2] * v[j][2];
    }
    Ok(flux)
}
