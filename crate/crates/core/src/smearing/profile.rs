use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::tabulated::MonotoneCubic;
use crate::error::{Error, Result};
use crate::numerics::{self, exp, log, pow, sqrt};

/// Family of a radial smearing profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileKind {
    /// `(2πσ²)^{-3/2} e^{-r²/2σ²}`.
    Gaussian,
    /// `C_p exp(-(r/α_p σ)^p)`.
    SubGaussian {
        /// Exponent of the stretched exponential.
        p: f64,
    },
    /// `∝ [(3σ)² − r²]₊²`, the macroscopic-body collapse optimum.
    CompactQuartic,
    /// Isolated-particle feedback optimum against a Gaussian collapse profile
    /// of width `r_c`.
    OptimalFeedback {
        /// Width of the Gaussian collapse profile it was optimised against.
        r_c: f64,
    },
    /// Isolated-particle feedback optimum against an arbitrary collapse weight.
    OptimalGeneral,
    /// Constant density on a ball of radius `√5 σ`.
    UniformBall,
    /// Monotone cubic interpolation of `(r, g)` knots.
    Tabulated,
}

/// Collapse-side weight an optimal feedback profile is built against.
#[derive(Debug, Clone, PartialEq)]
pub enum CollapseWeight {
    /// A radial profile `g_C`.
    Profile(Box<RadialProfile>),
    /// The unnormalised constant weight `g_C ≡ 1` (macroscopic-body limit).
    Constant,
}

impl CollapseWeight {
    pub(crate) fn ln_value(&self, r: f64) -> f64 {
        match self {
            CollapseWeight::Profile(p) => p.ln_density(r),
            CollapseWeight::Constant => 0.0,
        }
    }

    pub(crate) fn dlog(&self, r: f64) -> f64 {
        match self {
            CollapseWeight::Profile(p) => p.dlog_density(r),
            CollapseWeight::Constant => 0.0,
        }
    }

    pub(crate) fn d2log(&self, r: f64) -> f64 {
        match self {
            CollapseWeight::Profile(p) => p.d2log_density(r),
            CollapseWeight::Constant => 0.0,
        }
    }

    fn rescaled(&self, factor: f64) -> Self {
        match self {
            CollapseWeight::Profile(p) => CollapseWeight::Profile(Box::new(p.rescaled(factor))),
            CollapseWeight::Constant => CollapseWeight::Constant,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Gaussian { sigma: f64 },
    SubGaussian { p: f64, width: f64, ln_c: f64 },
    Quartic { radius: f64, c: f64 },
    OptimalGaussian { r_c: f64, radius: f64, y: f64 },
    OptimalGeneral { weight: CollapseWeight, radius: f64, ln_w_edge: f64 },
    UniformBall { radius: f64 },
    Tabulated { table: MonotoneCubic },
}

/// A normalised radial probability density `g(r)` with variance convention
/// `4π ∫ r⁴ g dr = 3·scale²`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    kind: ProfileKind,
    scale: f64,
    support: Option<f64>,
    repr: Repr,
}

fn check_scale(scale: f64) -> Result<()> {
    if scale > 0.0 && scale.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain("profile scale must be positive and finite"))
    }
}

impl RadialProfile {
    /// Gaussian of standard deviation `scale` per axis.
    pub fn gaussian(scale: f64) -> Result<Self> {
        check_scale(scale)?;
        Ok(RadialProfile {
            kind: ProfileKind::Gaussian,
            scale,
            support: None,
            repr: Repr::Gaussian { sigma: scale },
        })
    }

    /// Sub-Gaussian (stretched exponential) family; `p = 2` is the Gaussian.
    pub fn sub_gaussian(p: f64, scale: f64) -> Result<Self> {
        check_scale(scale)?;
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::Domain("sub-Gaussian exponent must be positive"));
        }
        let alpha = sub_gaussian_alpha(p)?;
        let width = alpha * scale;
        // C_p = p / (4π Γ(3/p) α³ scale³)
        let ln_c = log(p) - log(4.0 * PI) - numerics::ln_gamma(3.0 / p)? - 3.0 * log(width);
        Ok(RadialProfile {
            kind: ProfileKind::SubGaussian { p },
            scale,
            support: None,
            repr: Repr::SubGaussian { p, width, ln_c },
        })
    }

    /// `105/(32π(3s)⁷) [(3s)² − r²]₊²`.
    pub fn compact_quartic(scale: f64) -> Result<Self> {
        check_scale(scale)?;
        let radius = 3.0 * scale;
        let c = 105.0 / (32.0 * PI * pow(radius, 7.0));
        Ok(RadialProfile {
            kind: ProfileKind::CompactQuartic,
            scale,
            support: Some(radius),
            repr: Repr::Quartic { radius, c },
        })
    }

    /// Uniform density on a ball of radius `√5·scale`.
    pub fn uniform_ball(scale: f64) -> Result<Self> {
        check_scale(scale)?;
        let radius = sqrt(5.0) * scale;
        Ok(RadialProfile {
            kind: ProfileKind::UniformBall,
            scale,
            support: Some(radius),
            repr: Repr::UniformBall { radius },
        })
    }

    /// Feedback optimum against a Gaussian of width `r_c`, with support
    /// radius `R = r_c √(2y)`. `scale` is the feedback length `r_G` that `y`
    /// solves for.
    pub(crate) fn optimal_gaussian(r_c: f64, scale: f64, y: f64) -> Result<Self> {
        check_scale(r_c)?;
        check_scale(scale)?;
        if !(y > 0.0) {
            return Err(Error::Domain("support parameter y must be positive"));
        }
        let radius = r_c * sqrt(2.0 * y);
        Ok(RadialProfile {
            kind: ProfileKind::OptimalFeedback { r_c },
            scale,
            support: Some(radius),
            repr: Repr::OptimalGaussian { r_c, radius, y },
        })
    }

    /// Feedback optimum `Q(r) = (r/R)³ w(R)/w(r)` against an arbitrary weight.
    pub(crate) fn optimal_general(weight: CollapseWeight, scale: f64, radius: f64) -> Result<Self> {
        check_scale(scale)?;
        check_scale(radius)?;
        let ln_w_edge = weight.ln_value(radius);
        if !ln_w_edge.is_finite() {
            return Err(Error::SingularProfile("collapse weight vanishes at the support edge"));
        }
        Ok(RadialProfile {
            kind: ProfileKind::OptimalGeneral,
            scale,
            support: Some(radius),
            repr: Repr::OptimalGeneral {
                weight,
                radius,
                ln_w_edge,
            },
        })
    }

    /// Profile interpolating `(r, g)` knots with a monotone cubic. The
    /// density is renormalised to unit mass; beyond the last knot it is zero.
    pub fn tabulated(r: &[f64], g: &[f64]) -> Result<Self> {
        let table = MonotoneCubic::new(r, g)?;
        let mut profile = RadialProfile {
            kind: ProfileKind::Tabulated,
            scale: 1.0,
            support: Some(table.last_knot()),
            repr: Repr::Tabulated { table },
        };
        let mass = profile.moment(2)?;
        if !(mass > 0.0) {
            return Err(Error::Domain("tabulated profile has zero mass"));
        }
        if let Repr::Tabulated { table } = &mut profile.repr {
            table.scale_values(1.0 / mass);
        }
        let second = profile.moment(4)?;
        profile.scale = sqrt(second / 3.0);
        Ok(profile)
    }

    /// `4π ∫ r^k g(r) dr` by quadrature.
    pub fn moment(&self, k: i32) -> Result<f64> {
        let spec = numerics::QuadratureSpec::with_scale(self.scale);
        let est = self.integrate_radial(|r| 4.0 * PI * libm::pow(r, k as f64) * self.density(r), &spec)?;
        Ok(est.value)
    }

    /// Integrates `f` over the natural radial domain of the profile, with
    /// panel breaks at its characteristic lengths.
    pub fn integrate_radial<F: Fn(f64) -> f64>(
        &self,
        f: F,
        spec: &numerics::QuadratureSpec,
    ) -> Result<numerics::Estimate> {
        let breaks = self.breakpoints();
        match self.support {
            Some(radius) => {
                let mut pts = Vec::with_capacity(breaks.len() + 2);
                pts.push(0.0);
                pts.extend(breaks.iter().copied().filter(|&b| b > 0.0 && b < radius));
                pts.push(radius);
                numerics::integrate_with_breaks(f, &pts, spec)
            }
            None => numerics::integrate_radial(f, &breaks, spec),
        }
    }

    /// Natural panel boundaries: the scale and its multiples, the support
    /// edge and, for tables, every knot.
    pub fn breakpoints(&self) -> Vec<f64> {
        let s = self.scale;
        let mut pts = match &self.repr {
            Repr::Tabulated { table } => table.knots().to_vec(),
            Repr::OptimalGaussian { r_c, .. } => alloc::vec![*r_c, 3.0 * r_c],
            _ => alloc::vec![0.5 * s, s, 2.0 * s, 4.0 * s, 8.0 * s],
        };
        if let Some(r) = self.support {
            pts.retain(|&b| b < r);
            pts.push(r);
        }
        pts
    }

    /// Family of the profile.
    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    /// Length scale `σ` with `4π ∫ r⁴ g = 3σ²`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Radius beyond which `g` vanishes, if finite.
    pub fn support_radius(&self) -> Option<f64> {
        self.support
    }

    /// True when `g` jumps to zero at the support edge.
    pub fn has_edge_discontinuity(&self) -> bool {
        match &self.repr {
            Repr::UniformBall { .. } | Repr::OptimalGaussian { .. } | Repr::OptimalGeneral { .. } => true,
            Repr::Tabulated { table } => table.last_value() > 0.0,
            _ => false,
        }
    }

    fn outside(&self, r: f64) -> bool {
        matches!(self.support, Some(radius) if r > radius)
    }

    /// Density `g(r)`.
    pub fn density(&self, r: f64) -> f64 {
        let r = r.abs();
        if self.outside(r) {
            return 0.0;
        }
        match &self.repr {
            Repr::Quartic { radius, c } => {
                let t = radius * radius - r * r;
                c * t * t
            }
            Repr::UniformBall { radius } => 3.0 / (4.0 * PI * radius * radius * radius),
            Repr::Tabulated { table } => table.value(r).max(0.0),
            _ => exp(self.ln_density(r)),
        }
    }

    /// `ln g(r)`, `-∞` where the density vanishes.
    pub fn ln_density(&self, r: f64) -> f64 {
        let r = r.abs();
        if self.outside(r) {
            return f64::NEG_INFINITY;
        }
        match &self.repr {
            Repr::Gaussian { sigma } => {
                -1.5 * log(2.0 * PI * sigma * sigma) - 0.5 * (r / sigma) * (r / sigma)
            }
            Repr::SubGaussian { p, width, ln_c } => ln_c - pow(r / width, *p),
            Repr::Quartic { radius, c } => {
                let t = radius * radius - r * r;
                if t <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    log(*c) + 2.0 * log(t)
                }
            }
            Repr::OptimalGaussian { r_c, radius, y } => {
                let u2 = (r / r_c) * (r / r_c);
                (0.5 * u2 - y) - 3.0 * log(*radius) + log((u2 + 3.0) / (4.0 * PI))
            }
            Repr::OptimalGeneral {
                weight,
                radius,
                ln_w_edge,
            } => {
                let shape = 3.0 - r * weight.dlog(r);
                if shape <= 0.0 {
                    return f64::NEG_INFINITY;
                }
                ln_w_edge - weight.ln_value(r) + log(shape) - log(4.0 * PI * radius * radius * radius)
            }
            Repr::UniformBall { radius } => log(3.0 / (4.0 * PI * radius * radius * radius)),
            Repr::Tabulated { table } => {
                let v = table.value(r);
                if v > 0.0 {
                    log(v)
                } else {
                    f64::NEG_INFINITY
                }
            }
        }
    }

    /// `d ln g / dr` inside the support.
    pub fn dlog_density(&self, r: f64) -> f64 {
        let r = r.abs();
        match &self.repr {
            Repr::Gaussian { sigma } => -r / (sigma * sigma),
            Repr::SubGaussian { p, width, .. } => {
                if r == 0.0 {
                    if *p > 1.0 {
                        0.0
                    } else {
                        f64::NEG_INFINITY
                    }
                } else {
                    -p * pow(r / width, p - 1.0) / width
                }
            }
            Repr::Quartic { radius, .. } => -4.0 * r / (radius * radius - r * r),
            Repr::OptimalGaussian { r_c, .. } => {
                let rc2 = r_c * r_c;
                r / rc2 + 2.0 * r / (r * r + 3.0 * rc2)
            }
            Repr::OptimalGeneral { weight, .. } => {
                let d1 = weight.dlog(r);
                let shape = 3.0 - r * d1;
                let rd2 = if r == 0.0 { 0.0 } else { r * weight.d2log(r) };
                -d1 + (-d1 - rd2) / shape
            }
            Repr::UniformBall { .. } => 0.0,
            Repr::Tabulated { table } => {
                let v = table.value(r);
                if v > 0.0 {
                    table.derivative(r) / v
                } else {
                    0.0
                }
            }
        }
    }

    /// `d² ln g / dr²` inside the support.
    pub fn d2log_density(&self, r: f64) -> f64 {
        let r = r.abs();
        match &self.repr {
            Repr::Gaussian { sigma } => -1.0 / (sigma * sigma),
            Repr::SubGaussian { p, width, .. } => {
                -p * (p - 1.0) * pow(r / width, p - 2.0) / (width * width)
            }
            Repr::Quartic { radius, .. } => {
                let t = radius * radius - r * r;
                -4.0 * (radius * radius + r * r) / (t * t)
            }
            Repr::OptimalGaussian { r_c, .. } => {
                let rc2 = r_c * r_c;
                let s = r * r + 3.0 * rc2;
                1.0 / rc2 + 2.0 * (3.0 * rc2 - r * r) / (s * s)
            }
            Repr::OptimalGeneral { .. } => {
                let h = 1e-6 * self.scale.max(r);
                (self.dlog_density(r + h) - self.dlog_density((r - h).abs())) / (2.0 * h)
            }
            Repr::UniformBall { .. } => 0.0,
            Repr::Tabulated { table } => {
                let v = table.value(r);
                if v > 0.0 {
                    let d = table.derivative(r) / v;
                    table.second_derivative(r) / v - d * d
                } else {
                    0.0
                }
            }
        }
    }

    /// `g'(r)` inside the support (the jump at a discontinuous edge is not
    /// represented).
    pub fn derivative(&self, r: f64) -> f64 {
        if self.outside(r.abs()) {
            return 0.0;
        }
        match &self.repr {
            Repr::Quartic { radius, c } => -4.0 * c * r * (radius * radius - r * r),
            Repr::UniformBall { .. } => 0.0,
            Repr::Tabulated { table } => table.derivative(r.abs()),
            _ => self.density(r) * self.dlog_density(r),
        }
    }

    /// `g'(r)² / g(r)`, finite wherever the family allows it.
    pub fn grad_sq_over_density(&self, r: f64) -> f64 {
        let r = r.abs();
        if self.outside(r) {
            return 0.0;
        }
        match &self.repr {
            Repr::Quartic { c, .. } => 16.0 * c * r * r,
            Repr::UniformBall { .. } => 0.0,
            Repr::Tabulated { table } => {
                let v = table.value(r);
                if v > 0.0 {
                    let d = table.derivative(r);
                    d * d / v
                } else {
                    0.0
                }
            }
            _ => {
                let d = self.dlog_density(r);
                self.density(r) * d * d
            }
        }
    }

    /// Enclosed mass fraction in closed form where the family has one.
    pub(crate) fn analytic_cumulative(&self, r: f64) -> Option<f64> {
        let r = r.abs();
        if self.outside(r) {
            return Some(1.0);
        }
        Some(match &self.repr {
            Repr::Gaussian { sigma } => {
                let u = r / sigma;
                numerics::erf(u / core::f64::consts::SQRT_2)
                    - sqrt(2.0 / PI) * u * exp(-0.5 * u * u)
            }
            Repr::Quartic { radius, c } => {
                let r2 = r * r;
                let big2 = radius * radius;
                4.0 * PI * c * r2 * r * (big2 * big2 / 3.0 - 2.0 * big2 * r2 / 5.0 + r2 * r2 / 7.0)
            }
            Repr::OptimalGaussian { r_c, radius, .. } => {
                let q = r / radius;
                q * q * q * exp((r * r - radius * radius) / (2.0 * r_c * r_c))
            }
            Repr::OptimalGeneral {
                weight,
                radius,
                ln_w_edge,
            } => {
                let q = r / radius;
                if r == 0.0 {
                    0.0
                } else {
                    q * q * q * exp(ln_w_edge - weight.ln_value(r))
                }
            }
            Repr::UniformBall { radius } => {
                let q = r / radius;
                q * q * q
            }
            _ => return None,
        })
    }

    /// `4π ∫_r^∞ μ g(μ) dμ` in closed form where available.
    pub(crate) fn analytic_outer_moment(&self, r: f64) -> Option<f64> {
        let r = r.abs();
        if self.outside(r) {
            return Some(0.0);
        }
        Some(match &self.repr {
            Repr::Gaussian { sigma } => {
                let u = r / sigma;
                sqrt(2.0 / PI) / sigma * exp(-0.5 * u * u)
            }
            Repr::Quartic { radius, c } => {
                let t = radius * radius - r * r;
                4.0 * PI * c * t * t * t / 6.0
            }
            Repr::OptimalGaussian { r_c, radius, y } => {
                let t = r * r / (2.0 * r_c * r_c);
                r_c * r_c / (radius * radius * radius)
                    * ((2.0 * y + 1.0) - (2.0 * t + 1.0) * exp(t - y))
            }
            Repr::UniformBall { radius } => {
                let r3 = radius * radius * radius;
                1.5 * (radius * radius - r * r) / r3
            }
            _ => return None,
        })
    }

    /// Same shape with every length multiplied by `factor`.
    pub fn rescaled(&self, factor: f64) -> RadialProfile {
        let repr = match &self.repr {
            Repr::Gaussian { sigma } => Repr::Gaussian { sigma: sigma * factor },
            Repr::SubGaussian { p, width, ln_c } => Repr::SubGaussian {
                p: *p,
                width: width * factor,
                ln_c: ln_c - 3.0 * log(factor),
            },
            Repr::Quartic { radius, c } => Repr::Quartic {
                radius: radius * factor,
                c: c / pow(factor, 7.0),
            },
            Repr::OptimalGaussian { r_c, radius, y } => Repr::OptimalGaussian {
                r_c: r_c * factor,
                radius: radius * factor,
                y: *y,
            },
            Repr::OptimalGeneral {
                weight,
                radius,
                ln_w_edge,
            } => {
                let weight = weight.rescaled(factor);
                let radius = radius * factor;
                let _ = ln_w_edge;
                let ln_w_edge = weight.ln_value(radius);
                Repr::OptimalGeneral {
                    weight,
                    radius,
                    ln_w_edge,
                }
            }
            Repr::UniformBall { radius } => Repr::UniformBall {
                radius: radius * factor,
            },
            Repr::Tabulated { table } => Repr::Tabulated {
                table: table.rescaled(factor),
            },
        };
        let kind = match self.kind {
            ProfileKind::OptimalFeedback { r_c } => ProfileKind::OptimalFeedback { r_c: r_c * factor },
            k => k,
        };
        RadialProfile {
            kind,
            scale: self.scale * factor,
            support: self.support.map(|r| r * factor),
            repr,
        }
    }

    /// Copy rescaled to unit scale.
    pub fn unit(&self) -> RadialProfile {
        self.rescaled(1.0 / self.scale)
    }
}

/// `α_p = √(3Γ(3/p)/Γ(5/p))`, fixing the variance of the sub-Gaussian family.
pub fn sub_gaussian_alpha(p: f64) -> Result<f64> {
    let ln_ratio = numerics::ln_gamma(3.0 / p)? - numerics::ln_gamma(5.0 / p)?;
    Ok(sqrt(3.0 * exp(ln_ratio)))
}
