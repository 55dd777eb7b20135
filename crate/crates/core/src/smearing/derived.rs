use alloc::vec::Vec;
use core::f64::consts::PI;

use super::profile::RadialProfile;
use crate::error::Result;
use crate::numerics::{self, QuadratureSpec, RootSpec};

#[derive(Debug, Clone, PartialEq)]
struct KnotCache {
    knots: Vec<f64>,
    // 4π ∫₀^{r_k} μ² g
    inner: Vec<f64>,
    // 4π ∫_{r_k}^∞ μ g
    outer: Vec<f64>,
}

/// Enclosed mass fraction `Q(r)` and the unit-mass Newtonian potential
/// kernel `f_pot(r) = Q(r)/r + 4π ∫_r^∞ μ g(μ) dμ` of a profile.
///
/// Closed forms are used where the family has them; otherwise cumulative
/// integrals are tabulated at construction and refined locally on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileDerived {
    profile: RadialProfile,
    cache: Option<KnotCache>,
    spec: QuadratureSpec,
}

/// Builds the derived quantities of `profile`.
pub fn derive(profile: &RadialProfile) -> Result<ProfileDerived> {
    ProfileDerived::new(profile)
}

fn knot_grid(profile: &RadialProfile) -> Vec<f64> {
    let s = profile.scale();
    let mut knots: Vec<f64> = (0..=32).map(|k| s * k as f64 / 8.0).collect();
    match profile.support_radius() {
        Some(radius) => {
            knots.retain(|&r| r < radius);
            knots.extend(profile.breakpoints());
            let n = 64;
            knots.extend((1..n).map(|k| radius * k as f64 / n as f64));
        }
        None => {
            let mut r = 4.0 * s;
            // Stop once the density is far below double precision relative
            // to its central value.
            let floor = profile.ln_density(0.0) - 80.0;
            while profile.ln_density(r) > floor && r < 1e6 * s {
                r *= 1.25;
                knots.push(r);
            }
        }
    }
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    knots
}

impl ProfileDerived {
    /// See [`derive`].
    pub fn new(profile: &RadialProfile) -> Result<Self> {
        let spec = QuadratureSpec {
            rel_tol: 1e-12,
            ..QuadratureSpec::with_scale(profile.scale())
        };
        let analytic = profile.analytic_cumulative(profile.scale()).is_some()
            && profile.analytic_outer_moment(profile.scale()).is_some();
        let cache = if analytic {
            None
        } else {
            let knots = knot_grid(profile);
            let n = knots.len();
            let mut inner = Vec::with_capacity(n);
            let mut pieces = Vec::with_capacity(n);
            inner.push(0.0);
            for w in knots.windows(2) {
                let a = numerics::integrate(|r| 4.0 * PI * r * r * profile.density(r), w[0], w[1], &spec)?;
                inner.push(inner[inner.len() - 1] + a.value);
                let b = numerics::integrate(|r| 4.0 * PI * r * profile.density(r), w[0], w[1], &spec)?;
                pieces.push(b.value);
            }
            let last = knots[n - 1];
            let tail = match profile.support_radius() {
                Some(radius) if radius <= last => 0.0,
                _ => numerics::integrate_to_infinity(|r| 4.0 * PI * r * profile.density(r), last, &[], &spec)?.value,
            };
            let mut outer = alloc::vec![0.0; n];
            outer[n - 1] = tail;
            for k in (0..n - 1).rev() {
                outer[k] = outer[k + 1] + pieces[k];
            }
            Some(KnotCache { knots, inner, outer })
        };
        Ok(ProfileDerived {
            profile: profile.clone(),
            cache,
            spec,
        })
    }

    /// The underlying profile.
    pub fn profile(&self) -> &RadialProfile {
        &self.profile
    }

    fn bracket(cache: &KnotCache, r: f64) -> usize {
        match cache.knots.binary_search_by(|v| v.total_cmp(&r)) {
            Ok(i) => i,
            Err(i) => i - 1,
        }
    }

    /// `Q(r) = 4π ∫₀^r μ² g(μ) dμ`. NaN if a local refinement fails.
    pub fn enclosed_mass(&self, r: f64) -> f64 {
        let r = r.abs();
        if let Some(q) = self.profile.analytic_cumulative(r) {
            return q;
        }
        let cache = self.cache.as_ref().expect("cache present without closed form");
        let k = Self::bracket(cache, r);
        let a = cache.knots[k];
        if r == a {
            return cache.inner[k];
        }
        let g = &self.profile;
        numerics::integrate(|m| 4.0 * PI * m * m * g.density(m), a, r, &self.spec)
            .map(|e| cache.inner[k] + e.value)
            .unwrap_or(f64::NAN)
    }

    /// `4π ∫_r^∞ μ g(μ) dμ`.
    pub fn outer_moment(&self, r: f64) -> f64 {
        let r = r.abs();
        if let Some(v) = self.profile.analytic_outer_moment(r) {
            return v;
        }
        let cache = self.cache.as_ref().expect("cache present without closed form");
        let k = Self::bracket(cache, r);
        let a = cache.knots[k];
        if r == a {
            return cache.outer[k];
        }
        let g = &self.profile;
        numerics::integrate(|m| 4.0 * PI * m * g.density(m), a, r, &self.spec)
            .map(|e| (cache.outer[k] - e.value).max(0.0))
            .unwrap_or(f64::NAN)
    }

    /// Potential kernel `f_pot(r)` of a unit mass, in 1/length.
    pub fn potential(&self, r: f64) -> f64 {
        let r = r.abs();
        let near = if r == 0.0 { 0.0 } else { self.enclosed_mass(r) / r };
        near + self.outer_moment(r)
    }

    /// `f_pot'(r) = −Q(r)/r²`.
    pub fn potential_gradient(&self, r: f64) -> f64 {
        let r = r.abs();
        if r == 0.0 {
            return 0.0;
        }
        -self.enclosed_mass(r) / (r * r)
    }

    /// Radius enclosing the mass fraction `u ∈ [0, 1)`.
    pub fn radius_for_mass(&self, u: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&u) {
            return Err(crate::Error::Domain("mass fraction must lie in [0, 1)"));
        }
        if u == 0.0 {
            return Ok(0.0);
        }
        let mut hi = match self.profile.support_radius() {
            Some(r) => r,
            None => 4.0 * self.profile.scale(),
        };
        while self.enclosed_mass(hi) < u {
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(crate::Error::NonConvergence { value: hi, error: 1.0 - u });
            }
        }
        let spec = RootSpec {
            tol: 1e-13 * self.profile.scale(),
            ..RootSpec::new(0.0, hi)
        };
        numerics::find_root(|r| self.enclosed_mass(r) - u, &spec)
    }
}
