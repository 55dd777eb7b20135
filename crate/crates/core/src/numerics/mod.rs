//! Special functions, adaptive quadrature and bracketed root finding.

mod quadrature;
mod roots;
mod special;

pub use quadrature::{
    integrate, integrate_polar, integrate_radial, integrate_to_infinity, integrate_with_breaks,
    Estimate, QuadratureSpec, Transform,
};
pub use roots::{find_root, RootSpec};
pub use special::{dawson, erf, erfc, erfcx, erfi, erfi_scaled, gamma_fn, ln_gamma};

pub(crate) use libm::{atan, cos, exp, log, log1p, pow, sqrt};

/// Numerically stable `ln(e^a + e^b)`.
pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + log1p(exp(lo - hi))
}
