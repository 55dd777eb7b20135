use crate::error::{Error, Result};

/// Bracket and stopping rule for [`find_root`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSpec {
    /// Lower end of the bracket.
    pub bracket_lo: f64,
    /// Upper end of the bracket.
    pub bracket_hi: f64,
    /// Absolute tolerance on the root location (a relative 4ε|x| is added).
    pub tol: f64,
    /// Iteration budget.
    pub max_iter: usize,
}

impl RootSpec {
    /// Bracket `[lo, hi]` with tolerance 1e-14 and 200 iterations.
    pub fn new(lo: f64, hi: f64) -> Self {
        RootSpec {
            bracket_lo: lo,
            bracket_hi: hi,
            tol: 1e-14,
            max_iter: 200,
        }
    }
}

/// Brent's method on a sign-changing bracket.
///
/// The caller is responsible for isolating the wanted root; when several
/// roots share the bracket any of them may be returned.
pub fn find_root<F: FnMut(f64) -> f64>(mut f: F, spec: &RootSpec) -> Result<f64> {
    if !(spec.bracket_lo < spec.bracket_hi) {
        return Err(Error::Domain("root bracket must satisfy lo < hi"));
    }
    if !(spec.tol > 0.0) {
        return Err(Error::Domain("root tolerance must be positive"));
    }
    let (mut a, mut b) = (spec.bracket_lo, spec.bracket_hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::NotBracketed { lo: a, hi: b });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..spec.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * spec.tol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::NonConvergence { value: b, error: m.abs() });
        }
    }
    Err(Error::NonConvergence {
        value: b,
        error: (c - b).abs(),
    })
}
