use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::cmp::Ordering;

use crate::error::{Error, Result};

/// Change of variables applied before adaptive subdivision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    /// Integrate in the original variable. Semi-infinite ranges fall back to
    /// the exponential map with unit scale.
    None,
    /// Map `[a, ∞)` onto `(0, 1]` through `r = a - scale·ln(u)`.
    SemiInfiniteExpMap {
        /// Decay length of the integrand, usually the profile scale.
        scale: f64,
    },
}

/// Tolerances and budget of the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Relative tolerance on the total integral.
    pub rel_tol: f64,
    /// Absolute tolerance on the total integral.
    pub abs_tol: f64,
    /// Maximum number of panels held at once.
    pub max_subdivisions: usize,
    /// Variable transform used for semi-infinite ranges.
    pub transform: Transform,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
            transform: Transform::None,
        }
    }
}

impl QuadratureSpec {
    /// Default tolerances with the exponential map at the given scale.
    pub fn with_scale(scale: f64) -> Self {
        QuadratureSpec {
            transform: Transform::SemiInfiniteExpMap { scale },
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::Domain("rel_tol must be positive"));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::Domain("abs_tol must be non-negative"));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::Domain("max_subdivisions must be at least 1"));
        }
        if let Transform::SemiInfiniteExpMap { scale } = self.transform {
            if !(scale > 0.0) || !scale.is_finite() {
                return Err(Error::Domain("transform scale must be positive"));
            }
        }
        Ok(())
    }

    fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }

    fn map_scale(&self) -> f64 {
        match self.transform {
            Transform::SemiInfiniteExpMap { scale } => scale,
            Transform::None => 1.0,
        }
    }
}

/// An integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    /// Integral value.
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
}

// Gauss-Kronrod 7/15 nodes on [-1, 1]; the odd-indexed Kronrod nodes are the
// Gauss nodes.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        let scale = libm::pow(200.0 * error / res_asc, 1.5);
        error = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.is_finite() {
        error = f64::INFINITY;
    }
    Panel { a, b, value, error }
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, points: &[f64], spec: &QuadratureSpec) -> Result<Estimate> {
    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        if w[1] > w[0] {
            heap.push(gauss_kronrod(f, w[0], w[1]));
        }
    }
    let totals = |heap: &BinaryHeap<Panel>| {
        heap.iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
    };
    let (mut value, mut error) = totals(&heap);
    let mut steps = 0usize;
    loop {
        if !value.is_finite() {
            return Err(Error::NonConvergence { value, error });
        }
        if error <= spec.tolerance(value) {
            // Running sums drift; confirm with a fresh summation.
            let (v, e) = totals(&heap);
            value = v;
            error = e;
            if error <= spec.tolerance(value) {
                return Ok(Estimate { value, error });
            }
        }
        if heap.len() >= spec.max_subdivisions {
            return Err(Error::NonConvergence { value, error });
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => return Ok(Estimate { value: 0.0, error: 0.0 }),
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Panel can no longer be split in floating point.
            return Err(Error::NonConvergence { value, error });
        }
        let left = gauss_kronrod(f, worst.a, mid);
        let right = gauss_kronrod(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        steps += 1;
        if steps % 64 == 0 {
            let (v, e) = totals(&heap);
            value = v;
            error = e;
        }
    }
}

/// Adaptive integral of `f` over the finite interval `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    integrate_with_breaks(f, &[a, b], spec)
}

/// Adaptive integral over `[points[0], points[last]]`, starting from one
/// panel per consecutive pair so that kinks at the break points are never
/// straddled.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    if points.len() < 2 {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::Domain("integration limits must be finite"));
    }
    let mut sorted: Vec<f64> = points.to_vec();
    let reversed = sorted[0] > sorted[sorted.len() - 1];
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    let est = adaptive(&f, &sorted, spec)?;
    Ok(if reversed {
        Estimate { value: -est.value, error: est.error }
    } else {
        est
    })
}

/// Adaptive integral of `f` over `[a, ∞)` through the exponential map
/// `r = a - σ ln u`. `breaks` (any order, values ≤ a ignored) seed the panel
/// boundaries in `r`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    let sigma = spec.map_scale();
    let mapped = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let r = a - sigma * libm::log(u);
        if !r.is_finite() {
            return 0.0;
        }
        let v = f(r);
        if v == 0.0 {
            0.0
        } else {
            v * sigma / u
        }
    };
    let mut us: Vec<f64> = Vec::with_capacity(breaks.len() + 2);
    us.push(0.0);
    us.push(1.0);
    for &b in breaks {
        if b > a && b.is_finite() {
            let u = libm::exp(-(b - a) / sigma);
            if u > 0.0 {
                us.push(u);
            }
        }
    }
    us.sort_by(f64::total_cmp);
    us.dedup();
    adaptive(&mapped, &us, spec)
}

/// Integral of a radial integrand over `r ∈ [0, ∞)`.
///
/// Break points that are finite are honoured both below and above the
/// mapping; with `Transform::None` the map uses unit scale.
pub fn integrate_radial<F: Fn(f64) -> f64>(
    f: F,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    integrate_to_infinity(f, 0.0, breaks, spec)
}

/// Nested integral `∫₀^∞ dr ∫₀^π dθ f(r, θ)`.
///
/// The inner integral uses the same tolerances; its error estimates are
/// added into the outer one.
pub fn integrate_polar<F: Fn(f64, f64) -> f64>(
    f: F,
    r_breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let inner_error = RefCell::new(0.0_f64);
    let inner_spec = QuadratureSpec {
        transform: Transform::None,
        ..*spec
    };
    let outer = integrate_radial(
        |r| {
            if failure.borrow().is_some() {
                return 0.0;
            }
            match integrate(|t| f(r, t), 0.0, core::f64::consts::PI, &inner_spec) {
                Ok(e) => {
                    *inner_error.borrow_mut() += e.error * 1e-3;
                    e.value
                }
                Err(err) => {
                    *failure.borrow_mut() = Some(err);
                    0.0
                }
            }
        },
        r_breaks,
        spec,
    )?;
    if let Some(err) = failure.into_inner() {
        return Err(err);
    }
    Ok(Estimate {
        value: outer.value,
        error: outer.error + inner_error.into_inner(),
    })
}
