use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Monotone piecewise-cubic Hermite interpolant (Fritsch–Carlson slopes).
///
/// Below the first knot the value is held constant; beyond the last knot it
/// is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl MonotoneCubic {
    /// Builds the interpolant. Knots must be strictly increasing,
    /// non-negative, and the values finite and non-negative.
    pub fn new(x: &[f64], y: &[f64]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::MalformedInput("knot and value columns differ in length".into()));
        }
        if x.len() < 2 {
            return Err(Error::MalformedInput("at least two knots are required".into()));
        }
        if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
            return Err(Error::MalformedInput("non-finite knot or value".into()));
        }
        if x[0] < 0.0 || x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::MalformedInput("radii must be non-negative and strictly increasing".into()));
        }
        if y.iter().any(|&v| v < 0.0) {
            return Err(Error::MalformedInput("negative density".into()));
        }
        let n = x.len();
        let delta: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / (x[k + 1] - x[k])).collect();
        let mut m = alloc::vec![0.0; n];
        m[0] = delta[0];
        m[n - 1] = delta[n - 2];
        for k in 1..n - 1 {
            m[k] = if delta[k - 1] * delta[k] <= 0.0 {
                0.0
            } else {
                0.5 * (delta[k - 1] + delta[k])
            };
        }
        for k in 0..n - 1 {
            if delta[k] == 0.0 {
                m[k] = 0.0;
                m[k + 1] = 0.0;
                continue;
            }
            let a = m[k] / delta[k];
            let b = m[k + 1] / delta[k];
            let s = a * a + b * b;
            if s > 9.0 {
                let t = 3.0 / libm::sqrt(s);
                m[k] = t * a * delta[k];
                m[k + 1] = t * b * delta[k];
            }
        }
        Ok(MonotoneCubic {
            x: x.to_vec(),
            y: y.to_vec(),
            m,
        })
    }

    pub(crate) fn knots(&self) -> &[f64] {
        &self.x
    }

    pub(crate) fn last_knot(&self) -> f64 {
        self.x[self.x.len() - 1]
    }

    pub(crate) fn last_value(&self) -> f64 {
        self.y[self.y.len() - 1]
    }

    pub(crate) fn scale_values(&mut self, factor: f64) {
        self.y.iter_mut().for_each(|v| *v *= factor);
        self.m.iter_mut().for_each(|v| *v *= factor);
    }

    /// Lengths multiplied by `factor`, values divided by `factor³` so that
    /// the radial density keeps unit mass.
    pub(crate) fn rescaled(&self, factor: f64) -> Self {
        let f3 = factor * factor * factor;
        MonotoneCubic {
            x: self.x.iter().map(|v| v * factor).collect(),
            y: self.y.iter().map(|v| v / f3).collect(),
            m: self.m.iter().map(|v| v / (f3 * factor)).collect(),
        }
    }

    fn locate(&self, r: f64) -> Option<(usize, f64, f64)> {
        let n = self.x.len();
        if r > self.x[n - 1] || r < self.x[0] {
            return None;
        }
        let k = match self.x.binary_search_by(|v| v.total_cmp(&r)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i - 1,
        };
        let h = self.x[k + 1] - self.x[k];
        Some((k, h, (r - self.x[k]) / h))
    }

    /// Interpolated value.
    pub fn value(&self, r: f64) -> f64 {
        if r < self.x[0] {
            return self.y[0];
        }
        let Some((k, h, t)) = self.locate(r) else {
            return 0.0;
        };
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.y[k] + h10 * h * self.m[k] + h01 * self.y[k + 1] + h11 * h * self.m[k + 1]
    }

    /// First derivative of the interpolant.
    pub fn derivative(&self, r: f64) -> f64 {
        let Some((k, h, t)) = self.locate(r) else {
            return 0.0;
        };
        let t2 = t * t;
        let d00 = (6.0 * t2 - 6.0 * t) / h;
        let d10 = 3.0 * t2 - 4.0 * t + 1.0;
        let d01 = (-6.0 * t2 + 6.0 * t) / h;
        let d11 = 3.0 * t2 - 2.0 * t;
        d00 * self.y[k] + d10 * self.m[k] + d01 * self.y[k + 1] + d11 * self.m[k + 1]
    }

    /// Second derivative of the interpolant.
    pub fn second_derivative(&self, r: f64) -> f64 {
        let Some((k, h, t)) = self.locate(r) else {
            return 0.0;
        };
        let h2 = h * h;
        let d00 = (12.0 * t - 6.0) / h2;
        let d10 = (6.0 * t - 4.0) / h;
        let d01 = (6.0 - 12.0 * t) / h2;
        let d11 = (6.0 * t - 2.0) / h;
        d00 * self.y[k] + d10 * self.m[k] + d01 * self.y[k + 1] + d11 * self.m[k + 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_knots() {
        let x = [0.0, 1.0, 2.0, 4.0];
        let y = [3.0, 2.0, 0.5, 0.0];
        let c = MonotoneCubic::new(&x, &y).unwrap();
        for (a, b) in x.iter().zip(y.iter()) {
            assert!((c.value(*a) - b).abs() < 1e-15);
        }
        assert_eq!(c.value(4.5), 0.0);
    }

    #[test]
    fn stays_monotone() {
        let x = [0.0, 0.5, 0.6, 3.0, 3.1];
        let y = [10.0, 9.9, 2.0, 1.9, 0.0];
        let c = MonotoneCubic::new(&x, &y).unwrap();
        let mut prev = c.value(0.0);
        for i in 1..=3100 {
            let v = c.value(i as f64 * 1e-3);
            assert!(v <= prev + 1e-12);
            prev = v;
        }
    }

    #[test]
    fn derivative_matches_difference() {
        let x: Vec<f64> = (0..20).map(|i| i as f64 * 0.25).collect();
        let y: Vec<f64> = x.iter().map(|v| libm::exp(-v * v / 2.0)).collect();
        let c = MonotoneCubic::new(&x, &y).unwrap();
        let h = 1e-6;
        for r in [0.3, 1.1, 2.6] {
            let fd = (c.value(r + h) - c.value(r - h)) / (2.0 * h);
            assert!((fd - c.derivative(r)).abs() < 1e-6);
            let fd2 = (c.derivative(r + h) - c.derivative(r - h)) / (2.0 * h);
            assert!((fd2 - c.second_derivative(r)).abs() < 1e-5);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(MonotoneCubic::new(&[0.0], &[1.0]).is_err());
        assert!(MonotoneCubic::new(&[0.0, 0.0], &[1.0, 1.0]).is_err());
        assert!(MonotoneCubic::new(&[0.0, 1.0], &[1.0, -1.0]).is_err());
        assert!(MonotoneCubic::new(&[0.0, 1.0], &[1.0]).is_err());
    }
}
