//! `start:stop:count` grid flags.

use crate::error::{CliError, Result};

/// Parsed `start:stop:count` triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || CliError::Usage(format!("grid '{s}' is not start:stop:count"));
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(bad());
        };
        let start: f64 = a.trim().parse().map_err(|_| bad())?;
        let stop: f64 = b.trim().parse().map_err(|_| bad())?;
        let count: usize = n.trim().parse().map_err(|_| bad())?;
        if count == 0 || !start.is_finite() || !stop.is_finite() {
            return Err(bad());
        }
        Ok(GridSpec { start, stop, count })
    }

    /// Evenly spaced values from `start` to `stop`.
    pub fn linear(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 })
            .collect()
    }

    /// `10^x` over the linear grid: start and stop are decades.
    pub fn log10(&self) -> Vec<f64> {
        self.linear().into_iter().map(|x| 10f64.powf(x)).collect()
    }
}
