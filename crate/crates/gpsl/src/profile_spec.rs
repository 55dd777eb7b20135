//! Profile spec strings such as `gaussian:1.0` or `optimal:rc=1.0:rg=2.1`.

use std::path::PathBuf;
use std::str::FromStr;

use gpsl_core::optimal_profiles::optimal_feedback_gaussian_case;
use gpsl_core::RadialProfile;

use crate::error::{CliError, Result};
use crate::io::read_tabulated_profile;

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileSpec {
    Gaussian(f64),
    SubGaussian { p: f64, scale: f64 },
    Quartic(f64),
    /// Optimal feedback profile against a Gaussian of width `rc`.
    Optimal { rc: f64, rg: f64 },
    Ball(f64),
    Table(PathBuf),
}

fn number(s: &str, spec: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| CliError::Usage(format!("profile '{spec}': '{s}' is not a number")))
}

impl FromStr for ProfileSpec {
    type Err = CliError;

    fn from_str(spec: &str) -> Result<Self> {
        let (family, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let args: Vec<&str> = if rest.is_empty() { Vec::new() } else { rest.split(':').collect() };
        let usage = |want: &str| CliError::Usage(format!("profile '{spec}': expected {want}"));
        let single = |want: &str| match args.as_slice() {
            [] => Ok(1.0),
            [s] => number(s, spec),
            _ => Err(usage(want)),
        };
        match family {
            "gaussian" => Ok(ProfileSpec::Gaussian(single("gaussian:SCALE")?)),
            "quartic" => Ok(ProfileSpec::Quartic(single("quartic:SCALE")?)),
            "ball" => Ok(ProfileSpec::Ball(single("ball:SCALE")?)),
            "subgauss" => match args.as_slice() {
                [p] => Ok(ProfileSpec::SubGaussian {
                    p: number(p, spec)?,
                    scale: 1.0,
                }),
                [p, s] => Ok(ProfileSpec::SubGaussian {
                    p: number(p, spec)?,
                    scale: number(s, spec)?,
                }),
                _ => Err(usage("subgauss:P[:SCALE]")),
            },
            "optimal" => {
                let (mut rc, mut rg) = (None, None);
                for a in &args {
                    match a.split_once('=') {
                        Some(("rc", v)) => rc = Some(number(v, spec)?),
                        Some(("rg", v)) => rg = Some(number(v, spec)?),
                        None => rg = Some(number(a, spec)?),
                        Some(_) => return Err(usage("optimal:rc=RC[:rg=RG]")),
                    }
                }
                Ok(ProfileSpec::Optimal {
                    rc: rc.ok_or_else(|| usage("optimal:rc=RC[:rg=RG]"))?,
                    rg: rg.unwrap_or(1.0),
                })
            }
            "table" if !rest.is_empty() => Ok(ProfileSpec::Table(PathBuf::from(rest))),
            _ => Err(usage("one of gaussian, subgauss, quartic, optimal, ball, table")),
        }
    }
}

impl ProfileSpec {
    pub fn build(&self) -> Result<RadialProfile> {
        Ok(match self {
            ProfileSpec::Gaussian(s) => RadialProfile::gaussian(*s)?,
            ProfileSpec::SubGaussian { p, scale } => RadialProfile::sub_gaussian(*p, *scale)?,
            ProfileSpec::Quartic(s) => RadialProfile::compact_quartic(*s)?,
            ProfileSpec::Optimal { rc, rg } => optimal_feedback_gaussian_case(*rc, *rg)?.profile,
            ProfileSpec::Ball(s) => RadialProfile::uniform_ball(*s)?,
            ProfileSpec::Table(path) => read_tabulated_profile(path)?,
        })
    }
}

pub fn parse_profile(spec: &str) -> Result<RadialProfile> {
    spec.parse::<ProfileSpec>()?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_family() {
        assert_eq!("gaussian:2".parse::<ProfileSpec>().unwrap(), ProfileSpec::Gaussian(2.0));
        assert_eq!("gaussian".parse::<ProfileSpec>().unwrap(), ProfileSpec::Gaussian(1.0));
        assert_eq!(
            "subgauss:1.9:1.0".parse::<ProfileSpec>().unwrap(),
            ProfileSpec::SubGaussian { p: 1.9, scale: 1.0 }
        );
        assert_eq!(
            "optimal:rc=1.0".parse::<ProfileSpec>().unwrap(),
            ProfileSpec::Optimal { rc: 1.0, rg: 1.0 }
        );
        assert_eq!(
            "optimal:rg=2.1:rc=0.5".parse::<ProfileSpec>().unwrap(),
            ProfileSpec::Optimal { rc: 0.5, rg: 2.1 }
        );
        assert_eq!(
            "table:/tmp/a:b.csv".parse::<ProfileSpec>().unwrap(),
            ProfileSpec::Table("/tmp/a:b.csv".into())
        );
        for bad in ["cauchy:1", "gaussian:x", "gaussian:1:2", "optimal:rg=1", "optimal:q=1", "table:", "subgauss"] {
            assert!(bad.parse::<ProfileSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn builds() {
        assert!(parse_profile("ball:1e-7").is_ok());
        assert!(parse_profile("gaussian:-1").is_err());
        let g = parse_profile("optimal:rc=1:rg=1").unwrap();
        assert!(g.support_radius().is_some());
    }
}
