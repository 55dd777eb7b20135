//! JSON configuration of the physical constants.

use std::path::{Path, PathBuf};

use gpsl_core::regimes::PhysicalConstants;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Environment variable naming a config file when `--config` is absent.
pub const CONFIG_ENV: &str = "GPSL_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaMode {
    /// `σ = 5.6e-8`, reproducing the published stellar powers.
    #[default]
    Reproduction,
    /// CODATA `σ`.
    Codata,
}

/// Config document: an optional base mode and per-constant overrides.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    #[serde(default)]
    pub mode: SigmaMode,
    pub g: Option<f64>,
    pub hbar: Option<f64>,
    pub m0: Option<f64>,
    pub m_neutron: Option<f64>,
    pub k_b: Option<f64>,
    pub sigma_sb: Option<f64>,
    pub m_sun: Option<f64>,
    pub c: Option<f64>,
    pub e: Option<f64>,
}

impl ConfigDoc {
    pub fn constants(&self) -> PhysicalConstants {
        let mut k = match self.mode {
            SigmaMode::Reproduction => PhysicalConstants::reproduction(),
            SigmaMode::Codata => PhysicalConstants::codata(),
        };
        let slots: [(&mut f64, Option<f64>); 9] = [
            (&mut k.g, self.g),
            (&mut k.hbar, self.hbar),
            (&mut k.m0, self.m0),
            (&mut k.m_neutron, self.m_neutron),
            (&mut k.k_b, self.k_b),
            (&mut k.sigma_sb, self.sigma_sb),
            (&mut k.m_sun, self.m_sun),
            (&mut k.c, self.c),
            (&mut k.e, self.e),
        ];
        for (slot, v) in slots {
            if let Some(v) = v {
                *slot = v;
            }
        }
        k
    }
}

/// Serializable copy of [`PhysicalConstants`], as recorded in manifests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsSnapshot {
    pub g: f64,
    pub hbar: f64,
    pub m0: f64,
    pub m_neutron: f64,
    pub k_b: f64,
    pub sigma_sb: f64,
    pub m_sun: f64,
    pub c: f64,
    pub e: f64,
}

impl From<PhysicalConstants> for ConstantsSnapshot {
    fn from(k: PhysicalConstants) -> Self {
        ConstantsSnapshot {
            g: k.g,
            hbar: k.hbar,
            m0: k.m0,
            m_neutron: k.m_neutron,
            k_b: k.k_b,
            sigma_sb: k.sigma_sb,
            m_sun: k.m_sun,
            c: k.c,
            e: k.e,
        }
    }
}

impl From<ConstantsSnapshot> for PhysicalConstants {
    fn from(s: ConstantsSnapshot) -> Self {
        PhysicalConstants {
            g: s.g,
            hbar: s.hbar,
            m0: s.m0,
            m_neutron: s.m_neutron,
            k_b: s.k_b,
            sigma_sb: s.sigma_sb,
            m_sun: s.m_sun,
            c: s.c,
            e: s.e,
        }
    }
}

fn config_error(path: &Path, msg: impl Into<String>) -> CliError {
    CliError::Config {
        path: path.to_path_buf(),
        msg: msg.into(),
    }
}

pub fn load_config(path: &Path) -> Result<PhysicalConstants> {
    let text = std::fs::read_to_string(path).map_err(|e| config_error(path, e.to_string()))?;
    let doc: ConfigDoc = serde_json::from_str(&text).map_err(|e| config_error(path, e.to_string()))?;
    let k = doc.constants();
    k.validate().map_err(|e| config_error(path, e.to_string()))?;
    Ok(k)
}

/// The flag wins over the environment; with neither, built-in defaults.
pub fn config_path(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

pub fn resolve_constants(flag: Option<&Path>) -> Result<PhysicalConstants> {
    match config_path(flag) {
        Some(p) => load_config(&p),
        None => Ok(PhysicalConstants::reproduction()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_and_modes() {
        let doc: ConfigDoc = serde_json::from_str(r#"{"mode": "codata", "g": 1e-10}"#).unwrap();
        let k = doc.constants();
        assert_eq!(k.g, 1e-10);
        assert_eq!(k.sigma_sb, gpsl_core::regimes::SIGMA_SB_CODATA);
        assert!(serde_json::from_str::<ConfigDoc>(r#"{"G": 1.0}"#).is_err());
        let snap = ConstantsSnapshot::from(k);
        assert_eq!(PhysicalConstants::from(snap), k);
    }
}
