//! Plate parameters and model names from the run configuration.

use std::sync::{Arc, OnceLock};

use casimir_core::heat_transfer::Surface;
use casimir_core::materials::{OpticalTable, PlateParams, ZP_COEFFICIENT_EV};
use casimir_core::{PlateParamsF64, ResponseModelF64, SurfaceF64};

use crate::config::RunConfig;
use crate::error::CliError;

/// Z_t smoothing width used when `--beta` is absent, eV.
pub const DEFAULT_BETA_EV: f64 = 0.08;

/// Model names accepted on the command line.
pub const MODEL_NAMES: [&str; 8] = [
    "ideal",
    "plasma",
    "infrared",
    "drude-eps",
    "drude-z",
    "normal-skin",
    "zp",
    "zt",
];

/// Builds response models from names with shared plate parameters.
#[derive(Debug)]
pub struct ModelFactory {
    params: PlateParamsF64,
    beta: f64,
    table_path: Option<std::path::PathBuf>,
    table: OnceLock<Arc<OpticalTable<f64>>>,
}

impl ModelFactory {
    pub fn from_config(config: &RunConfig) -> Result<Self, CliError> {
        let gold = PlateParamsF64::gold();
        let wp = config
            .omega_p_ev
            .map(|ev| PlateParams::from_ev(ev, gold.gamma_300(), gold.debye_temperature()))
            .transpose()?
            .unwrap_or(gold);
        let params = match (config.gamma, config.sigma0) {
            (Some(gamma), Some(sigma0)) => PlateParams::from_all(
                wp.plasma_frequency(),
                gamma,
                sigma0,
                1.0 / gamma,
                wp.debye_temperature(),
            )?,
            (Some(gamma), None) => PlateParams::new(wp.plasma_frequency(), gamma, wp.debye_temperature())?,
            (None, Some(sigma0)) => wp.with_static_conductivity(sigma0)?,
            (None, None) => wp,
        };
        Ok(Self {
            params,
            beta: config.beta.unwrap_or(DEFAULT_BETA_EV),
            table_path: config.optical_table.clone(),
            table: OnceLock::new(),
        })
    }

    pub fn params(&self) -> &PlateParamsF64 {
        &self.params
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    fn table(&self) -> Result<Arc<OpticalTable<f64>>, CliError> {
        if let Some(t) = self.table.get() {
            return Ok(t.clone());
        }
        let table = match &self.table_path {
            Some(path) => OpticalTable::load(path)?,
            None => OpticalTable::gold_standin(),
        };
        Ok(self.table.get_or_init(|| Arc::new(table)).clone())
    }

    /// Model by name; `zt` uses the configured β.
    pub fn model(&self, name: &str) -> Result<ResponseModelF64, CliError> {
        self.model_with_beta(name, self.beta)
    }

    pub fn model_with_beta(&self, name: &str, beta: f64) -> Result<ResponseModelF64, CliError> {
        let p = self.params;
        Ok(match name {
            "ideal" => ResponseModelF64::IdealMetal,
            "plasma" => ResponseModelF64::plasma(p),
            "infrared" => ResponseModelF64::infrared(p),
            "drude-eps" => ResponseModelF64::drude_eps(p),
            "drude-z" => ResponseModelF64::drude_z(p),
            "normal-skin" => ResponseModelF64::normal_skin(p),
            "zp" => ResponseModelF64::zp(p, ZP_COEFFICIENT_EV)?,
            "zt" => ResponseModelF64::zt(p, beta, self.table()?)?,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown model {other:?} (one of {})",
                    MODEL_NAMES.join(", ")
                )))
            }
        })
    }

    /// Heat-transfer surface by name; `black-body` is accepted besides the
    /// response models.
    pub fn surface(&self, name: &str) -> Result<SurfaceF64, CliError> {
        match name {
            "black-body" => Ok(Surface::BlackBody),
            _ => Ok(Surface::Plate(self.model(name)?)),
        }
    }
}

/// Model line-up of the heat and emittivity reports: column label, model
/// name, β.
pub const HEAT_LINEUP: [(&str, &str, f64); 5] = [
    ("drude_eps", "drude-eps", DEFAULT_BETA_EV),
    ("normal_skin", "normal-skin", DEFAULT_BETA_EV),
    ("drude_z", "drude-z", DEFAULT_BETA_EV),
    ("zt_0.08", "zt", 0.08),
    ("zt_0.125", "zt", 0.125),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_name_builds() {
        let f = ModelFactory::from_config(&RunConfig::default()).unwrap();
        for name in MODEL_NAMES {
            assert_eq!(f.model(name).unwrap().name(), name);
        }
        assert!(matches!(f.model("copper"), Err(CliError::Usage(_))));
    }

    #[test]
    fn conductivity_and_rate_must_agree() {
        let gold = PlateParamsF64::gold();
        let ok = RunConfig {
            gamma: Some(gold.gamma_300()),
            sigma0: Some(gold.static_conductivity()),
            ..RunConfig::default()
        };
        assert!(ModelFactory::from_config(&ok).is_ok());
        let bad = RunConfig {
            sigma0: Some(2.0 * gold.static_conductivity()),
            ..ok
        };
        assert!(ModelFactory::from_config(&bad).is_err());
    }
}
