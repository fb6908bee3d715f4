//! Command-line flags, key=value configuration files and their merge into a
//! run configuration.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use casimir_core::lifshitz::Formulation;
use clap::{Parser, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandName {
    /// Thermal correction to the pressure with the normal-skin impedance.
    Table1,
    /// Thermal correction to the pressure with the Z_p impedance.
    Table2,
    /// Emittivity per model.
    Table3,
    /// Heat flux against separation per model.
    Fig3,
    /// TE evanescent fraction of the heat flux against separation.
    Fig4,
    /// Entropy ladder and T → 0 verdict.
    Nernst,
    /// Zero-point, thermal and total pressure.
    Pressure,
    /// Heat flux between two plates.
    Heat,
}

impl CommandName {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Table1 => "table1",
            Self::Table2 => "table2",
            Self::Table3 => "table3",
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
            Self::Nernst => "nernst",
            Self::Pressure => "pressure",
            Self::Heat => "heat",
        }
    }
}

/// Flags; every flag except `--config` may also be given as `key = value`
/// in the configuration file, with the flag taking precedence.
#[derive(Debug, Parser)]
#[command(
    name = "casimir",
    version,
    about = "Thermal Casimir pressure, heat transfer and emittivity of metal plates"
)]
pub struct Args {
    pub command: CommandName,
    /// key=value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Smallest separation, µm.
    #[arg(long)]
    pub a_min: Option<f64>,
    /// Largest separation, µm.
    #[arg(long)]
    pub a_max: Option<f64>,
    /// Number of separations from a-min to a-max.
    #[arg(long)]
    pub a_steps: Option<usize>,
    /// Temperature (of plate one), K.
    #[arg(long)]
    pub t1: Option<f64>,
    /// Temperature of plate two, K.
    #[arg(long)]
    pub t2: Option<f64>,
    /// Model of plate one.
    #[arg(long)]
    pub model: Option<String>,
    /// Model of plate two (defaults to the first).
    #[arg(long)]
    pub model2: Option<String>,
    /// Z_t smoothing width β, eV.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Table of Re Z against photon energy (eV) for Z_t.
    #[arg(long)]
    pub optical_table: Option<PathBuf>,
    /// Plasma frequency, eV.
    #[arg(long)]
    pub omega_p_ev: Option<f64>,
    /// Relaxation rate at 300 K, rad/s.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Static conductivity at 300 K, s⁻¹.
    #[arg(long)]
    pub sigma0: Option<f64>,
    /// imaginary or real.
    #[arg(long)]
    pub formulation: Option<String>,
    /// Output CSV path (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Relative tolerance of the frequency integrals.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Comma-separated temperature ladder for nernst, K.
    #[arg(long)]
    pub ladder: Option<String>,
}

/// Settings after merging flags over the configuration file. `None` means
/// the command default applies.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    /// Separations, µm.
    pub separations: Option<Vec<f64>>,
    pub t1: Option<f64>,
    pub t2: Option<f64>,
    pub model: Option<String>,
    pub model2: Option<String>,
    pub beta: Option<f64>,
    pub optical_table: Option<PathBuf>,
    pub omega_p_ev: Option<f64>,
    pub gamma: Option<f64>,
    pub sigma0: Option<f64>,
    pub formulation: Option<Formulation>,
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
    pub ladder: Option<Vec<f64>>,
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", n + 1)))?;
        map.insert(key.trim().replace('_', "-"), value.trim().to_string());
    }
    Ok(map)
}

fn read_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_text(&text)
}

fn take<V>(flag: Option<V>, file: &mut BTreeMap<String, String>, key: &str) -> Result<Option<V>, CliError>
where
    V: FromStr,
    V::Err: Display,
{
    let from_file = file.remove(key);
    if flag.is_some() {
        return Ok(flag);
    }
    from_file
        .map(|s| {
            s.parse::<V>()
                .map_err(|e| CliError::Usage(format!("config key {key}: {e}")))
        })
        .transpose()
}

fn positive(name: &str, value: Option<f64>) -> Result<Option<f64>, CliError> {
    match value {
        Some(v) if !(v > 0.0 && v.is_finite()) => Err(CliError::Usage(format!("{name} must be > 0, got {v}"))),
        _ => Ok(value),
    }
}

fn separation_grid(min: Option<f64>, max: Option<f64>, steps: Option<usize>) -> Result<Option<Vec<f64>>, CliError> {
    if min.is_none() && max.is_none() && steps.is_none() {
        return Ok(None);
    }
    let lo = positive("a-min", min)?.ok_or_else(|| CliError::Usage("a-max/a-steps need a-min".into()))?;
    let hi = positive("a-max", max)?.unwrap_or(lo);
    if hi < lo {
        return Err(CliError::Usage(format!(
            "empty separation range: a-max {hi} < a-min {lo}"
        )));
    }
    let n = steps.unwrap_or(if hi > lo { 2 } else { 1 });
    if n == 0 {
        return Err(CliError::Usage("empty separation range: a-steps = 0".into()));
    }
    if n == 1 && hi > lo {
        return Err(CliError::Usage("a-steps = 1 with a-max > a-min".into()));
    }
    Ok(Some(linear_grid(lo, hi, n)))
}

/// `n` evenly spaced points from `lo` to `hi`, rounded to 1e-9.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| {
            if n == 1 {
                lo
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            }
        })
        .map(|x| (x * 1e9).round() / 1e9)
        .collect()
}

fn parse_ladder(text: &str) -> Result<Vec<f64>, CliError> {
    let ladder = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("ladder entry {s:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if ladder.is_empty() {
        return Err(CliError::Usage("empty temperature ladder".into()));
    }
    Ok(ladder)
}

impl RunConfig {
    /// Merges `args` over the file named by `--config`.
    pub fn from_args(args: Args) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => read_config(path)?,
            None => BTreeMap::new(),
        };
        Self::merge(args, file)
    }

    pub fn merge(args: Args, mut file: BTreeMap<String, String>) -> Result<Self, CliError> {
        let f = &mut file;
        let a_min = take(args.a_min, f, "a-min")?;
        let a_max = take(args.a_max, f, "a-max")?;
        let a_steps = take(args.a_steps, f, "a-steps")?;
        let formulation = take(args.formulation, f, "formulation")?
            .map(|s: String| s.parse::<Formulation>().map_err(|e| CliError::Usage(e.to_string())))
            .transpose()?;
        let ladder = take(args.ladder, f, "ladder")?
            .map(|s: String| parse_ladder(&s))
            .transpose()?;
        let config = Self {
            separations: separation_grid(a_min, a_max, a_steps)?,
            t1: take(args.t1, f, "t1")?,
            t2: take(args.t2, f, "t2")?,
            model: take(args.model, f, "model")?,
            model2: take(args.model2, f, "model2")?,
            beta: take(args.beta, f, "beta")?,
            optical_table: take(args.optical_table, f, "optical-table")?,
            omega_p_ev: positive("omega-p-ev", take(args.omega_p_ev, f, "omega-p-ev")?)?,
            gamma: positive("gamma", take(args.gamma, f, "gamma")?)?,
            sigma0: positive("sigma0", take(args.sigma0, f, "sigma0")?)?,
            formulation,
            out: take(args.out, f, "out")?,
            tol: positive("tol", take(args.tol, f, "tol")?)?,
            ladder,
        };
        for t in [config.t1, config.t2].into_iter().flatten() {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(CliError::Usage(format!("temperature must be >= 0, got {t}")));
            }
        }
        if let Some(key) = file.keys().next() {
            return Err(CliError::Usage(format!("unknown config key {key:?}")));
        }
        Ok(config)
    }
}
