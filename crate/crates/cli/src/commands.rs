//! Subcommands: each turns a run configuration into a CSV report.

use std::io::Write;

use casimir_core::asymptotics::{default_ladder, nernst_test};
use casimir_core::constants::{MEASURED_EMITTIVITY_295K, MEASURED_PRESSURE_MPA};
use casimir_core::heat_transfer::{emittivity, heat_flux, HeatConfig, HeatFormulation, HeatSpec, Surface};
use casimir_core::lifshitz::{
    pressure_breakdown, thermal_correction, zero_point_parts, Formulation, Geometry, LifshitzSpec,
};
use casimir_core::materials::ResponseModel;
use casimir_core::{HeatSpecF64, LifshitzSpecF64};
use rayon::prelude::*;

use crate::config::{linear_grid, CommandName, RunConfig};
use crate::error::CliError;
use crate::models::{ModelFactory, HEAT_LINEUP};

/// Separations of the pressure tables, µm.
pub const TABLE_SEPARATIONS_UM: [f64; 6] = [0.2, 0.25, 0.3, 0.35, 0.4, 1.0];
/// Separations of the pressure report, µm.
pub const PRESSURE_SEPARATIONS_UM: [f64; 2] = [0.2, 0.3];
/// Default separation range of the heat figures, µm, and its point count.
pub const FIGURE_RANGE_UM: (f64, f64, usize) = (0.2, 2.0, 10);
/// Separation of the Nernst test when `--a-min` is absent, µm.
pub const NERNST_SEPARATION_UM: f64 = 0.5;

const PRESSURE_TEMPERATURE: f64 = 300.0;
const EMITTIVITY_TEMPERATURE: f64 = 295.0;
const HEAT_TEMPERATURES: (f64, f64) = (320.0, 300.0);
const PA_TO_MPA: f64 = 1e3;

/// A CSV table with its `#` header lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub header: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// False when any computation did not reach its tolerance.
    pub converged: bool,
}

impl Report {
    fn new(header: Vec<(String, String)>, columns: &[&str]) -> Self {
        Self {
            header,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            converged: true,
        }
    }

    fn note(&mut self, key: &str, value: impl ToString) {
        self.header.push((key.to_string(), value.to_string()));
    }

    /// Writes the header as `# key = value` lines followed by the CSV.
    pub fn write(&self, out: impl Write) -> Result<(), CliError> {
        let mut out = out;
        writeln!(out, "# casimir {}", env!("CARGO_PKG_VERSION"))?;
        for (k, v) in &self.header {
            writeln!(out, "# {k} = {v}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Shortest round-trip text, scientific outside [1e-4, 1e15).
fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn status(converged: bool) -> String {
    if converged { "ok" } else { "not-converged" }.to_string()
}

/// µm to m.
fn metres(a_um: f64) -> f64 {
    a_um * 1e-6
}

/// Everything a command needs besides its own defaults.
struct Context<'a> {
    command: CommandName,
    config: &'a RunConfig,
    factory: ModelFactory,
    lifshitz: LifshitzSpecF64,
    heat: HeatSpecF64,
}

impl<'a> Context<'a> {
    fn new(command: CommandName, config: &'a RunConfig) -> Result<Self, CliError> {
        let factory = ModelFactory::from_config(config)?;
        let mut lifshitz = LifshitzSpec::default();
        let mut heat = HeatSpec::default();
        if let Some(tol) = config.tol {
            lifshitz.real_outer = lifshitz.real_outer.with_rel_tol(tol);
            heat.outer = heat.outer.with_rel_tol(tol);
        }
        Ok(Self {
            command,
            config,
            factory,
            lifshitz,
            heat,
        })
    }

    /// Header lines shared by every command.
    fn header(&self) -> Vec<(String, String)> {
        let p = self.factory.params();
        let mut h = vec![
            ("command".to_string(), self.command.as_str().to_string()),
            ("omega-p-ev".to_string(), num(p.plasma_frequency_ev())),
            ("gamma".to_string(), num(p.gamma_300())),
            ("sigma0".to_string(), num(p.static_conductivity())),
            ("debye-temperature".to_string(), num(p.debye_temperature())),
            ("beta".to_string(), num(self.factory.beta())),
        ];
        let table = match &self.config.optical_table {
            Some(path) => path.display().to_string(),
            None => "gold-standin".to_string(),
        };
        h.push(("optical-table".to_string(), table));
        if let Some(tol) = self.config.tol {
            h.push(("tol".to_string(), num(tol)));
        }
        h
    }

    /// Separations in µm.
    fn separations(&self, default_um: &[f64]) -> Vec<f64> {
        self.config.separations.clone().unwrap_or_else(|| default_um.to_vec())
    }

    fn figure_separations(&self) -> Vec<f64> {
        let (lo, hi, n) = FIGURE_RANGE_UM;
        self.separations(&linear_grid(lo, hi, n))
    }

    /// Rejects a formulation the command does not have.
    fn real_only(&self) -> Result<Formulation, CliError> {
        match self.config.formulation {
            Some(Formulation::Imaginary) => Err(CliError::Usage(format!(
                "{} has only the real-frequency formulation",
                self.command.as_str()
            ))),
            _ => Ok(Formulation::Real),
        }
    }
}

fn grid_header(report: &mut Report, separations: &[f64]) {
    let list: Vec<String> = separations.iter().map(|&a| num(a)).collect();
    report.note("a-um", list.join(" "));
}

/// Runs `command` and returns its report.
pub fn run(command: CommandName, config: &RunConfig) -> Result<Report, CliError> {
    let ctx = Context::new(command, config)?;
    match command {
        CommandName::Table1 => pressure_table(&ctx, "normal-skin"),
        CommandName::Table2 => pressure_table(&ctx, "zp"),
        CommandName::Table3 => emittivity_table(&ctx),
        CommandName::Fig3 | CommandName::Fig4 => heat_figure(&ctx),
        CommandName::Nernst => nernst(&ctx),
        CommandName::Pressure => pressure(&ctx),
        CommandName::Heat => heat(&ctx),
    }
}

fn symmetric_model(ctx: &Context, default: &str) -> Result<casimir_core::ResponseModelF64, CliError> {
    if ctx
        .config
        .model2
        .as_ref()
        .is_some_and(|m2| Some(m2) != ctx.config.model.as_ref())
    {
        return Err(CliError::Usage(format!(
            "{} takes identical plates; drop --model2",
            ctx.command.as_str()
        )));
    }
    ctx.factory.model(ctx.config.model.as_deref().unwrap_or(default))
}

fn pressure_table(ctx: &Context, default_model: &str) -> Result<Report, CliError> {
    let model = symmetric_model(ctx, default_model)?;
    let temperature = ctx.config.t1.unwrap_or(PRESSURE_TEMPERATURE);
    let formulation = ctx.config.formulation.unwrap_or(Formulation::Real);
    let separations = ctx.separations(&TABLE_SEPARATIONS_UM);
    let mut report = Report::new(
        ctx.header(),
        &[
            "a_um",
            "dP_mPa",
            "ratio_ideal",
            "fTE_EW",
            "fTE_PW",
            "fTM_EW",
            "fTM_PW",
            "status",
        ],
    );
    report.note("model", model.name());
    report.note("t1", num(temperature));
    report.note("formulation", formulation.as_str());
    grid_header(&mut report, &separations);

    let rows = separations
        .par_iter()
        .map(|&a| {
            let g = Geometry::symmetric(metres(a), temperature, model.clone())?;
            let p = pressure_breakdown(&g, formulation, &ctx.lifshitz)?;
            Ok((g.warnings(), p))
        })
        .collect::<Result<Vec<_>, casimir_core::Error>>()?;
    for (&a, (warnings, p)) in separations.iter().zip(rows) {
        for w in warnings {
            report.note("warning", w);
        }
        report.converged &= p.converged;
        let mut row = vec![num(a), num(p.thermal * PA_TO_MPA), num(p.ratio_to_ideal)];
        row.extend(p.fractions().map(num));
        row.push(status(p.converged));
        report.rows.push(row);
    }
    Ok(report)
}

fn pressure(ctx: &Context) -> Result<Report, CliError> {
    let model = symmetric_model(ctx, "normal-skin")?;
    let temperature = ctx.config.t1.unwrap_or(PRESSURE_TEMPERATURE);
    let formulation = ctx.config.formulation.unwrap_or(Formulation::Imaginary);
    let separations = ctx.separations(&PRESSURE_SEPARATIONS_UM);
    let mut report = Report::new(
        ctx.header(),
        &[
            "a_um",
            "P0_mPa",
            "dP_mPa",
            "P_total_mPa",
            "P0_plasma_mPa",
            "P_plasma_P0_mPa",
            "exp_mPa",
            "exp_delta_mPa",
            "status",
        ],
    );
    report.note("model", model.name());
    report.note("t1", num(temperature));
    report.note("formulation", formulation.as_str());
    grid_header(&mut report, &separations);

    let rows = separations
        .par_iter()
        .map(|&a| {
            let g = Geometry::symmetric(metres(a), temperature, model.clone())?;
            let zero = zero_point_parts(&g, &ctx.lifshitz)?.pressure;
            let plasma = Geometry::symmetric(metres(a), temperature, ResponseModel::plasma(*ctx.factory.params()))?;
            let zero_plasma = zero_point_parts(&plasma, &ctx.lifshitz)?.pressure;
            let (thermal, converged) = if temperature > 0.0 {
                let t = thermal_correction(&g, formulation, &ctx.lifshitz)?.pressure;
                (t.value, t.converged)
            } else {
                (0.0, true)
            };
            Ok((
                g.warnings(),
                zero.value,
                zero_plasma.value,
                thermal,
                zero.converged && zero_plasma.converged && converged,
            ))
        })
        .collect::<Result<Vec<_>, casimir_core::Error>>()?;
    for (&a, (warnings, p0, p0_plasma, dp, converged)) in separations.iter().zip(rows) {
        for w in warnings {
            report.note("warning", w);
        }
        report.converged &= converged;
        let total = (p0 + dp) * PA_TO_MPA;
        let (exp, delta) = match MEASURED_PRESSURE_MPA.iter().find(|(a_um, _)| (a_um - a).abs() < 1e-9) {
            Some(&(_, magnitude)) => (num(-magnitude), num(total + magnitude)),
            None => (String::new(), String::new()),
        };
        report.rows.push(vec![
            num(a),
            num(p0 * PA_TO_MPA),
            num(dp * PA_TO_MPA),
            num(total),
            num(p0_plasma * PA_TO_MPA),
            num((p0_plasma + dp) * PA_TO_MPA),
            exp,
            delta,
            status(converged),
        ]);
    }
    Ok(report)
}

fn emittivity_table(ctx: &Context) -> Result<Report, CliError> {
    ctx.real_only()?;
    let temperature = ctx.config.t1.unwrap_or(EMITTIVITY_TEMPERATURE);
    let lineup: Vec<(String, casimir_core::SurfaceF64, Option<f64>)> = match &ctx.config.model {
        Some(name) => {
            let beta = (name == "zt").then(|| ctx.factory.beta());
            vec![(name.clone(), ctx.factory.surface(name)?, beta)]
        }
        None => {
            let mut v = HEAT_LINEUP
                .iter()
                .map(|&(_, name, beta)| {
                    let beta = (name == "zt").then_some(beta);
                    Ok((
                        name.to_string(),
                        Surface::Plate(ctx.factory.model_with_beta(name, beta.unwrap_or(0.0))?),
                        beta,
                    ))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            v.push(("zp".to_string(), ctx.factory.surface("zp")?, None));
            v
        }
    };
    let mut report = Report::new(ctx.header(), &["model", "beta_eV", "emittivity", "measured", "status"]);
    report.note("t1", num(temperature));
    report.note("formulation", Formulation::Real.as_str());

    let values = lineup
        .par_iter()
        .map(|(_, surface, _)| emittivity(temperature, surface, &ctx.heat))
        .collect::<Result<Vec<_>, casimir_core::Error>>()?;
    for ((name, _, beta), e) in lineup.iter().zip(values) {
        report.converged &= e.converged;
        report.rows.push(vec![
            name.clone(),
            beta.map(num).unwrap_or_default(),
            num(e.value),
            num(MEASURED_EMITTIVITY_295K),
            status(e.converged),
        ]);
    }
    Ok(report)
}

fn heat_temperatures(ctx: &Context) -> (f64, f64) {
    (
        ctx.config.t1.unwrap_or(HEAT_TEMPERATURES.0),
        ctx.config.t2.unwrap_or(HEAT_TEMPERATURES.1),
    )
}

fn heat_figure(ctx: &Context) -> Result<Report, CliError> {
    ctx.real_only()?;
    let (t1, t2) = heat_temperatures(ctx);
    let separations = ctx.figure_separations();
    let lineup: Vec<(String, [casimir_core::SurfaceF64; 2])> = match &ctx.config.model {
        Some(name) => {
            let second = ctx.config.model2.as_deref().unwrap_or(name);
            vec![(
                name.replace('-', "_"),
                [ctx.factory.surface(name)?, ctx.factory.surface(second)?],
            )]
        }
        None => HEAT_LINEUP
            .iter()
            .map(|&(label, name, beta)| {
                let m = ctx.factory.model_with_beta(name, beta)?;
                Ok((label.to_string(), [Surface::Plate(m.clone()), Surface::Plate(m)]))
            })
            .collect::<Result<Vec<_>, CliError>>()?,
    };
    let fraction = ctx.command == CommandName::Fig4;
    let mut columns = vec!["a_um".to_string()];
    columns.extend(lineup.iter().map(|(label, _)| label.clone()));
    columns.push("status".to_string());
    let mut report = Report {
        columns,
        ..Report::new(ctx.header(), &[])
    };
    report.note("t1", num(t1));
    report.note("t2", num(t2));
    report.note("quantity", if fraction { "fTE_EW" } else { "S_W_m2" });
    report.note("formulation", Formulation::Real.as_str());
    grid_header(&mut report, &separations);

    let jobs: Vec<(f64, &[casimir_core::SurfaceF64; 2])> = separations
        .iter()
        .flat_map(|&a| lineup.iter().map(move |(_, s)| (a, s)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(a, [s1, s2])| {
            let cfg = HeatConfig::new(metres(a), t1, t2, s1.clone(), s2.clone())?;
            heat_flux(&cfg, cfg.natural_form(), HeatFormulation::Split, &ctx.heat)
        })
        .collect::<Result<Vec<_>, casimir_core::Error>>()?;
    for (&a, chunk) in separations.iter().zip(results.chunks(lineup.len())) {
        let converged = chunk.iter().all(|r| r.converged);
        report.converged &= converged;
        let mut row = vec![num(a)];
        row.extend(chunk.iter().map(|r| {
            if fraction {
                r.te_ew_fraction().map(num).unwrap_or_default()
            } else {
                num(r.total())
            }
        }));
        row.push(status(converged));
        report.rows.push(row);
    }
    Ok(report)
}

fn heat(ctx: &Context) -> Result<Report, CliError> {
    ctx.real_only()?;
    let (t1, t2) = heat_temperatures(ctx);
    let first = ctx.config.model.as_deref().unwrap_or("drude-eps");
    let second = ctx.config.model2.as_deref().unwrap_or(first);
    let (s1, s2) = (ctx.factory.surface(first)?, ctx.factory.surface(second)?);
    let separations = ctx.separations(&[0.3]);
    let mut report = Report::new(
        ctx.header(),
        &[
            "a_um",
            "S_W_m2",
            "S_PW_W_m2",
            "S_EW_W_m2",
            "S_TE_EW_W_m2",
            "fTE_EW",
            "form",
            "dissipationless",
            "status",
        ],
    );
    report.note("model", s1.name());
    report.note("model2", s2.name());
    report.note("t1", num(t1));
    report.note("t2", num(t2));
    report.note("formulation", Formulation::Real.as_str());
    grid_header(&mut report, &separations);

    let results = separations
        .par_iter()
        .map(|&a| {
            let cfg = HeatConfig::new(metres(a), t1, t2, s1.clone(), s2.clone())?;
            heat_flux(&cfg, cfg.natural_form(), HeatFormulation::Split, &ctx.heat)
        })
        .collect::<Result<Vec<_>, casimir_core::Error>>()?;
    for (&a, r) in separations.iter().zip(results) {
        report.converged &= r.converged;
        report.rows.push(vec![
            num(a),
            num(r.total()),
            num(r.propagating()),
            num(r.evanescent()),
            num(r.channels.te_ew),
            r.te_ew_fraction().map(num).unwrap_or_default(),
            format!("{:?}", r.form).to_lowercase(),
            r.dissipationless.to_string(),
            status(r.converged),
        ]);
    }
    Ok(report)
}

fn nernst(ctx: &Context) -> Result<Report, CliError> {
    if ctx.config.formulation == Some(Formulation::Real) {
        return Err(CliError::Usage(
            "nernst has only the imaginary-frequency formulation".into(),
        ));
    }
    let model = symmetric_model(ctx, "infrared")?;
    let separation = match ctx.config.separations.as_deref() {
        None => metres(NERNST_SEPARATION_UM),
        Some([a]) => metres(*a),
        Some(_) => return Err(CliError::Usage("nernst takes a single separation (a-min only)".into())),
    };
    let ladder = ctx.config.ladder.clone().unwrap_or_else(default_ladder);
    let r = nernst_test(&model, separation, &ladder, &ctx.lifshitz)?;
    let mut report = Report::new(
        ctx.header(),
        &[
            "T_K",
            "F_J_m2",
            "F_asymptotic_J_m2",
            "S_J_m2K",
            "S_error_J_m2K",
            "S_asymptotic_J_m2K",
            "status",
        ],
    );
    report.note("model", r.model);
    report.note("a-um", num(r.separation * 1e6));
    let temps: Vec<String> = ladder.iter().map(|&t| num(t)).collect();
    report.note("ladder", temps.join(","));
    report.note("formulation", Formulation::Imaginary.as_str());
    report.note("verdict", r.verdict);
    report.note("intercept", r.intercept.map(num).unwrap_or_else(|| "none".into()));
    report.note("entropy-scale", num(r.scale));
    report.note("drude-prediction", num(r.drude_prediction));
    for d in &r.diagnostics {
        report.note("diagnostic", d);
    }
    for p in &r.points {
        report.rows.push(vec![
            num(p.temperature),
            num(p.free_energy),
            p.free_energy_asymptotic.map(num).unwrap_or_default(),
            num(p.entropy),
            num(p.entropy_error),
            p.entropy_asymptotic.map(num).unwrap_or_default(),
            status(p.converged),
        ]);
    }
    Ok(report)
}
