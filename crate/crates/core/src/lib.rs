//! Thermal Casimir interaction and radiative heat transfer between two
//! metal plates described by permittivity or surface-impedance models.
//!
//! The core is generic over the scalar type ([`Real`], implemented for `f32`
//! and `f64`); the `*F64` aliases fix it to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod constants;
pub mod error;
pub mod heat_transfer;
pub mod lifshitz;
pub mod materials;
pub mod numerics;
pub mod reflection;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type AsymptoticReportF64 = asymptotics::AsymptoticReport<f64>;
pub type GeometryF64 = lifshitz::Geometry<f64>;
pub type HeatConfigF64 = heat_transfer::HeatConfig<f64>;
pub type HeatFluxResultF64 = heat_transfer::HeatFluxResult<f64>;
pub type HeatSpecF64 = heat_transfer::HeatSpec<f64>;
pub type LifshitzSpecF64 = lifshitz::LifshitzSpec<f64>;
pub type OpticalTableF64 = materials::OpticalTable<f64>;
pub type OutcomeF64 = lifshitz::Outcome<f64>;
pub type PlateParamsF64 = materials::PlateParams<f64>;
pub type PressureBreakdownF64 = lifshitz::PressureBreakdown<f64>;
pub type ResponseModelF64 = materials::ResponseModel<f64>;
pub type SurfaceF64 = heat_transfer::Surface<f64>;
