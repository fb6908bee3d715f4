//! Numerical engine: adaptive quadrature, Matsubara summation, the
//! Abel–Plana correction, temperature derivatives and polylogarithms.

pub mod abel_plana;
pub mod derivative;
pub mod polylog;
pub mod quadrature;
pub mod roots;
pub mod summation;

pub use abel_plana::abel_plana_correction;
pub use derivative::{central_derivative, ddt, default_temperature_step, Derivative};
pub use polylog::{polylog, polylog_exp_neg};
pub use quadrature::{
    geometric_breakpoints, integrate, integrate_n, integrate_semi_infinite, Domain, Estimate, EstimateN, QuadratureSpec,
};
pub use roots::{bisect, sign_change_roots};
pub use summation::{matsubara_sum, matsubara_sum_par, matsubara_sum_par_n, CompensatedSum, SumResult, SumSpec};
