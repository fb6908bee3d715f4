//! Low-temperature expansions of the free energy and entropy for the
//! infrared-optics and Drude impedances, the zero-frequency terms, and the
//! Nernst-theorem test.

mod boundary;
mod nernst;

pub use boundary::{
    boundary_function, boundary_integrand, i0, i0_quadrature, i1, i1_quadrature, i2_limit, i2_quadrature,
    phi_difference, phi_difference_series,
};
pub use nernst::{default_ladder, nernst_test, AsymptoticReport, LadderPoint, Verdict};

use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::lifshitz::{real_axis_thermal_correction, zero_point_parts, Geometry, LifshitzSpec};
use crate::materials::{PlateParams, ResponseModel};
use crate::numerics::{integrate_semi_infinite, Estimate, QuadratureSpec};
use crate::Real;

/// Largest T/T_eff accepted by the low-temperature expansions.
const MAX_REDUCED_TEMPERATURE: f64 = 0.1;
/// Largest ρ accepted by the expansions in ρ.
const MAX_RHO: f64 = 0.1;
/// Largest ρ accepted by the zero-frequency terms.
const MAX_RHO_ZERO_MODE: f64 = 0.5;

/// ρ = λ_p/(4πa) = c/(2aω_p).
pub fn rho<T: Real>(separation: T, plasma_frequency: T) -> T {
    T::lit(SPEED_OF_LIGHT) / (T::lit(2.0) * separation * plasma_frequency)
}

/// T_eff = ħc/(2ak_B).
pub fn effective_temperature<T: Real>(separation: T) -> T {
    T::lit(HBAR) * T::lit(SPEED_OF_LIGHT) / (T::lit(2.0) * separation * T::lit(BOLTZMANN))
}

fn check_low_temperature<T: Real>(separation: T, temperature: T, plasma_frequency: T) -> Result<(T, T)> {
    if !(separation > T::zero()) || !(temperature >= T::zero()) || !(plasma_frequency > T::zero()) {
        return Err(Error::Domain("need a > 0, T >= 0 and omega_p > 0".into()));
    }
    let reduced = temperature / effective_temperature(separation);
    let r = rho(separation, plasma_frequency);
    if !(reduced < T::lit(MAX_REDUCED_TEMPERATURE)) {
        return Err(Error::Range(format!(
            "T/T_eff = {reduced} is not below {MAX_REDUCED_TEMPERATURE}"
        )));
    }
    if !(r < T::lit(MAX_RHO)) {
        return Err(Error::Range(format!("rho = {r} is not below {MAX_RHO}")));
    }
    Ok((reduced, r))
}

/// F − E = −(π²ħc/720a³){45ζ(3)/π³ τ³ − τ⁴ + (δ_i/a)[90ζ(3)/π³ τ³ − 4τ⁴]}
/// with τ = T/T_eff and δ_i = c/ω_p.
pub fn thermal_free_energy_lowt_ir<T: Real>(separation: T, temperature: T, plasma_frequency: T) -> Result<T> {
    let (tau, r) = check_low_temperature(separation, temperature, plasma_frequency)?;
    let depth_ratio = T::lit(2.0) * r;
    let pi = T::PI();
    let z3 = T::zeta3() / (pi * pi * pi);
    let t3 = tau * tau * tau;
    let t4 = t3 * tau;
    let bracket = T::lit(45.0) * z3 * t3 - t4 + depth_ratio * (T::lit(90.0) * z3 * t3 - T::lit(4.0) * t4);
    let hc = T::lit(HBAR) * T::lit(SPEED_OF_LIGHT);
    Ok(-pi * pi * hc / (T::lit(720.0) * separation.powi(3)) * bracket)
}

/// F = E + [`thermal_free_energy_lowt_ir`] with E evaluated for two plates
/// described by the infrared-optics impedance.
pub fn free_energy_lowt_ir<T: Real>(
    params: PlateParams<T>,
    separation: T,
    temperature: T,
    spec: &LifshitzSpec<T>,
) -> Result<T> {
    let thermal = thermal_free_energy_lowt_ir(separation, temperature, params.plasma_frequency())?;
    let g = Geometry::symmetric(separation, temperature, ResponseModel::infrared(params))?;
    Ok(zero_point_parts(&g, spec)?.energy.value + thermal)
}

/// S = (3k_B/8πa²)τ²[ζ(3) − (4π³/135)τ + (δ_i/a)(2ζ(3) − (16π³/135)τ)].
pub fn entropy_lowt_ir<T: Real>(separation: T, temperature: T, plasma_frequency: T) -> Result<T> {
    let (tau, r) = check_low_temperature(separation, temperature, plasma_frequency)?;
    let depth_ratio = T::lit(2.0) * r;
    let pi3 = T::PI().powi(3);
    let z3 = T::zeta3();
    let bracket = z3 - T::lit(4.0) * pi3 / T::lit(135.0) * tau
        + depth_ratio * (T::lit(2.0) * z3 - T::lit(16.0) * pi3 / T::lit(135.0) * tau);
    Ok(T::lit(3.0) * T::lit(BOLTZMANN) / (T::lit(8.0) * T::PI() * separation * separation) * tau * tau * bracket)
}

/// ζ(3) + ∫₀^∞ y ln[1 − ((1 − ρy)/(1 + ρy))² e^{−y}] dy, evaluated as
/// ∫₀^∞ y ln[1 + 4ρy/((1 + ρy)²(e^y − 1))] dy.
pub fn zero_mode_bracket<T: Real>(rho: T, spec: &QuadratureSpec<T>) -> Estimate<T> {
    let four = T::lit(4.0);
    integrate_semi_infinite(
        |y: T| {
            let s = T::one() + rho * y;
            y * (four * rho * y / (s * s * y.exp_m1())).ln_1p()
        },
        T::zero(),
        T::one(),
        spec,
    )
}

/// Series 8ζ(3)ρ(1 − 6ρ) of [`zero_mode_bracket`].
pub fn zero_mode_bracket_series<T: Real>(rho: T) -> T {
    T::lit(8.0) * T::zeta3() * rho * (T::one() - T::lit(6.0) * rho)
}

/// Zero-frequency Matsubara terms of the Drude and infrared-optics
/// impedances, J/m².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroModeTerms<T> {
    /// F_D^{(l=0)} = −ζ(3)k_BT/(8πa²).
    pub drude: T,
    /// F_i^{(l=0)} by quadrature.
    pub infrared: T,
    /// ΔF_i^{(l=0)} = −(k_BT/16πa²)·bracket, by quadrature.
    pub difference: T,
}

/// Zero-frequency terms for plates with plasma frequency ω_p.
pub fn drude_zero_mode_terms<T: Real>(separation: T, temperature: T, plasma_frequency: T) -> Result<ZeroModeTerms<T>> {
    if !(separation > T::zero()) || !(temperature >= T::zero()) || !(plasma_frequency > T::zero()) {
        return Err(Error::Domain("need a > 0, T >= 0 and omega_p > 0".into()));
    }
    let r = rho(separation, plasma_frequency);
    if !(r < T::lit(MAX_RHO_ZERO_MODE)) {
        return Err(Error::Range(format!("rho = {r} is not below {MAX_RHO_ZERO_MODE}")));
    }
    let spec = QuadratureSpec::default().with_rel_tol(T::lit(1e-12).max(T::tolerance_floor()));
    let pref = T::lit(BOLTZMANN) * temperature / (T::lit(16.0) * T::PI() * separation * separation);
    let four = T::lit(4.0);
    let infrared = integrate_semi_infinite(
        |y: T| {
            let s = T::one() + r * y;
            let reflect = (T::one() - r * y) / s;
            let decay_m1 = (-y).exp_m1();
            // 1 − r²e^{−y} = (1 − r²) − r²(e^{−y} − 1)
            let te = four * r * y / (s * s) - reflect * reflect * decay_m1;
            y * ((-decay_m1).ln() + te.ln())
        },
        T::zero(),
        T::one(),
        &spec,
    );
    Ok(ZeroModeTerms {
        drude: -T::lit(2.0) * T::zeta3() * pref,
        infrared: pref * infrared.value,
        difference: -pref * zero_mode_bracket(r, &spec).value,
    })
}

/// S_D(a, 0) from the exact integral and from its series in ρ, J/(m²K).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyT0<T> {
    /// (k_B/16πa²)·bracket with the bracket by quadrature.
    pub quadrature: T,
    /// k_Bζ(3)ρ(1 − 6ρ)/(2πa²).
    pub series: T,
    pub rho: T,
}

impl<T: Real> EntropyT0<T> {
    /// |series − quadrature| / quadrature.
    pub fn relative_gap(&self) -> T {
        ((self.series - self.quadrature) / self.quadrature).abs()
    }
}

/// Zero-temperature entropy of two Drude-impedance plates.
pub fn entropy_drude_t0<T: Real>(separation: T, plasma_frequency: T) -> Result<EntropyT0<T>> {
    if !(separation > T::zero()) || !(plasma_frequency > T::zero()) {
        return Err(Error::Domain("need a > 0 and omega_p > 0".into()));
    }
    let r = rho(separation, plasma_frequency);
    if !(r < T::lit(MAX_RHO)) {
        return Err(Error::Range(format!("rho = {r} is not below {MAX_RHO}")));
    }
    Ok(entropy_t0_unchecked(separation, r))
}

fn entropy_t0_unchecked<T: Real>(separation: T, rho: T) -> EntropyT0<T> {
    let spec = QuadratureSpec::default().with_rel_tol(T::lit(1e-12).max(T::tolerance_floor()));
    let pref = T::lit(BOLTZMANN) / (T::lit(16.0) * T::PI() * separation * separation);
    EntropyT0 {
        quadrature: pref * zero_mode_bracket(rho, &spec).value,
        series: pref * zero_mode_bracket_series(rho),
        rho,
    }
}

/// Scale k_Bζ(3)ρ/(2πa²) of the zero-temperature Drude entropy, J/(m²K).
pub fn drude_entropy_scale<T: Real>(separation: T, plasma_frequency: T) -> T {
    T::lit(BOLTZMANN) * T::zeta3() * rho(separation, plasma_frequency)
        / (T::lit(2.0) * T::PI() * separation * separation)
}

/// −(k_Bζ(3)/2π²a²)(γ/ω_p)(T_eff/T)[ln(2πT/T_eff) + ½], J/(m²K).
pub fn drude_log_entropy<T: Real>(separation: T, temperature: T, gamma: T, plasma_frequency: T) -> T {
    if gamma.is_zero() {
        return T::zero();
    }
    let t_eff = effective_temperature(separation);
    let kappa = T::lit(2.0) * T::PI() * temperature / t_eff;
    -T::lit(BOLTZMANN) * T::zeta3() / (T::lit(2.0) * T::PI() * T::PI() * separation * separation)
        * (gamma / plasma_frequency)
        * (t_eff / temperature)
        * (kappa.ln() + T::lit(0.5))
}

/// (k_BTγ/2πa²ω_p)(ln κ/κ)ζ(3), J/m².
pub fn drude_log_free_energy<T: Real>(separation: T, temperature: T, gamma: T, plasma_frequency: T) -> T {
    if gamma.is_zero() {
        return T::zero();
    }
    let kappa = T::lit(2.0) * T::PI() * temperature / effective_temperature(separation);
    T::lit(BOLTZMANN) * temperature * gamma / (T::lit(2.0) * T::PI() * separation * separation * plasma_frequency)
        * kappa.ln()
        / kappa
        * T::zeta3()
}

/// One rung of a low-temperature residual ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualPoint<T> {
    pub temperature: T,
    /// F − E from the real-frequency route, J/m².
    pub numeric: T,
    /// F − E from the low-temperature expansion, J/m².
    pub asymptotic: T,
    pub converged: bool,
}

impl<T: Real> ResidualPoint<T> {
    pub fn residual(&self) -> T {
        (self.numeric - self.asymptotic).abs()
    }
}

/// F_numeric − F_asymptotic for infrared-optics plates on a temperature
/// ladder. Both sides share E(a), so the difference is taken between the
/// thermal parts.
pub fn low_temperature_residuals<T: Real>(
    params: PlateParams<T>,
    separation: T,
    temperatures: &[T],
    spec: &LifshitzSpec<T>,
) -> Result<Vec<ResidualPoint<T>>> {
    temperatures
        .iter()
        .map(|&t| {
            let g = Geometry::symmetric(separation, t, ResponseModel::infrared(params))?;
            let c = real_axis_thermal_correction(&g, spec)?;
            Ok(ResidualPoint {
                temperature: t,
                numeric: c.free_energy_total().value,
                asymptotic: thermal_free_energy_lowt_ir(separation, t, params.plasma_frequency())?,
                converged: c.converged,
            })
        })
        .collect()
}

/// Observed orders ln(r_k/r_{k+1})/ln(T_k/T_{k+1}) between successive rungs.
pub fn observed_orders<T: Real>(points: &[ResidualPoint<T>]) -> Vec<T> {
    points
        .windows(2)
        .map(|w| (w[0].residual() / w[1].residual()).ln() / (w[0].temperature / w[1].temperature).ln())
        .collect()
}
