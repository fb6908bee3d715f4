//! Thermal emission of a single plate:
//! Φ(T) = ħ/(4π²c²) (k_BT/ħ)⁴ ∫ x³/(eˣ − 1) ∫₀¹ p Σ_α (1 − |r_α|²) dp dx
//! with x = ħω/k_BT and p = ck_z/ω.

use num_complex::Complex;

use super::{HeatSpec, PlateKernel, Surface, FREQUENCY_CUTOFF};
use crate::constants::{black_body_flux, BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::lifshitz::Outcome;
use crate::numerics::{geometric_breakpoints, integrate_n, Domain};
use crate::Real;

fn check_temperature<T: Real>(temperature: T) -> Result<()> {
    if temperature > T::zero() && temperature.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "temperature {temperature} K must be > 0"
        )))
    }
}

/// Φ(T), W/m², with the reflection coefficients in the natural form of the
/// plate.
pub fn kirchhoff_flux<T: Real>(temperature: T, surface: &Surface<T>, spec: &HeatSpec<T>) -> Result<Outcome<T>> {
    check_temperature(temperature)?;
    let thermal = T::lit(BOLTZMANN) * temperature / T::lit(HBAR);
    let mut failure = None;
    let mut converged = true;
    let r = integrate_n(
        |x: T| {
            if failure.is_some() {
                return [T::zero()];
            }
            let omega = x * thermal;
            let kernel = match surface {
                Surface::BlackBody => Ok(PlateKernel::Black),
                Surface::Plate(m) => {
                    // scale c/ω makes the scaled wavenumber equal to p
                    surface.kernel(m.form(), omega, temperature, T::lit(SPEED_OF_LIGHT) / omega)
                }
            };
            let kernel = match kernel {
                Ok(k) => k,
                Err(e) => {
                    failure = Some(e);
                    return [T::zero()];
                }
            };
            let mut points = geometric_breakpoints(T::one(), T::lit(0.1), 10);
            points.extend(kernel.scales().into_iter().filter(|&p| p < T::one()));
            let inner = spec.inner.clone().with_breakpoints(points);
            let g = integrate_n(
                |p: T| {
                    let [tm, te] = kernel.resolved(Complex::new(p, T::zero()));
                    [p * (tm.absorptance() + te.absorptance())]
                },
                Domain::Finite(T::zero(), T::one()),
                &inner,
            );
            converged &= g.converged;
            [x * x * x / x.exp_m1() * g.value[0]]
        },
        Domain::Finite(T::zero(), T::lit(FREQUENCY_CUTOFF)),
        &spec
            .outer
            .clone()
            .with_breakpoints(vec![T::one(), T::lit(3.0), T::lit(10.0)]),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let c = T::lit(SPEED_OF_LIGHT);
    let prefactor = T::lit(HBAR) * thermal.powi(4) / (T::lit(4.0) * T::PI() * T::PI() * c * c);
    Ok(Outcome {
        value: prefactor * r.value[0],
        error: prefactor * r.error,
        converged: converged && r.converged,
    })
}

/// e(T) = Φ(T)/Φ_BB(T).
pub fn emittivity<T: Real>(temperature: T, surface: &Surface<T>, spec: &HeatSpec<T>) -> Result<Outcome<T>> {
    let flux = kirchhoff_flux(temperature, surface, spec)?;
    let bb = black_body_flux(temperature);
    Ok(Outcome {
        value: flux.value / bb,
        error: flux.error / bb,
        ..flux
    })
}
