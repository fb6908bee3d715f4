//! Central differences with one Richardson extrapolation step.

use crate::error::{Error, Result};
use crate::Real;

/// Derivative with a step-halving error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative<T> {
    pub value: T,
    pub error: T,
}

/// Richardson-extrapolated central difference of `f` at `x` with step `h`.
pub fn central_derivative<T: Real, F: FnMut(T) -> T>(mut f: F, x: T, h: T) -> Derivative<T> {
    let two = T::lit(2.0);
    let coarse = (f(x + h) - f(x - h)) / (two * h);
    let half = h / two;
    let fine = (f(x + half) - f(x - half)) / h;
    let value = (T::lit(4.0) * fine - coarse) / T::lit(3.0);
    Derivative {
        value,
        error: (value - fine).abs(),
    }
}

/// Default temperature step max(10⁻³·T, 0.01 K).
pub fn default_temperature_step<T: Real>(temperature: T) -> T {
    (T::lit(1e-3) * temperature).max(T::lit(0.01))
}

/// ∂f/∂T at `temperature`; `step` defaults to [`default_temperature_step`].
pub fn ddt<T: Real, F: FnMut(T) -> T>(f: F, temperature: T, step: Option<T>) -> Result<Derivative<T>> {
    let h = step.unwrap_or_else(|| default_temperature_step(temperature));
    if !(h > T::zero()) || temperature - T::lit(2.0) * h <= T::zero() {
        return Err(Error::Domain(format!(
            "temperature {temperature} too small for a derivative stencil of step {h}"
        )));
    }
    Ok(central_derivative(f, temperature, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic() {
        let d = ddt(|t: f64| t * t, 2.0, None).unwrap();
        assert!((d.value - 4.0).abs() < 1e-8);
    }

    #[test]
    fn cubic_relative() {
        let (c0, c3, t) = (5.0, 0.3, 7.0);
        let d = ddt(|x: f64| c0 + c3 * x.powi(3), t, None).unwrap();
        let exact = 3.0 * c3 * t * t;
        assert!(((d.value - exact) / exact).abs() < 1e-6);
    }

    #[test]
    fn stencil_too_wide() {
        assert!(matches!(ddt(|t: f64| t, 0.015, None), Err(Error::Domain(_))));
    }
}
