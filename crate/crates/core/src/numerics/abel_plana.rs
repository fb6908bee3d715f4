//! Boundary correction term of the Abel–Plana summation formula.

use num_complex::Complex;

use super::quadrature::{integrate_semi_infinite, Estimate, QuadratureSpec};
use crate::Real;

/// i∫₀^∞ dt [F(iκt) − F(−iκt)] / (e^{2πt} − 1).
///
/// With this correction, Σ'_{l≥0} F(κl) = κ⁻¹∫₀^∞F(x)dx + correction for
/// F analytic in the right half-plane. `boundary` evaluates F at a complex
/// argument; it is called at ±iκt only.
pub fn abel_plana_correction<T, F>(boundary: F, kappa: T, spec: &QuadratureSpec<T>) -> Estimate<T>
where
    T: Real,
    F: Fn(Complex<T>) -> Complex<T>,
{
    let two_pi = T::lit(2.0) * T::PI();
    let integrand = |t: T| {
        let plus = boundary(Complex::new(T::zero(), kappa * t));
        let minus = boundary(Complex::new(T::zero(), -kappa * t));
        let weight = (two_pi * t).exp_m1();
        if !weight.is_finite() {
            return T::zero();
        }
        // i·(plus − minus) has real part −Im(plus − minus)
        -(plus - minus).im / weight
    };
    integrate_semi_infinite(integrand, T::zero(), T::one() / two_pi, spec)
}
