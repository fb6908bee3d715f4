//! Boundary function Φ(x) = ∫_x^∞ f(x, y) dy of the infrared-optics
//! impedance and the coefficients I₀, I₁, I₂ of its expansion in ρ.

use num_complex::Complex;

use crate::error::Result;
use crate::numerics::{integrate_n, integrate_semi_infinite, polylog_exp_neg, Domain, Estimate, QuadratureSpec};
use crate::Real;

/// I₀(x) = −2[Li₃(e^{−x}) + x Li₂(e^{−x})].
pub fn i0<T: Real>(x: T) -> Result<T> {
    Ok(-T::lit(2.0) * (polylog_exp_neg(3, x)? + x * polylog_exp_neg(2, x)?))
}

/// I₁(x) = 8[Li₃(e^{−x}) + x Li₂(e^{−x}) − x² ln(1 − e^{−x})].
pub fn i1<T: Real>(x: T) -> Result<T> {
    let log = if x > T::zero() {
        (-(-x).exp_m1()).ln()
    } else {
        T::zero()
    };
    Ok(T::lit(8.0) * (polylog_exp_neg(3, x)? + x * polylog_exp_neg(2, x)? - x * x * log))
}

/// I₀(x) = 2∫_x^∞ y ln(1 − e^{−y}) dy by quadrature.
pub fn i0_quadrature<T: Real>(x: T, spec: &QuadratureSpec<T>) -> Estimate<T> {
    let r = integrate_semi_infinite(|y: T| y * (-(-y).exp()).ln_1p(), x, T::one(), spec);
    Estimate {
        value: T::lit(2.0) * r.value,
        error: T::lit(2.0) * r.error,
        ..r
    }
}

/// I₁(x) = 4∫_x^∞ (x² + y²)/(e^y − 1) dy by quadrature.
pub fn i1_quadrature<T: Real>(x: T, spec: &QuadratureSpec<T>) -> Estimate<T> {
    let r = integrate_semi_infinite(|y: T| (x * x + y * y) / y.exp_m1(), x, T::one(), spec);
    Estimate {
        value: T::lit(4.0) * r.value,
        error: T::lit(4.0) * r.error,
        ..r
    }
}

/// I₂(x) = −8∫_x^∞ (x⁴ + y⁴) e^y/[y(e^y − 1)²] dy by quadrature; x > 0.
pub fn i2_quadrature<T: Real>(x: T, spec: &QuadratureSpec<T>) -> Estimate<T> {
    let half = T::lit(0.5);
    let integrand = |y: T| {
        let s = (half * y).sinh();
        (x.powi(4) + y.powi(4)) / (T::lit(4.0) * y * s * s)
    };
    let r = integrate_semi_infinite(integrand, x, T::one(), spec);
    Estimate {
        value: -T::lit(8.0) * r.value,
        error: T::lit(8.0) * r.error,
        ..r
    }
}

/// Limit I₂(0) = −48ζ(3).
pub fn i2_limit<T: Real>() -> T {
    -T::lit(48.0) * T::zeta3()
}

/// f(x, y) = Σ_α y ln[1 − r_α²(x, y) e^{−y}] with the infrared-optics
/// impedance Z = ρx/√(1 + ρ²x²), at complex x and y.
pub fn boundary_integrand<T: Real>(x: Complex<T>, y: Complex<T>, rho: T) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let ratio = Complex::new(rho, T::zero()) / (one + x * x * rho * rho).sqrt();
    let zx = ratio * x * x;
    let tm = (y - zx) / (y + zx);
    let te = (one - y * ratio) / (one + y * ratio);
    let decay = (-y).exp();
    y * ((one - tm * tm * decay).ln() + (one - te * te * decay).ln())
}

/// Φ(x) integrated along y = x + s, s ≥ 0.
pub fn boundary_function<T: Real>(x: Complex<T>, rho: T, spec: &QuadratureSpec<T>) -> Complex<T> {
    let scale = x.norm();
    let mut inner = spec.clone();
    if scale > T::zero() && scale < T::one() {
        inner = inner.with_breakpoints(vec![scale, T::one()]);
    }
    let r = integrate_n(
        |s: T| {
            let v = boundary_integrand(x, x + Complex::new(s, T::zero()), rho);
            [v.re, v.im]
        },
        Domain::SemiInfinite {
            lower: T::zero(),
            decay_scale: T::one(),
        },
        &inner,
    );
    Complex::new(r.value[0], r.value[1])
}

/// Φ(iκt) − Φ(−iκt) by quadrature.
pub fn phi_difference<T: Real>(kt: T, rho: T, spec: &QuadratureSpec<T>) -> Complex<T> {
    let x = Complex::new(T::zero(), kt);
    boundary_function(x, rho, spec) - boundary_function(-x, rho, spec)
}

/// Leading terms of Φ(iκt) − Φ(−iκt):
/// iπ(κt)² − ⅔i(κt)³ + 4ρ[iπ(κt)² − (4/3)i(κt)³].
pub fn phi_difference_series<T: Real>(kt: T, rho: T) -> Complex<T> {
    let k2 = kt * kt;
    let k3 = k2 * kt;
    let lead = T::PI() * k2 - T::lit(2.0 / 3.0) * k3;
    let first = T::PI() * k2 - T::lit(4.0 / 3.0) * k3;
    Complex::new(T::zero(), lead + T::lit(4.0) * rho * first)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec<f64> {
        QuadratureSpec::default().with_rel_tol(1e-13)
    }

    #[test]
    fn closed_forms_at_zero() {
        let z3: f64 = 1.2020569031595942;
        assert!((i0(0.0f64).unwrap() + 2.0 * z3).abs() < 1e-14);
        assert!((i1(0.0f64).unwrap() - 8.0 * z3).abs() < 1e-13);
    }

    #[test]
    fn closed_forms_match_quadrature() {
        for x in [0.01, 0.1, 1.0] {
            let q0 = i0_quadrature(x, &spec()).value;
            let q1 = i1_quadrature(x, &spec()).value;
            assert!((i0(x).unwrap() - q0).abs() < 1e-10 * q0.abs(), "{x}");
            assert!((i1(x).unwrap() - q1).abs() < 1e-10 * q1.abs(), "{x}");
        }
    }

    #[test]
    fn series_difference_is_small_for_small_argument() {
        let rho = 0.01;
        let d = phi_difference(0.05, rho, &spec()) - phi_difference_series(0.05, rho);
        assert!(d.norm() < 0.05f64.powi(4) * 10.0, "{d}");
    }
}
