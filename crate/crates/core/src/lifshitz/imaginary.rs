//! Imaginary-axis Lifshitz formulas in the scaled variables ζ = 2aξ/c and
//! y = 2aq.

use std::sync::Mutex;

use super::{Geometry, LifshitzSpec, Outcome};
use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::numerics::{geometric_breakpoints, integrate_n, matsubara_sum_par_n, Domain, QuadratureSpec};
use crate::reflection::ImagKernel;
use crate::Real;

/// Upper end of the ζ range where the integrands are kept; beyond it they
/// are below e^{−60} relative to the leading terms.
const ZETA_MAX: f64 = 60.0;

/// Matsubara free energy F and pressure P.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraTerms<T> {
    /// F, J/m².
    pub free_energy: Outcome<T>,
    /// P, Pa.
    pub pressure: Outcome<T>,
    pub terms: usize,
}

/// Reflection kernels of both plates at one imaginary frequency.
struct KernelPair<T> {
    kernels: [ImagKernel<T>; 2],
}

impl<T: Real> KernelPair<T> {
    fn new(geometry: &Geometry<T>, zeta: T) -> Result<Self> {
        let scale = T::lit(2.0) * geometry.separation();
        let xi = zeta * T::lit(SPEED_OF_LIGHT) / scale;
        let [p1, p2] = geometry.plates();
        let t = geometry.temperature();
        Ok(Self {
            kernels: [
                ImagKernel::natural(p1, xi, t, scale)?,
                ImagKernel::natural(p2, xi, t, scale)?,
            ],
        })
    }

    /// [Σ_α y ln(1 − x_α), Σ_α y² x_α/(1 − x_α)] with x_α = r₁r₂e^{−y}.
    fn integrands(&self, y: T) -> [T; 2] {
        let a = self.kernels[0].at(y).as_array();
        let b = self.kernels[1].at(y).as_array();
        let decay = (-y).exp();
        let decay_m1 = (-y).exp_m1();
        let mut out = [T::zero(); 2];
        for (ra, rb) in a.into_iter().zip(b) {
            let rr = ra * rb;
            let x = rr * decay;
            if x.is_zero() {
                continue;
            }
            let one_minus = (T::one() - rr) - rr * decay_m1;
            let log = if x.abs() < T::lit(0.5) {
                (-x).ln_1p()
            } else {
                one_minus.ln()
            };
            out[0] = out[0] + y * log;
            out[1] = out[1] + y * y * x / one_minus;
        }
        out
    }

    /// Wavenumber integrals from y = ζ to ∞, with their combined error.
    fn integrate(&self, zeta: T, spec: &QuadratureSpec<T>) -> ([T; 2], T, bool) {
        let mut inner = spec.clone();
        if zeta < T::one() {
            let mut points = geometric_breakpoints(T::one(), T::lit(0.1), 6);
            points.insert(0, T::one());
            points.retain(|&p| p > zeta);
            inner = inner.with_breakpoints(points);
        }
        let r = integrate_n(
            |y| self.integrands(y),
            Domain::SemiInfinite {
                lower: zeta,
                decay_scale: T::one(),
            },
            &inner,
        );
        (r.value, r.error, r.converged)
    }
}

/// ζ beyond which the integrands are dropped: the point where Z(iξ) turns
/// negative for Z_p, else [`ZETA_MAX`].
fn zeta_cutoff<T: Real>(geometry: &Geometry<T>) -> T {
    let scale = T::lit(2.0) * geometry.separation() / T::lit(SPEED_OF_LIGHT);
    geometry
        .plates()
        .iter()
        .filter_map(|m| m.imaginary_axis_limit())
        .map(|xi| xi * scale)
        .fold(T::lit(ZETA_MAX), T::min)
}

/// Frequency scales (ζ units) at which the integrands change behaviour.
fn model_scales<T: Real>(geometry: &Geometry<T>) -> Vec<T> {
    let scale = T::lit(2.0) * geometry.separation() / T::lit(SPEED_OF_LIGHT);
    let t = geometry.temperature();
    let mut out = Vec::new();
    for m in geometry.plates() {
        if let Some(p) = m.params() {
            out.push(p.plasma_frequency() * scale);
        }
        let gamma = m.relaxation_rate(t);
        if gamma > T::zero() {
            out.push(gamma * scale);
        }
    }
    out
}

impl<T: Real> MatsubaraTerms<T> {
    /// F = (k_BT/8πa²) Σ' ∫ y Σ_α ln(1 − x_α) dy and
    /// P = −(k_BT/8πa³) Σ' ∫ y² Σ_α x_α/(1 − x_α) dy.
    pub fn compute(geometry: &Geometry<T>, spec: &LifshitzSpec<T>) -> Result<Self> {
        let t = geometry.temperature();
        if !(t > T::zero()) {
            return Err(Error::Domain("Matsubara sums need T > 0".into()));
        }
        let kappa = geometry.kappa();
        let cutoff = zeta_cutoff(geometry);
        let failure: Mutex<Option<Error>> = Mutex::new(None);
        let inner_ok = Mutex::new(true);
        let sums = matsubara_sum_par_n(
            |l| {
                let zeta = kappa * T::from_count(l);
                if zeta > cutoff {
                    return [T::zero(); 3];
                }
                match KernelPair::new(geometry, zeta) {
                    Ok(pair) => {
                        let ([f, p], err, ok) = pair.integrate(zeta, &spec.inner);
                        if !ok {
                            *inner_ok.lock().expect("flag lock") = false;
                        }
                        [f, p, err]
                    }
                    Err(e) => {
                        failure.lock().expect("error lock").get_or_insert(e);
                        [T::zero(); 3]
                    }
                }
            },
            &spec.sum,
        );
        if let Some(e) = failure.into_inner().expect("error lock") {
            return Err(e);
        }
        let inner_ok = inner_ok.into_inner().expect("flag lock");
        let a = geometry.separation();
        let kt = T::lit(BOLTZMANN) * t;
        let f_pref = kt / (T::lit(8.0) * T::PI() * a * a);
        let p_pref = -f_pref / a;
        let [fs, ps, es] = sums;
        let converged = fs.converged && ps.converged && inner_ok;
        Ok(Self {
            free_energy: Outcome {
                value: f_pref * fs.value,
                error: f_pref.abs() * (fs.tail + es.value.abs()),
                converged,
            },
            pressure: Outcome {
                value: p_pref * ps.value,
                error: p_pref.abs() * (ps.tail + es.value.abs()),
                converged,
            },
            terms: fs.terms,
        })
    }
}

/// Matsubara free energy F, J/m².
pub fn free_energy_matsubara<T: Real>(geometry: &Geometry<T>, spec: &LifshitzSpec<T>) -> Result<Outcome<T>> {
    Ok(MatsubaraTerms::compute(geometry, spec)?.free_energy)
}

/// Matsubara pressure P, Pa.
pub fn pressure_matsubara<T: Real>(geometry: &Geometry<T>, spec: &LifshitzSpec<T>) -> Result<Outcome<T>> {
    Ok(MatsubaraTerms::compute(geometry, spec)?.pressure)
}

/// Zero-point energy E = (ħc/32π²a³) ∫dζ ∫ y Σ_α ln(1 − x_α) dy and pressure
/// P₀ = −(ħc/32π²a⁴) ∫dζ ∫ y² Σ_α x_α/(1 − x_α) dy, with the material
/// response taken at the geometry's temperature.
pub fn zero_point_parts<T: Real>(geometry: &Geometry<T>, spec: &LifshitzSpec<T>) -> Result<super::ZeroPoint<T>> {
    let cutoff = zeta_cutoff(geometry);
    let mut points = geometric_breakpoints(T::one(), T::lit(0.1), 8);
    points.push(T::one());
    points.extend([T::lit(3.0), T::lit(10.0), T::lit(30.0)]);
    points.extend(model_scales(geometry));
    points.retain(|&p| p > T::zero() && p < cutoff);
    let outer = spec.outer.clone().with_breakpoints(points);
    let mut failure = None;
    let mut inner_err = T::zero();
    let mut inner_ok = true;
    let r = integrate_n(
        |zeta| {
            if failure.is_some() {
                return [T::zero(); 2];
            }
            match KernelPair::new(geometry, zeta) {
                Ok(pair) => {
                    let (v, err, ok) = pair.integrate(zeta, &spec.inner);
                    inner_err = inner_err.max(err);
                    inner_ok &= ok;
                    v
                }
                Err(e) => {
                    failure = Some(e);
                    [T::zero(); 2]
                }
            }
        },
        Domain::Finite(T::zero(), cutoff),
        &outer,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let a = geometry.separation();
    let hc = T::lit(HBAR) * T::lit(SPEED_OF_LIGHT);
    let e_pref = hc / (T::lit(32.0) * T::PI() * T::PI() * a * a * a);
    let p_pref = -e_pref / a;
    let converged = r.converged && inner_ok;
    let spread = r.error + inner_err * cutoff;
    Ok(super::ZeroPoint {
        energy: Outcome {
            value: e_pref * r.value[0],
            error: e_pref * spread,
            converged,
        },
        pressure: Outcome {
            value: p_pref * r.value[1],
            error: p_pref.abs() * spread,
            converged,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};
    use crate::materials::{PlateParams, ResponseModel};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn ideal_zero_point_matches_closed_forms() {
        let a = 1e-6;
        let g = Geometry::symmetric(a, 300.0, ResponseModel::IdealMetal).unwrap();
        let z = zero_point_parts(&g, &LifshitzSpec::default()).unwrap();
        let pi2 = std::f64::consts::PI.powi(2);
        let hc = HBAR * SPEED_OF_LIGHT;
        assert!(
            rel(z.energy.value, -pi2 * hc / (720.0 * a.powi(3))) < 1e-10,
            "{:?}",
            z.energy
        );
        assert!(
            rel(z.pressure.value, -pi2 * hc / (240.0 * a.powi(4))) < 1e-10,
            "{:?}",
            z.pressure
        );
    }

    #[test]
    fn plasma_zero_point_pressure() {
        let g = Geometry::symmetric(200e-9, 300.0, ResponseModel::plasma(PlateParams::<f64>::gold())).unwrap();
        let p0 = zero_point_parts(&g, &LifshitzSpec::default()).unwrap().pressure.value;
        assert!(rel(p0, -0.501_809_197_772_543_4) < 1e-10, "{p0}");
    }

    #[test]
    fn ideal_high_temperature_limit() {
        let (a, t) = (10e-6, 300.0);
        let g = Geometry::symmetric(a, t, ResponseModel::IdealMetal).unwrap();
        let f = free_energy_matsubara(&g, &LifshitzSpec::default()).unwrap();
        let zeta3 = 1.2020569031595942;
        let lead = -zeta3 * BOLTZMANN * t / (8.0 * std::f64::consts::PI * a * a);
        assert!(rel(f.value, lead) < 1e-4, "{} vs {lead}", f.value);
    }
}
